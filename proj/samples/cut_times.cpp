// Cut time along the meridian of C and the injectivity radius for a few metrics.
#include <cmath>
#include <cstdio>
#include <numbers>

#include "hypgeo/hypgeo.hpp"

int main() {
  using namespace hypgeo;
  for (double eta : {-2.5, -1.6, -1.2}) {
    const Metric m = metric_from_eta(1.0, eta);
    std::printf("eta = %g  injectivity radius = %.10f (case %d)\n", eta, injectivity_radius(m),
                injectivity_case(m).index);
    for (double u : {1.0, 0.8, 0.5, 0.2}) {
      const Covector p = covector_on_meridian(m, u, 0.0);
      const CutDescriptor d = cut_descriptor(m, p, GroupTag::PSL2);
      const ExtTime sl2 = cut_time(m, p, GroupTag::SL2);
      std::printf("  u=%.1f %-10s t_cut=%.6f (%s)  t_conj=%.6f  sl2=%.6f\n", u, to_string(p.ctype), d.t_cut.value(),
                  to_string(d.active_stratum), d.t_conj.value(), sl2.value());
    }
  }
}
