// Sample a time-like geodesic and check it against the ODE integrator.
#include <cstdio>

#include "hypgeo/hypgeo.hpp"

int main() {
  using namespace hypgeo;
  const Metric m = make_metric(1.0, 2.0);
  const Covector p = covector_from_pbar3(m, 1.5, 0.3, CausalType::TimeLike);
  std::printf("eta = %g  |p| = %g  Kil = %g\n", m.eta, p.norm, p.kil);
  for (const auto& s : sample_geodesic(m, p, 6.0, 7)) {
    const auto& q = s.point;
    std::printf("t=%4.1f  q=(% .6f, % .6f, % .6f, % .6f)  N-1=% .1e\n", s.t, q.q0, q.q1, q.q2, q.q3,
                pseudo_norm(q) - 1.0);
  }
  const auto a = exp_map(m, p, 6.0), b = exp_map_ode_oracle(m, p, 6.0, 2000);
  std::printf("closed form vs RK4: %.2e\n", max_abs_diff(a, b));
}
