// Riemannian cut time approaching the sub-Riemannian one as eta -> -1.
#include <cmath>
#include <cstdio>

#include "hypgeo/hypgeo.hpp"

int main() {
  using namespace hypgeo;
  std::vector<double> etas;
  for (int k = 1; k <= 6; ++k) etas.push_back(-1.0 - std::pow(10.0, -k));
  for (double pb : {1.2, 3.0}) {
    const double beta = beta_from_pbar3(pb, CausalType::TimeLike);
    std::printf("pbar3 = %g  beta = %.6f  sr cut = %.9f\n", pb, beta, sr_cut_time(beta).value());
    for (const auto& r : limit_comparison(pb, CausalType::TimeLike, etas)) {
      std::printf("  eta=%-10.7g riemannian=%.9f diff=%.2e\n", r.eta, r.riem_cut.value(), r.diff);
    }
  }
}
