#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <optional>

#include "hypgeo/errors.hpp"

namespace hypgeo {

// Left-invariant metric with eigenvalues I1 = I2 and I3.
struct Metric {
  double I1 = 1.0;
  double I3 = 1.0;
  double eta = -2.0;

  static constexpr double eta_three_halves = -1.5;
  static constexpr double eta_two = -2.0;
  // Root (-3 - sqrt 73)/8 of 4 eta^2 + 3 eta - 4 = 0.
  static double eta_radius_switch() { return (-3.0 - std::sqrt(73.0)) / 8.0; }

  // |pbar3| at which tau0e = pi (PSL2) and tau3e = pi (SL2).
  double pbar3_psl2_threshold() const { return -3.0 / (2.0 * eta); }
  double pbar3_sl2_threshold() const { return -2.0 / eta; }
};

inline Metric make_metric(double I1, double I3) {
  if (!(I1 > 0.0) || !(I3 > 0.0) || !std::isfinite(I1) || !std::isfinite(I3)) {
    throw Error(ErrorCode::NonPositiveEigenvalue, "I1 and I3 must be positive and finite");
  }
  return {I1, I3, -I1 / I3 - 1.0};
}

// I3 is chosen so that the metric has the requested eta.
inline Metric metric_from_eta(double I1, double eta) {
  if (!(eta < -1.0)) throw Error(ErrorCode::DomainError, "eta must be below -1");
  Metric m = make_metric(I1, -I1 / (1.0 + eta));
  m.eta = eta;
  return m;
}

enum class CausalType : int { TimeLike = 1, LightLike = 0, SpaceLike = -1 };

constexpr int type_value(CausalType c) { return static_cast<int>(c); }

inline const char* to_string(CausalType c) {
  switch (c) {
    case CausalType::TimeLike: return "time-like";
    case CausalType::LightLike: return "light-like";
    case CausalType::SpaceLike: return "space-like";
  }
  return "unknown";
}

struct Covector {
  double p1 = 0.0;
  double p2 = 0.0;
  double p3 = 0.0;
  double kil = 0.0;
  CausalType ctype = CausalType::SpaceLike;
  double norm = 0.0;
  std::optional<double> pbar3;

  double phase() const { return std::atan2(p2, p1); }
  double perp() const { return std::hypot(p1, p2); }
};

inline constexpr double kOnCTolerance = 1e-9;

inline double hamiltonian_level(const Metric& m, double p1, double p2, double p3) {
  return (p1 * p1 + p2 * p2) / m.I1 + p3 * p3 / m.I3;
}

inline Covector covector_from_components(const Metric& m, double p1, double p2, double p3) {
  if (!std::isfinite(p1) || !std::isfinite(p2) || !std::isfinite(p3)) {
    throw Error(ErrorCode::NotOnC, "non-finite covector component");
  }
  const double h = hamiltonian_level(m, p1, p2, p3);
  if (std::abs(h - 1.0) > kOnCTolerance) {
    throw Error(ErrorCode::NotOnC, "covector is not on the level surface C");
  }
  const double s = 1.0 / std::sqrt(h);
  Covector c;
  c.p1 = p1 * s;
  c.p2 = p2 * s;
  c.p3 = p3 * s;
  c.kil = c.p1 * c.p1 + c.p2 * c.p2 - c.p3 * c.p3;
  if (std::abs(c.kil) < 1e-9 * m.I1) {
    c.ctype = CausalType::LightLike;
    c.norm = 0.0;
  } else {
    c.ctype = c.kil < 0.0 ? CausalType::TimeLike : CausalType::SpaceLike;
    c.norm = std::sqrt(std::abs(c.kil));
    c.pbar3 = c.p3 / c.norm;
  }
  return c;
}

// Point of C with p3 = u sqrt(I3) and (p1, p2) at the given phase; u in [-1, 1].
inline Covector covector_on_meridian(const Metric& m, double u, double phase) {
  if (!(std::abs(u) <= 1.0)) throw Error(ErrorCode::DomainError, "meridian coordinate outside [-1, 1]");
  const double perp = std::sqrt(m.I1 * (1.0 - u * u));
  return covector_from_components(m, perp * std::cos(phase), perp * std::sin(phase), u * std::sqrt(m.I3));
}

// u_i = cos(pi i/(n-1)) written as a sine so that the midpoint of an odd grid is exactly 0.
inline double meridian_u(std::size_t i, std::size_t n) {
  const double k = static_cast<double>(n - 1) - 2.0 * static_cast<double>(i);
  return std::clamp(std::sin(std::numbers::pi * k / (2.0 * static_cast<double>(n - 1))), -1.0, 1.0);
}

// |p| of the covector with the given pbar3 and type.
inline double norm_from_pbar3(const Metric& m, double pbar3, CausalType ctype) {
  const int type = type_value(ctype);
  const double r = 1.0 + type * m.eta * pbar3 * pbar3;
  return std::sqrt(m.I1 / (-type * r));
}

inline Covector covector_from_pbar3(const Metric& m, double pbar3, double phase, CausalType ctype) {
  double p3 = 0.0, perp = 0.0;
  switch (ctype) {
    case CausalType::TimeLike: {
      if (!std::isfinite(pbar3) || std::abs(pbar3) < 1.0) {
        throw Error(ErrorCode::DomainError, "time-like covectors need |pbar3| >= 1");
      }
      const double n = norm_from_pbar3(m, pbar3, ctype);
      p3 = n * pbar3;
      perp = n * std::sqrt(pbar3 * pbar3 - 1.0);
      break;
    }
    case CausalType::SpaceLike: {
      if (!std::isfinite(pbar3)) throw Error(ErrorCode::DomainError, "space-like pbar3 must be finite");
      const double n = norm_from_pbar3(m, pbar3, ctype);
      p3 = n * pbar3;
      perp = n * std::sqrt(pbar3 * pbar3 + 1.0);
      break;
    }
    case CausalType::LightLike: {
      if (pbar3 == 0.0 || std::isnan(pbar3)) {
        throw Error(ErrorCode::DomainError, "light-like covectors take the sign of pbar3");
      }
      p3 = std::copysign(std::sqrt(-m.I1 / m.eta), pbar3);
      perp = std::abs(p3);
      break;
    }
  }
  return covector_from_components(m, perp * std::cos(phase), perp * std::sin(phase), p3);
}

inline double tau_of_t(const Covector& p, const Metric& m, double t) {
  if (p.ctype == CausalType::LightLike) {
    throw Error(ErrorCode::LightLikeInput, "tau is undefined for light-like covectors");
  }
  return t * p.norm / (2.0 * m.I1);
}

}  // namespace hypgeo
