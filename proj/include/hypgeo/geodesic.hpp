#pragma once

#include <array>
#include <cmath>
#include <vector>

#include "hypgeo/algebra.hpp"
#include "hypgeo/errors.hpp"
#include "hypgeo/metric.hpp"

namespace hypgeo {

namespace detail {

// cos/sin tau (time-like) or cosh/sinh tau (space-like), with sin(tau)/tau kept finite.
struct TrigPair {
  double c;
  double s;       // sin tau or sinh tau
  double s_over;  // s / tau, equal to 1 at tau = 0
};

inline TrigPair trig_pair(int type, double tau) {
  if (type > 0) {
    const double s = std::sin(tau);
    return {std::cos(tau), s, tau == 0.0 ? 1.0 : (std::abs(tau) < 1e-4 ? 1.0 - tau * tau / 6.0 : s / tau)};
  }
  const double s = std::sinh(tau);
  return {std::cosh(tau), s, tau == 0.0 ? 1.0 : (std::abs(tau) < 1e-4 ? 1.0 + tau * tau / 6.0 : s / tau)};
}

// exp(t p / I1) exp(t eta p3 e3 / I1) written as C + w S p followed by the k-rotation by phi,
// where w = t/(2 I1) and phi = w eta p3.
inline SplitQuaternion assemble(double C, double wS, double phi, double p1, double p2, double p3) {
  const double cp = std::cos(phi), sp = std::sin(phi);
  return {
      C * cp - wS * p3 * sp,
      wS * (p1 * cp + p2 * sp),
      wS * (p2 * cp - p1 * sp),
      C * sp + wS * p3 * cp,
  };
}

}  // namespace detail

inline SplitQuaternion exp_map(const Metric& m, const Covector& p, double t) {
  if (!(t >= 0.0)) throw Error(ErrorCode::NegativeTime, "geodesic time must be nonnegative");
  const double w = t / (2.0 * m.I1);
  const double phi = w * m.eta * p.p3;
  switch (p.ctype) {
    case CausalType::LightLike:
      return detail::assemble(1.0, w, phi, p.p1, p.p2, p.p3);
    case CausalType::TimeLike:
    case CausalType::SpaceLike: {
      // pbar3 * s(tau) = p3 * w * s(tau)/tau, which stays accurate near the cone.
      const double tau = w * p.norm;
      const auto tp = detail::trig_pair(type_value(p.ctype), tau);
      return detail::assemble(tp.c, w * tp.s_over, phi, p.p1, p.p2, p.p3);
    }
  }
  return {};
}

// Product of the two one-parameter subgroups exp(t p/I1) exp(t eta p3 e3/I1).
inline SplitQuaternion exp_map_product(const Metric& m, const Covector& p, double t) {
  if (!(t >= 0.0)) throw Error(ErrorCode::NegativeTime, "geodesic time must be nonnegative");
  const double a = t / m.I1;
  return sq_mul(sq_exp(a * p.p1, a * p.p2, a * p.p3), sq_exp(0.0, 0.0, a * m.eta * p.p3));
}

inline Covector rotate_about_e3(const Covector& p, double angle) {
  Covector out = p;
  const double c = std::cos(angle), s = std::sin(angle);
  out.p1 = c * p.p1 - s * p.p2;
  out.p2 = s * p.p1 + c * p.p2;
  return out;
}

inline Covector vertical_flow(const Metric& m, const Covector& p, double t) {
  return rotate_about_e3(p, -t * m.eta * p.p3 / m.I1);
}

// Control (angular velocity) u = (p1/I1, p2/I1, -p3/I3) in the basis e1, e2, e3.
inline std::array<double, 3> control_from_momentum(const Metric& m, const Covector& p) {
  return {p.p1 / m.I1, p.p2 / m.I1, -p.p3 / m.I3};
}

inline double control_energy(const Metric& m, const std::array<double, 3>& u) {
  return m.I1 * u[0] * u[0] + m.I1 * u[1] * u[1] + m.I3 * u[2] * u[2];
}

namespace detail {

// q0^2 - q1^2 - q2^2 + q3^2 with error-free products; the plain sum cancels badly once |q| >> 1.
inline double pseudo_norm_compensated(double q0, double q1, double q2, double q3) {
  double sum = 0.0, err = 0.0;
  const double a[4] = {q0, q1, q2, q3};
  const double sign[4] = {1.0, -1.0, -1.0, 1.0};
  for (int i = 0; i < 4; ++i) {
    const double p = sign[i] * a[i] * a[i];
    const double pe = std::fma(sign[i] * a[i], a[i], -p);
    const double t = sum + p;
    const double z = t - sum;
    err += (sum - (t - z)) + (p - z) + pe;
    sum = t;
  }
  return sum + err;
}

}  // namespace detail

// Fourth-order Magnus integrator for Q' = Q Omega(p) with Gauss nodes, and RK4 for the Euler
// equation of p (two substeps per stage). Q is advanced by exact algebra exponentials, then
// projected back onto N = 1.
inline SplitQuaternion exp_map_ode_oracle(const Metric& m, const Covector& p, double t, int steps) {
  if (steps < 100) throw Error(ErrorCode::StepCountTooSmall, "at least 100 steps are required");
  if (!(t >= 0.0)) throw Error(ErrorCode::NegativeTime, "geodesic time must be nonnegative");
  using P = std::array<double, 3>;
  const double I1 = m.I1, I2 = m.I1, I3 = m.I3;
  auto euler = [&](const P& y) {
    return P{-y[1] * y[2] * (I2 + I3) / (I2 * I3), y[0] * y[2] * (I1 + I3) / (I1 * I3),
             y[0] * y[1] * (I2 - I1) / (I1 * I2)};
  };
  auto axpy = [](const P& a, double s, const P& b) { return P{a[0] + s * b[0], a[1] + s * b[1], a[2] + s * b[2]}; };
  auto advance = [&](P y, double h) {
    for (int k = 0; k < 2; ++k) {
      const double d = h / 2.0;
      const P k1 = euler(y), k2 = euler(axpy(y, d / 2.0, k1)), k3 = euler(axpy(y, d / 2.0, k2)),
              k4 = euler(axpy(y, d, k3));
      for (int i = 0; i < 3; ++i) y[i] += d / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
    return y;
  };
  // Omega in split-quaternion units: e_n = (i, j, k)/2.
  auto omega = [&](const P& y) { return SplitQuaternion{0.0, y[0] / (2.0 * I1), y[1] / (2.0 * I2), -y[2] / (2.0 * I3)}; };
  const double h = t / steps;
  const double c1 = 0.5 - std::sqrt(3.0) / 6.0, c2 = 0.5 + std::sqrt(3.0) / 6.0;
  const double w = std::sqrt(3.0) / 12.0 * h * h;
  SplitQuaternion q{1.0, 0.0, 0.0, 0.0};
  P y{p.p1, p.p2, p.p3};
  for (int n = 0; n < steps; ++n) {
    const SplitQuaternion A = omega(advance(y, c1 * h)), B = omega(advance(y, c2 * h));
    const SplitQuaternion AB = sq_mul(A, B), BA = sq_mul(B, A);
    // sq_exp(v) = exp((v1 i + v2 j + v3 k)/2), so v is twice the Magnus exponent.
    q = sq_mul(q, sq_exp(h * (A.q1 + B.q1) + 2.0 * w * (AB.q1 - BA.q1), h * (A.q2 + B.q2) + 2.0 * w * (AB.q2 - BA.q2),
                         h * (A.q3 + B.q3) + 2.0 * w * (AB.q3 - BA.q3)));
    y = advance(y, h);
    // Project back onto the pseudo-norm 1 surface along its gradient (q0, -q1, -q2, q3). Rescaling
    // would move every component by the relative defect, which is ~eps |q|^2 for large |q|.
    const double defect = 1.0 - detail::pseudo_norm_compensated(q.q0, q.q1, q.q2, q.q3);
    const double alpha = defect / (2.0 * (q.q0 * q.q0 + q.q1 * q.q1 + q.q2 * q.q2 + q.q3 * q.q3));
    q = {q.q0 + alpha * q.q0, q.q1 - alpha * q.q1, q.q2 - alpha * q.q2, q.q3 + alpha * q.q3};
  }
  return q;
}

struct GeodesicSample {
  double t = 0.0;
  SplitQuaternion point{};
  Covector momentum{};
};

inline std::vector<GeodesicSample> sample_geodesic(const Metric& m, const Covector& p, double t_end, int n) {
  if (n < 2) throw Error(ErrorCode::DomainError, "need at least two samples");
  if (!(t_end >= 0.0)) throw Error(ErrorCode::NegativeTime, "geodesic time must be nonnegative");
  std::vector<GeodesicSample> out;
  out.reserve(n);
  for (int i = 0; i < n; ++i) {
    const double t = t_end * i / (n - 1);
    out.push_back({t, exp_map(m, p, t), vertical_flow(m, p, t)});
  }
  return out;
}

// Geodesic components in (tau, pbar3) coordinates for a non-light type.
inline double reduced_q0(double eta, CausalType ctype, double pbar3, double tau) {
  const auto tp = detail::trig_pair(type_value(ctype), tau);
  const double phi = tau * eta * pbar3;
  return tp.c * std::cos(phi) - pbar3 * tp.s * std::sin(phi);
}

inline double reduced_q3(double eta, CausalType ctype, double pbar3, double tau) {
  const auto tp = detail::trig_pair(type_value(ctype), tau);
  const double phi = tau * eta * pbar3;
  return tp.c * std::sin(phi) + pbar3 * tp.s * std::cos(phi);
}

struct ExpPartials {
  double dq0_dpbar3;
  double dq3_dpbar3;
  double dq0_dtau;
  double dq3_dtau;
};

inline ExpPartials exp_partials(double eta, CausalType ctype, double pbar3, double tau) {
  if (ctype == CausalType::LightLike) throw Error(ErrorCode::LightLikeInput, "partials need a non-light type");
  const int type = type_value(ctype);
  const auto tp = detail::trig_pair(type, tau);
  const double phi = tau * eta * pbar3;
  const double cp = std::cos(phi), sp = std::sin(phi);
  const double c = tp.c, s = tp.s;
  const double a = type + eta * pbar3 * pbar3;
  const double b = pbar3 * (1.0 + eta);
  return {
      -(c * tau * eta + s) * sp - pbar3 * s * tau * eta * cp,
      (c * tau * eta + s) * cp - pbar3 * s * tau * eta * sp,
      -a * s * cp - b * c * sp,
      -a * s * sp + b * c * cp,
  };
}

inline double jacobian(const Metric& m, CausalType ctype, double pbar3, double tau) {
  if (ctype == CausalType::LightLike) {
    throw Error(ErrorCode::LightLikeInput, "the Jacobian is not defined for light-like covectors");
  }
  const int type = type_value(ctype);
  if (type > 0 && std::abs(pbar3) < 1.0) throw Error(ErrorCode::DomainError, "time-like needs |pbar3| >= 1");
  const auto tp = detail::trig_pair(type, tau);
  const double eta = m.eta;
  const double bracket =
      tau * eta * (1.0 - type * pbar3 * pbar3) * tp.c + (1.0 + type * eta * pbar3 * pbar3) * tp.s;
  return type * tp.s * tp.s * tp.s * bracket;
}

// Element of S = O2 x Z2 acting on covectors as R_angle o sigma1^reflect1 o sigma2^reflect2,
// where sigma1 negates p2 and sigma2 negates p3.
struct SymmetryElement {
  double angle = 0.0;
  bool sigma1 = false;
  bool sigma2 = false;

  static SymmetryElement rotation(double phi) { return {phi, false, false}; }
  static SymmetryElement reflection_sigma1() { return {0.0, true, false}; }
  static SymmetryElement reflection_sigma2() { return {0.0, false, true}; }
  static SymmetryElement composite(double phi, bool with_sigma1, bool with_sigma2) {
    return {phi, with_sigma1, with_sigma2};
  }

  // Reflections in an odd number of planes reverse the vertical field.
  bool reverses_vertical_field() const { return sigma1 != sigma2; }

  std::array<double, 3> apply(double x1, double x2, double x3) const {
    if (sigma1) x2 = -x2;
    if (sigma2) x3 = -x3;
    const double c = std::cos(angle), s = std::sin(angle);
    return {c * x1 - s * x2, s * x1 + c * x2, x3};
  }
};

inline SymmetryElement compose(const SymmetryElement& a, const SymmetryElement& b) {
  // R_a S^r R_b S^s = R_{a + (-1)^r b} S^{r xor s}; sigma2 is central.
  return {a.angle + (a.sigma1 ? -b.angle : b.angle), a.sigma1 != b.sigma1, a.sigma2 != b.sigma2};
}

struct Preimage {
  Covector p;
  double t;
};

inline Preimage apply_symmetry_preimage(const Metric& m, const SymmetryElement& s, const Covector& p, double t) {
  const Covector base = s.reverses_vertical_field() ? vertical_flow(m, p, t) : p;
  const auto x = s.apply(base.p1, base.p2, base.p3);
  Covector out = base;
  out.p1 = x[0];
  out.p2 = x[1];
  out.p3 = x[2];
  if (out.pbar3) out.pbar3 = out.p3 / out.norm;
  return {out, t};
}

inline SplitQuaternion apply_symmetry_image(const SymmetryElement& s, const SplitQuaternion& g) {
  const auto x = s.apply(g.q1, g.q2, g.q3);
  return {g.q0, x[0], x[1], x[2]};
}

}  // namespace hypgeo
