#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <vector>

#include <boost/math/tools/toms748_solve.hpp>

#include "hypgeo/errors.hpp"
#include "hypgeo/geodesic.hpp"
#include "hypgeo/metric.hpp"

namespace hypgeo {

struct RootBracket {
  double lo;
  double hi;
  double f_lo;
  double f_hi;
};

struct ScanOptions {
  double step = 0.01;
  double tol = 1e-12;
  double limit = 16.0 * std::numbers::pi;
  double start = 0.0;
  // Sign of f just right of start; 0 means read it from f(start).
  int sign_at_start = 0;
  long max_steps = 20'000'000;
};

namespace detail {

inline int sgn(double x) { return (x > 0.0) - (x < 0.0); }

template <class F>
double refine_root(F&& f, RootBracket b) {
  if (b.f_lo == 0.0) return b.lo;
  if (b.f_hi == 0.0) return b.hi;
  std::uintmax_t iters = 200;
  auto done = [](double a, double c) {
    return std::abs(c - a) <= 4.0 * std::numeric_limits<double>::epsilon() * std::max(std::abs(a), std::abs(c));
  };
  const auto r = boost::math::tools::toms748_solve(f, b.lo, b.hi, b.f_lo, b.f_hi, done, iters);
  return 0.5 * (r.first + r.second);
}

}  // namespace detail

// First sign change of f to the right of options.start, refined to machine precision.
template <class F>
double find_first_positive_root(F&& f, const ScanOptions& o) {
  if (!(o.step > 0.0) || !(o.tol > 0.0) || !(o.limit > o.start)) {
    throw Error(ErrorCode::DomainError, "invalid scan options");
  }
  {
    bool all_small = true;
    for (int i = 1; i <= 16 && all_small; ++i) {
      all_small = std::abs(f(o.start + (o.limit - o.start) * i / 16.0)) <= o.tol;
    }
    if (all_small) throw Error(ErrorCode::DegenerateFunction, "function vanishes on the scan range");
  }
  double a = o.start;
  double fa = f(a);
  int s0 = o.sign_at_start;
  if (s0 == 0) {
    s0 = detail::sgn(fa);
    if (s0 == 0) throw Error(ErrorCode::DomainError, "sign at scan start is unknown");
  } else if (detail::sgn(fa) != s0) {
    // Known root at start (e.g. q3(0) = 0): step off it.
    a = o.start + o.step * 1e-6;
    fa = f(a);
  }
  for (long n = 0; n < o.max_steps; ++n) {
    const double b = std::min(a + o.step, o.limit);
    const double fb = f(b);
    if (detail::sgn(fb) != s0) return detail::refine_root(f, {a, b, fa, fb});
    if (b >= o.limit) break;
    a = b;
    fa = fb;
  }
  throw Error(ErrorCode::NoRootFound, "no sign change before the scan limit");
}

template <class F>
double find_first_positive_root(F&& f, double scan_step, double tol, double scan_limit) {
  ScanOptions o;
  o.step = scan_step;
  o.tol = tol;
  o.limit = scan_limit;
  return find_first_positive_root(f, o);
}

namespace detail {

inline double scan_step_for(double width, double fast_frequency) {
  return std::min({0.01, width / 16.0, 0.25 / fast_frequency});
}

}  // namespace detail

// The six first-root functions. Time-like and space-like roots are in tau; light-like roots are in
// tau_p = t |p3| / (2 I1). All depend on |pbar3| only.

inline double tau0_timelike(double eta, double pbar3) {
  const double pb = std::abs(pbar3);
  if (pb < 1.0) throw Error(ErrorCode::NotTimeLike, "time-like needs |pbar3| >= 1");
  const double r = 1.0 + eta * pb;
  if (pb == 1.0) return -std::numbers::pi / (2.0 * (1.0 + eta));
  auto f = [=](double tau) { return reduced_q0(eta, CausalType::TimeLike, pb, tau); };
  // q0 = A cos(|r| tau) + B cos(fast tau) with A > |B|, so the root is below pi/|r|.
  const double upper = std::numbers::pi / std::abs(r);
  ScanOptions o;
  o.step = detail::scan_step_for(upper, 1.0 - eta * pb);
  o.limit = upper;
  return find_first_positive_root(f, o);
}

inline double tau3_timelike(double eta, double pbar3) {
  const double pb = std::abs(pbar3);
  if (pb < 1.0) throw Error(ErrorCode::NotTimeLike, "time-like needs |pbar3| >= 1");
  if (pb == 1.0) return -std::numbers::pi / (1.0 + eta);
  const double r = 1.0 + eta * pb;
  auto f = [=](double tau) { return reduced_q3(eta, CausalType::TimeLike, pb, tau); };
  const double upper = 1.5 * std::numbers::pi / std::abs(r);
  ScanOptions o;
  o.step = detail::scan_step_for(upper, 1.0 - eta * pb);
  o.limit = upper;
  o.sign_at_start = -1;
  return find_first_positive_root(f, o);
}

namespace detail {

// q0 and q3 of a space-like geodesic divided by cosh tau (no overflow for large tau).
inline double space_q0_scaled(double eta, double pb, double tau) {
  const double phi = tau * eta * pb;
  return std::cos(phi) - pb * std::tanh(tau) * std::sin(phi);
}
inline double space_q3_scaled(double eta, double pb, double tau) {
  const double phi = tau * eta * pb;
  return std::sin(phi) + pb * std::tanh(tau) * std::cos(phi);
}

// The space-like roots are unique in their proven brackets; scan from zero unless that is too
// long, in which case refine inside the bracket directly.
template <class F>
double space_root(F&& f, double lo, double hi, double width, double fast, int sign) {
  ScanOptions o;
  o.step = scan_step_for(width, fast);
  o.limit = 1.5 * hi;
  o.sign_at_start = sign;
  if (o.limit / o.step > 2e6) return refine_root(f, {lo, hi, f(lo), f(hi)});
  return find_first_positive_root(f, o);
}

}  // namespace detail

inline double tau0_spacelike(double eta, double pbar3) {
  const double pb = std::abs(pbar3);
  if (pb == 0.0) throw Error(ErrorCode::UndefinedAtEquator, "tau0h(0) is undefined");
  const double alpha = -eta * pb;
  auto f = [=](double tau) { return detail::space_q0_scaled(eta, pb, tau); };
  const double lo = std::numbers::pi / (2.0 * alpha);
  return detail::space_root(f, lo, 2.0 * lo, lo, 1.0 + alpha, 1);
}

inline double tau3_spacelike(double eta, double pbar3) {
  const double pb = std::abs(pbar3);
  if (pb == 0.0) throw Error(ErrorCode::DegenerateIdenticallyZero, "q3 vanishes identically at pbar3 = 0");
  const double alpha = -eta * pb;
  auto f = [=](double tau) { return detail::space_q3_scaled(eta, pb, tau); };
  const double lo = std::numbers::pi / alpha;
  return detail::space_root(f, lo, 1.5 * lo, 0.5 * lo, 1.0 + alpha, -1);
}

inline double taup0_lightlike(double eta) {
  auto f = [=](double x) { return std::cos(eta * x) - x * std::sin(eta * x); };
  const double lo = -std::numbers::pi / (2.0 * eta);
  ScanOptions o;
  o.step = detail::scan_step_for(lo, -eta);
  o.limit = 3.0 * lo;
  return find_first_positive_root(f, o);
}

inline double taup3_lightlike(double eta) {
  auto f = [=](double x) { return std::sin(eta * x) + x * std::cos(eta * x); };
  const double lo = -std::numbers::pi / eta;
  ScanOptions o;
  o.step = detail::scan_step_for(0.5 * lo, -eta);
  o.limit = 3.0 * lo;
  o.sign_at_start = -1;
  return find_first_positive_root(f, o);
}

inline double maxwell_root_q0(const Metric& m, const Covector& p) {
  switch (p.ctype) {
    case CausalType::TimeLike: return 2.0 * m.I1 * tau0_timelike(m.eta, *p.pbar3) / p.norm;
    case CausalType::SpaceLike: return 2.0 * m.I1 * tau0_spacelike(m.eta, *p.pbar3) / p.norm;
    case CausalType::LightLike: return 2.0 * m.I1 * taup0_lightlike(m.eta) / std::abs(p.p3);
  }
  return 0.0;
}

inline double maxwell_root_q3(const Metric& m, const Covector& p) {
  switch (p.ctype) {
    case CausalType::TimeLike: return 2.0 * m.I1 * tau3_timelike(m.eta, *p.pbar3) / p.norm;
    case CausalType::SpaceLike: return 2.0 * m.I1 * tau3_spacelike(m.eta, *p.pbar3) / p.norm;
    case CausalType::LightLike: return 2.0 * m.I1 * taup3_lightlike(m.eta) / std::abs(p.p3);
  }
  return 0.0;
}

// Slope kappa in tan tau = kappa tau; below 1 for every time-like pbar3.
inline double conjugate_slope(double eta, double pbar3) {
  const double s = pbar3 * pbar3;
  return -eta * (1.0 - s) / (1.0 + eta * s);
}

// Merged series {pi k} and {tau_k}, tau_k in (pi k, pi k + pi/2), for k = 1..k_max.
inline std::vector<double> conjugate_roots(const Metric& m, double pbar3, int k_max) {
  if (!(std::abs(pbar3) >= 1.0)) throw Error(ErrorCode::NotTimeLike, "conjugate roots need |pbar3| >= 1");
  std::vector<double> out;
  const double pi = std::numbers::pi;
  const bool merged = std::abs(pbar3) == 1.0;
  const double kappa = conjugate_slope(m.eta, pbar3);
  auto g = [=](double tau) { return std::sin(tau) - kappa * tau * std::cos(tau); };
  for (int k = 1; k <= k_max; ++k) {
    out.push_back(pi * k);
    if (merged) continue;
    const double lo = pi * k, hi = pi * k + pi / 2.0;
    out.push_back(detail::refine_root(g, {lo, hi, g(lo), g(hi)}));
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace hypgeo
