#pragma once

#include <cmath>
#include <numbers>
#include <vector>

#include "hypgeo/algebra.hpp"
#include "hypgeo/errors.hpp"
#include "hypgeo/metric.hpp"
#include "hypgeo/optimality.hpp"
#include "hypgeo/parallel.hpp"
#include "hypgeo/roots.hpp"

// Sub-Riemannian limit eta -> -1 with I1 = 1. For general I1 time rescales by sqrt(I1); that is not
// applied here.
namespace hypgeo {

struct SrMomentum {
  double beta = 0.0;
  double phi0 = 0.0;
};

inline SplitQuaternion sr_exp_map(const SrMomentum& sp, double t) {
  if (!(t >= 0.0)) throw Error(ErrorCode::NegativeTime, "geodesic time must be nonnegative");
  return sq_mul(sq_exp(t * std::cos(sp.phi0), t * std::sin(sp.phi0), t * sp.beta), sq_exp(0.0, 0.0, -t * sp.beta));
}

inline ExtTime sr_conjugate_time(double beta) {
  const double b = std::abs(beta);
  if (!(b > 1.0)) return ExtTime::infinity();
  return ExtTime::finite(2.0 * std::numbers::pi / std::sqrt(b * b - 1.0));
}

namespace detail {

template <class F>
double sr_root(F&& f, double beta, int sign_at_start) {
  const double b = std::abs(beta);
  const double d = std::sqrt(std::abs(b * b - 1.0));
  const double pi = std::numbers::pi;
  ScanOptions o;
  o.limit = 4.0 * (2.0 * pi / std::max(d, 1e-3) + 2.0 * pi / b);
  o.step = std::min(0.01, 0.25 / (b + d));
  // The SL2 functions vanish to third order at t = 0; start where the sign is resolved.
  o.start = sign_at_start < 0 ? 1e-3 : 0.0;
  o.sign_at_start = sign_at_start;
  return find_first_positive_root(f, o);
}

}  // namespace detail

inline ExtTime sr_cut_time(double beta, GroupTag g = GroupTag::PSL2) {
  if (!std::isfinite(beta)) throw Error(ErrorCode::DomainError, "beta must be finite");
  const double b = std::abs(beta);
  if (b == 0.0) return ExtTime::infinity();
  const double rotation_beta = g == GroupTag::PSL2 ? 3.0 / std::sqrt(5.0) : 2.0 / std::sqrt(3.0);
  if (b > rotation_beta) return sr_conjugate_time(beta);
  const double d = std::sqrt(std::abs(b * b - 1.0));
  const double K = b == 1.0 ? 0.0 : b / d;
  double t = 0.0;
  if (g == GroupTag::PSL2) {
    if (b > 1.0) {
      t = detail::sr_root([=](double s) { return std::cos(b * s / 2) * std::cos(d * s / 2) + K * std::sin(b * s / 2) * std::sin(d * s / 2); }, beta, 1);
    } else if (b == 1.0) {
      t = detail::sr_root([](double s) { return std::cos(s / 2) + (s / 2) * std::sin(s / 2); }, beta, 1);
    } else {
      t = detail::sr_root([=](double s) { return std::cos(b * s / 2) + K * std::sin(b * s / 2) * std::tanh(d * s / 2); }, beta, 1);
    }
  } else {
    if (b > 1.0) {
      t = detail::sr_root([=](double s) { return K * std::sin(d * s / 2) * std::cos(b * s / 2) - std::cos(d * s / 2) * std::sin(b * s / 2); }, beta, -1);
    } else if (b == 1.0) {
      t = detail::sr_root([](double s) { return (s / 2) * std::cos(s / 2) - std::sin(s / 2); }, beta, -1);
    } else {
      t = detail::sr_root([=](double s) { return K * std::tanh(d * s / 2) * std::cos(b * s / 2) - std::sin(b * s / 2); }, beta, -1);
    }
  }
  return ExtTime::finite(t);
}

// Inverse of pbar3 = beta / sqrt|beta^2 - 1|; |beta| > 1 for time-like, |beta| < 1 for space-like.
inline double beta_from_pbar3(double pbar3, CausalType ctype) {
  if (!std::isfinite(pbar3)) throw Error(ErrorCode::DomainError, "pbar3 must be finite");
  switch (ctype) {
    case CausalType::TimeLike:
      if (!(std::abs(pbar3) > 1.0)) throw Error(ErrorCode::DomainError, "time-like beta needs |pbar3| > 1");
      return pbar3 / std::sqrt(pbar3 * pbar3 - 1.0);
    case CausalType::SpaceLike:
      return pbar3 / std::sqrt(1.0 + pbar3 * pbar3);
    case CausalType::LightLike:
      break;
  }
  throw Error(ErrorCode::DomainError, "light-like covectors have no finite pbar3");
}

inline double pbar3_from_beta(double beta) {
  const double d = std::sqrt(std::abs(beta * beta - 1.0));
  if (d == 0.0) throw Error(ErrorCode::DomainError, "|beta| = 1 is light-like");
  return beta / d;
}

inline CausalType sr_causal_type(double beta) {
  const double b = std::abs(beta);
  return b > 1.0 ? CausalType::TimeLike : (b < 1.0 ? CausalType::SpaceLike : CausalType::LightLike);
}

// Riemannian covector with the same (pbar3, phase) on the metric with I1 = 1 and the given eta.
inline Covector sr_to_riemannian(const SrMomentum& sp, double eta) {
  const Metric m = metric_from_eta(1.0, eta);
  const CausalType c = sr_causal_type(sp.beta);
  if (c == CausalType::LightLike) return covector_from_pbar3(m, sp.beta, sp.phi0, c);
  return covector_from_pbar3(m, pbar3_from_beta(sp.beta), sp.phi0, c);
}

// 2 pi I1/|p| evaluated with |p| at eta = -1: |p| = 1/sqrt(pbar3^2 - 1).
inline ExtTime limit_conjugate_time(double pbar3) {
  if (!(std::abs(pbar3) > 1.0)) return ExtTime::infinity();
  return ExtTime::finite(2.0 * std::numbers::pi * std::sqrt(pbar3 * pbar3 - 1.0));
}

struct LimitRow {
  double eta;
  ExtTime riem_cut;
  ExtTime sr_cut;
  double diff;
};

inline std::vector<LimitRow> limit_comparison(double pbar3, CausalType ctype, const std::vector<double>& eta_list,
                                              GroupTag g = GroupTag::PSL2) {
  for (std::size_t i = 0; i < eta_list.size(); ++i) {
    if (!(eta_list[i] < -1.0)) throw Error(ErrorCode::DomainError, "eta values must be below -1");
    if (i > 0 && !(eta_list[i] > eta_list[i - 1])) {
      throw Error(ErrorCode::DomainError, "eta values must increase toward -1");
    }
  }
  const ExtTime sr = sr_cut_time(beta_from_pbar3(pbar3, ctype), g);
  std::vector<LimitRow> rows(eta_list.size());
  parallel_for(rows.size(), [&](std::size_t i) {
    const Metric m = metric_from_eta(1.0, eta_list[i]);
    const ExtTime rc = cut_time(m, covector_from_pbar3(m, pbar3, 0.0, ctype), g);
    double diff = 0.0;
    if (rc.is_finite() != sr.is_finite()) diff = std::numeric_limits<double>::infinity();
    else if (rc.is_finite()) diff = std::abs(rc.value() - sr.value());
    rows[i] = {eta_list[i], rc, sr, diff};
  });
  return rows;
}

}  // namespace hypgeo
