#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <compare>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "hypgeo/algebra.hpp"
#include "hypgeo/errors.hpp"
#include "hypgeo/geodesic.hpp"
#include "hypgeo/metric.hpp"
#include "hypgeo/parallel.hpp"
#include "hypgeo/roots.hpp"

namespace hypgeo {

enum class GroupTag { PSL2, SL2 };

inline const char* to_string(GroupTag g) { return g == GroupTag::PSL2 ? "psl2" : "sl2"; }

// Time in (0, +inf]; the default value is +inf.
class ExtTime {
 public:
  constexpr ExtTime() = default;
  static constexpr ExtTime infinity() { return ExtTime(); }
  static ExtTime finite(double t) {
    if (!std::isfinite(t)) throw Error(ErrorCode::DomainError, "finite time expected");
    ExtTime e;
    e.value_ = t;
    return e;
  }
  bool is_finite() const { return value_ != std::numeric_limits<double>::infinity(); }
  // +inf for the infinite sentinel.
  double value() const { return value_; }
  friend auto operator<=>(const ExtTime&, const ExtTime&) = default;

 private:
  double value_ = std::numeric_limits<double>::infinity();
};

enum class Stratum { M0, M12, M3, None };

inline const char* to_string(Stratum s) {
  switch (s) {
    case Stratum::M0: return "M0";
    case Stratum::M12: return "M12";
    case Stratum::M3: return "M3";
    case Stratum::None: return "none";
  }
  return "unknown";
}

struct CutDescriptor {
  GroupTag group = GroupTag::PSL2;
  ExtTime t_max;
  ExtTime t_conj;
  ExtTime t_cut;
  Stratum active_stratum = Stratum::None;
};

namespace detail {

inline bool on_equator(const Covector& p) { return p.ctype == CausalType::SpaceLike && *p.pbar3 == 0.0; }

inline ExtTime from_tau(const Metric& m, const Covector& p, double tau) {
  return ExtTime::finite(2.0 * m.I1 * tau / p.norm);
}

template <class F>
ExtTime or_infinity(F&& f) {
  try {
    return f();
  } catch (const Error& e) {
    if (e.code() == ErrorCode::NoRootFound) return ExtTime::infinity();
    throw;
  }
}

}  // namespace detail

// First Maxwell time of the symmetry group: q0 roots for PSL2, q3 roots for SL2, capped by the
// M12 time 2 pi I1/|p| for time-like covectors.
inline ExtTime maxwell_time(const Metric& m, const Covector& p, GroupTag g = GroupTag::PSL2) {
  if (detail::on_equator(p)) return ExtTime::infinity();
  return detail::or_infinity([&] {
    const bool psl = g == GroupTag::PSL2;
    switch (p.ctype) {
      case CausalType::TimeLike: {
        const double tau = psl ? tau0_timelike(m.eta, *p.pbar3) : tau3_timelike(m.eta, *p.pbar3);
        return detail::from_tau(m, p, std::min(std::numbers::pi, tau));
      }
      case CausalType::SpaceLike:
        return detail::from_tau(m, p, psl ? tau0_spacelike(m.eta, *p.pbar3) : tau3_spacelike(m.eta, *p.pbar3));
      case CausalType::LightLike:
        return ExtTime::finite(psl ? maxwell_root_q0(m, p) : maxwell_root_q3(m, p));
    }
    return ExtTime::infinity();
  });
}

inline ExtTime first_conjugate_time(const Metric& m, const Covector& p) {
  if (p.ctype != CausalType::TimeLike) return ExtTime::infinity();
  return ExtTime::finite(2.0 * std::numbers::pi * m.I1 / p.norm);
}

// Cut time by the threshold form. PSL2: tau0 branch, or pi when eta > -3/2 and |pbar3| <= -3/(2 eta).
// SL2: tau3 branch, or pi when eta > -2 and |pbar3| < -2/eta.
inline CutDescriptor cut_descriptor(const Metric& m, const Covector& p, GroupTag g) {
  CutDescriptor d;
  d.group = g;
  d.t_conj = first_conjugate_time(m, p);
  if (detail::on_equator(p)) {
    d.active_stratum = Stratum::None;
    return d;
  }
  const bool psl = g == GroupTag::PSL2;
  const Stratum root_stratum = psl ? Stratum::M0 : Stratum::M3;
  d.active_stratum = root_stratum;
  d.t_cut = detail::or_infinity([&] {
    switch (p.ctype) {
      case CausalType::TimeLike: {
        const double pb = std::abs(*p.pbar3);
        const bool rotation = psl ? (m.eta > Metric::eta_three_halves && pb <= m.pbar3_psl2_threshold())
                                  : (m.eta > Metric::eta_two && pb < m.pbar3_sl2_threshold());
        if (rotation) {
          d.active_stratum = Stratum::M12;
          return detail::from_tau(m, p, std::numbers::pi);
        }
        return detail::from_tau(m, p, psl ? tau0_timelike(m.eta, pb) : tau3_timelike(m.eta, pb));
      }
      case CausalType::SpaceLike:
        return detail::from_tau(m, p, psl ? tau0_spacelike(m.eta, *p.pbar3) : tau3_spacelike(m.eta, *p.pbar3));
      case CausalType::LightLike:
        return ExtTime::finite(psl ? maxwell_root_q0(m, p) : maxwell_root_q3(m, p));
    }
    return ExtTime::infinity();
  });
  if (!d.t_cut.is_finite()) d.active_stratum = Stratum::None;
  d.t_max = maxwell_time(m, p, g);
  return d;
}

inline ExtTime cut_time(const Metric& m, const Covector& p, GroupTag g = GroupTag::PSL2) {
  return cut_descriptor(m, p, g).t_cut;
}

struct MaxwellPair {
  Stratum stratum = Stratum::None;
  SymmetryElement sigma;
  Preimage partner;
};

// Symmetry whose preimage action produces the second geodesic reaching Exp(p, t_cut): -id on the
// q1 q2 q3 part for M0, rotation by pi for M12, sigma2 for M3.
inline MaxwellPair maxwell_partner(const Metric& m, const Covector& p, GroupTag g) {
  const CutDescriptor d = cut_descriptor(m, p, g);
  if (!d.t_cut.is_finite()) throw Error(ErrorCode::DomainError, "no Maxwell point at infinite cut time");
  MaxwellPair r;
  r.stratum = d.active_stratum;
  switch (d.active_stratum) {
    case Stratum::M0: r.sigma = SymmetryElement::composite(std::numbers::pi, false, true); break;
    case Stratum::M12: r.sigma = SymmetryElement::rotation(std::numbers::pi); break;
    default: r.sigma = SymmetryElement::reflection_sigma2(); break;
  }
  r.partner = apply_symmetry_preimage(m, r.sigma, p, d.t_cut.value());
  return r;
}

struct RadiusCase {
  int index;  // 1, 2 or 3
  const char* label;
};

inline RadiusCase injectivity_case(const Metric& m) {
  if (m.eta <= Metric::eta_two) return {1, "eta<=-2"};
  if (m.eta <= Metric::eta_radius_switch()) return {2, "-2<eta<=(-3-sqrt73)/8"};
  return {3, "(-3-sqrt73)/8<eta<-1"};
}

inline double injectivity_radius_case(double I1, double eta, int which) {
  const double pi = std::numbers::pi;
  switch (which) {
    case 1: return pi * std::sqrt(I1) * std::sqrt(-1.0 / (1.0 + eta));
    case 2: return pi * std::sqrt(I1) * std::sqrt(-(eta + 4.0) / eta);
    default: return 2.0 * pi * std::sqrt(I1) * std::sqrt(-(1.0 + eta));
  }
}

inline double injectivity_radius(const Metric& m) {
  return injectivity_radius_case(m.I1, m.eta, injectivity_case(m).index);
}

// Minimum of cut_time over n points of C, uniform in the meridian angle (phase is irrelevant).
inline double injectivity_radius_bruteforce(const Metric& m, std::size_t n, GroupTag g = GroupTag::PSL2) {
  std::vector<double> t(n);
  parallel_for(n, [&](std::size_t i) {
    const Covector p = covector_on_meridian(m, meridian_u(i, n), 0.0);
    t[i] = cut_time(m, p, g).value();
  });
  return *std::min_element(t.begin(), t.end());
}

enum class LocusStratum { Z, R_eta, H, T_eta, ConjugateCircle };

inline const char* to_string(LocusStratum s) {
  switch (s) {
    case LocusStratum::Z: return "Z";
    case LocusStratum::R_eta: return "R_eta";
    case LocusStratum::H: return "H";
    case LocusStratum::T_eta: return "T_eta";
    case LocusStratum::ConjugateCircle: return "conjugate_circle";
  }
  return "unknown";
}

struct LocusPoint {
  std::array<int, 2> index{0, 0};
  // Stratum coordinates: (rho, theta) for Z and H, (angle, 0) for R_eta, (pbar3, 0) for T_eta
  // and the conjugate circle.
  std::array<double, 2> coords{0.0, 0.0};
  SplitQuaternion point;  // canonical representative for PSL2 strata
  Covector witness;
  double t = 0.0;
  double residual = 0.0;  // |Exp(witness, t_cut) - point|
  bool conjugate = false;
};

struct LocusSample {
  LocusStratum stratum;
  std::vector<LocusPoint> points;
};

namespace detail {

inline double group_residual(GroupTag g, const SplitQuaternion& a, const SplitQuaternion& b) {
  return g == GroupTag::PSL2 ? psl2_max_abs_diff(a, b) : max_abs_diff(a, b);
}

inline SplitQuaternion cut_point(const Metric& m, const Covector& p, GroupTag g) {
  const SplitQuaternion q = exp_map(m, p, cut_time(m, p, g).value());
  return g == GroupTag::PSL2 ? psl2_canonicalize(q).rep() : q;
}

// Northern-hemisphere meridian coordinate where the root-stratum branch starts: the pole, or the
// pbar3 threshold where tau0e (PSL2) or tau3e (SL2) reaches pi.
inline double root_branch_u_max(const Metric& m, GroupTag g) {
  const bool psl = g == GroupTag::PSL2;
  const bool has_rotation = psl ? m.eta > Metric::eta_three_halves : m.eta > Metric::eta_two;
  if (!has_rotation) return 1.0;
  const double thr = psl ? m.pbar3_psl2_threshold() : m.pbar3_sl2_threshold();
  return covector_from_pbar3(m, thr, 0.0, CausalType::TimeLike).p3 / std::sqrt(m.I3);
}

// Witness on the root stratum (Z or H) for the cut point with |(q1, q2)| = rho at direction theta.
inline LocusPoint root_stratum_witness(const Metric& m, GroupTag g, double rho, double theta,
                                       const SplitQuaternion& target) {
  const double u_max = root_branch_u_max(m, g);
  auto rho_of = [&](double u) {
    const SplitQuaternion q = cut_point(m, covector_on_meridian(m, u, 0.0), g);
    return std::hypot(q.q1, q.q2);
  };
  double u = u_max;
  if (rho > 0.0) {
    double hi = u_max, lo = 0.5 * u_max;
    for (int i = 0; i < 200 && rho_of(lo) < rho; ++i) {
      hi = lo;
      lo *= 0.5;
    }
    for (int i = 0; i < 200 && hi - lo > 4e-16 * hi; ++i) {
      const double mid = 0.5 * (lo + hi);
      (rho_of(mid) > rho ? lo : hi) = mid;
    }
    u = 0.5 * (lo + hi);
  }
  SplitQuaternion ref = exp_map(m, covector_on_meridian(m, u, 0.0), cut_time(m, covector_on_meridian(m, u, 0.0), g).value());
  // In PSL2 the sign of the representative is arbitrary at q0 = 0; match it to the target.
  if (g == GroupTag::PSL2 && ref.q3 * target.q3 < 0.0) ref = -ref;
  const double phase = rho > 0.0 ? theta - std::atan2(ref.q2, ref.q1) : 0.0;
  LocusPoint lp;
  lp.point = target;
  lp.witness = covector_on_meridian(m, u, phase);
  lp.t = cut_time(m, lp.witness, g).value();
  lp.residual = group_residual(g, cut_point(m, lp.witness, g), target);
  return lp;
}

}  // namespace detail

// Z (PSL2) or H (SL2): n x n polar grid with rho in [0, extent]; R_eta: angles in
// [2 pi |1+eta|, pi] with both signs; T_eta: pbar3 in [1, -2/eta] with both signs of the k-part.
inline std::vector<LocusSample> cut_locus_sample(const Metric& m, GroupTag g, int n, double extent = 3.0) {
  if (n < 2) throw Error(ErrorCode::DomainError, "locus grid needs n >= 2");
  const double pi = std::numbers::pi;
  std::vector<LocusSample> out;
  const bool psl = g == GroupTag::PSL2;
  {
    LocusSample s{psl ? LocusStratum::Z : LocusStratum::H, {}};
    s.points.resize(static_cast<std::size_t>(n) * n);
    parallel_for(s.points.size(), [&](std::size_t k) {
      const int i = static_cast<int>(k) / n, j = static_cast<int>(k) % n;
      const double rho = extent * i / (n - 1);
      const double theta = 2.0 * pi * j / n;
      const double big = std::sqrt(1.0 + rho * rho);
      const SplitQuaternion target = psl ? SplitQuaternion{0.0, rho * std::cos(theta), rho * std::sin(theta), big}
                                         : SplitQuaternion{-big, rho * std::cos(theta), rho * std::sin(theta), 0.0};
      LocusPoint lp = detail::root_stratum_witness(m, g, rho, theta, target);
      lp.index = {i, j};
      lp.coords = {rho, theta};
      s.points[k] = lp;
    });
    out.push_back(std::move(s));
  }
  if (psl && m.eta > Metric::eta_three_halves) {
    LocusSample s{LocusStratum::R_eta, {}};
    const double lo = -2.0 * pi * (1.0 + m.eta);
    for (int i = 0; i < n; ++i) {
      const double phi = lo + (pi - lo) * i / (n - 1);
      for (int sign : {1, -1}) {
        const double angle = sign * phi;
        LocusPoint lp;
        lp.index = {i, sign > 0 ? 0 : 1};
        lp.coords = {angle, 0.0};
        lp.point = psl2_canonicalize({std::cos(angle / 2.0), 0.0, 0.0, std::sin(angle / 2.0)}).rep();
        // Rotation angle 2 pi (1 + eta pbar3) at tau = pi; pbar3 < 0 mirrors it.
        const double pb = (1.0 + phi / (2.0 * pi)) / (-m.eta);
        lp.witness = covector_from_pbar3(m, sign > 0 ? -pb : pb, 0.0, CausalType::TimeLike);
        lp.t = cut_time(m, lp.witness, g).value();
        lp.residual = detail::group_residual(g, detail::cut_point(m, lp.witness, g), lp.point);
        lp.conjugate = i == 0;
        s.points.push_back(lp);
      }
    }
    out.push_back(std::move(s));
  }
  if (!psl && m.eta > Metric::eta_two) {
    LocusSample s{LocusStratum::T_eta, {}};
    const double hi = m.pbar3_sl2_threshold();
    for (int i = 0; i < n; ++i) {
      const double pb = 1.0 + (hi - 1.0) * i / (n - 1);
      for (int sign : {1, -1}) {
        const double a = pi * m.eta * pb;
        LocusPoint lp;
        lp.index = {i, sign > 0 ? 0 : 1};
        lp.coords = {sign * pb, 0.0};
        lp.point = {-std::cos(a), 0.0, 0.0, -sign * std::sin(a)};
        lp.witness = covector_from_pbar3(m, sign * pb, 0.0, CausalType::TimeLike);
        lp.t = cut_time(m, lp.witness, g).value();
        lp.residual = detail::group_residual(g, detail::cut_point(m, lp.witness, g), lp.point);
        lp.conjugate = i == 0;
        s.points.push_back(lp);
      }
    }
    out.push_back(std::move(s));
  }
  return out;
}

// Conjugate points Exp(p, t_conj) for time-like pbar3 in [1, pbar3_max]; all lie on exp(R k).
inline LocusSample conjugate_locus_sample(const Metric& m, int n, double pbar3_max = 4.0) {
  LocusSample s{LocusStratum::ConjugateCircle, {}};
  for (int i = 0; i < n; ++i) {
    LocusPoint lp;
    const double pb = 1.0 + (pbar3_max - 1.0) * i / std::max(1, n - 1);
    lp.index = {i, 0};
    lp.coords = {pb, 0.0};
    lp.witness = covector_from_pbar3(m, pb, 0.0, CausalType::TimeLike);
    lp.t = first_conjugate_time(m, lp.witness).value();
    lp.point = exp_map(m, lp.witness, lp.t);
    lp.conjugate = true;
    s.points.push_back(lp);
  }
  return s;
}

struct WavefrontPoint {
  std::array<int, 2> index{0, 0};
  Covector p;
  SplitQuaternion q;
  bool optimal = true;
};

// n x n grid: meridian coordinate meridian_u(i, n) by phase 2 pi j/n.
inline std::vector<WavefrontPoint> wavefront_sample(const Metric& m, double t, int n, GroupTag g = GroupTag::PSL2) {
  if (!(t > 0.0)) throw Error(ErrorCode::DomainError, "wavefront time must be positive");
  if (n < 8) throw Error(ErrorCode::DomainError, "wavefront grid needs n >= 8");
  std::vector<WavefrontPoint> out(static_cast<std::size_t>(n) * n);
  parallel_for(out.size(), [&](std::size_t k) {
    const int i = static_cast<int>(k) / n, j = static_cast<int>(k) % n;
    const double phase = 2.0 * std::numbers::pi * j / n;
    WavefrontPoint w;
    w.index = {i, j};
    w.p = covector_on_meridian(m, meridian_u(static_cast<std::size_t>(i), static_cast<std::size_t>(n)), phase);
    w.q = exp_map(m, w.p, t);
    w.optimal = ExtTime::finite(t) < cut_time(m, w.p, g);
    out[k] = w;
  });
  return out;
}

struct LogResult {
  Covector p;
  double t = 0.0;
  double residual = 0.0;
};

namespace detail {

// (q0, q3, |(q1,q2)|) of Exp at meridian coordinate u and time t, analytic across the light cone.
struct ReducedPoint {
  double q0, q3, rho, phi;
};

inline ReducedPoint reduced_exp(const Metric& m, double u, double t) {
  const double p3 = u * std::sqrt(m.I3);
  const double perp2 = m.I1 * (1.0 - u * u);
  const double kil = m.I1 + m.eta * p3 * p3;
  const double w = t / (2.0 * m.I1);
  const auto cs = cos_sinc(kil * w * w);
  const double phi = w * m.eta * p3;
  const double ws = w * cs.s;
  return {cs.c * std::cos(phi) - ws * p3 * std::sin(phi), cs.c * std::sin(phi) + ws * p3 * std::cos(phi),
          ws * std::sqrt(std::max(0.0, perp2)), phi};
}

}  // namespace detail

// Unique (p, t) with t < t_cut(p) and Exp(p, t) = target, by damped Newton on the rotation-reduced
// system (u, t) -> (q0, q3) from multiple starts.
inline LogResult riemannian_log(const Metric& m, const Psl2Element& target, double tol = 1e-12,
                                double cut_tol = 1e-8) {
  const SplitQuaternion Q = target.rep();
  const double rho = std::hypot(Q.q1, Q.q2);
  if (std::abs(Q.q0 - 1.0) < 1e-14 && rho < 1e-14 && std::abs(Q.q3) < 1e-14) {
    throw Error(ErrorCode::IdentityTarget, "target is the identity");
  }
  if (std::abs(Q.q0) < cut_tol) throw Error(ErrorCode::OnCutLocus, "q0 = 0: central symmetry");
  if (m.eta > Metric::eta_three_halves && rho < cut_tol) {
    const double angle = std::abs(2.0 * std::atan2(Q.q3, Q.q0));
    if (angle >= -2.0 * std::numbers::pi * (1.0 + m.eta) - cut_tol) {
      throw Error(ErrorCode::OnCutLocus, "rotation inside the interval R_eta");
    }
  }
  const double scale = 1.0 + std::max(std::abs(Q.q0), std::abs(Q.q3));
  auto residual = [&](double u, double t) {
    const auto r = detail::reduced_exp(m, u, t);
    return std::array<double, 2>{r.q0 - Q.q0, r.q3 - Q.q3};
  };
  auto norm = [](const std::array<double, 2>& f) { return std::hypot(f[0], f[1]); };

  struct Seed {
    double u, t, r;
  };
  std::vector<Seed> seeds;
  const double t_lb = 2.0 * std::sqrt(m.I1) * std::asinh(rho);
  for (int a = 0; a <= 20; ++a) {
    const double u = -1.0 + a / 10.0;
    const double tc = cut_time(m, covector_on_meridian(m, u, 0.0)).value();
    const double cap = std::isfinite(tc) ? tc : 4.0 * t_lb + 4.0 * std::numbers::pi * std::sqrt(m.I1);
    for (int b = 1; b <= 10; ++b) {
      const double t = cap * (b - 0.5) / 10.0;
      seeds.push_back({u, t, norm(residual(u, t))});
    }
  }
  std::sort(seeds.begin(), seeds.end(), [](const Seed& x, const Seed& y) { return x.r < y.r; });

  double best_r = std::numeric_limits<double>::infinity();
  LogResult best;
  bool found = false;
  for (std::size_t s = 0; s < std::min<std::size_t>(8, seeds.size()); ++s) {
    double u = seeds[s].u, t = seeds[s].t;
    auto f = residual(u, t);
    for (int it = 0; it < 100 && norm(f) > 1e-16 * scale; ++it) {
      const double hu = 1e-7, ht = 1e-7 * std::max(1.0, t);
      const double ua = std::max(-1.0, u - hu), ub = std::min(1.0, u + hu);
      const auto fu1 = residual(ub, t), fu0 = residual(ua, t);
      const auto ft1 = residual(u, t + ht), ft0 = residual(u, std::max(0.0, t - ht));
      const double tl = std::max(0.0, t - ht);
      const double j00 = (fu1[0] - fu0[0]) / (ub - ua), j10 = (fu1[1] - fu0[1]) / (ub - ua);
      const double j01 = (ft1[0] - ft0[0]) / (t + ht - tl), j11 = (ft1[1] - ft0[1]) / (t + ht - tl);
      const double det = j00 * j11 - j01 * j10;
      if (det == 0.0 || !std::isfinite(det)) break;
      const double du = -(j11 * f[0] - j01 * f[1]) / det;
      const double dt = -(-j10 * f[0] + j00 * f[1]) / det;
      double lambda = 1.0;
      bool moved = false;
      for (int k = 0; k < 40; ++k, lambda *= 0.5) {
        const double un = std::clamp(u + lambda * du, -1.0, 1.0);
        const double tn = std::max(1e-300, t + lambda * dt);
        const auto fn = residual(un, tn);
        if (norm(fn) < norm(f)) {
          u = un;
          t = tn;
          f = fn;
          moved = true;
          break;
        }
      }
      if (!moved) break;
    }
    const double r = norm(f);
    if (r > std::max(tol, 1e-12) * scale) {
      if (r < best_r) best_r = r;
      continue;
    }
    const auto red = detail::reduced_exp(m, u, t);
    double phase = rho > 0.0 ? std::atan2(Q.q2, Q.q1) + red.phi : 0.0;
    if (red.rho < 0.0) phase += std::numbers::pi;
    const Covector p = covector_on_meridian(m, u, phase);
    if (!(ExtTime::finite(t) < cut_time(m, p))) continue;
    const double full = psl2_max_abs_diff(exp_map(m, p, t), Q);
    if (full > 1e-8 * scale) continue;
    if (!found || t < best.t) {
      best = {p, t, full};
      found = true;
    }
  }
  if (!found) {
    throw Error(ErrorCode::NoConvergence, "no preimage inside the cut domain; best residual " + std::to_string(best_r));
  }
  return best;
}

}  // namespace hypgeo
