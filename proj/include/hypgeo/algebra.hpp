#pragma once

#include <cmath>
#include <complex>
#include <utility>
#include <vector>

#include "hypgeo/errors.hpp"

namespace hypgeo {

using Complex = std::complex<double>;

// q0 + q1 i + q2 j + q3 k with i^2 = j^2 = 1, k^2 = -1, ij = -k, jk = i, ki = j.
struct SplitQuaternion {
  double q0 = 1.0;
  double q1 = 0.0;
  double q2 = 0.0;
  double q3 = 0.0;

  constexpr SplitQuaternion operator-() const { return {-q0, -q1, -q2, -q3}; }
  friend constexpr bool operator==(const SplitQuaternion&, const SplitQuaternion&) = default;
};

constexpr double pseudo_norm(const SplitQuaternion& q) {
  return q.q0 * q.q0 - q.q1 * q.q1 - q.q2 * q.q2 + q.q3 * q.q3;
}

constexpr SplitQuaternion sq_mul(const SplitQuaternion& a, const SplitQuaternion& b) {
  return {
      a.q0 * b.q0 + a.q1 * b.q1 + a.q2 * b.q2 - a.q3 * b.q3,
      a.q0 * b.q1 + a.q1 * b.q0 + a.q2 * b.q3 - a.q3 * b.q2,
      a.q0 * b.q2 + a.q2 * b.q0 + a.q3 * b.q1 - a.q1 * b.q3,
      a.q0 * b.q3 + a.q3 * b.q0 + a.q2 * b.q1 - a.q1 * b.q2,
  };
}

constexpr SplitQuaternion operator*(const SplitQuaternion& a, const SplitQuaternion& b) {
  return sq_mul(a, b);
}

// Inverse of a unit element: the conjugate.
constexpr SplitQuaternion sq_inverse(const SplitQuaternion& q) { return {q.q0, -q.q1, -q.q2, -q.q3}; }

inline double max_abs_diff(const SplitQuaternion& a, const SplitQuaternion& b) {
  return std::max({std::abs(a.q0 - b.q0), std::abs(a.q1 - b.q1), std::abs(a.q2 - b.q2),
                   std::abs(a.q3 - b.q3)});
}

namespace detail {

// C(x) = sum x^n/(2n)!, S(x) = sum x^n/(2n+1)!, i.e. cosh/sinhc of sqrt(x) for x > 0 and
// cos/sinc of sqrt(-x) for x < 0.
struct CosSinc {
  double c;
  double s;
};

inline CosSinc cos_sinc_series(double x) {
  double c = 0.0, s = 0.0, term_c = 1.0, term_s = 1.0;
  for (int n = 0; n < 40; ++n) {
    c += term_c;
    s += term_s;
    term_c *= x / ((2.0 * n + 1.0) * (2.0 * n + 2.0));
    term_s *= x / ((2.0 * n + 2.0) * (2.0 * n + 3.0));
    if (std::abs(term_c) < 1e-18 * std::abs(c) && std::abs(term_s) < 1e-18 * std::abs(s)) break;
  }
  return {c, s};
}

inline CosSinc cos_sinc(double x) {
  if (std::abs(x) < 1e-3) return cos_sinc_series(x);
  if (x > 0.0) {
    const double r = std::sqrt(x);
    return {std::cosh(r), std::sinh(r) / r};
  }
  const double r = std::sqrt(-x);
  return {std::cos(r), std::sin(r) / r};
}

}  // namespace detail

// exp of the Lie-algebra element (v1 i + v2 j + v3 k)/2.
inline SplitQuaternion sq_exp(double v1, double v2, double v3) {
  const double kil = v1 * v1 + v2 * v2 - v3 * v3;
  const double sq = v1 * v1 + v2 * v2 + v3 * v3;
  const double x = kil / 4.0;
  detail::CosSinc cs{};
  if (std::abs(kil) < 1e-9 * (sq + 1.0)) {
    cs = detail::cos_sinc_series(x);
  } else if (kil < 0.0) {
    const double h = std::sqrt(-kil) / 2.0;
    cs = {std::cos(h), std::sin(h) / h};
  } else {
    const double h = std::sqrt(kil) / 2.0;
    cs = {std::cosh(h), std::sinh(h) / h};
  }
  const double f = cs.s / 2.0;
  return {cs.c, f * v1, f * v2, f * v3};
}

inline SplitQuaternion from_sl2(double a, double b, double c, double d) {
  if (!(std::abs(a * d - b * c - 1.0) <= 1e-9)) {
    throw Error(ErrorCode::DeterminantError, "matrix determinant differs from 1");
  }
  return {(a + d) / 2.0, (a - d) / 2.0, (b + c) / 2.0, (c - b) / 2.0};
}

struct Sl2Matrix {
  double a, b, c, d;
};

constexpr Sl2Matrix to_sl2(const SplitQuaternion& q) {
  return {q.q0 + q.q1, q.q2 - q.q3, q.q2 + q.q3, q.q0 - q.q1};
}

// Canonical representative of {q, -q}.
class Psl2Element {
 public:
  Psl2Element() = default;
  explicit Psl2Element(const SplitQuaternion& q) : rep_(q) {
    if (q.q0 < 0.0 || (q.q0 == 0.0 && q.q3 < 0.0)) rep_ = -q;
  }
  const SplitQuaternion& rep() const { return rep_; }
  friend bool operator==(const Psl2Element&, const Psl2Element&) = default;

 private:
  SplitQuaternion rep_{};
};

inline Psl2Element psl2_canonicalize(const SplitQuaternion& q) { return Psl2Element(q); }

inline Psl2Element operator*(const Psl2Element& a, const Psl2Element& b) {
  return Psl2Element(sq_mul(a.rep(), b.rep()));
}

// Distance between classes {+-a} and {+-b}; insensitive to the sign tie at q0 = 0.
inline double psl2_max_abs_diff(const SplitQuaternion& a, const SplitQuaternion& b) {
  return std::min(max_abs_diff(a, b), max_abs_diff(a, -b));
}

inline Complex to_mobius_apply(const SplitQuaternion& q, Complex z) {
  const Complex num = Complex(q.q0, q.q3) * z + Complex(q.q1, q.q2);
  const Complex den = Complex(q.q1, -q.q2) * z + Complex(q.q0, -q.q3);
  if (std::abs(den) < 1e-14) throw Error(ErrorCode::DegenerateDenominator, "Mobius denominator vanishes");
  return num / den;
}

enum class IsometryKind { Elliptic, Parabolic, Hyperbolic, Identity };

inline const char* to_string(IsometryKind k) {
  switch (k) {
    case IsometryKind::Elliptic: return "elliptic";
    case IsometryKind::Parabolic: return "parabolic";
    case IsometryKind::Hyperbolic: return "hyperbolic";
    case IsometryKind::Identity: return "identity";
  }
  return "unknown";
}

struct IsometryClass {
  IsometryKind kind = IsometryKind::Identity;
  std::vector<Complex> fixed_points;
};

// Solves (q1 - q2 i) z^2 - 2 q3 i z - (q1 + q2 i) = 0.
inline IsometryClass classify_isometry(const SplitQuaternion& q) {
  const double rho2 = q.q1 * q.q1 + q.q2 * q.q2;
  if (rho2 <= 1e-24 && std::abs(q.q3) <= 1e-12) {
    throw Error(ErrorCode::IdentityInput, "q = +-1 has no isometry class");
  }
  const Complex a(q.q1, -q.q2);
  const double disc = rho2 - q.q3 * q.q3;  // quarter of the discriminant
  IsometryClass out;
  if (rho2 <= 1e-24) {
    out.kind = IsometryKind::Elliptic;
    out.fixed_points.push_back(Complex(0.0, 0.0));
    return out;
  }
  const Complex b(0.0, q.q3);  // z = (q3 i +- sqrt(disc)) / a
  if (std::abs(disc) <= 1e-10) {
    out.kind = IsometryKind::Parabolic;
    const Complex z = b / a;
    out.fixed_points.push_back(z / std::abs(z));
  } else if (disc < 0.0) {
    out.kind = IsometryKind::Elliptic;
    const double w = std::sqrt(-disc);
    // Of the two roots i(q3 +- w)/a, the one with the smaller modulus is inside the disk.
    const double smaller = std::abs(q.q3 - w) < std::abs(q.q3 + w) ? q.q3 - w : q.q3 + w;
    out.fixed_points.push_back(Complex(0.0, smaller) / a);
  } else {
    out.kind = IsometryKind::Hyperbolic;
    const double w = std::sqrt(disc);
    // Ordered by argument so that q and -q give the same list.
    Complex z1 = (b + w) / a, z2 = (b - w) / a;
    if (std::arg(z2) < std::arg(z1)) std::swap(z1, z2);
    out.fixed_points = {z1, z2};
  }
  return out;
}

// Distance (c/2) |ln |[u, v, z1, z2]|| with u, v the ends of the geodesic through z1, z2.
inline double hyperbolic_distance(Complex z1, Complex z2, double c = 1.0) {
  if (!(std::abs(z1) < 1.0) || !(std::abs(z2) < 1.0)) {
    throw Error(ErrorCode::OutsideDisk, "point outside the open unit disk");
  }
  if (!(c > 0.0)) throw Error(ErrorCode::DomainError, "scale c must be positive");
  if (z1 == z2) return 0.0;
  // Move z1 to the origin, where the geodesic is a diameter, and map its ends back.
  const Complex w = (z2 - z1) / (1.0 - std::conj(z1) * z2);
  const Complex e = w / std::abs(w);
  auto back = [&](Complex zeta) { return (zeta + z1) / (1.0 + std::conj(z1) * zeta); };
  const Complex u = back(-e);
  const Complex v = back(e);
  const Complex ratio = ((z1 - u) / (z1 - v)) / ((z2 - u) / (z2 - v));
  return 0.5 * c * std::abs(std::log(std::abs(ratio)));
}

}  // namespace hypgeo
