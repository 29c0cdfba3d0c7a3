#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "gen.hpp"
#include "hypgeo/optimality.hpp"

using namespace hypgeo;

namespace {

constexpr double pi = std::numbers::pi;

template <class F>
void expect_error(ErrorCode code, F&& f) {
  try {
    f();
    FAIL() << "expected " << to_string(code);
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), code);
  }
}

// Oracle for the SL2 time-like cut: threshold form with -2/eta and a plain scan for tau3.
double sl2_cut_oracle(const Metric& m, const Covector& p) {
  const double pb = std::abs(*p.pbar3);
  double tau = pi;
  if (!(m.eta > -2.0 && pb < -2.0 / m.eta)) {
    double x = 1e-9;
    const double step = 1e-4;
    while (reduced_q3(m.eta, CausalType::TimeLike, pb, x + step) < 0) x += step;
    double lo = x, hi = x + step;
    for (int i = 0; i < 200; ++i) {
      const double mid = 0.5 * (lo + hi);
      (reduced_q3(m.eta, CausalType::TimeLike, pb, mid) < 0 ? lo : hi) = mid;
    }
    tau = 0.5 * (lo + hi);
  }
  return 2 * m.I1 * tau / p.norm;
}

}  // namespace

TEST(Optimality, ExtTime) {
  EXPECT_FALSE(ExtTime().is_finite());
  EXPECT_LT(ExtTime::finite(1e300), ExtTime::infinity());
  EXPECT_EQ(ExtTime::infinity(), ExtTime());
  EXPECT_LT(ExtTime::finite(1.0), ExtTime::finite(2.0));
  expect_error(ErrorCode::DomainError, [] { ExtTime::finite(std::numeric_limits<double>::infinity()); });
}

TEST(Optimality, MaxwellAndConjugateExamples) {
  const Metric m = make_metric(1, 1);
  EXPECT_FALSE(maxwell_time(m, covector_from_pbar3(m, 0.0, 0.2, CausalType::SpaceLike)).is_finite());
  const Covector pole = covector_from_components(m, 0, 0, 1);
  EXPECT_NEAR(maxwell_time(m, pole).value(), pi, 1e-14);
  EXPECT_NEAR(first_conjugate_time(m, pole).value(), 2 * pi, 1e-14);
  EXPECT_FALSE(first_conjugate_time(m, covector_from_pbar3(m, 1.0, 0, CausalType::LightLike)).is_finite());
  EXPECT_FALSE(first_conjugate_time(m, covector_from_pbar3(m, 0.4, 0, CausalType::SpaceLike)).is_finite());
}

TEST(Optimality, MaxwellContinuity) {
  const Metric m = metric_from_eta(1.0, -1.7);
  const Covector l = covector_from_pbar3(m, 1.0, 0.0, CausalType::LightLike);
  const double u = l.p3 / std::sqrt(m.I3);
  const double tl0 = maxwell_time(m, l).value();
  double prev_a = 1e300, prev_b = 1e300;
  for (int k = 2; k <= 8; ++k) {
    const double du = std::pow(10.0, -k);
    const double a = std::abs(maxwell_time(m, covector_on_meridian(m, u + du, 0)).value() - tl0);
    const double b = std::abs(maxwell_time(m, covector_on_meridian(m, u - du, 0)).value() - tl0);
    EXPECT_LT(a, prev_a);
    EXPECT_LT(b, prev_b);
    prev_a = a;
    prev_b = b;
  }
  EXPECT_LT(std::max(prev_a, prev_b), 1e-5);
  // Diverges toward the equator.
  double prev = 0;
  for (double pb : {0.5, 0.1, 0.01, 0.001}) {
    const double t = maxwell_time(m, covector_from_pbar3(m, pb, 0, CausalType::SpaceLike)).value();
    EXPECT_GT(t, prev);
    prev = t;
  }
  EXPECT_GT(prev, 1000);
}

TEST(Optimality, CutTimeExamples) {
  const Metric m12 = make_metric(1, 5);
  const Covector pole12 = covector_from_pbar3(m12, 1.0, 0, CausalType::TimeLike);
  EXPECT_NEAR(cut_time(m12, pole12, GroupTag::PSL2).value(), 2 * pi * std::sqrt(0.2), 1e-12);
  EXPECT_NEAR(pole12.norm, std::sqrt(1.0 / 0.2), 1e-12);
  const Metric m2 = make_metric(1, 1);
  EXPECT_NEAR(cut_time(m2, covector_from_components(m2, 0, 0, 1), GroupTag::PSL2).value(), pi, 1e-14);
  EXPECT_FALSE(cut_time(m2, covector_from_pbar3(m2, 0.0, 0, CausalType::SpaceLike)).is_finite());
  EXPECT_FALSE(cut_time(m2, covector_from_pbar3(m2, 0.0, 0, CausalType::SpaceLike), GroupTag::SL2).is_finite());
  // SL2 at the pole: tau3e(1) = -pi/(1+eta) when that is below pi (eta <= -2), else the conjugate time.
  for (double eta : {-3.0, -2.5, -2.0, -1.8, -1.6, -1.2}) {
    const Metric m = metric_from_eta(1.0, eta);
    const Covector p = covector_from_pbar3(m, 1.0, 0, CausalType::TimeLike);
    const double expect = eta <= -2.0 ? 2 * (-pi / (1 + eta)) / p.norm : 2 * pi / p.norm;
    EXPECT_NEAR(cut_time(m, p, GroupTag::SL2).value(), expect, 1e-12) << eta;
    EXPECT_LE(cut_time(m, p, GroupTag::SL2), first_conjugate_time(m, p));
  }
}

TEST(Optimality, Sl2CutMatchesThresholdOracle) {
  gen::Rng r(51);
  for (int n = 0; n < 300; ++n) {
    const Metric m = r.metric(-3.0, -1.05);
    const Covector p = r.covector(m, CausalType::TimeLike);
    EXPECT_NEAR(cut_time(m, p, GroupTag::SL2).value(), sl2_cut_oracle(m, p), 1e-8) << m.eta << ' ' << *p.pbar3;
  }
}

TEST(Optimality, DescriptorInvariants) {
  gen::Rng r(52);
  for (int n = 0; n < 1500; ++n) {
    const Metric m = r.metric();
    const Covector p = r.covector(m, r.type_of(n), 1e-3);
    for (GroupTag g : {GroupTag::PSL2, GroupTag::SL2}) {
      const CutDescriptor d = cut_descriptor(m, p, g);
      ASSERT_TRUE(d.t_cut.is_finite());
      EXPECT_NEAR(d.t_max.value(), d.t_cut.value(), 1e-10 * d.t_cut.value());
      EXPECT_LE(d.t_cut, d.t_conj);
      EXPECT_NE(d.active_stratum, Stratum::None);
    }
    EXPECT_LE(cut_time(m, p, GroupTag::PSL2), cut_time(m, p, GroupTag::SL2));
  }
}

TEST(Optimality, MaxwellCoincidence) {
  gen::Rng r(53);
  for (int n = 0; n < 600; ++n) {
    const Metric m = r.metric();
    const Covector p = r.covector(m, r.type_of(n), 0.3);
    for (GroupTag g : {GroupTag::PSL2, GroupTag::SL2}) {
      const MaxwellPair mp = maxwell_partner(m, p, g);
      const double t = cut_time(m, p, g).value();
      const auto a = exp_map(m, p, t), b = exp_map(m, mp.partner.p, mp.partner.t);
      EXPECT_EQ(mp.partner.t, t);
      EXPECT_GT(gen::pdiff(p, mp.partner.p), 1e-6);
      const double scale = 1 + std::abs(a.q0) + std::abs(a.q3);
      EXPECT_LE(g == GroupTag::PSL2 ? psl2_max_abs_diff(a, b) : max_abs_diff(a, b), 1e-9 * scale);
      switch (mp.stratum) {
        case Stratum::M0: EXPECT_LT(std::abs(a.q0), 1e-8 * scale); break;
        case Stratum::M12: EXPECT_LT(std::hypot(a.q1, a.q2), 1e-8); break;
        case Stratum::M3: EXPECT_LT(std::abs(a.q3), 1e-8 * scale); break;
        case Stratum::None: ADD_FAILURE(); break;
      }
    }
  }
}

TEST(Optimality, CutTimeContinuousInEtaAtThreeHalves) {
  for (double pb : {1.0, 1.1, 1.4, 2.0}) {
    const double below = cut_time(metric_from_eta(1.0, -1.5 - 1e-9), covector_from_pbar3(metric_from_eta(1.0, -1.5 - 1e-9), pb, 0, CausalType::TimeLike)).value();
    const double above = cut_time(metric_from_eta(1.0, -1.5 + 1e-9), covector_from_pbar3(metric_from_eta(1.0, -1.5 + 1e-9), pb, 0, CausalType::TimeLike)).value();
    EXPECT_NEAR(below, above, 1e-6) << pb;
  }
}

TEST(Optimality, InjectivityRadius) {
  EXPECT_NEAR(injectivity_radius(metric_from_eta(1, -2)), pi, 1e-15);
  EXPECT_NEAR(injectivity_radius(metric_from_eta(1, -1.6)), pi * std::sqrt(1.5), 1e-14);
  EXPECT_NEAR(injectivity_radius(metric_from_eta(1, -1.2)), 2 * pi * std::sqrt(0.2), 1e-14);
  EXPECT_EQ(injectivity_case(metric_from_eta(1, -2)).index, 1);
  EXPECT_EQ(injectivity_case(metric_from_eta(1, -1.6)).index, 2);
  EXPECT_EQ(injectivity_case(metric_from_eta(1, -1.2)).index, 3);
  const double s = Metric::eta_radius_switch();
  EXPECT_NEAR(injectivity_radius_case(1, -2, 1), injectivity_radius_case(1, -2, 2), 1e-12);
  EXPECT_NEAR(injectivity_radius_case(1, s, 2), injectivity_radius_case(1, s, 3), 1e-12);
  const Metric big = metric_from_eta(2.5, -1.7);
  EXPECT_NEAR(injectivity_radius(big), std::sqrt(2.5) * injectivity_radius(metric_from_eta(1, -1.7)), 1e-12);
  for (double eta : {-2.0, -1.6, -1.2}) {
    const Metric m = metric_from_eta(1, eta);
    EXPECT_NEAR(injectivity_radius_bruteforce(m, 10001), injectivity_radius(m), 1e-3) << eta;
  }
}

TEST(Optimality, InjectiveOnCutDomain) {
  gen::Rng r(54);
  const Metric m = metric_from_eta(1.0, -1.3);
  std::vector<std::pair<Covector, double>> pts;
  std::vector<SplitQuaternion> img;
  for (int n = 0; n < 600; ++n) {
    const Covector p = r.covector(m, r.type_of(n), 0.2);
    const double t = r.uniform(0.05, 0.999) * cut_time(m, p).value();
    pts.push_back({p, t});
    img.push_back(exp_map(m, p, t));
  }
  for (std::size_t i = 0; i < img.size(); ++i) {
    for (std::size_t j = i + 1; j < img.size(); ++j) {
      if (psl2_max_abs_diff(img[i], img[j]) < 1e-9) {
        EXPECT_LT(gen::pdiff(pts[i].first, pts[j].first) + std::abs(pts[i].second - pts[j].second), 1e-6);
      }
    }
  }
}

TEST(Optimality, CutLocusStrata) {
  for (double eta : {-2.5, -1.5}) {
    const auto s = cut_locus_sample(metric_from_eta(1, eta), GroupTag::PSL2, 6);
    ASSERT_EQ(s.size(), 1u);
    EXPECT_EQ(s[0].stratum, LocusStratum::Z);
    EXPECT_EQ(s[0].points.size(), 36u);
  }
  const auto sl = cut_locus_sample(metric_from_eta(1, -2.2), GroupTag::SL2, 6);
  ASSERT_EQ(sl.size(), 1u);
  EXPECT_EQ(sl[0].stratum, LocusStratum::H);

  const Metric m = metric_from_eta(1, -1.2);
  const auto psl = cut_locus_sample(m, GroupTag::PSL2, 10);
  ASSERT_EQ(psl.size(), 2u);
  for (const auto& p : psl[0].points) {
    EXPECT_LT(std::abs(p.point.q0), 1e-10);
    EXPECT_LT(p.residual, 1e-9);
    EXPECT_LT(p.t, first_conjugate_time(m, p.witness) .value() + 1e-9);
  }
  EXPECT_EQ(psl[1].stratum, LocusStratum::R_eta);
  const double lo = -2 * pi * (1 + m.eta);
  for (const auto& p : psl[1].points) {
    EXPECT_LT(std::hypot(p.point.q1, p.point.q2), 1e-15);
    const double angle = 2 * std::atan2(p.point.q3, p.point.q0);
    EXPECT_GE(std::abs(angle), lo - 1e-12);
    EXPECT_LE(std::abs(angle), pi + 1e-12);
    EXPECT_LT(p.residual, 1e-9);
    EXPECT_EQ(p.conjugate, std::abs(std::abs(p.coords[0]) - lo) < 1e-12);
    if (p.conjugate) {
      EXPECT_NEAR(p.t, first_conjugate_time(m, p.witness).value(), 1e-9);
    }
  }

  const auto s2 = cut_locus_sample(m, GroupTag::SL2, 10);
  ASSERT_EQ(s2.size(), 2u);
  for (const auto& p : s2[0].points) {
    EXPECT_LT(std::abs(p.point.q3), 1e-10);
    EXPECT_LE(p.point.q0, -1.0);
    EXPECT_LT(p.residual, 1e-9);
  }
  EXPECT_EQ(s2[1].stratum, LocusStratum::T_eta);
  for (const auto& p : s2[1].points) {
    EXPECT_LT(std::hypot(p.point.q1, p.point.q2), 1e-15);
    EXPECT_GE(std::abs(p.coords[0]), 1.0);
    EXPECT_LE(std::abs(p.coords[0]), -2 / m.eta + 1e-12);
    EXPECT_LT(p.residual, 1e-9);
  }
}

TEST(Optimality, ConjugateLocusOnRotationCircle) {
  const Metric m = metric_from_eta(1.3, -1.7);
  const auto s = conjugate_locus_sample(m, 20);
  ASSERT_EQ(s.points.size(), 20u);
  for (const auto& p : s.points) {
    EXPECT_LT(std::hypot(p.point.q1, p.point.q2), 1e-12);
    EXPECT_NEAR(p.point.q0 * p.point.q0 + p.point.q3 * p.point.q3, 1.0, 1e-12);
  }
}

TEST(Optimality, Wavefront) {
  const Metric m = metric_from_eta(1.0, -1.6);
  for (const auto& w : wavefront_sample(m, 1e-6, 8)) {
    EXPECT_TRUE(w.optimal);
    EXPECT_LT(max_abs_diff(w.q, {1, 0, 0, 0}), 1e-6);
  }
  const int n = 16;
  const auto front = wavefront_sample(m, 2.0, n);
  for (int i = 0; i < n; ++i) {
    const auto& a = front[i * n].q;
    for (int j = 1; j < n; ++j) {
      const auto& b = front[i * n + j].q;
      EXPECT_NEAR(a.q0, b.q0, 1e-12);
      EXPECT_NEAR(a.q3, b.q3, 1e-12);
      EXPECT_NEAR(std::hypot(a.q1, a.q2), std::hypot(b.q1, b.q2), 1e-12);
    }
  }
  const double rad = injectivity_radius(m);
  bool any = false;
  for (const auto& w : wavefront_sample(m, rad * 1.01, 65)) any = any || !w.optimal;
  EXPECT_TRUE(any);
  for (const auto& w : wavefront_sample(m, rad * 0.99, 65)) EXPECT_TRUE(w.optimal);
}

TEST(Optimality, LogRoundTrip) {
  gen::Rng r(55);
  for (int n = 0; n < 150; ++n) {
    const Metric m = r.metric();
    const Covector p = r.covector(m, r.type_of(n), 0.3);
    const double t = r.uniform(0.02, 0.95) * std::min(cut_time(m, p).value(), 20.0);
    const LogResult l = riemannian_log(m, psl2_canonicalize(exp_map(m, p, t)));
    EXPECT_NEAR(l.t, t, 1e-9);
    EXPECT_LT(gen::pdiff(l.p, p), 1e-8);
  }
}

TEST(Optimality, LogErrorsAndSymmetry) {
  const Metric m = metric_from_eta(1.0, -1.2);
  expect_error(ErrorCode::OnCutLocus, [&] { riemannian_log(m, psl2_canonicalize({0, 0.6, 0.8, std::sqrt(2.0)})); });
  expect_error(ErrorCode::OnCutLocus, [&] { riemannian_log(m, psl2_canonicalize({std::cos(1.4), 0, 0, std::sin(1.4)})); });
  expect_error(ErrorCode::IdentityTarget, [&] { riemannian_log(m, psl2_canonicalize({1, 0, 0, 0})); });
  gen::Rng r(56);
  for (int n = 0; n < 40; ++n) {
    const Covector p = r.covector(m, r.type_of(n), 0.3);
    const double t = r.uniform(0.1, 0.9) * std::min(cut_time(m, p).value(), 15.0);
    const auto g = exp_map(m, p, t);
    const SymmetryElement s = SymmetryElement::composite(r.phase(), r.sign() > 0, r.sign() > 0);
    const double a = riemannian_log(m, psl2_canonicalize(g)).t;
    const double b = riemannian_log(m, psl2_canonicalize(apply_symmetry_image(s, g))).t;
    EXPECT_NEAR(a, b, 1e-9);
  }
}
