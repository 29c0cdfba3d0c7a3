// One PASS/FAIL line per acceptance criterion. Exit status is 0 when every criterion passes or
// is listed with --known-failure N.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <iterator>
#include <numbers>
#include <set>
#include <sstream>
#include <string>

#include "gen.hpp"
#include "hypgeo/hypgeo.hpp"

using namespace hypgeo;

namespace {

constexpr double pi = std::numbers::pi;

struct Outcome {
  bool pass;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

struct ExpSample {
  Metric m;
  Covector p;
  double t;
};

std::vector<ExpSample> exp_samples(int n, std::uint64_t seed) {
  gen::Rng r(seed);
  std::vector<ExpSample> out;
  for (int i = 0; i < n; ++i) {
    const Metric m = r.metric();
    const Covector p = r.covector(m, r.type_of(i));
    out.push_back({m, p, r.uniform(0.0, 20.0)});
  }
  return out;
}

Outcome c1_ode() {
  const auto s = exp_samples(300, 101);
  const auto t0 = std::chrono::steady_clock::now();
  std::vector<double> err(s.size());
  parallel_for(s.size(), [&](std::size_t i) {
    err[i] = max_abs_diff(exp_map(s[i].m, s[i].p, s[i].t), exp_map_ode_oracle(s[i].m, s[i].p, s[i].t, 10000));
  });
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const double emax = *std::max_element(err.begin(), err.end());
  return {emax < 1e-8 && secs < 10.0, fmt("max err %.3g over 300 samples, %.2f s", emax, secs)};
}

Outcome c2_product() {
  double emax = 0;
  for (const auto& x : exp_samples(300, 101)) {
    emax = std::max(emax, max_abs_diff(exp_map(x.m, x.p, x.t), exp_map_product(x.m, x.p, x.t)));
  }
  return {emax < 1e-10, fmt("max err %.3g over 300 samples", emax)};
}

Outcome c3_maxwell() {
  gen::Rng r(103);
  int bad = 0;
  double emax = 0, smax = 0;
  for (int i = 0; i < 200; ++i) {
    const Metric m = r.metric();
    const Covector p = r.covector(m, r.type_of(i), 0.1);
    const MaxwellPair mp = maxwell_partner(m, p, GroupTag::PSL2);
    const double t = maxwell_time(m, p).value();
    const auto a = exp_map(m, p, t), b = exp_map(m, mp.partner.p, mp.partner.t);
    const double e = psl2_max_abs_diff(a, b);
    double s = 0;
    switch (mp.stratum) {
      case Stratum::M0: s = std::abs(a.q0); break;
      case Stratum::M12: s = std::hypot(a.q1, a.q2); break;
      case Stratum::M3: s = std::abs(a.q3); break;
      case Stratum::None: s = 1; break;
    }
    emax = std::max(emax, e);
    smax = std::max(smax, s);
    if (!(e < 1e-9) || !(s < 1e-8) || gen::pdiff(p, mp.partner.p) < 1e-6 || mp.partner.t != t) ++bad;
  }
  return {bad == 0, fmt("%d bad of 200, max endpoint gap %.3g, max stratum defect %.3g", bad, emax, smax)};
}

Outcome c4_ordering() {
  int bad = 0, n = 0;
  for (int a = 0; a < 10; ++a) {
    const Metric m = metric_from_eta(1.0, -3.0 + 1.95 * a / 9.0);
    for (int i = 0; i < 1000; ++i) {
      const double u = std::cos(pi * (i + 0.5) / 1000.0);
      const Covector p = covector_on_meridian(m, u, 0.0);
      ++n;
      for (GroupTag g : {GroupTag::PSL2, GroupTag::SL2}) {
        if (!(maxwell_time(m, p, g) <= first_conjugate_time(m, p))) ++bad;
      }
      if (!(maxwell_root_q0(m, p) < maxwell_root_q3(m, p))) ++bad;
    }
  }
  return {bad == 0, fmt("%d violations on %d grid points", bad, n)};
}

Outcome c5_jacobian() {
  gen::Rng r(105);
  int bad = 0;
  double jmax = 0;
  for (int i = 0; i < 300; ++i) {
    const Metric m = r.metric();
    const double pb = r.sign() * r.uniform(1.0, 5.0);
    const auto roots = conjugate_roots(m, pb, 3);
    const Covector p = covector_from_pbar3(m, pb, 0.0, CausalType::TimeLike);
    if (std::abs(first_conjugate_time(m, p).value() - 2 * m.I1 * roots.front() / p.norm) > 1e-12) ++bad;
    for (double tau : roots) {
      const double j = jacobian(m, CausalType::TimeLike, pb, tau);
      jmax = std::max(jmax, std::abs(j));
      const double d = 1e-5;
      const double jl = jacobian(m, CausalType::TimeLike, pb, tau - d), jr = jacobian(m, CausalType::TimeLike, pb, tau + d);
      if (!(std::abs(j) < 1e-8) || !(jl * jr < 0)) ++bad;
    }
  }
  for (double pb : {1.0, -1.0}) {
    const Metric m = metric_from_eta(1.0, -1.7);
    const auto roots = conjugate_roots(m, pb, 3);
    if (roots.size() != 3) ++bad;
    for (std::size_t k = 0; k < roots.size(); ++k) {
      if (roots[k] != pi * (k + 1.0)) ++bad;
      const double j = jacobian(m, CausalType::TimeLike, pb, roots[k]);
      jmax = std::max(jmax, std::abs(j));
      if (!(std::abs(j) < 1e-8)) ++bad;
    }
  }
  return {bad == 0, fmt("%d bad, max |J| at roots %.3g", bad, jmax)};
}

Outcome c6_injrad() {
  int bad = 0;
  std::string d;
  for (double eta : {-2.5, -2.0, -1.8, -1.6, -1.443, -1.2}) {
    const Metric m = metric_from_eta(1.0, eta);
    const double closed = injectivity_radius(m), brute = injectivity_radius_bruteforce(m, 100000);
    if (!(std::abs(closed - brute) < 5e-4)) ++bad;
    d += fmt("eta=%g diff=%.2g; ", eta, std::abs(closed - brute));
  }
  const double s = Metric::eta_radius_switch();
  const double j1 = std::abs(injectivity_radius_case(1, -2.0, 1) - injectivity_radius_case(1, -2.0, 2));
  const double j2 = std::abs(injectivity_radius_case(1, s, 2) - injectivity_radius_case(1, s, 3));
  if (!(j1 < 1e-10) || !(j2 < 1e-10)) ++bad;
  return {bad == 0, d + fmt("jumps %.2g %.2g", j1, j2)};
}

Outcome c7_brackets() {
  gen::Rng r(107);
  int bad = 0;
  for (int i = 0; i < 1000; ++i) {
    const double eta = r.uniform(-4.0, -1.01);
    const double pb = r.uniform(1e-3, 3.0);
    const double t0 = tau0_spacelike(eta, pb);
    if (!(t0 > -pi / (2 * eta * pb) && t0 < -pi / (eta * pb))) ++bad;
    const double x0 = taup0_lightlike(eta), x3 = taup3_lightlike(eta);
    if (!(x0 > -pi / (2 * eta) && x0 < -pi / eta)) ++bad;
    if (!(x3 > -pi / eta && x3 < -3 * pi / (2 * eta))) ++bad;
    const double pt = r.uniform(1.0 + 1e-6, 6.0);
    const auto roots = conjugate_roots(metric_from_eta(1.0, eta), pt, 3);
    for (int k = 1; k <= 3; ++k) {
      const double tk = roots[2 * k - 1];
      if (!(tk > pi * k && tk < pi * k + pi / 2)) ++bad;
    }
  }
  return {bad == 0, fmt("%d violations over 1000 parameter draws", bad)};
}

Outcome c8_log() {
  gen::Rng r(108);
  int bad = 0;
  double et = 0, ep = 0;
  for (int i = 0; i < 200; ++i) {
    const Metric m = r.metric();
    const Covector p = r.covector(m, r.type_of(i));
    const double t = r.uniform(0.01, 0.95) * cut_time(m, p).value();
    try {
      const LogResult l = riemannian_log(m, psl2_canonicalize(exp_map(m, p, t)));
      et = std::max(et, std::abs(l.t - t));
      ep = std::max(ep, gen::pdiff(l.p, p));
      if (!(std::abs(l.t - t) < 1e-9) || !(gen::pdiff(l.p, p) < 1e-8)) ++bad;
    } catch (const Error&) {
      ++bad;
    }
  }
  int cut_bad = 0;
  for (int i = 0; i < 50; ++i) {
    const Metric m = r.metric();
    const double a = r.uniform(-3, 3), b = r.uniform(-3, 3);
    const SplitQuaternion z{0.0, a, b, std::sqrt(1 + a * a + b * b)};
    try {
      riemannian_log(m, psl2_canonicalize(z));
      ++cut_bad;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::OnCutLocus) ++cut_bad;
    }
  }
  return {bad == 0 && cut_bad == 0,
          fmt("%d bad round trips, max time err %.3g, max momentum err %.3g, %d bad q0=0 targets", bad, et, ep, cut_bad)};
}

Outcome c9_sr() {
  std::vector<double> etas;
  for (int k = 1; k <= 6; ++k) etas.push_back(-1.0 - std::pow(10.0, -k));
  bool pass = true;
  std::string d;
  const std::pair<double, CausalType> pts[] = {
      {1.2, CausalType::TimeLike}, {1.5, CausalType::TimeLike}, {3.0, CausalType::TimeLike}, {0.5, CausalType::SpaceLike}};
  for (auto [pb, ct] : pts) {
    const auto rows = limit_comparison(pb, ct, etas);
    bool ok = rows.back().diff < 1e-3;
    for (std::size_t i = 1; i < rows.size(); ++i) ok = ok && rows[i].diff < rows[i - 1].diff;
    const double beta = beta_from_pbar3(pb, ct);
    const ExtTime lc = ct == CausalType::TimeLike ? limit_conjugate_time(pb) : ExtTime::infinity();
    const ExtTime sc = sr_conjugate_time(beta);
    ok = ok && lc.is_finite() == sc.is_finite() && (!lc.is_finite() || std::abs(lc.value() - sc.value()) < 1e-12 * sc.value());
    pass = pass && ok;
    d += fmt("pbar3=%g %s diff@1e-6=%.3g%s; ", pb, ct == CausalType::TimeLike ? "tl" : "sl", rows.back().diff,
             ok ? "" : " FAIL");
  }
  return {pass, d};
}

Outcome c10_covering() {
  gen::Rng r(110);
  double emax = 0;
  int bad = 0;
  for (int i = 0; i < 100; ++i) {
    const Metric m = r.metric();
    const Covector p = r.covector(m, r.type_of(i));
    const double t = r.uniform(0.0, 20.0);
    const double w = t / m.I1;
    const Psl2Element a = psl2_canonicalize(sq_exp(w * p.p1, w * p.p2, w * p.p3));
    const Psl2Element b = psl2_canonicalize(sq_exp(0.0, 0.0, w * m.eta * p.p3));
    const auto lhs = (a * b).rep();
    const auto rhs = psl2_canonicalize(exp_map(m, p, t)).rep();
    emax = std::max(emax, max_abs_diff(lhs, rhs));
    if (!(max_abs_diff(lhs, rhs) < 1e-12)) ++bad;
    if (!(cut_time(m, p, GroupTag::SL2) >= cut_time(m, p, GroupTag::PSL2))) ++bad;
  }
  return {bad == 0, fmt("%d bad of 100, max err %.3g", bad, emax)};
}

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

Outcome c11_determinism() {
  const std::string cli = HYPGEO_CLI_PATH;
  const char* runs[] = {
      "wavefront --eta -1.3 --t 2.5 --grid 24",
      "cut-locus --eta -1.2 --grid 12 --with-conjugate-locus --format json",
      "cut-time --eta -1.7 --grid 200 --group sl2",
      "sr-compare --pbar3 1.2",
  };
  int bad = 0, n = 0;
  for (const char* args : runs) {
    std::string first;
    for (const char* threads : {"1", "4", "4"}) {
      const std::string out = fmt("acceptance_c11_%d.out", n);
      const std::string cmd = std::string("HYPGEO_THREADS=") + threads + " '" + cli + "' " + args + " --out " + out;
      if (std::system(cmd.c_str()) != 0) {
        ++bad;
        continue;
      }
      const std::string body = slurp(out);
      if (first.empty()) first = body;
      else if (body != first) ++bad;
      std::remove(out.c_str());
    }
    if (first.empty()) ++bad;
    ++n;
  }
  return {bad == 0, fmt("%d mismatches over %d commands, 3 runs each at 1/4/4 threads", bad, n)};
}

}  // namespace

int main(int argc, char** argv) {
  std::set<int> known;
  for (int i = 1; i + 1 < argc; ++i) {
    if (std::string(argv[i]) == "--known-failure") known.insert(std::atoi(argv[++i]));
  }
  const std::function<Outcome()> criteria[] = {c1_ode,      c2_product, c3_maxwell, c4_ordering,
                                               c5_jacobian, c6_injrad,  c7_brackets, c8_log,
                                               c9_sr,       c10_covering, c11_determinism};
  int status = 0;
  for (int i = 0; i < 11; ++i) {
    Outcome o;
    try {
      o = criteria[i]();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const bool excused = !o.pass && known.count(i + 1);
    std::cout << "criterion " << i + 1 << ": " << (o.pass ? "PASS" : "FAIL") << (excused ? " (known failure)" : "")
              << "  " << o.detail << std::endl;
    if (!o.pass && !excused) status = 1;
  }
  return status;
}
