#include "cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>

#include <json.hpp>

namespace hypgeo::cli {

namespace {

constexpr std::array<std::pair<Command, const char*>, 10> kCommands{{
    {Command::Geodesic, "geodesic"},
    {Command::VerticalFlow, "vertical-flow"},
    {Command::Maxwell, "maxwell"},
    {Command::Conjugate, "conjugate"},
    {Command::CutTime, "cut-time"},
    {Command::CutLocus, "cut-locus"},
    {Command::Wavefront, "wavefront"},
    {Command::Injrad, "injrad"},
    {Command::Log, "log"},
    {Command::SrCompare, "sr-compare"},
}};

Metric metric_of(const RunConfig& c) { return c.eta ? metric_from_eta(c.I1, *c.eta) : make_metric(c.I1, c.I3); }

bool has_covector(const RunConfig& c) { return c.p.has_value() || c.pbar3.has_value(); }

Covector covector_of(const RunConfig& c, const Metric& m) {
  if (c.p) return covector_from_components(m, (*c.p)[0], (*c.p)[1], (*c.p)[2]);
  return covector_from_pbar3(m, *c.pbar3, c.phase, *c.ctype);
}

// Meridian sweep used when no covector is given: u_i = meridian_u(i, n), phase 0.
std::vector<Covector> sweep_of(const RunConfig& c, const Metric& m) {
  if (has_covector(c)) return {covector_of(c, m)};
  std::vector<Covector> out;
  for (int i = 0; i < c.grid_n; ++i) {
    out.push_back(covector_on_meridian(m, meridian_u(static_cast<std::size_t>(i), static_cast<std::size_t>(c.grid_n)), 0.0));
  }
  return out;
}

Cell pbar3_cell(const Covector& p) {
  if (!p.pbar3) return std::string("");
  return *p.pbar3;
}

template <class F>
ExtTime total(F&& f) {
  try {
    return f();
  } catch (const Error& e) {
    switch (e.code()) {
      case ErrorCode::NoRootFound:
      case ErrorCode::UndefinedAtEquator:
      case ErrorCode::DegenerateIdenticallyZero:
        return ExtTime::infinity();
      default:
        throw;
    }
  }
}

Table geodesic_table(const RunConfig& c, const Metric& m) {
  const auto s = sample_geodesic(m, covector_of(c, m), *c.t_max, c.samples);
  Table t{{"t", "q0", "q1", "q2", "q3"}, {}, {}};
  for (const auto& g : s) t.rows.push_back({g.t, g.point.q0, g.point.q1, g.point.q2, g.point.q3});
  return t;
}

Table vertical_flow_table(const RunConfig& c, const Metric& m) {
  const auto s = sample_geodesic(m, covector_of(c, m), *c.t_max, c.samples);
  Table t{{"t", "p1", "p2", "p3"}, {}, {}};
  for (const auto& g : s) t.rows.push_back({g.t, g.momentum.p1, g.momentum.p2, g.momentum.p3});
  return t;
}

Table maxwell_table(const RunConfig& c, const Metric& m) {
  Table t{{"index", "type", "pbar3", "p1", "p2", "p3", "root_q0", "root_q3", "t_max"}, {}, {}};
  const auto ps = sweep_of(c, m);
  for (std::size_t i = 0; i < ps.size(); ++i) {
    const Covector& p = ps[i];
    const ExtTime r0 = total([&] { return ExtTime::finite(maxwell_root_q0(m, p)); });
    const ExtTime r3 = total([&] { return ExtTime::finite(maxwell_root_q3(m, p)); });
    t.rows.push_back({static_cast<long long>(i), std::string(to_string(p.ctype)), pbar3_cell(p), p.p1, p.p2, p.p3, r0,
                      r3, maxwell_time(m, p, c.group)});
  }
  return t;
}

Table conjugate_table(const RunConfig& c, const Metric& m) {
  if (!has_covector(c)) {
    Table t{{"index", "type", "pbar3", "p1", "p2", "p3", "t_conj"}, {}, {}};
    const auto ps = sweep_of(c, m);
    for (std::size_t i = 0; i < ps.size(); ++i) {
      const Covector& p = ps[i];
      t.rows.push_back({static_cast<long long>(i), std::string(to_string(p.ctype)), pbar3_cell(p), p.p1, p.p2, p.p3,
                        first_conjugate_time(m, p)});
    }
    return t;
  }
  const Covector p = covector_of(c, m);
  Table t{{"k", "tau", "t", "jacobian"}, {}, {}};
  if (p.ctype != CausalType::TimeLike) {
    t.rows.push_back({1LL, ExtTime::infinity(), ExtTime::infinity(), std::string("")});
    return t;
  }
  const auto roots = conjugate_roots(m, *p.pbar3, c.k_max);
  for (std::size_t k = 0; k < roots.size(); ++k) {
    const double tau = roots[k];
    t.rows.push_back({static_cast<long long>(k + 1), tau, 2.0 * m.I1 * tau / p.norm,
                      jacobian(m, p.ctype, *p.pbar3, tau)});
  }
  return t;
}

Table cut_time_table(const RunConfig& c, const Metric& m) {
  Table t{{"index", "type", "pbar3", "p1", "p2", "p3", "t_max", "t_conj", "t_cut", "stratum"}, {}, {}};
  const auto ps = sweep_of(c, m);
  for (std::size_t i = 0; i < ps.size(); ++i) {
    const Covector& p = ps[i];
    const CutDescriptor d = cut_descriptor(m, p, c.group);
    t.rows.push_back({static_cast<long long>(i), std::string(to_string(p.ctype)), pbar3_cell(p), p.p1, p.p2, p.p3, d.t_max,
                      d.t_conj, d.t_cut, std::string(to_string(d.active_stratum))});
  }
  return t;
}

Table cut_locus_table(const RunConfig& c, const Metric& m) {
  Table t{{"stratum", "i", "j", "c1", "c2", "q0", "q1", "q2", "q3", "p1", "p2", "p3", "t", "residual", "conjugate"},
          {},
          "stratum"};
  auto strata = cut_locus_sample(m, c.group, c.grid_n, c.extent);
  if (c.with_conjugate_locus) strata.push_back(conjugate_locus_sample(m, c.grid_n));
  for (const auto& s : strata) {
    for (const auto& lp : s.points) {
      t.rows.push_back({std::string(to_string(s.stratum)), static_cast<long long>(lp.index[0]),
                        static_cast<long long>(lp.index[1]), lp.coords[0], lp.coords[1], lp.point.q0, lp.point.q1,
                        lp.point.q2, lp.point.q3, lp.witness.p1, lp.witness.p2, lp.witness.p3, lp.t, lp.residual,
                        lp.conjugate});
    }
  }
  return t;
}

Table wavefront_table(const RunConfig& c, const Metric& m) {
  Table t{{"i", "j", "type", "pbar3", "phase", "p1", "p2", "p3", "q0", "q1", "q2", "q3", "optimal"}, {}, {}};
  for (const auto& w : wavefront_sample(m, *c.t, c.grid_n, c.group)) {
    t.rows.push_back({static_cast<long long>(w.index[0]), static_cast<long long>(w.index[1]),
                      std::string(to_string(w.p.ctype)), pbar3_cell(w.p), w.p.phase(), w.p.p1, w.p.p2, w.p.p3, w.q.q0,
                      w.q.q1, w.q.q2, w.q.q3, w.optimal});
  }
  return t;
}

Table injrad_table(const RunConfig& c, const Metric& m) {
  const RadiusCase rc = injectivity_case(m);
  Table t{{"I1", "I3", "eta", "radius", "case", "label"}, {}, {}};
  std::vector<Cell> row{m.I1, m.I3, m.eta, injectivity_radius(m), static_cast<long long>(rc.index), std::string(rc.label)};
  if (c.brute > 0) {
    t.columns.push_back("brute_force");
    row.push_back(injectivity_radius_bruteforce(m, static_cast<std::size_t>(c.brute)));
  }
  t.rows.push_back(std::move(row));
  return t;
}

Table log_table(const RunConfig& c, const Metric& m) {
  const auto& q = *c.target;
  const SplitQuaternion g{q[0], q[1], q[2], q[3]};
  if (std::abs(pseudo_norm(g) - 1.0) > 1e-9) throw UsageError("--target must have unit pseudo-norm");
  const LogResult r = riemannian_log(m, psl2_canonicalize(g), c.tol);
  Table t{{"t", "p1", "p2", "p3", "type", "pbar3", "residual"}, {}, {}};
  t.rows.push_back({r.t, r.p.p1, r.p.p2, r.p.p3, std::string(to_string(r.p.ctype)), pbar3_cell(r.p), r.residual});
  return t;
}

Table sr_compare_table(const RunConfig& c) {
  std::vector<double> etas = c.etas;
  if (etas.empty()) {
    for (int k = 1; k <= 6; ++k) etas.push_back(-1.0 - std::pow(10.0, -k));
  }
  const CausalType ct = c.ctype.value_or(CausalType::TimeLike);
  const auto rows = limit_comparison(*c.pbar3, ct, etas, c.group);
  const double beta = beta_from_pbar3(*c.pbar3, ct);
  Table t{{"eta", "beta", "riem_cut", "sr_cut", "diff", "riem_conj", "sr_conj"}, {}, {}};
  for (const auto& r : rows) {
    const Metric m = metric_from_eta(1.0, r.eta);
    const ExtTime rc = first_conjugate_time(m, covector_from_pbar3(m, *c.pbar3, 0.0, ct));
    t.rows.push_back({r.eta, beta, r.riem_cut, r.sr_cut, r.diff, rc, sr_conjugate_time(beta)});
  }
  return t;
}

void write_double(std::ostream& os, double v) {
  if (std::isinf(v)) {
    os << (v > 0 ? "inf" : "-inf");
    return;
  }
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  os << buf;
}

void write_csv_field(std::ostream& os, const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) {
    os << s;
    return;
  }
  os << '"';
  for (char ch : s) {
    if (ch == '"') os << '"';
    os << ch;
  }
  os << '"';
}

nlohmann::ordered_json row_json(const Table& t, const std::vector<Cell>& row) {
  nlohmann::ordered_json o = nlohmann::ordered_json::object();
  for (std::size_t k = 0; k < t.columns.size(); ++k) {
    const std::string& col = t.columns[k];
    if (col == t.group_column) continue;
    std::visit(
        [&](const auto& v) {
          using V = std::decay_t<decltype(v)>;
          if constexpr (std::is_same_v<V, ExtTime>) {
            o[col] = v.is_finite() ? nlohmann::ordered_json(v.value()) : nlohmann::ordered_json(nullptr);
            o[col + "_inf"] = !v.is_finite();
          } else if constexpr (std::is_same_v<V, double>) {
            o[col] = std::isfinite(v) ? nlohmann::ordered_json(v) : nlohmann::ordered_json(nullptr);
          } else {
            o[col] = v;
          }
        },
        row[k]);
  }
  return o;
}

}  // namespace

const char* to_string(Command c) {
  for (const auto& [k, name] : kCommands) {
    if (k == c) return name;
  }
  return "unknown";
}

std::optional<Command> parse_command(const std::string& s) {
  for (const auto& [k, name] : kCommands) {
    if (s == name) return k;
  }
  return std::nullopt;
}

void validate(const RunConfig& c) {
  if (!(c.I1 > 0.0) || !std::isfinite(c.I1)) throw UsageError("--I1 must be positive");
  if (!(c.I3 > 0.0) || !std::isfinite(c.I3)) throw UsageError("--I3 must be positive");
  if (c.eta && !(*c.eta < -1.0)) throw UsageError("--eta must be below -1");
  if (c.grid_n < 2) throw UsageError("--grid must be at least 2");
  if (c.samples < 2) throw UsageError("--samples must be at least 2");
  if (!(c.tol > 0.0)) throw UsageError("--tol must be positive");
  if (c.k_max < 1) throw UsageError("--k-max must be at least 1");
  if (c.brute < 0 || c.brute == 1) throw UsageError("--brute must be 0 or at least 2");
  if (!(c.extent >= 0.0)) throw UsageError("--extent must be nonnegative");
  if (c.p && c.pbar3) throw UsageError("--p and --pbar3 are mutually exclusive");
  if (c.pbar3 && !c.ctype && c.command != Command::SrCompare) throw UsageError("--pbar3 requires --type");
  const bool needs_p = c.command == Command::Geodesic || c.command == Command::VerticalFlow;
  if (needs_p && !has_covector(c)) throw UsageError("--p or --pbar3 is required");
  if (needs_p && !c.t_max) throw UsageError("--t-max is required");
  if (c.t_max && !(*c.t_max >= 0.0)) throw UsageError("--t-max must be nonnegative");
  if (c.command == Command::Wavefront) {
    if (!c.t || !(*c.t > 0.0)) throw UsageError("--t must be positive");
    if (c.grid_n < 8) throw UsageError("--grid must be at least 8 for wavefront");
  }
  if (c.command == Command::Log && !c.target) throw UsageError("--target is required");
  if (c.command == Command::SrCompare) {
    if (!c.pbar3) throw UsageError("--pbar3 is required");
    if (c.p) throw UsageError("--p is not accepted by sr-compare");
    if (c.ctype == CausalType::LightLike) throw UsageError("--type must be tl or sl for sr-compare");
    if (c.I1 != 1.0) throw UsageError("--I1 must be 1 for sr-compare");
    for (double e : c.etas) {
      if (!(e < -1.0)) throw UsageError("--etas values must be below -1");
    }
  }
}

Table compute(const RunConfig& c) {
  if (c.command == Command::SrCompare) return sr_compare_table(c);
  const Metric m = metric_of(c);
  switch (c.command) {
    case Command::Geodesic: return geodesic_table(c, m);
    case Command::VerticalFlow: return vertical_flow_table(c, m);
    case Command::Maxwell: return maxwell_table(c, m);
    case Command::Conjugate: return conjugate_table(c, m);
    case Command::CutTime: return cut_time_table(c, m);
    case Command::CutLocus: return cut_locus_table(c, m);
    case Command::Wavefront: return wavefront_table(c, m);
    case Command::Injrad: return injrad_table(c, m);
    case Command::Log: return log_table(c, m);
    case Command::SrCompare: break;
  }
  return {};
}

void write_csv(std::ostream& os, const Table& t) {
  for (std::size_t k = 0; k < t.columns.size(); ++k) {
    if (k) os << ',';
    write_csv_field(os, t.columns[k]);
  }
  os << "\r\n";
  for (const auto& row : t.rows) {
    for (std::size_t k = 0; k < row.size(); ++k) {
      if (k) os << ',';
      std::visit(
          [&](const auto& v) {
            using V = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<V, double>) write_double(os, v);
            else if constexpr (std::is_same_v<V, long long>) os << v;
            else if constexpr (std::is_same_v<V, bool>) os << (v ? "true" : "false");
            else if constexpr (std::is_same_v<V, std::string>) write_csv_field(os, v);
            else write_double(os, v.value());
          },
          row[k]);
    }
    os << "\r\n";
  }
}

void write_json(std::ostream& os, const Table& t, const RunConfig& c) {
  nlohmann::ordered_json j;
  j["schema"] = 1;
  j["command"] = to_string(c.command);
  if (c.command != Command::SrCompare) {
    const Metric m = metric_of(c);
    j["metric"] = {{"I1", m.I1}, {"I3", m.I3}, {"eta", m.eta}};
  }
  j["group"] = to_string(c.group);
  j["columns"] = t.columns;
  if (t.group_column.empty()) {
    j["rows"] = nlohmann::ordered_json::array();
    for (const auto& row : t.rows) j["rows"].push_back(row_json(t, row));
  } else {
    const auto gk = static_cast<std::size_t>(
        std::find(t.columns.begin(), t.columns.end(), t.group_column) - t.columns.begin());
    nlohmann::ordered_json strata = nlohmann::ordered_json::object();
    for (const auto& row : t.rows) {
      const std::string key = std::get<std::string>(row[gk]);
      if (!strata.contains(key)) strata[key] = nlohmann::ordered_json::array();
      strata[key].push_back(row_json(t, row));
    }
    j["strata"] = strata;
  }
  os << j.dump(2) << '\n';
}

int run(const RunConfig& c, std::ostream& err) {
  try {
    validate(c);
    const Table t = compute(c);
    std::ostringstream buf;
    if (c.format == Format::Csv) write_csv(buf, t);
    else write_json(buf, t, c);
    if (c.output_path.empty()) {
      std::cout << buf.str();
    } else {
      std::ofstream f(c.output_path, std::ios::binary);
      if (!f) throw UsageError("--out: cannot open " + c.output_path);
      f << buf.str();
    }
    return 0;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return 1;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return e.is_convergence_failure() ? 3 : 2;
  }
}

}  // namespace hypgeo::cli
