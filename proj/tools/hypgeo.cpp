#include <iostream>
#include <map>

#include <CLI11.hpp>

#include "cli.hpp"

using hypgeo::CausalType;
using hypgeo::GroupTag;
using namespace hypgeo::cli;

namespace {

struct Raw {
  std::vector<double> p, target, etas;
  std::string type, group = "psl2", format = "csv";
  double eta = 0.0, pbar3 = 0.0, t = 0.0, t_max = 0.0;
};

void add_common(CLI::App* sub, RunConfig& c, Raw& r) {
  sub->add_option("--I1", c.I1, "moment of inertia I1 = I2");
  sub->add_option("--I3", c.I3, "moment of inertia I3");
  sub->add_option("--eta", r.eta, "shape parameter; replaces --I3");
  sub->add_option("--group", r.group, "psl2 or sl2")->check(CLI::IsMember({"psl2", "sl2"}));
  sub->add_option("--grid", c.grid_n, "grid size n");
  sub->add_option("--t", r.t, "time");
  sub->add_option("--t-max", r.t_max, "final time");
  sub->add_option("--samples", c.samples, "number of samples");
  sub->add_option("--p", r.p, "covector p1,p2,p3 on C")->delimiter(',')->expected(3);
  sub->add_option("--pbar3", r.pbar3, "reduced vertical coordinate");
  sub->add_option("--phase", c.phase, "phase of (p1, p2)");
  sub->add_option("--type", r.type, "causal type tl, ll or sl")->check(CLI::IsMember({"tl", "ll", "sl"}));
  sub->add_option("--target", r.target, "group element q0,q1,q2,q3")->delimiter(',')->expected(4);
  sub->add_option("--etas", r.etas, "eta values, increasing toward -1")->delimiter(',');
  sub->add_option("--k-max", c.k_max, "number of conjugate periods");
  sub->add_option("--extent", c.extent, "radius of the sampled cut-locus plane");
  sub->add_option("--brute", c.brute, "brute-force grid size for injrad");
  sub->add_flag("--with-conjugate-locus", c.with_conjugate_locus, "append the conjugate locus samples");
  sub->add_option("--out", c.output_path, "output file; stdout when omitted");
  sub->add_option("--format", r.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  sub->add_option("--tol", c.tol, "tolerance");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Geodesics and cut loci of symmetric left-invariant metrics on PSL2(R) and SL2(R)"};
  app.require_subcommand(1);
  const std::vector<std::pair<std::string, std::string>> commands{
      {"geodesic", "sample Exp(p, t) on [0, t-max]"},
      {"vertical-flow", "sample the momentum p(t) on [0, t-max]"},
      {"maxwell", "Maxwell roots and times"},
      {"conjugate", "conjugate times and roots"},
      {"cut-time", "Maxwell, conjugate and cut times"},
      {"cut-locus", "sample the cut locus strata"},
      {"wavefront", "sample the wavefront at time t"},
      {"injrad", "injectivity radius"},
      {"log", "Riemannian logarithm of a group element"},
      {"sr-compare", "cut times against the sub-Riemannian limit"},
  };
  RunConfig c;
  Raw r;
  std::map<CLI::App*, Command> subs;
  for (const auto& [name, help] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    add_common(sub, c, r);
    subs[sub] = *parse_command(name);
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }
  for (const auto& [sub, cmd] : subs) {
    if (sub->parsed()) {
      c.command = cmd;
      auto given = [&](const char* flag) { return sub->count(flag) > 0; };
      if (given("--eta")) c.eta = r.eta;
      if (given("--t")) c.t = r.t;
      if (given("--t-max")) c.t_max = r.t_max;
      if (given("--pbar3")) c.pbar3 = r.pbar3;
      if (given("--p")) c.p = std::array<double, 3>{r.p[0], r.p[1], r.p[2]};
      if (given("--target")) c.target = std::array<double, 4>{r.target[0], r.target[1], r.target[2], r.target[3]};
      if (given("--type")) {
        c.ctype = r.type == "tl" ? CausalType::TimeLike : (r.type == "ll" ? CausalType::LightLike : CausalType::SpaceLike);
      }
    }
  }
  c.etas = r.etas;
  c.group = r.group == "sl2" ? GroupTag::SL2 : GroupTag::PSL2;
  c.format = r.format == "json" ? Format::Json : Format::Csv;
  return run(c, std::cerr);
}
