#pragma once

#include <array>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "hypgeo/hypgeo.hpp"

namespace hypgeo::cli {

enum class Command { Geodesic, VerticalFlow, Maxwell, Conjugate, CutTime, CutLocus, Wavefront, Injrad, Log, SrCompare };
enum class Format { Csv, Json };

const char* to_string(Command c);
std::optional<Command> parse_command(const std::string& s);

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  Command command = Command::Geodesic;
  double I1 = 1.0;
  double I3 = 1.0;
  std::optional<double> eta;  // overrides I3 when set
  GroupTag group = GroupTag::PSL2;
  int grid_n = 64;
  std::optional<double> t;
  std::optional<double> t_max;
  int samples = 200;
  std::optional<std::array<double, 3>> p;
  std::optional<double> pbar3;
  double phase = 0.0;
  std::optional<CausalType> ctype;
  std::optional<std::array<double, 4>> target;
  std::vector<double> etas;
  int k_max = 3;
  double extent = 3.0;
  int brute = 0;
  bool with_conjugate_locus = false;
  std::string output_path;
  Format format = Format::Csv;
  double tol = 1e-10;
};

// Throws UsageError naming the offending flag.
void validate(const RunConfig& c);

using Cell = std::variant<double, long long, std::string, bool, ExtTime>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  std::string group_column;  // JSON groups rows by this column when set
};

Table compute(const RunConfig& c);
void write_csv(std::ostream& os, const Table& t);
void write_json(std::ostream& os, const Table& t, const RunConfig& c);

// Exit status: 0 ok, 1 usage, 2 domain, 3 convergence.
int run(const RunConfig& c, std::ostream& err);

}  // namespace hypgeo::cli
