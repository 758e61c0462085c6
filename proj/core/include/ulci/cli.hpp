#pragma once

// Experiment driver behind the command line tool. Each subcommand renders one
// deterministic output file (two for figures): CSV with '#'-prefixed header
// comments echoing the effective configuration, or the same records as JSON,
// one per line. Identical configurations produce byte-identical files.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "ulci/analytics.hpp"
#include "ulci/procedures.hpp"

namespace ulci {

enum class OutputFormat { CSV, JSON };

struct RunConfig {
  std::string subcommand;
  std::vector<ProcedureKind> kinds;       // empty means all six, truncated
  std::vector<double> alphas = {0.25, 0.5};
  double theta = 0.0;
  double k_scale = 1.0;
  int n = 2;
  std::uint64_t trials = 1000000;
  std::uint64_t seed = 1;
  unsigned shards = kDefaultShards;
  int grid = 401;    // evaluation points for bounds/figures and the bernoulli table
  int cells = 2000;  // solver grid cells
  int bins = 40;     // conditional profile bins
  std::string out;   // empty: "<subcommand>.<ext>"; for figures a directory, default "."
  OutputFormat format = OutputFormat::CSV;
};

// All six procedures with the truncated flag set (what the CLI acts on).
std::vector<ProcedureKind> default_kinds();

// Shortest-form decimal with 12 significant digits, C locale.
std::string format_sig(double x);

// Subcommands. Each returns a process exit code: 0 when every row is clean,
// 1 when any row carries a FAIL or unsupported marker, 2 on I/O or usage
// errors (message on stderr).
int cmd_bounds(const RunConfig& config);
int cmd_coverage(const RunConfig& config);
int cmd_optimize(const RunConfig& config);
int cmd_simulate(const RunConfig& config);
int cmd_figures(const RunConfig& config);
int cmd_bernoulli(const RunConfig& config);

// Dispatch on config.subcommand.
int run_command(const RunConfig& config);

// Reader for the emitted CSVs: '#' comments skipped, first row is the header.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};
CsvTable read_csv(std::istream& is);

// Typed row parsers for round trips back into record form. Each throws
// std::runtime_error if the table does not carry the expected schema.
struct BoundsRow {
  std::string kind;
  double alpha, u, b_raw, b_truncated, cap;
  int admissible;
};
std::vector<BoundsRow> parse_bounds_rows(const CsvTable& table);

struct CoverageRow {
  std::string kind;
  double alpha;
  int truncated;
  std::optional<double> exact_coverage, mc_coverage, mc_std_error;
  std::uint64_t trials;
  std::string status;
};
std::vector<CoverageRow> parse_coverage_rows(const CsvTable& table);

struct OptimizeRow {
  std::string solver;
  double alpha, u, b, cap, closed_form;
  std::string verdict;
};
std::vector<OptimizeRow> parse_optimize_rows(const CsvTable& table);

struct SimulateRow {
  std::string kind;
  double alpha;
  int truncated;
  std::uint64_t trials, seed;
  double success_rate, se_success, mean_effort, se_effort;
  std::optional<double> mean_effort_given_success, se_effort_given_success;
};
std::vector<SimulateRow> parse_simulate_rows(const CsvTable& table);

struct BernoulliRow {
  std::string record;  // "curve" or "summary"
  std::string estimator;
  std::optional<double> theta, mse, average_risk, max_risk;
};
std::vector<BernoulliRow> parse_bernoulli_rows(const CsvTable& table);

}  // namespace ulci
