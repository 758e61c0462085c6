#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "ulci/cli.hpp"

namespace {

int parse_kinds(const std::vector<std::string>& names,
                std::vector<ulci::ProcedureKind>* out) {
  out->clear();
  for (const std::string& name : names) {
    if (name == "all") {
      out->clear();  // empty selection means all six
      return 0;
    }
    const auto tag = ulci::procedure_from_string(name);
    if (!tag) {
      std::cerr << "ulci: unknown kind: " << name << '\n';
      return 2;
    }
    out->push_back({*tag, true});
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  ulci::RunConfig config;
  std::vector<std::string> kind_names;
  std::string format = "csv";

  CLI::App app{"Interval procedures for the uniform location model"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "", "Read options from an INI file");
  app.set_version_flag("--version", "ulci 0.1.0");

  app.add_option("--kinds", kind_names,
                 "Procedures to run: sd, np, ump, bc, min_effort, min_cond_width, "
                 "or 'all' (default)")
      ->delimiter(',')
      ->envname("ULCI_KINDS");
  app.add_option("--alpha", config.alphas, "Miscoverage levels (default 0.25,0.5)")
      ->delimiter(',')
      ->envname("ULCI_ALPHA");
  app.add_option("--theta", config.theta, "True location")->envname("ULCI_THETA");
  app.add_option("--k", config.k_scale, "Support half-length K")->envname("ULCI_K");
  app.add_option("--n", config.n, "Draws per sample")->envname("ULCI_N");
  app.add_option("--trials", config.trials, "Monte Carlo trials")->envname("ULCI_TRIALS");
  app.add_option("--seed", config.seed, "Monte Carlo seed")->envname("ULCI_SEED");
  app.add_option("--shards", config.shards, "Monte Carlo shards")->envname("ULCI_SHARDS");
  app.add_option("--grid", config.grid, "Evaluation grid points")->envname("ULCI_GRID");
  app.add_option("--cells", config.cells, "Solver grid cells")->envname("ULCI_CELLS");
  app.add_option("--bins", config.bins, "Conditional profile bins")->envname("ULCI_BINS");
  app.add_option("--out", config.out,
                 "Output file, '-' for stdout; output directory for figures")
      ->envname("ULCI_OUT");
  app.add_option("--format", format, "Output format: csv or json")
      ->check(CLI::IsMember({"csv", "json"}))
      ->envname("ULCI_FORMAT");

  app.add_subcommand("bounds", "Half-width curves on a grid");
  app.add_subcommand("coverage", "Exact and Monte Carlo coverage");
  app.add_subcommand("optimize", "Grid solvers checked against the closed forms");
  app.add_subcommand("simulate", "Success and effort of acting on the interval");
  app.add_subcommand("figures", "Curve and coverage-profile data files");
  app.add_subcommand("bernoulli", "Two-draw Bernoulli estimator risk table");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (const int code = parse_kinds(kind_names, &config.kinds)) return code;
  config.format = format == "json" ? ulci::OutputFormat::JSON : ulci::OutputFormat::CSV;
  for (const CLI::App* sub : app.get_subcommands()) {
    config.subcommand = sub->get_name();
  }
  return ulci::run_command(config);
}
