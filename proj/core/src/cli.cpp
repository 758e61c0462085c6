#include "ulci/cli.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "ulci/varsolve.hpp"

namespace ulci {

namespace {

std::vector<ProcedureKind> effective_kinds(const RunConfig& config) {
  return config.kinds.empty() ? default_kinds() : config.kinds;
}

std::string kinds_echo(const std::vector<ProcedureKind>& kinds) {
  std::string s;
  for (const auto& kind : kinds) {
    if (!s.empty()) s += ',';
    s += std::string(to_string(kind.tag));
  }
  return s;
}

std::string alphas_echo(const std::vector<double>& alphas) {
  std::string s;
  for (double a : alphas) {
    if (!s.empty()) s += ',';
    s += format_sig(a);
  }
  return s;
}

std::string output_path(const RunConfig& config, const char* stem) {
  if (!config.out.empty()) return config.out;
  return std::string(stem) + (config.format == OutputFormat::CSV ? ".csv" : ".json");
}

// Runs body against the resolved output stream ("-" means stdout). Returns
// body's code, or 2 when the stream cannot be opened or ends in a bad state.
int with_stream(const std::string& path, const std::function<int(std::ostream&)>& body) {
  if (path == "-") {
    const int code = body(std::cout);
    std::cout.flush();
    return std::cout.good() ? code : 2;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) {
    std::cerr << "ulci: cannot open output file: " << path << '\n';
    return 2;
  }
  const int code = body(file);
  file.flush();
  if (!file.good()) {
    std::cerr << "ulci: write failed: " << path << '\n';
    return 2;
  }
  return code;
}

int usage_error(const std::string& message) {
  std::cerr << "ulci: " << message << '\n';
  return 2;
}

nlohmann::json base_record(const ProcedureKind& kind, double alpha) {
  nlohmann::json r;
  r["kind"] = std::string(to_string(kind.tag));
  r["alpha"] = alpha;
  return r;
}

void emit_unsupported(std::ostream& os, bool csv_comment_only, const ProcedureKind& kind,
                      double alpha, const char* what) {
  if (csv_comment_only) {
    os << "# unsupported kind=" << to_string(kind.tag) << " alpha=" << format_sig(alpha)
       << ": " << what << '\n';
  } else {
    nlohmann::json r = base_record(kind, alpha);
    r["status"] = "unsupported";
    r["error"] = what;
    os << r.dump() << '\n';
  }
}

ModelConfig model_of(const RunConfig& config) {
  return ModelConfig{config.theta, config.k_scale, config.n};
}

// Shared validation for the Monte Carlo subcommands; returns 0 or the exit code.
int check_mc_config(const RunConfig& config) {
  if (config.alphas.empty()) return usage_error("no alpha levels requested");
  if (config.trials < 1) return usage_error("--trials must be >= 1");
  if (config.shards < 1) return usage_error("--shards must be >= 1");
  try {
    validate(model_of(config));
  } catch (const std::invalid_argument& e) {
    return usage_error(e.what());
  }
  return 0;
}

std::string opt_field(const std::optional<double>& x) {
  return x ? format_sig(*x) : std::string();
}

void set_opt(nlohmann::json& r, const char* key, const std::optional<double>& x) {
  if (x) {
    r[key] = *x;
  } else {
    r[key] = nullptr;
  }
}

// ---- CSV parsing helpers ----------------------------------------------------

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      out.push_back(std::move(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(std::move(cur));
  return out;
}

std::size_t column(const CsvTable& table, std::string_view name) {
  for (std::size_t i = 0; i < table.header.size(); ++i) {
    if (table.header[i] == name) return i;
  }
  throw std::runtime_error("csv: missing column " + std::string(name));
}

const std::string& cell(const std::vector<std::string>& row, std::size_t i) {
  if (i >= row.size()) throw std::runtime_error("csv: ragged row");
  return row[i];
}

double parse_double(const std::string& s) {
  if (s.empty()) throw std::runtime_error("csv: empty numeric field");
  char* end = nullptr;
  const double x = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size()) throw std::runtime_error("csv: bad number: " + s);
  return x;
}

std::optional<double> parse_opt_double(const std::string& s) {
  if (s.empty()) return std::nullopt;
  return parse_double(s);
}

long long parse_ll(const std::string& s) {
  if (s.empty()) throw std::runtime_error("csv: empty integer field");
  errno = 0;
  char* end = nullptr;
  const long long x = std::strtoll(s.c_str(), &end, 10);
  if (end != s.c_str() + s.size() || errno == ERANGE) {
    throw std::runtime_error("csv: bad integer: " + s);
  }
  return x;
}

std::uint64_t parse_u64(const std::string& s) {
  if (s.empty()) throw std::runtime_error("csv: empty integer field");
  errno = 0;
  char* end = nullptr;
  const unsigned long long x = std::strtoull(s.c_str(), &end, 10);
  if (end != s.c_str() + s.size() || errno == ERANGE) {
    throw std::runtime_error("csv: bad integer: " + s);
  }
  return static_cast<std::uint64_t>(x);
}

}  // namespace

std::vector<ProcedureKind> default_kinds() {
  return {{Procedure::SD, true},         {Procedure::NP, true},
          {Procedure::UMP, true},        {Procedure::BC, true},
          {Procedure::MIN_EFFORT, true}, {Procedure::MIN_COND_WIDTH, true}};
}

std::string format_sig(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

int cmd_bounds(const RunConfig& config) {
  if (config.grid < 2) return usage_error("--grid must be >= 2");
  if (config.alphas.empty()) return usage_error("no alpha levels requested");
  const auto kinds = effective_kinds(config);
  const bool csv = config.format == OutputFormat::CSV;
  return with_stream(output_path(config, "bounds"), [&](std::ostream& os) {
    bool any_bad = false;
    if (csv) {
      os << "# subcommand=bounds\n";
      os << "# kinds=" << kinds_echo(kinds) << '\n';
      os << "# alphas=" << alphas_echo(config.alphas) << '\n';
      os << "# grid=" << config.grid << '\n';
      os << "kind,alpha,u,b_raw,b_truncated,cap,admissible\n";
    }
    for (const auto& kind : kinds) {
      for (double alpha : config.alphas) {
        try {
          const PiecewiseLinearBound raw = bound_function({kind.tag, false}, alpha);
          const PiecewiseLinearBound trunc = bound_function({kind.tag, true}, alpha);
          for (int j = 0; j < config.grid; ++j) {
            const double u = 2.0 * j / (config.grid - 1);
            const double b_raw = raw(u);
            const double b_trunc = trunc(u);
            const double cap = admissible_cap(u);
            const int admissible = b_raw <= cap + 1e-12 ? 1 : 0;
            if (csv) {
              os << to_string(kind.tag) << ',' << format_sig(alpha) << ',' << format_sig(u)
                 << ',' << format_sig(b_raw) << ',' << format_sig(b_trunc) << ','
                 << format_sig(cap) << ',' << admissible << '\n';
            } else {
              nlohmann::json r = base_record(kind, alpha);
              r["u"] = u;
              r["b_raw"] = b_raw;
              r["b_truncated"] = b_trunc;
              r["cap"] = cap;
              r["admissible"] = admissible;
              os << r.dump() << '\n';
            }
          }
        } catch (const std::invalid_argument& e) {
          any_bad = true;
          emit_unsupported(os, csv, kind, alpha, e.what());
        }
      }
    }
    return any_bad ? 1 : 0;
  });
}

int cmd_coverage(const RunConfig& config) {
  if (const int code = check_mc_config(config)) return code;
  const auto kinds = effective_kinds(config);
  const bool csv = config.format == OutputFormat::CSV;
  const ModelConfig model = model_of(config);
  return with_stream(output_path(config, "coverage"), [&](std::ostream& os) {
    bool any_bad = false;
    if (csv) {
      os << "# subcommand=coverage\n";
      os << "# kinds=" << kinds_echo(kinds) << '\n';
      os << "# alphas=" << alphas_echo(config.alphas) << '\n';
      os << "# theta=" << format_sig(config.theta) << " k=" << format_sig(config.k_scale)
         << " n=" << config.n << '\n';
      os << "# trials=" << config.trials << " seed=" << config.seed
         << " shards=" << config.shards << '\n';
      os << "kind,alpha,truncated,exact_coverage,mc_coverage,mc_std_error,trials,status\n";
    }
    for (const auto& kind : kinds) {
      for (double alpha : config.alphas) {
        std::optional<double> exact, mc, se;
        std::uint64_t trials = 0;
        const char* status = "PASS";
        try {
          exact = exact_coverage(bound_function(kind, alpha));
          const CoverageReport report =
              mc_coverage(kind, alpha, model, config.trials, config.seed, config.shards);
          mc = report.estimate;
          se = report.std_error;
          trials = report.trials;
          if (std::abs(*mc - *exact) > 3.5 * *se) {
            status = "FAIL";
            any_bad = true;
          }
        } catch (const std::invalid_argument&) {
          exact.reset();
          mc.reset();
          se.reset();
          status = "unsupported";
          any_bad = true;
        }
        if (csv) {
          os << to_string(kind.tag) << ',' << format_sig(alpha) << ','
             << (kind.truncated ? 1 : 0) << ',' << opt_field(exact) << ',' << opt_field(mc)
             << ',' << opt_field(se) << ',' << trials << ',' << status << '\n';
        } else {
          nlohmann::json r = base_record(kind, alpha);
          r["truncated"] = kind.truncated ? 1 : 0;
          set_opt(r, "exact_coverage", exact);
          set_opt(r, "mc_coverage", mc);
          set_opt(r, "mc_std_error", se);
          r["trials"] = trials;
          r["status"] = status;
          os << r.dump() << '\n';
        }
      }
    }
    return any_bad ? 1 : 0;
  });
}

namespace {

std::string solver_summary(const char* solver, const SolveReport& report,
                           const DiscrepancyRecord& check) {
  std::ostringstream s;
  s << "# solver=" << solver << " alpha=" << format_sig(report.alpha)
    << " n_cells=" << report.n_cells
    << " objective_value=" << format_sig(report.objective_value)
    << " constraint_residual=" << format_sig(report.constraint_residual) << " lambda="
    << (report.lambda ? format_sig(*report.lambda) : std::string())
    << " linf=" << format_sig(check.linf) << " l1=" << format_sig(check.l1)
    << " excluded_cell=" << check.excluded_cell << " iterations=" << report.iterations
    << " verdict=" << (check.pass ? "PASS" : "FAIL");
  return s.str();
}

void solver_rows(std::ostream& os, bool csv, const char* solver, const SolveReport& report,
                 ProcedureKind closed_kind, int excluded, bool* any_fail) {
  const GridProblem grid{report.n_cells, report.objective};
  const PiecewiseLinearBound closed = bound_function(closed_kind, report.alpha);
  const double tol = 2.0 * grid.delta();
  for (int i = 0; i < report.n_cells; ++i) {
    const double u = grid.midpoint(i);
    const double b = report.solution[i];
    const double cap = grid.cap_at(i);
    const double cf = closed(u);
    const char* verdict =
        i == excluded ? "SKIP" : (std::abs(b - cf) <= tol ? "PASS" : "FAIL");
    if (verdict[0] == 'F') *any_fail = true;
    if (csv) {
      os << solver << ',' << format_sig(report.alpha) << ',' << format_sig(u) << ','
         << format_sig(b) << ',' << format_sig(cap) << ',' << format_sig(cf) << ','
         << verdict << '\n';
    } else {
      nlohmann::json r;
      r["solver"] = solver;
      r["alpha"] = report.alpha;
      r["u"] = u;
      r["b"] = b;
      r["cap"] = cap;
      r["closed_form"] = cf;
      r["verdict"] = verdict;
      os << r.dump() << '\n';
    }
  }
}

}  // namespace

int cmd_optimize(const RunConfig& config) {
  if (config.cells < 10) return usage_error("--cells must be >= 10");
  if (config.alphas.empty()) return usage_error("no alpha levels requested");
  const bool csv = config.format == OutputFormat::CSV;
  return with_stream(output_path(config, "optimize"), [&](std::ostream& os) {
    bool any_fail = false;
    if (csv) {
      os << "# subcommand=optimize\n";
      os << "# alphas=" << alphas_echo(config.alphas) << '\n';
      os << "# cells=" << config.cells << '\n';
    }
    struct Solved {
      const char* solver;
      SolveReport report;
      DiscrepancyRecord check;
      ProcedureKind closed_kind;
    };
    std::vector<Solved> solves;
    for (double alpha : config.alphas) {
      SolveReport lin = solve_linear(make_grid(config.cells, GridObjective::LINEAR), alpha);
      const ProcedureKind me{Procedure::MIN_EFFORT, false};
      DiscrepancyRecord lin_check = compare_to_closed_form(lin, me);
      solves.push_back({"linear", std::move(lin), lin_check, me});
      SolveReport quad =
          solve_quadratic(make_grid(config.cells, GridObjective::QUADRATIC), alpha);
      const ProcedureKind mcw{Procedure::MIN_COND_WIDTH, false};
      DiscrepancyRecord quad_check = compare_to_closed_form(quad, mcw);
      solves.push_back({"quadratic", std::move(quad), quad_check, mcw});
    }
    if (csv) {
      for (const Solved& s : solves) {
        os << solver_summary(s.solver, s.report, s.check) << '\n';
      }
      os << "solver,alpha,u,b,cap,closed_form,verdict\n";
    }
    for (const Solved& s : solves) {
      if (!s.check.pass) any_fail = true;
      solver_rows(os, csv, s.solver, s.report, s.closed_kind, s.check.excluded_cell,
                  &any_fail);
    }
    return any_fail ? 1 : 0;
  });
}

int cmd_simulate(const RunConfig& config) {
  if (const int code = check_mc_config(config)) return code;
  const auto kinds = effective_kinds(config);
  const bool csv = config.format == OutputFormat::CSV;
  const ModelConfig model = model_of(config);
  return with_stream(output_path(config, "simulate"), [&](std::ostream& os) {
    bool any_bad = false;
    if (csv) {
      os << "# subcommand=simulate\n";
      os << "# kinds=" << kinds_echo(kinds) << '\n';
      os << "# alphas=" << alphas_echo(config.alphas) << '\n';
      os << "# theta=" << format_sig(config.theta) << " k=" << format_sig(config.k_scale)
         << " n=" << config.n << '\n';
      os << "# trials=" << config.trials << " seed=" << config.seed
         << " shards=" << config.shards << '\n';
      os << "kind,alpha,truncated,trials,seed,success_rate,se_success,mean_effort,"
            "se_effort,mean_effort_given_success,se_effort_given_success\n";
    }
    for (const auto& kind : kinds) {
      for (double alpha : config.alphas) {
        try {
          const RescueReport r = rescue_simulation(kind, alpha, model, config.trials,
                                                   config.seed, config.shards);
          if (csv) {
            os << to_string(kind.tag) << ',' << format_sig(alpha) << ','
               << (kind.truncated ? 1 : 0) << ',' << r.trials << ',' << r.seed << ','
               << format_sig(r.success_rate) << ',' << format_sig(r.se_success) << ','
               << format_sig(r.mean_effort) << ',' << format_sig(r.se_effort) << ','
               << opt_field(r.mean_effort_given_success) << ','
               << opt_field(r.se_effort_given_success) << '\n';
          } else {
            nlohmann::json rec = base_record(kind, alpha);
            rec["truncated"] = kind.truncated ? 1 : 0;
            rec["trials"] = r.trials;
            rec["seed"] = r.seed;
            rec["success_rate"] = r.success_rate;
            rec["se_success"] = r.se_success;
            rec["mean_effort"] = r.mean_effort;
            rec["se_effort"] = r.se_effort;
            set_opt(rec, "mean_effort_given_success", r.mean_effort_given_success);
            set_opt(rec, "se_effort_given_success", r.se_effort_given_success);
            os << rec.dump() << '\n';
          }
        } catch (const std::invalid_argument& e) {
          any_bad = true;
          emit_unsupported(os, csv, kind, alpha, e.what());
        }
      }
    }
    return any_bad ? 1 : 0;
  });
}

int cmd_figures(const RunConfig& config) {
  if (config.grid < 2) return usage_error("--grid must be >= 2");
  if (config.alphas.empty()) return usage_error("no alpha levels requested");
  const bool csv = config.format == OutputFormat::CSV;
  const std::string dir = config.out.empty() ? std::string(".") : config.out;
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) return usage_error("cannot create output directory: " + dir);
  const char* ext = csv ? ".csv" : ".json";

  auto grid_u = [&](int j) { return 2.0 * j / (config.grid - 1); };

  // Figure 1: the four classical half-width curves, raw and clipped, with the
  // admissibility flag marking where the raw curve exceeds the envelope.
  const std::vector<ProcedureKind> classical = {{Procedure::SD, false},
                                                {Procedure::NP, false},
                                                {Procedure::UMP, false},
                                                {Procedure::BC, false}};
  const int code1 = with_stream(dir + "/figure1" + ext, [&](std::ostream& os) {
    bool any_bad = false;
    if (csv) {
      os << "# subcommand=figures figure=1\n";
      os << "# kinds=" << kinds_echo(classical) << '\n';
      os << "# alphas=" << alphas_echo(config.alphas) << '\n';
      os << "# grid=" << config.grid << '\n';
      os << "kind,alpha,u,b_raw,b_truncated,cap,admissible\n";
    }
    for (const auto& kind : classical) {
      for (double alpha : config.alphas) {
        try {
          const PiecewiseLinearBound raw = bound_function({kind.tag, false}, alpha);
          const PiecewiseLinearBound trunc = bound_function({kind.tag, true}, alpha);
          for (int j = 0; j < config.grid; ++j) {
            const double u = grid_u(j);
            const double b_raw = raw(u);
            const double cap = admissible_cap(u);
            const int admissible = b_raw <= cap + 1e-12 ? 1 : 0;
            if (csv) {
              os << to_string(kind.tag) << ',' << format_sig(alpha) << ','
                 << format_sig(u) << ',' << format_sig(b_raw) << ','
                 << format_sig(trunc(u)) << ',' << format_sig(cap) << ',' << admissible
                 << '\n';
            } else {
              nlohmann::json r = base_record(kind, alpha);
              r["u"] = u;
              r["b_raw"] = b_raw;
              r["b_truncated"] = trunc(u);
              r["cap"] = cap;
              r["admissible"] = admissible;
              os << r.dump() << '\n';
            }
          }
        } catch (const std::invalid_argument& e) {
          any_bad = true;
          emit_unsupported(os, csv, kind, alpha, e.what());
        }
      }
    }
    return any_bad ? 1 : 0;
  });
  if (code1 == 2) return 2;

  // Figure 2: the two optimal half-width curves.
  const std::vector<ProcedureKind> optimal = {{Procedure::MIN_EFFORT, false},
                                              {Procedure::MIN_COND_WIDTH, false}};
  const int code2 = with_stream(dir + "/figure2" + ext, [&](std::ostream& os) {
    if (csv) {
      os << "# subcommand=figures figure=2\n";
      os << "# kinds=" << kinds_echo(optimal) << '\n';
      os << "# alphas=" << alphas_echo(config.alphas) << '\n';
      os << "# grid=" << config.grid << '\n';
      os << "kind,alpha,u,b,cap\n";
    }
    for (const auto& kind : optimal) {
      for (double alpha : config.alphas) {
        const PiecewiseLinearBound bound = bound_function(kind, alpha);
        for (int j = 0; j < config.grid; ++j) {
          const double u = grid_u(j);
          if (csv) {
            os << to_string(kind.tag) << ',' << format_sig(alpha) << ',' << format_sig(u)
               << ',' << format_sig(bound(u)) << ',' << format_sig(admissible_cap(u))
               << '\n';
          } else {
            nlohmann::json r = base_record(kind, alpha);
            r["u"] = u;
            r["b"] = bound(u);
            r["cap"] = admissible_cap(u);
            os << r.dump() << '\n';
          }
        }
      }
    }
    return 0;
  });
  if (code2 == 2) return 2;
  return code1 == 1 || code2 == 1 ? 1 : 0;
}

int cmd_bernoulli(const RunConfig& config) {
  if (config.grid < 2) return usage_error("--grid must be >= 2");
  const bool csv = config.format == OutputFormat::CSV;
  const BernoulliRiskTable table = bernoulli_demo(config.grid);
  return with_stream(output_path(config, "bernoulli"), [&](std::ostream& os) {
    if (csv) {
      os << "# subcommand=bernoulli\n";
      os << "# grid=" << config.grid << '\n';
      os << "record,estimator,theta,mse,average_risk,max_risk\n";
    }
    for (std::size_t e = 0; e < table.estimator_names.size(); ++e) {
      const std::string name(table.estimator_names[e]);
      for (std::size_t i = 0; i < table.thetas.size(); ++i) {
        if (csv) {
          os << "curve," << name << ',' << format_sig(table.thetas[i]) << ','
             << format_sig(table.mse[e][i]) << ",,\n";
        } else {
          nlohmann::json r;
          r["record"] = "curve";
          r["estimator"] = name;
          r["theta"] = table.thetas[i];
          r["mse"] = table.mse[e][i];
          r["average_risk"] = nullptr;
          r["max_risk"] = nullptr;
          os << r.dump() << '\n';
        }
      }
    }
    for (std::size_t e = 0; e < table.estimator_names.size(); ++e) {
      const std::string name(table.estimator_names[e]);
      if (csv) {
        os << "summary," << name << ",,," << format_sig(table.average_risk[e]) << ','
           << format_sig(table.max_risk[e]) << '\n';
      } else {
        nlohmann::json r;
        r["record"] = "summary";
        r["estimator"] = name;
        r["theta"] = nullptr;
        r["mse"] = nullptr;
        r["average_risk"] = table.average_risk[e];
        r["max_risk"] = table.max_risk[e];
        os << r.dump() << '\n';
      }
    }
    return 0;
  });
}

int run_command(const RunConfig& config) {
  if (config.subcommand == "bounds") return cmd_bounds(config);
  if (config.subcommand == "coverage") return cmd_coverage(config);
  if (config.subcommand == "optimize") return cmd_optimize(config);
  if (config.subcommand == "simulate") return cmd_simulate(config);
  if (config.subcommand == "figures") return cmd_figures(config);
  if (config.subcommand == "bernoulli") return cmd_bernoulli(config);
  return usage_error("unknown subcommand: " + config.subcommand);
}

CsvTable read_csv(std::istream& is) {
  CsvTable table;
  std::string line;
  bool have_header = false;
  while (std::getline(is, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> fields = split_fields(line);
    if (!have_header) {
      table.header = std::move(fields);
      have_header = true;
    } else {
      table.rows.push_back(std::move(fields));
    }
  }
  return table;
}

std::vector<BoundsRow> parse_bounds_rows(const CsvTable& table) {
  const std::size_t kind = column(table, "kind");
  const std::size_t alpha = column(table, "alpha");
  const std::size_t u = column(table, "u");
  const std::size_t b_raw = column(table, "b_raw");
  const std::size_t b_trunc = column(table, "b_truncated");
  const std::size_t cap = column(table, "cap");
  const std::size_t admissible = column(table, "admissible");
  std::vector<BoundsRow> rows;
  rows.reserve(table.rows.size());
  for (const auto& r : table.rows) {
    BoundsRow row;
    row.kind = cell(r, kind);
    row.alpha = parse_double(cell(r, alpha));
    row.u = parse_double(cell(r, u));
    row.b_raw = parse_double(cell(r, b_raw));
    row.b_truncated = parse_double(cell(r, b_trunc));
    row.cap = parse_double(cell(r, cap));
    row.admissible = static_cast<int>(parse_ll(cell(r, admissible)));
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<CoverageRow> parse_coverage_rows(const CsvTable& table) {
  const std::size_t kind = column(table, "kind");
  const std::size_t alpha = column(table, "alpha");
  const std::size_t truncated = column(table, "truncated");
  const std::size_t exact = column(table, "exact_coverage");
  const std::size_t mc = column(table, "mc_coverage");
  const std::size_t se = column(table, "mc_std_error");
  const std::size_t trials = column(table, "trials");
  const std::size_t status = column(table, "status");
  std::vector<CoverageRow> rows;
  rows.reserve(table.rows.size());
  for (const auto& r : table.rows) {
    CoverageRow row;
    row.kind = cell(r, kind);
    row.alpha = parse_double(cell(r, alpha));
    row.truncated = static_cast<int>(parse_ll(cell(r, truncated)));
    row.exact_coverage = parse_opt_double(cell(r, exact));
    row.mc_coverage = parse_opt_double(cell(r, mc));
    row.mc_std_error = parse_opt_double(cell(r, se));
    row.trials = parse_u64(cell(r, trials));
    row.status = cell(r, status);
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<OptimizeRow> parse_optimize_rows(const CsvTable& table) {
  const std::size_t solver = column(table, "solver");
  const std::size_t alpha = column(table, "alpha");
  const std::size_t u = column(table, "u");
  const std::size_t b = column(table, "b");
  const std::size_t cap = column(table, "cap");
  const std::size_t closed = column(table, "closed_form");
  const std::size_t verdict = column(table, "verdict");
  std::vector<OptimizeRow> rows;
  rows.reserve(table.rows.size());
  for (const auto& r : table.rows) {
    OptimizeRow row;
    row.solver = cell(r, solver);
    row.alpha = parse_double(cell(r, alpha));
    row.u = parse_double(cell(r, u));
    row.b = parse_double(cell(r, b));
    row.cap = parse_double(cell(r, cap));
    row.closed_form = parse_double(cell(r, closed));
    row.verdict = cell(r, verdict);
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<SimulateRow> parse_simulate_rows(const CsvTable& table) {
  const std::size_t kind = column(table, "kind");
  const std::size_t alpha = column(table, "alpha");
  const std::size_t truncated = column(table, "truncated");
  const std::size_t trials = column(table, "trials");
  const std::size_t seed = column(table, "seed");
  const std::size_t success = column(table, "success_rate");
  const std::size_t se_success = column(table, "se_success");
  const std::size_t effort = column(table, "mean_effort");
  const std::size_t se_effort = column(table, "se_effort");
  const std::size_t cond = column(table, "mean_effort_given_success");
  const std::size_t se_cond = column(table, "se_effort_given_success");
  std::vector<SimulateRow> rows;
  rows.reserve(table.rows.size());
  for (const auto& r : table.rows) {
    SimulateRow row;
    row.kind = cell(r, kind);
    row.alpha = parse_double(cell(r, alpha));
    row.truncated = static_cast<int>(parse_ll(cell(r, truncated)));
    row.trials = parse_u64(cell(r, trials));
    row.seed = parse_u64(cell(r, seed));
    row.success_rate = parse_double(cell(r, success));
    row.se_success = parse_double(cell(r, se_success));
    row.mean_effort = parse_double(cell(r, effort));
    row.se_effort = parse_double(cell(r, se_effort));
    row.mean_effort_given_success = parse_opt_double(cell(r, cond));
    row.se_effort_given_success = parse_opt_double(cell(r, se_cond));
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<BernoulliRow> parse_bernoulli_rows(const CsvTable& table) {
  const std::size_t record = column(table, "record");
  const std::size_t estimator = column(table, "estimator");
  const std::size_t theta = column(table, "theta");
  const std::size_t mse = column(table, "mse");
  const std::size_t avg = column(table, "average_risk");
  const std::size_t max = column(table, "max_risk");
  std::vector<BernoulliRow> rows;
  rows.reserve(table.rows.size());
  for (const auto& r : table.rows) {
    BernoulliRow row;
    row.record = cell(r, record);
    row.estimator = cell(r, estimator);
    row.theta = parse_opt_double(cell(r, theta));
    row.mse = parse_opt_double(cell(r, mse));
    row.average_risk = parse_opt_double(cell(r, avg));
    row.max_risk = parse_opt_double(cell(r, max));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace ulci
