#include "ulci/varsolve.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

#include "json.hpp"

namespace ulci {

namespace {

struct Kahan {
  double sum = 0.0;
  double carry = 0.0;
  void add(double x) {
    const double y = x - carry;
    const double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
};

void check_alpha(double alpha) {
  if (!(alpha > 0.0) || !(alpha < 1.0)) {
    throw std::invalid_argument("alpha must lie in (0, 1)");
  }
}

double mass_residual(const GridProblem& grid, const std::vector<double>& b, double target) {
  Kahan acc;
  const double delta = grid.delta();
  for (double bi : b) acc.add(bi * delta);
  return std::abs(acc.sum - target);
}

// Distances to the closed form at midpoints, optionally skipping one cell.
void closed_form_distance(const GridProblem& grid, const std::vector<double>& b,
                          const PiecewiseLinearBound& closed, int skip, double* linf,
                          double* l1) {
  *linf = 0.0;
  Kahan acc;
  for (int i = 0; i < grid.n_cells; ++i) {
    if (i == skip) continue;
    const double diff = std::abs(b[i] - closed(grid.midpoint(i)));
    if (diff > *linf) *linf = diff;
    acc.add(diff * grid.delta());
  }
  *l1 = acc.sum;
}

int jump_cell(const GridProblem& grid, double alpha) {
  const double k = critical_value({Procedure::MIN_EFFORT, false}, alpha);
  int cell = static_cast<int>(k / grid.delta());
  if (cell < 0) cell = 0;
  if (cell >= grid.n_cells) cell = grid.n_cells - 1;
  return cell;
}

std::string_view objective_name(GridObjective objective) {
  return objective == GridObjective::LINEAR ? "linear" : "quadratic";
}

}  // namespace

GridProblem make_grid(int n_cells, GridObjective objective) {
  if (n_cells < 10) {
    throw std::invalid_argument("make_grid: n_cells must be >= 10");
  }
  return GridProblem{n_cells, objective};
}

SolveReport solve_linear(const GridProblem& grid, double alpha) {
  if (grid.objective != GridObjective::LINEAR) {
    throw std::invalid_argument("solve_linear: grid objective mismatch");
  }
  check_alpha(alpha);
  const int n = grid.n_cells;
  const double delta = grid.delta();
  const double target = 1.0 - alpha;

  Kahan total;
  for (int i = 0; i < n; ++i) total.add(grid.cap_at(i) * delta);
  if (total.sum < target - 1e-12) {
    throw std::invalid_argument("solve_linear: mass target infeasible for this grid");
  }

  SolveReport report;
  report.objective = grid.objective;
  report.alpha = alpha;
  report.n_cells = n;
  report.solution.assign(static_cast<std::size_t>(n), 0.0);

  // Mass is cheapest where the range density (2 - u)/4 is smallest, so fill
  // whole cells from u = 2 downward and make up the remainder fractionally.
  double rem = target;
  int touched = 0;
  for (int i = n - 1; i >= 0; --i) {
    ++touched;
    const double full = grid.cap_at(i) * delta;
    if (rem >= full) {
      report.solution[i] = grid.cap_at(i);
      rem -= full;
    } else {
      report.solution[i] = rem / delta;
      rem = 0.0;
      break;
    }
  }
  report.iterations = touched;

  Kahan obj;
  for (int i = 0; i < n; ++i) {
    obj.add(report.solution[i] * (2.0 - grid.midpoint(i)) * 0.5 * delta);
  }
  report.objective_value = obj.sum;
  report.constraint_residual = mass_residual(grid, report.solution, target);
  report.excluded_cell = jump_cell(grid, alpha);
  const PiecewiseLinearBound closed = bound_function({Procedure::MIN_EFFORT, false}, alpha);
  closed_form_distance(grid, report.solution, closed, report.excluded_cell,
                       &report.closed_form_linf, &report.closed_form_l1);
  return report;
}

SolveReport solve_quadratic(const GridProblem& grid, double alpha) {
  if (grid.objective != GridObjective::QUADRATIC) {
    throw std::invalid_argument("solve_quadratic: grid objective mismatch");
  }
  check_alpha(alpha);
  const int n = grid.n_cells;
  const double delta = grid.delta();
  const double target = 1.0 - alpha;

  auto mass_at = [&](double level) {
    Kahan acc;
    for (int i = 0; i < n; ++i) {
      const double c = grid.cap_at(i);
      acc.add((level < c ? level : c) * delta);
    }
    return acc.sum;
  };

  double lo = 0.0;
  double hi = grid.cap_at(0);  // the largest cap
  if (mass_at(hi) < target - 1e-12) {
    throw std::invalid_argument("solve_quadratic: bisection bracket failed (grid bug)");
  }
  int iterations = 0;
  while (iterations < 200) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;  // interval narrowed to adjacent doubles
    ++iterations;
    if (mass_at(mid) < target) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  const double lambda = hi;

  SolveReport report;
  report.objective = grid.objective;
  report.alpha = alpha;
  report.n_cells = n;
  report.lambda = lambda;
  report.iterations = iterations;
  report.solution.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const double c = grid.cap_at(i);
    // Saturated cells take the cap value itself, not an arithmetic image of it.
    report.solution[i] = c <= lambda ? c : lambda;
  }

  Kahan obj;
  for (int i = 0; i < n; ++i) {
    obj.add(report.solution[i] * report.solution[i] * delta);
  }
  report.objective_value = 2.0 * obj.sum;
  report.constraint_residual = mass_residual(grid, report.solution, target);
  report.excluded_cell = -1;
  const PiecewiseLinearBound closed =
      bound_function({Procedure::MIN_COND_WIDTH, false}, alpha);
  closed_form_distance(grid, report.solution, closed, -1, &report.closed_form_linf,
                       &report.closed_form_l1);
  return report;
}

DiscrepancyRecord compare_to_closed_form(const SolveReport& report, ProcedureKind kind) {
  if (kind.tag != Procedure::MIN_EFFORT && kind.tag != Procedure::MIN_COND_WIDTH) {
    throw std::invalid_argument(
        "compare_to_closed_form: kind must be min_effort or min_cond_width");
  }
  GridProblem grid{report.n_cells, report.objective};
  DiscrepancyRecord record;
  record.kind = kind;
  record.alpha = report.alpha;
  record.n_cells = report.n_cells;
  record.excluded_cell =
      kind.tag == Procedure::MIN_EFFORT ? jump_cell(grid, report.alpha) : -1;
  const PiecewiseLinearBound closed = bound_function(kind, report.alpha);
  closed_form_distance(grid, report.solution, closed, record.excluded_cell, &record.linf,
                       &record.l1);
  record.pass = record.linf <= 2.0 * grid.delta();
  return record;
}

std::string to_json(const SolveReport& report) {
  nlohmann::json j;
  j["objective"] = std::string(objective_name(report.objective));
  j["alpha"] = report.alpha;
  j["n_cells"] = report.n_cells;
  j["solution"] = report.solution;
  j["objective_value"] = report.objective_value;
  j["constraint_residual"] = report.constraint_residual;
  if (report.lambda) {
    j["lambda"] = *report.lambda;
  } else {
    j["lambda"] = nullptr;
  }
  j["closed_form_linf"] = report.closed_form_linf;
  j["closed_form_l1"] = report.closed_form_l1;
  j["excluded_cell"] = report.excluded_cell;
  j["iterations"] = report.iterations;
  return j.dump();
}

std::string to_json(const DiscrepancyRecord& record) {
  nlohmann::json j;
  j["kind"] = std::string(to_string(record.kind.tag));
  j["alpha"] = record.alpha;
  j["n_cells"] = record.n_cells;
  j["linf"] = record.linf;
  j["l1"] = record.l1;
  j["excluded_cell"] = record.excluded_cell;
  j["pass"] = record.pass;
  return j.dump();
}

void write_solution_csv(std::ostream& os, const SolveReport& report,
                        ProcedureKind closed_form_kind) {
  GridProblem grid{report.n_cells, report.objective};
  const PiecewiseLinearBound closed = bound_function(closed_form_kind, report.alpha);
  os << "u,b,cap,closed_form\n";
  char buf[128];
  for (int i = 0; i < report.n_cells; ++i) {
    const double u = grid.midpoint(i);
    std::snprintf(buf, sizeof buf, "%.12g,%.12g,%.12g,%.12g\n", u, report.solution[i],
                  grid.cap_at(i), closed(u));
    os << buf;
  }
}

}  // namespace ulci
