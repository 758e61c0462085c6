#pragma once

// Discretized mass-allocation solvers that re-derive the optimal half-width
// curves numerically, independently of the closed forms they are checked
// against. Cells discretize u in [0, 2] at midpoints u_i; cell i holds a
// value b_i in [0, c_i] with c_i the admissible envelope at u_i, and the
// exact-level constraint fixes the total mass: sum_i b_i * delta = 1 - alpha.

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "ulci/procedures.hpp"

namespace ulci {

enum class GridObjective {
  LINEAR,     // minimize the density-weighted mass sum b_i * (2 - u_i)/2 * delta,
              // the discrete expected width over the signed range
  QUADRATIC,  // minimize 2 * sum b_i^2 * delta, the discrete squared-half-width
              // integral
};

struct GridProblem {
  int n_cells = 0;
  GridObjective objective = GridObjective::LINEAR;

  double delta() const { return 2.0 / n_cells; }
  double midpoint(int i) const { return (i + 0.5) * delta(); }
  double cap_at(int i) const { return 1.0 - 0.5 * midpoint(i); }
};

// n_cells >= 10; throws std::invalid_argument otherwise.
GridProblem make_grid(int n_cells, GridObjective objective);

struct SolveReport {
  GridObjective objective = GridObjective::LINEAR;
  double alpha = 0.0;
  int n_cells = 0;
  std::vector<double> solution;
  double objective_value = 0.0;
  double constraint_residual = 0.0;   // |sum b_i delta - (1 - alpha)|
  std::optional<double> lambda;       // water level, quadratic only
  // Distance to the matching closed form at midpoints. The linear objective
  // skips the cell containing the bang-bang jump (excluded_cell); the
  // water-filling solution has no jump and nothing is skipped.
  double closed_form_linf = 0.0;
  double closed_form_l1 = 0.0;        // sum |diff| * delta over counted cells
  int excluded_cell = -1;
  int iterations = 0;                 // cells touched (linear), bisections (quadratic)
};

// Greedy fill from the cheap end: per unit of mass, cost (2 - u)/2 falls as u
// grows, so saturate cells from u = 2 downward and stop with one fractional
// cell. Requires grid.objective == LINEAR and alpha in (0, 1).
SolveReport solve_linear(const GridProblem& grid, double alpha);

// Water filling b_i = min(lambda, c_i) with lambda found by monotone
// bisection on the mass function. Saturated cells are assigned c_i exactly.
// Requires grid.objective == QUADRATIC and alpha in (0, 1).
SolveReport solve_quadratic(const GridProblem& grid, double alpha);

struct DiscrepancyRecord {
  ProcedureKind kind;
  double alpha = 0.0;
  int n_cells = 0;
  double linf = 0.0;
  double l1 = 0.0;
  int excluded_cell = -1;  // -1 when no cell is exempt
  bool pass = false;       // linf <= 2 * delta over counted cells
};

// Verification bridge to the closed forms: compare report.solution against
// bound_function(kind, report.alpha) at the cell midpoints. kind must be
// MIN_EFFORT (its jump cell is exempt) or MIN_COND_WIDTH; anything else
// throws std::invalid_argument.
DiscrepancyRecord compare_to_closed_form(const SolveReport& report, ProcedureKind kind);

std::string to_json(const SolveReport& report);
std::string to_json(const DiscrepancyRecord& record);

// "u,b,cap,closed_form" CSV rows for the solution vector, header included.
void write_solution_csv(std::ostream& os, const SolveReport& report,
                        ProcedureKind closed_form_kind);

}  // namespace ulci
