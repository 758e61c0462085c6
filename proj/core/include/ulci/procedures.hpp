#pragma once

// Interval procedures for the uniform location model. Each procedure is a
// half-width curve over the standardized range, calibrated so the interval
// midrange +- K * b(|v|/K) has exact coverage 1 - alpha:
//
//   SD              constant half-width, k = 1 - sqrt(alpha)
//   NP              half-width proportional to the range, k = (1-alpha)/(2 alpha)
//   UMP             slope-1/2 ramp from k = 1 - sqrt(2 alpha), clipped at the
//                   envelope (alpha <= 1/2 only; k clamps to 0 at alpha = 1/2)
//   BC              constant fraction 1 - alpha of the envelope
//   MIN_EFFORT      all or nothing: 0 below k = 2(1 - sqrt(1-alpha)), the full
//                   envelope above; minimizes expected width
//   MIN_COND_WIDTH  constant k = 1 - sqrt(alpha) clipped at the envelope;
//                   minimizes the squared-half-width integral
//
// SD and NP overshoot the envelope for large ranges; clipping them there
// (the truncated flag) never changes coverage and makes them admissible.

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "ulci/bound.hpp"
#include "ulci/model.hpp"

namespace ulci {

enum class Procedure { SD, NP, UMP, BC, MIN_EFFORT, MIN_COND_WIDTH };

struct ProcedureKind {
  Procedure tag = Procedure::SD;
  bool truncated = false;  // clip to the admissible envelope (no-op for kinds
                           // that already respect it)
};

struct IntervalEstimate {
  double center = 0.0;
  double half_width = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  ProcedureKind kind;
  double alpha = 0.0;
};

// k_alpha of the family. Throws std::invalid_argument for alpha outside
// (0, 1) and for UMP with alpha > 1/2 (unsupported: the clamped curve cannot
// reach levels below 1/2).
double critical_value(ProcedureKind kind, double alpha);

// The half-width curve, clipped iff kind.truncated.
PiecewiseLinearBound bound_function(ProcedureKind kind, double alpha);

// Interval for an observed summary: center at the midrange, half-width
// K * b(|v|/K). Throws std::invalid_argument if the summary is invalid or
// |v| exceeds 2K (beyond rounding slack).
IntervalEstimate interval(ProcedureKind kind, double alpha, const SummaryStat& stat);

std::string_view to_string(Procedure tag);
std::optional<Procedure> procedure_from_string(std::string_view name);

// One-line JSON record {kind, alpha, truncated, breakpoints, values}.
std::string bound_record_json(const PiecewiseLinearBound& bound, ProcedureKind kind,
                              double alpha);

// "u,b" CSV rows on the caller's grid, header line included.
void write_bound_csv(std::ostream& os, const PiecewiseLinearBound& bound,
                     std::span<const double> grid);

}  // namespace ulci
