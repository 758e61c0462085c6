#pragma once

// Half-width curves b(u) of the standardized range u in [0, 2], stored as
// piecewise linear functions and extended evenly to negative u. No interval
// can reach past the conditional support of the midrange, so the admissible
// envelope 1 - u/2 is the hard ceiling every curve is measured against.

#include <cstddef>
#include <vector>

namespace ulci {

inline double admissible_cap(double u) {
  return 1.0 - 0.5 * (u < 0 ? -u : u);
}

class PiecewiseLinearBound {
 public:
  // breakpoints: strictly increasing, first exactly 0, last exactly 2.
  // values: finite and nonnegative (values in (-1e-15, 1e-15) snap to zero).
  // Collinear interior breakpoints are merged so logically identical curves
  // get identical storage. Throws std::invalid_argument on bad input.
  PiecewiseLinearBound(std::vector<double> breakpoints, std::vector<double> values);

  // Evaluate at u in [-2, 2] (even extension). |u| may overshoot 2 by up to
  // 1e-9 to absorb rounding in callers; beyond that throws std::domain_error.
  double operator()(double u) const;

  const std::vector<double>& breakpoints() const { return breakpoints_; }
  const std::vector<double>& values() const { return values_; }
  std::size_t segment_count() const { return breakpoints_.size() - 1; }

 private:
  std::vector<double> breakpoints_;
  std::vector<double> values_;
};

// Pointwise minimum with the admissible envelope. Crossings are solved
// exactly and inserted as breakpoints; values on the envelope are assigned
// from it directly so the clipped parts sit on the cap bitwise.
PiecewiseLinearBound truncate(const PiecewiseLinearBound& bound);

// True iff b(u) <= 1 - u/2 + tol for all u. Both sides are linear on each
// segment, so the breakpoints carry the segment maxima and checking them is
// exhaustive.
bool is_admissible(const PiecewiseLinearBound& bound, double tol);

}  // namespace ulci
