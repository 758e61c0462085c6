#include "ulci/bound.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ulci {

namespace {

constexpr double kValueSnap = 1e-15;
constexpr double kEvalSlack = 1e-9;

bool collinear(double u0, double v0, double u1, double v1, double u2, double v2) {
  // Equal slopes up to a relative tolerance on the cross product.
  const double lhs = (u1 - u0) * (v2 - v1);
  const double rhs = (u2 - u1) * (v1 - v0);
  const double scale = std::max({std::abs(lhs), std::abs(rhs), 1e-30});
  return std::abs(lhs - rhs) <= 1e-14 * scale;
}

}  // namespace

PiecewiseLinearBound::PiecewiseLinearBound(std::vector<double> breakpoints,
                                           std::vector<double> values)
    : breakpoints_(std::move(breakpoints)), values_(std::move(values)) {
  if (breakpoints_.size() != values_.size() || breakpoints_.size() < 2) {
    throw std::invalid_argument("PiecewiseLinearBound: need matching lists of >= 2 points");
  }
  if (breakpoints_.front() != 0.0 || breakpoints_.back() != 2.0) {
    throw std::invalid_argument("PiecewiseLinearBound: breakpoints must span [0, 2]");
  }
  for (std::size_t i = 0; i < breakpoints_.size(); ++i) {
    if (!std::isfinite(breakpoints_[i]) || !std::isfinite(values_[i])) {
      throw std::invalid_argument("PiecewiseLinearBound: non-finite input");
    }
    if (i > 0 && !(breakpoints_[i] > breakpoints_[i - 1])) {
      throw std::invalid_argument("PiecewiseLinearBound: breakpoints must strictly increase");
    }
    if (std::abs(values_[i]) < kValueSnap) values_[i] = 0.0;
    if (values_[i] < 0.0) {
      throw std::invalid_argument("PiecewiseLinearBound: values must be >= 0");
    }
  }
  // Drop interior points that change no slope.
  std::size_t w = 1;
  for (std::size_t i = 1; i + 1 < breakpoints_.size(); ++i) {
    if (collinear(breakpoints_[w - 1], values_[w - 1], breakpoints_[i], values_[i],
                  breakpoints_[i + 1], values_[i + 1])) {
      continue;
    }
    breakpoints_[w] = breakpoints_[i];
    values_[w] = values_[i];
    ++w;
  }
  breakpoints_[w] = breakpoints_.back();
  values_[w] = values_.back();
  breakpoints_.resize(w + 1);
  values_.resize(w + 1);
}

double PiecewiseLinearBound::operator()(double u) const {
  double a = std::abs(u);
  if (a > 2.0) {
    if (a > 2.0 + kEvalSlack) {
      throw std::domain_error("PiecewiseLinearBound: |u| beyond 2");
    }
    a = 2.0;
  }
  if (a == 2.0) return values_.back();
  auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), a);
  const std::size_t hi = static_cast<std::size_t>(it - breakpoints_.begin());
  const std::size_t lo = hi - 1;
  const double t = (a - breakpoints_[lo]) / (breakpoints_[hi] - breakpoints_[lo]);
  return values_[lo] + t * (values_[hi] - values_[lo]);
}

PiecewiseLinearBound truncate(const PiecewiseLinearBound& bound) {
  const auto& bu = bound.breakpoints();
  const auto& bv = bound.values();
  std::vector<double> us;
  std::vector<double> vs;
  us.reserve(bu.size() + bound.segment_count());
  vs.reserve(us.capacity());

  auto push = [&](double u, double v) {
    us.push_back(u);
    vs.push_back(v);
  };

  for (std::size_t i = 0; i + 1 < bu.size(); ++i) {
    const double c0 = admissible_cap(bu[i]);
    const double c1 = admissible_cap(bu[i + 1]);
    const double d0 = bv[i] - c0;
    const double d1 = bv[i + 1] - c1;
    push(bu[i], d0 > 0.0 ? c0 : bv[i]);
    if ((d0 > 0.0) != (d1 > 0.0) && d0 != 0.0 && d1 != 0.0) {
      // The difference to the envelope is linear on the segment; its root is
      // the crossing, and the value there is taken from the envelope.
      const double t = bu[i] + (bu[i + 1] - bu[i]) * (d0 / (d0 - d1));
      if (t > bu[i] && t < bu[i + 1]) push(t, admissible_cap(t));
    }
  }
  const double dl = bv.back() - admissible_cap(bu.back());
  push(bu.back(), dl > 0.0 ? admissible_cap(bu.back()) : bv.back());
  return PiecewiseLinearBound(std::move(us), std::move(vs));
}

bool is_admissible(const PiecewiseLinearBound& bound, double tol) {
  const auto& bu = bound.breakpoints();
  const auto& bv = bound.values();
  for (std::size_t i = 0; i < bu.size(); ++i) {
    if (bv[i] > admissible_cap(bu[i]) + tol) return false;
  }
  return true;
}

}  // namespace ulci
