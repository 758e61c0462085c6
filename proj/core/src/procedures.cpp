#include "ulci/procedures.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

#include "json.hpp"

namespace ulci {

namespace {

// Width of the two-point ramp that stands in for the MIN_EFFORT jump.
constexpr double kJumpEps = 1e-9;

void check_alpha(double alpha) {
  if (!(alpha > 0.0) || !(alpha < 1.0)) {
    throw std::invalid_argument("alpha must lie in (0, 1)");
  }
}

}  // namespace

double critical_value(ProcedureKind kind, double alpha) {
  check_alpha(alpha);
  switch (kind.tag) {
    case Procedure::SD:
      return 1.0 - std::sqrt(alpha);
    case Procedure::NP:
      return (1.0 - alpha) / (2.0 * alpha);
    case Procedure::UMP:
      if (alpha > 0.5) {
        throw std::invalid_argument(
            "UMP is unsupported for alpha > 1/2: its critical value clamps to 0 "
            "and the curve cannot reach levels below 1/2");
      }
      return 1.0 - std::sqrt(2.0 * alpha);
    case Procedure::BC:
      return 1.0 - alpha;
    case Procedure::MIN_EFFORT:
      return 2.0 * (1.0 - std::sqrt(1.0 - alpha));
    case Procedure::MIN_COND_WIDTH:
      return 1.0 - std::sqrt(alpha);
  }
  throw std::invalid_argument("unknown procedure");
}

PiecewiseLinearBound bound_function(ProcedureKind kind, double alpha) {
  const double k = critical_value(kind, alpha);
  PiecewiseLinearBound raw = [&]() -> PiecewiseLinearBound {
    switch (kind.tag) {
      case Procedure::SD:
        return PiecewiseLinearBound({0.0, 2.0}, {k, k});
      case Procedure::NP:
        return PiecewiseLinearBound({0.0, 2.0}, {0.0, 2.0 * k});
      case Procedure::UMP: {
        // min(u/2 + k, cap): the two lines cross at u = 1 - k.
        const double t = 1.0 - k;
        if (t <= 0.0 || t >= 2.0) {
          return PiecewiseLinearBound({0.0, 2.0}, {k, admissible_cap(2.0)});
        }
        return PiecewiseLinearBound({0.0, t, 2.0}, {k, admissible_cap(t), 0.0});
      }
      case Procedure::BC:
        return PiecewiseLinearBound({0.0, 2.0}, {k, 0.0});
      case Procedure::MIN_EFFORT: {
        // Zero until k, the full envelope from k on. The jump is a two-point
        // ramp of width kJumpEps ending at k, so the curve is exact at and
        // beyond the jump.
        if (k <= kJumpEps) {
          return PiecewiseLinearBound({0.0, 2.0}, {1.0, 0.0});
        }
        return PiecewiseLinearBound({0.0, k - kJumpEps, k, 2.0},
                                    {0.0, 0.0, admissible_cap(k), 0.0});
      }
      case Procedure::MIN_COND_WIDTH: {
        const double t = 2.0 * (1.0 - k);
        if (t >= 2.0) {
          return PiecewiseLinearBound({0.0, 2.0}, {k, k});
        }
        return PiecewiseLinearBound({0.0, t, 2.0}, {k, admissible_cap(t), 0.0});
      }
    }
    throw std::invalid_argument("unknown procedure");
  }();
  return kind.truncated ? truncate(raw) : raw;
}

IntervalEstimate interval(ProcedureKind kind, double alpha, const SummaryStat& stat) {
  if (!(stat.k_scale > 0.0) || !std::isfinite(stat.m) || !std::isfinite(stat.v)) {
    throw std::invalid_argument("interval: invalid summary");
  }
  const double span = 2.0 * stat.k_scale;
  if (std::abs(stat.v) > span * (1.0 + 1e-9)) {
    throw std::invalid_argument("interval: |v| exceeds the 2K support width");
  }
  double u = std::abs(stat.v) / stat.k_scale;
  if (u > 2.0) u = 2.0;
  const PiecewiseLinearBound b = bound_function(kind, alpha);
  IntervalEstimate est;
  est.kind = kind;
  est.alpha = alpha;
  est.center = stat.m;
  est.half_width = stat.k_scale * b(u);
  est.lower = est.center - est.half_width;
  est.upper = est.center + est.half_width;
  return est;
}

std::string_view to_string(Procedure tag) {
  switch (tag) {
    case Procedure::SD: return "sd";
    case Procedure::NP: return "np";
    case Procedure::UMP: return "ump";
    case Procedure::BC: return "bc";
    case Procedure::MIN_EFFORT: return "min_effort";
    case Procedure::MIN_COND_WIDTH: return "min_cond_width";
  }
  return "?";
}

std::optional<Procedure> procedure_from_string(std::string_view name) {
  if (name == "sd") return Procedure::SD;
  if (name == "np") return Procedure::NP;
  if (name == "ump") return Procedure::UMP;
  if (name == "bc") return Procedure::BC;
  if (name == "min_effort") return Procedure::MIN_EFFORT;
  if (name == "min_cond_width") return Procedure::MIN_COND_WIDTH;
  return std::nullopt;
}

std::string bound_record_json(const PiecewiseLinearBound& bound, ProcedureKind kind,
                              double alpha) {
  nlohmann::json j;
  j["kind"] = std::string(to_string(kind.tag));
  j["alpha"] = alpha;
  j["truncated"] = kind.truncated;
  j["breakpoints"] = bound.breakpoints();
  j["values"] = bound.values();
  return j.dump();
}

void write_bound_csv(std::ostream& os, const PiecewiseLinearBound& bound,
                     std::span<const double> grid) {
  os << "u,b\n";
  char buf[64];
  for (double u : grid) {
    std::snprintf(buf, sizeof buf, "%.12g,%.12g\n", u, bound(u));
    os << buf;
  }
}

}  // namespace ulci
