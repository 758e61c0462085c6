#pragma once

// Exact and Monte Carlo diagnostics for half-width curves. The exact side
// integrates piecewise linear segments in closed form; the Monte Carlo side
// shards trials across (seed, stream) pairs and merges counts in shard order,
// so every estimate is a pure function of (seed, shards, trials).

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ulci/bound.hpp"
#include "ulci/model.hpp"
#include "ulci/procedures.hpp"

namespace ulci {

enum class CoverageMethod { EXACT, MONTE_CARLO };

struct CoverageReport {
  ProcedureKind kind;
  double alpha = 0.0;
  CoverageMethod method = CoverageMethod::EXACT;
  double estimate = 0.0;
  double std_error = 0.0;     // binomial sqrt(p(1-p)/trials); 0 for EXACT
  std::uint64_t trials = 0;   // 0 for EXACT
};

struct ConditionalCoverageProfile {
  ProcedureKind kind;
  double alpha = 0.0;
  std::vector<double> bin_edges;       // bins + 1 edges spanning [0, 2]
  std::vector<double> coverage;        // per-bin hit rate, NaN for empty bins
  std::vector<std::uint64_t> counts;   // per-bin trial counts, sum to trials
  std::uint64_t trials = 0;
};

struct RescueReport {
  ProcedureKind kind;
  double alpha = 0.0;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  double success_rate = 0.0;
  double se_success = 0.0;
  double mean_effort = 0.0;  // effort = interval width
  double se_effort = 0.0;
  // Ratio of means E[width * success] / E[success]; absent when nothing
  // succeeded. The standard error comes from the delta method.
  std::optional<double> mean_effort_given_success;
  std::optional<double> se_effort_given_success;
};

inline constexpr unsigned kDefaultShards = 8;

// Coverage at a fixed standardized range u in [0, 2]: min(b, cap)/cap, and 1
// at u = 2 where the conditional support degenerates. Throws std::domain_error
// for u outside [0, 2].
double conditional_coverage(const PiecewiseLinearBound& bound, double u);

// Integral of min(b, cap) over [0, 2]. The range density divided by the
// envelope is the constant 1/2 on (-2, 2), which collapses the average of
// conditional coverage to exactly this integral.
double exact_coverage(const PiecewiseLinearBound& bound);

// E[2 K b(V)] in K = 1 units: integral of b(u) (2 - u) du over [0, 2].
double expected_width(const PiecewiseLinearBound& bound);

// Squared-half-width integral over the full signed range: 2 * int_0^2 b^2 du.
double gamma_cond(const PiecewiseLinearBound& bound);

// Empirical coverage of the (kind, alpha) interval under config.
CoverageReport mc_coverage(ProcedureKind kind, double alpha, const ModelConfig& config,
                           std::uint64_t trials, std::uint64_t seed,
                           unsigned shards = kDefaultShards);

// Per-bin empirical coverage against the standardized range (theta = 0, K = 1,
// n = 2); compare with conditional_coverage at bin midpoints.
ConditionalCoverageProfile mc_conditional_profile(ProcedureKind kind, double alpha,
                                                  int bins, std::uint64_t trials,
                                                  std::uint64_t seed,
                                                  unsigned shards = kDefaultShards);

// Success rate and effort of repeatedly acting on the interval: a trial
// succeeds when the target lies inside, and effort is the interval width.
RescueReport rescue_simulation(ProcedureKind kind, double alpha, const ModelConfig& config,
                               std::uint64_t trials, std::uint64_t seed,
                               unsigned shards = kDefaultShards);

// Exact risk curves for three estimators of a Bernoulli mean from two draws:
// the sample mean, the mean shrunk halfway toward 1/2, and the 3:1 weighted
// mean. MSE comes from enumerating the four outcomes; average risk is the
// trapezoid rule over the theta grid and max risk the grid maximum.
struct BernoulliRiskTable {
  static constexpr std::array<std::string_view, 3> estimator_names = {
      "mean", "shrink", "weighted"};
  std::vector<double> thetas;
  std::array<std::vector<double>, 3> mse;
  std::array<double, 3> average_risk = {};
  std::array<double, 3> max_risk = {};
};

// grid_points >= 2 equally spaced thetas on [0, 1]. Use an odd count so the
// grid contains 1/2, where two of the risk curves peak.
BernoulliRiskTable bernoulli_demo(int grid_points);

std::string to_json(const CoverageReport& report);
std::string to_json(const ConditionalCoverageProfile& profile);
std::string to_json(const RescueReport& report);

}  // namespace ulci
