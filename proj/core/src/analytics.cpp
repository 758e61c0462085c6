#include "ulci/analytics.hpp"

#include <cmath>
#include <future>
#include <limits>
#include <stdexcept>

#include "json.hpp"

namespace ulci {

namespace {

// Compensated accumulator; keeps long sums well below the tolerances the
// exact results are checked against.
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

double trap(double h, double f0, double f1) { return 0.5 * h * (f0 + f1); }

// Simpson weights are exact through cubics, which covers every segment
// integrand used here (b is linear per segment).
double simpson(double u0, double u1, double f0, double fm, double f1) {
  return (u1 - u0) / 6.0 * (f0 + 4.0 * fm + f1);
}

struct ShardPlan {
  std::uint64_t begin_trial = 0;
  std::uint64_t count = 0;
};

std::vector<ShardPlan> plan_shards(std::uint64_t trials, unsigned shards) {
  if (shards == 0) shards = 1;
  std::vector<ShardPlan> plan(shards);
  const std::uint64_t base = trials / shards;
  const std::uint64_t extra = trials % shards;
  std::uint64_t at = 0;
  for (unsigned s = 0; s < shards; ++s) {
    plan[s].begin_trial = at;
    plan[s].count = base + (s < extra ? 1 : 0);
    at += plan[s].count;
  }
  return plan;
}

// Runs fn(shard_index, trial_count) across shards and collects the returned
// accumulators in shard order, so the merge is scheduling-independent.
template <typename Acc, typename Fn>
std::vector<Acc> run_sharded(std::uint64_t trials, unsigned shards, Fn fn) {
  const auto plan = plan_shards(trials, shards);
  std::vector<Acc> accs(plan.size());
  std::vector<std::future<void>> jobs;
  jobs.reserve(plan.size());
  for (unsigned s = 0; s < plan.size(); ++s) {
    jobs.push_back(std::async(std::launch::async, [&, s] {
      accs[s] = fn(s, plan[s].count);
    }));
  }
  for (auto& j : jobs) j.get();
  return accs;
}

struct TrialDraw {
  double m = 0.0;
  double u = 0.0;  // standardized range in [0, 2]
};

TrialDraw draw_trial(StreamRng& rng, const ModelConfig& config) {
  const double lo = config.theta - config.half_length;
  const double hi = config.theta + config.half_length;
  double mn = rng.uniform(lo, hi);
  double mx = mn;
  for (int i = 1; i < config.n; ++i) {
    const double x = rng.uniform(lo, hi);
    if (x < mn) mn = x;
    if (x > mx) mx = x;
  }
  TrialDraw d;
  d.m = 0.5 * (mn + mx);
  d.u = (mx - mn) / config.half_length;
  if (d.u > 2.0) d.u = 2.0;
  return d;
}

void check_trials(std::uint64_t trials) {
  if (trials == 0) throw std::invalid_argument("trials must be >= 1");
}

nlohmann::json kind_fields(ProcedureKind kind, double alpha) {
  nlohmann::json j;
  j["kind"] = std::string(to_string(kind.tag));
  j["truncated"] = kind.truncated;
  j["alpha"] = alpha;
  return j;
}

}  // namespace

double conditional_coverage(const PiecewiseLinearBound& bound, double u) {
  if (!(u >= 0.0) || !(u <= 2.0)) {
    throw std::domain_error("conditional_coverage: u must lie in [0, 2]");
  }
  if (u == 2.0) return 1.0;
  const double cap = admissible_cap(u);
  const double b = bound(u);
  return (b < cap ? b : cap) / cap;
}

double exact_coverage(const PiecewiseLinearBound& bound) {
  const auto& bu = bound.breakpoints();
  const auto& bv = bound.values();
  Kahan acc;
  for (std::size_t i = 0; i + 1 < bu.size(); ++i) {
    const double u0 = bu[i], u1 = bu[i + 1];
    const double c0 = admissible_cap(u0), c1 = admissible_cap(u1);
    const double d0 = bv[i] - c0, d1 = bv[i + 1] - c1;
    if (d0 <= 0.0 && d1 <= 0.0) {
      acc.add(trap(u1 - u0, bv[i], bv[i + 1]));
    } else if (d0 >= 0.0 && d1 >= 0.0) {
      acc.add(trap(u1 - u0, c0, c1));
    } else {
      // One strict crossing; the root of the linear difference splits the
      // segment into a below-cap piece and an on-cap piece.
      const double t = u0 + (u1 - u0) * (d0 / (d0 - d1));
      const double ct = admissible_cap(t);
      if (d0 > 0.0) {
        acc.add(trap(t - u0, c0, ct));
        acc.add(trap(u1 - t, ct, bv[i + 1]));
      } else {
        acc.add(trap(t - u0, bv[i], ct));
        acc.add(trap(u1 - t, ct, c1));
      }
    }
  }
  return acc.sum;
}

double expected_width(const PiecewiseLinearBound& bound) {
  const auto& bu = bound.breakpoints();
  const auto& bv = bound.values();
  Kahan acc;
  for (std::size_t i = 0; i + 1 < bu.size(); ++i) {
    const double u0 = bu[i], u1 = bu[i + 1];
    const double um = 0.5 * (u0 + u1);
    const double vm = 0.5 * (bv[i] + bv[i + 1]);
    acc.add(simpson(u0, u1, bv[i] * (2.0 - u0), vm * (2.0 - um), bv[i + 1] * (2.0 - u1)));
  }
  return acc.sum;
}

double gamma_cond(const PiecewiseLinearBound& bound) {
  const auto& bu = bound.breakpoints();
  const auto& bv = bound.values();
  Kahan acc;
  for (std::size_t i = 0; i + 1 < bu.size(); ++i) {
    const double u0 = bu[i], u1 = bu[i + 1];
    const double vm = 0.5 * (bv[i] + bv[i + 1]);
    acc.add(simpson(u0, u1, bv[i] * bv[i], vm * vm, bv[i + 1] * bv[i + 1]));
  }
  return 2.0 * acc.sum;
}

CoverageReport mc_coverage(ProcedureKind kind, double alpha, const ModelConfig& config,
                           std::uint64_t trials, std::uint64_t seed, unsigned shards) {
  validate(config);
  check_trials(trials);
  const PiecewiseLinearBound b = bound_function(kind, alpha);
  const auto hits = run_sharded<std::uint64_t>(
      trials, shards, [&](unsigned s, std::uint64_t count) {
        StreamRng rng(seed, s);
        std::uint64_t hit = 0;
        for (std::uint64_t t = 0; t < count; ++t) {
          const TrialDraw d = draw_trial(rng, config);
          const double half = config.half_length * b(d.u);
          if (std::abs(d.m - config.theta) <= half) ++hit;
        }
        return hit;
      });
  std::uint64_t hit = 0;
  for (std::uint64_t h : hits) hit += h;
  CoverageReport report;
  report.kind = kind;
  report.alpha = alpha;
  report.method = CoverageMethod::MONTE_CARLO;
  report.trials = trials;
  report.estimate = static_cast<double>(hit) / static_cast<double>(trials);
  report.std_error =
      std::sqrt(report.estimate * (1.0 - report.estimate) / static_cast<double>(trials));
  return report;
}

ConditionalCoverageProfile mc_conditional_profile(ProcedureKind kind, double alpha,
                                                  int bins, std::uint64_t trials,
                                                  std::uint64_t seed, unsigned shards) {
  if (bins < 1) throw std::invalid_argument("bins must be >= 1");
  check_trials(trials);
  const ModelConfig config{0.0, 1.0, 2};
  const PiecewiseLinearBound b = bound_function(kind, alpha);

  struct Acc {
    std::vector<std::uint64_t> count, hit;
  };
  const auto accs = run_sharded<Acc>(trials, shards, [&](unsigned s, std::uint64_t count) {
    Acc acc;
    acc.count.assign(static_cast<std::size_t>(bins), 0);
    acc.hit.assign(static_cast<std::size_t>(bins), 0);
    StreamRng rng(seed, s);
    for (std::uint64_t t = 0; t < count; ++t) {
      const TrialDraw d = draw_trial(rng, config);
      auto bin = static_cast<std::size_t>(d.u * bins / 2.0);
      if (bin >= static_cast<std::size_t>(bins)) bin = static_cast<std::size_t>(bins) - 1;
      ++acc.count[bin];
      if (std::abs(d.m) <= b(d.u)) ++acc.hit[bin];
    }
    return acc;
  });

  ConditionalCoverageProfile profile;
  profile.kind = kind;
  profile.alpha = alpha;
  profile.trials = trials;
  profile.bin_edges.resize(static_cast<std::size_t>(bins) + 1);
  for (int i = 0; i <= bins; ++i) profile.bin_edges[i] = 2.0 * i / bins;
  profile.counts.assign(static_cast<std::size_t>(bins), 0);
  std::vector<std::uint64_t> hits(static_cast<std::size_t>(bins), 0);
  for (const Acc& acc : accs) {
    for (int i = 0; i < bins; ++i) {
      profile.counts[i] += acc.count[i];
      hits[i] += acc.hit[i];
    }
  }
  profile.coverage.resize(static_cast<std::size_t>(bins));
  for (int i = 0; i < bins; ++i) {
    profile.coverage[i] = profile.counts[i] == 0
                              ? std::numeric_limits<double>::quiet_NaN()
                              : static_cast<double>(hits[i]) /
                                    static_cast<double>(profile.counts[i]);
  }
  return profile;
}

RescueReport rescue_simulation(ProcedureKind kind, double alpha, const ModelConfig& config,
                               std::uint64_t trials, std::uint64_t seed, unsigned shards) {
  validate(config);
  check_trials(trials);
  const PiecewiseLinearBound b = bound_function(kind, alpha);

  struct Acc {
    std::uint64_t succ = 0;
    double w = 0.0, w2 = 0.0;    // width moments over all trials
    double ws = 0.0, w2s = 0.0;  // width moments over successes
  };
  const auto accs = run_sharded<Acc>(trials, shards, [&](unsigned s, std::uint64_t count) {
    Acc acc;
    Kahan w, w2, ws, w2s;
    StreamRng rng(seed, s);
    for (std::uint64_t t = 0; t < count; ++t) {
      const TrialDraw d = draw_trial(rng, config);
      const double half = config.half_length * b(d.u);
      const double width = 2.0 * half;
      w.add(width);
      w2.add(width * width);
      if (std::abs(d.m - config.theta) <= half) {
        ++acc.succ;
        ws.add(width);
        w2s.add(width * width);
      }
    }
    acc.w = w.sum;
    acc.w2 = w2.sum;
    acc.ws = ws.sum;
    acc.w2s = w2s.sum;
    return acc;
  });

  std::uint64_t succ = 0;
  Kahan w, w2, ws, w2s;
  for (const Acc& acc : accs) {
    succ += acc.succ;
    w.add(acc.w);
    w2.add(acc.w2);
    ws.add(acc.ws);
    w2s.add(acc.w2s);
  }

  const double n = static_cast<double>(trials);
  RescueReport report;
  report.kind = kind;
  report.alpha = alpha;
  report.trials = trials;
  report.seed = seed;
  const double p = static_cast<double>(succ) / n;
  report.success_rate = p;
  report.se_success = std::sqrt(p * (1.0 - p) / n);
  const double mw = w.sum / n;
  report.mean_effort = mw;
  report.se_effort = std::sqrt(std::max(0.0, w2.sum / n - mw * mw) / n);
  if (succ > 0) {
    // Ratio of means: R = E[w s] / E[s]; the delta method gives
    // Var(R) = (Var(ws) - 2 R Cov(ws, s) + R^2 Var(s)) / (n p^2),
    // and s^2 = s makes Cov(ws, s) = E[ws](1 - p).
    const double m_ws = ws.sum / n;
    const double m_w2s = w2s.sum / n;
    const double r = m_ws / p;
    const double var_ws = std::max(0.0, m_w2s - m_ws * m_ws);
    const double cov = m_ws * (1.0 - p);
    const double var_r = std::max(0.0, var_ws - 2.0 * r * cov + r * r * p * (1.0 - p));
    report.mean_effort_given_success = r;
    report.se_effort_given_success = std::sqrt(var_r / n) / p;
  }
  return report;
}

BernoulliRiskTable bernoulli_demo(int grid_points) {
  if (grid_points < 2) throw std::invalid_argument("grid_points must be >= 2");
  // Estimator value per outcome (x1, x2) in {00, 01, 10, 11}.
  static constexpr double est[3][4] = {
      {0.0, 0.5, 0.5, 1.0},     // mean
      {0.25, 0.5, 0.5, 0.75},   // shrink
      {0.0, 0.25, 0.75, 1.0},   // weighted 3:1
  };
  BernoulliRiskTable table;
  const int n = grid_points;
  const double h = 1.0 / (n - 1);
  table.thetas.resize(static_cast<std::size_t>(n));
  for (auto& curve : table.mse) curve.resize(static_cast<std::size_t>(n));
  std::array<Kahan, 3> avg;
  for (int i = 0; i < n; ++i) {
    const double theta = i * h;
    table.thetas[i] = theta;
    const double q = 1.0 - theta;
    const double prob[4] = {q * q, q * theta, theta * q, theta * theta};
    const double w = (i == 0 || i == n - 1) ? 0.5 : 1.0;
    for (int e = 0; e < 3; ++e) {
      double mse = 0.0;
      for (int o = 0; o < 4; ++o) {
        const double err = est[e][o] - theta;
        mse += prob[o] * err * err;
      }
      table.mse[e][i] = mse;
      avg[e].add(w * mse);
      if (mse > table.max_risk[e]) table.max_risk[e] = mse;
    }
  }
  for (int e = 0; e < 3; ++e) table.average_risk[e] = avg[e].sum * h;
  return table;
}

std::string to_json(const CoverageReport& report) {
  nlohmann::json j = kind_fields(report.kind, report.alpha);
  j["method"] = report.method == CoverageMethod::EXACT ? "exact" : "monte_carlo";
  j["estimate"] = report.estimate;
  j["std_error"] = report.std_error;
  j["trials"] = report.trials;
  return j.dump();
}

std::string to_json(const ConditionalCoverageProfile& profile) {
  nlohmann::json j = kind_fields(profile.kind, profile.alpha);
  j["bin_edges"] = profile.bin_edges;
  j["coverage"] = profile.coverage;  // empty bins render as null
  j["counts"] = profile.counts;
  j["trials"] = profile.trials;
  return j.dump();
}

std::string to_json(const RescueReport& report) {
  nlohmann::json j = kind_fields(report.kind, report.alpha);
  j["trials"] = report.trials;
  j["seed"] = report.seed;
  j["success_rate"] = report.success_rate;
  j["se_success"] = report.se_success;
  j["mean_effort"] = report.mean_effort;
  j["se_effort"] = report.se_effort;
  if (report.mean_effort_given_success) {
    j["mean_effort_given_success"] = *report.mean_effort_given_success;
    j["se_effort_given_success"] = *report.se_effort_given_success;
  } else {
    j["mean_effort_given_success"] = nullptr;
    j["se_effort_given_success"] = nullptr;
  }
  return j.dump();
}

}  // namespace ulci
