#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "json.hpp"
#include "ulci/analytics.hpp"
#include "ulci/bound.hpp"
#include "ulci/model.hpp"
#include "ulci/procedures.hpp"

using namespace ulci;

namespace {

const ModelConfig kUnit{0.0, 1.0, 2};

const std::vector<Procedure> kAllTags = {Procedure::SD,  Procedure::NP,
                                         Procedure::UMP, Procedure::BC,
                                         Procedure::MIN_EFFORT, Procedure::MIN_COND_WIDTH};

// Average of conditional coverage against the range density, by composite
// Simpson per segment. Segments of an admissible bound make the integrand
// piecewise linear, so this reproduces the closed-form coverage.
double averaged_conditional_coverage(const PiecewiseLinearBound& bound) {
  const auto& us = bound.breakpoints();
  double total = 0.0;
  auto f = [&](double u) {
    return conditional_coverage(bound, u) * 2.0 * density_v(u);
  };
  for (std::size_t i = 0; i + 1 < us.size(); ++i) {
    const int panels = 200;
    const double h = (us[i + 1] - us[i]) / panels;
    for (int p = 0; p < panels; ++p) {
      const double a = us[i] + p * h;
      const double b = a + h;
      total += h / 6.0 * (f(a) + 4.0 * f(0.5 * (a + b)) + f(b));
    }
  }
  return total;
}

}  // namespace

TEST_CASE("conditional coverage at fixed range values") {
  const PiecewiseLinearBound ones({0.0, 2.0}, {1.0, 1.0});
  CHECK(conditional_coverage(ones, 0.0) == doctest::Approx(1.0));
  CHECK(conditional_coverage(ones, 1.7) == doctest::Approx(1.0));

  const PiecewiseLinearBound bc = bound_function({Procedure::BC, false}, 0.5);
  CHECK(conditional_coverage(bc, 0.0) == doctest::Approx(0.5));
  CHECK(conditional_coverage(bc, 1.0) == doctest::Approx(0.5));
  CHECK(conditional_coverage(bc, 1.99) == doctest::Approx(0.5));
  CHECK(conditional_coverage(bc, 2.0) == 1.0);

  const PiecewiseLinearBound sd = bound_function({Procedure::SD, false}, 0.25);
  CHECK(conditional_coverage(sd, 0.0) == doctest::Approx(0.5));
  CHECK(conditional_coverage(sd, 1.0) == doctest::Approx(1.0));
  CHECK(conditional_coverage(sd, 1.8) == doctest::Approx(1.0));

  CHECK_THROWS_AS(conditional_coverage(bc, -0.1), std::domain_error);
  CHECK_THROWS_AS(conditional_coverage(bc, 2.3), std::domain_error);
}

TEST_CASE("exact coverage of elementary bounds") {
  CHECK(exact_coverage(PiecewiseLinearBound({0.0, 2.0}, {0.0, 0.0})) == 0.0);
  CHECK(std::abs(exact_coverage(PiecewiseLinearBound({0.0, 2.0}, {1.0, 1.0})) - 1.0) <= 1e-12);
  CHECK(std::abs(exact_coverage(bound_function({Procedure::SD, false}, 0.25)) - 0.75) <= 1e-10);
  CHECK(std::abs(exact_coverage(bound_function({Procedure::MIN_EFFORT, false}, 0.5)) - 0.5) <=
        1e-8);
}

TEST_CASE("every procedure hits its nominal level exactly") {
  for (Procedure tag : kAllTags) {
    for (double alpha : {0.05, 0.1, 0.25, 0.5}) {
      for (bool truncated : {false, true}) {
        const double tol = tag == Procedure::MIN_EFFORT ? 1e-8 : 1e-10;
        const double cov = exact_coverage(bound_function({tag, truncated}, alpha));
        INFO(to_string(tag), " alpha=", alpha, " truncated=", truncated);
        CHECK(std::abs(cov - (1.0 - alpha)) <= tol);
      }
    }
  }
}

TEST_CASE("truncation changes neither exact nor empirical coverage") {
  for (Procedure tag : {Procedure::SD, Procedure::NP}) {
    for (double alpha : {0.05, 0.1, 0.25, 0.5}) {
      const double raw = exact_coverage(bound_function({tag, false}, alpha));
      const double cut = exact_coverage(bound_function({tag, true}, alpha));
      CHECK(std::abs(raw - cut) <= 1e-12);
    }
  }
  // Same seed, same draws; the clipped region lies outside the support, so
  // the hit sets coincide trial by trial.
  for (Procedure tag : {Procedure::SD, Procedure::NP}) {
    const CoverageReport raw = mc_coverage({tag, false}, 0.5, kUnit, 200000, 77);
    const CoverageReport cut = mc_coverage({tag, true}, 0.5, kUnit, 200000, 77);
    CHECK(raw.estimate == cut.estimate);
  }
}

TEST_CASE("expected width at reference levels") {
  CHECK(std::abs(expected_width(bound_function({Procedure::BC, false}, 0.5)) - 2.0 / 3.0) <=
        1e-10);
  CHECK(std::abs(expected_width(bound_function({Procedure::MIN_EFFORT, false}, 0.5)) -
                 0.4714045207910318) <= 1e-8);
  CHECK(std::abs(expected_width(bound_function({Procedure::SD, true}, 0.5)) -
                 0.569035593728849) <= 1e-8);
  CHECK(std::abs(expected_width(bound_function({Procedure::MIN_COND_WIDTH, false}, 0.5)) -
                 0.569035593728849) <= 1e-8);
}

TEST_CASE("conditional squared-width integral at reference levels") {
  CHECK(std::abs(gamma_cond(bound_function({Procedure::MIN_COND_WIDTH, false}, 0.5)) -
                 0.2761423749153966) <= 1e-10);
  CHECK(std::abs(gamma_cond(bound_function({Procedure::BC, false}, 0.5)) - 1.0 / 3.0) <= 1e-10);
  CHECK(std::abs(gamma_cond(bound_function({Procedure::MIN_EFFORT, false}, 0.5)) -
                 0.4714045207910318) <= 1e-8);
}

TEST_CASE("width and squared-width optimality margins") {
  for (double alpha : {0.25, 0.5}) {
    const double best_width =
        expected_width(bound_function({Procedure::MIN_EFFORT, false}, alpha));
    for (Procedure tag : {Procedure::SD, Procedure::NP, Procedure::UMP, Procedure::BC,
                          Procedure::MIN_COND_WIDTH}) {
      INFO("width ", to_string(tag), " alpha=", alpha);
      CHECK(expected_width(bound_function({tag, true}, alpha)) - best_width >= 1e-6);
    }
    const double best_gamma =
        gamma_cond(bound_function({Procedure::MIN_COND_WIDTH, false}, alpha));
    // The truncated constant-width curve is the same function, so it is left
    // out; everything else loses by a clear margin.
    for (Procedure tag :
         {Procedure::NP, Procedure::UMP, Procedure::BC, Procedure::MIN_EFFORT}) {
      INFO("gamma ", to_string(tag), " alpha=", alpha);
      CHECK(gamma_cond(bound_function({tag, true}, alpha)) - best_gamma >= 1e-6);
    }
  }
}

TEST_CASE("averaging conditional coverage over the range recovers total coverage") {
  for (Procedure tag : kAllTags) {
    for (double alpha : {0.25, 0.5}) {
      const PiecewiseLinearBound b = bound_function({tag, true}, alpha);
      INFO(to_string(tag), " alpha=", alpha);
      CHECK(std::abs(averaged_conditional_coverage(b) - exact_coverage(b)) <= 1e-8);
    }
  }
}

TEST_CASE("Monte Carlo coverage concords with the closed form") {
  for (Procedure tag : kAllTags) {
    for (double alpha : {0.25, 0.5}) {
      const ProcedureKind kind{tag, true};
      const CoverageReport rep = mc_coverage(kind, alpha, kUnit, 1000000, 2025);
      const double exact = exact_coverage(bound_function(kind, alpha));
      REQUIRE(rep.std_error > 0.0);
      INFO(to_string(tag), " alpha=", alpha, " mc=", rep.estimate, " exact=", exact);
      CHECK(std::abs(rep.estimate - exact) <= 3.5 * rep.std_error);
      CHECK(rep.trials == 1000000);
      CHECK(rep.method == CoverageMethod::MONTE_CARLO);
    }
  }
  // Shift and scale of the generating model leave coverage alone.
  const CoverageReport moved =
      mc_coverage({Procedure::SD, true}, 0.25, ModelConfig{3.5, 2.0, 2}, 400000, 5);
  CHECK(std::abs(moved.estimate - 0.75) <= 3.5 * moved.std_error);
}

TEST_CASE("Monte Carlo standard error matches the binomial formula") {
  const CoverageReport rep = mc_coverage({Procedure::BC, true}, 0.25, kUnit, 50000, 11);
  const double p = rep.estimate;
  CHECK(std::abs(rep.std_error - std::sqrt(p * (1.0 - p) / 50000.0)) <= 1e-15);
}

TEST_CASE("conditional coverage profile: flat-rate curve") {
  const ProcedureKind kind{Procedure::BC, true};
  const ConditionalCoverageProfile prof = mc_conditional_profile(kind, 0.5, 40, 1000000, 2027);
  REQUIRE(prof.bin_edges.size() == 41);
  REQUIRE(prof.coverage.size() == 40);
  REQUIRE(prof.counts.size() == 40);
  std::uint64_t total = 0;
  for (std::uint64_t c : prof.counts) total += c;
  CHECK(total == prof.trials);
  CHECK(prof.trials == 1000000);
  const PiecewiseLinearBound b = bound_function(kind, 0.5);
  for (int i = 0; i < 40; ++i) {
    REQUIRE(prof.counts[static_cast<std::size_t>(i)] > 100);
    const double mid = 0.5 * (prof.bin_edges[static_cast<std::size_t>(i)] +
                              prof.bin_edges[static_cast<std::size_t>(i) + 1]);
    const double p = conditional_coverage(b, mid);
    const double se =
        std::sqrt(p * (1.0 - p) / static_cast<double>(prof.counts[static_cast<std::size_t>(i)]));
    INFO("bin ", i, " coverage=", prof.coverage[static_cast<std::size_t>(i)]);
    CHECK(std::abs(prof.coverage[static_cast<std::size_t>(i)] - p) <= 4.0 * se);
  }
}

TEST_CASE("conditional coverage profile: all-or-nothing curve") {
  const ConditionalCoverageProfile prof =
      mc_conditional_profile({Procedure::MIN_EFFORT, true}, 0.5, 40, 1000000, 2028);
  // The curve gives up below its threshold (2 - sqrt 2, inside bin 11) and
  // covers with certainty above it.
  for (int i = 0; i < 40; ++i) {
    if (i == 11) continue;
    REQUIRE(prof.counts[static_cast<std::size_t>(i)] > 0);
    const double cov = prof.coverage[static_cast<std::size_t>(i)];
    INFO("bin ", i, " coverage=", cov);
    if (i < 11) {
      CHECK(cov <= 0.02);
    } else {
      CHECK(cov >= 0.98);
    }
  }
}

TEST_CASE("conditional coverage profile: certain coverage near the full range") {
  // The raw constant-width curve exceeds the support half-width once the
  // range is long, so every draw there is a hit.
  const ConditionalCoverageProfile prof =
      mc_conditional_profile({Procedure::SD, false}, 0.5, 40, 400000, 2029);
  REQUIRE(prof.counts[38] > 0);
  CHECK(prof.coverage[38] == 1.0);
  for (double c : prof.coverage) {
    if (std::isnan(c)) continue;
    CHECK(c >= 0.0);
    CHECK(c <= 1.0);
  }
}

TEST_CASE("rescue simulation: success and effort moments") {
  const RescueReport me = rescue_simulation({Procedure::MIN_EFFORT, true}, 0.5, kUnit, 1000000, 31);
  CHECK(me.trials == 1000000);
  CHECK(me.seed == 31);
  CHECK(std::abs(me.success_rate - 0.5) <= 3.5 * me.se_success);
  CHECK(std::abs(me.mean_effort - 0.4714045207910318) <= 5.0 * me.se_effort);
  REQUIRE(me.mean_effort_given_success.has_value());
  REQUIRE(me.se_effort_given_success.has_value());

  const RescueReport mcw =
      rescue_simulation({Procedure::MIN_COND_WIDTH, true}, 0.5, kUnit, 1000000, 32);
  CHECK(std::abs(mcw.mean_effort - 0.569035593728849) <= 5.0 * mcw.se_effort);
  REQUIRE(mcw.mean_effort_given_success.has_value());
  CHECK(std::abs(*mcw.mean_effort_given_success - 0.5522847498389741) <=
        5.0 * *mcw.se_effort_given_success);

  const RescueReport bc = rescue_simulation({Procedure::BC, true}, 0.01, kUnit, 1000000, 33);
  CHECK(std::abs(bc.success_rate - 0.99) <= 3.5 * bc.se_success);
}

TEST_CASE("rescue simulation: nothing succeeded") {
  // At a level this weak the curve only acts on near-maximal ranges, so a
  // single trial almost never succeeds; conditional moments must then be
  // absent rather than zero or NaN.
  bool found_zero = false;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const RescueReport rep =
        rescue_simulation({Procedure::MIN_EFFORT, true}, 0.999, kUnit, 1, seed);
    if (rep.success_rate == 0.0) {
      found_zero = true;
      CHECK_FALSE(rep.mean_effort_given_success.has_value());
      CHECK_FALSE(rep.se_effort_given_success.has_value());
      CHECK(rep.se_success == 0.0);
    }
  }
  CHECK(found_zero);
}

TEST_CASE("rescue simulation repeats bit for bit") {
  const RescueReport a = rescue_simulation({Procedure::UMP, true}, 0.25, kUnit, 100000, 8);
  const RescueReport b = rescue_simulation({Procedure::UMP, true}, 0.25, kUnit, 100000, 8);
  CHECK(a.success_rate == b.success_rate);
  CHECK(a.se_success == b.se_success);
  CHECK(a.mean_effort == b.mean_effort);
  CHECK(a.se_effort == b.se_effort);
  REQUIRE(a.mean_effort_given_success.has_value() == b.mean_effort_given_success.has_value());
  if (a.mean_effort_given_success) {
    CHECK(*a.mean_effort_given_success == *b.mean_effort_given_success);
  }
}

TEST_CASE("Bernoulli risk curves against their closed forms") {
  const BernoulliRiskTable table = bernoulli_demo(1000001);
  REQUIRE(table.thetas.size() == 1000001);
  REQUIRE(table.mse[0].size() == 1000001);

  CHECK(std::abs(table.average_risk[0] - 1.0 / 12.0) <= 1e-12);
  CHECK(std::abs(table.average_risk[1] - 1.0 / 24.0) <= 1e-12);
  CHECK(std::abs(table.average_risk[2] - 5.0 / 48.0) <= 1e-12);
  CHECK(std::abs(table.max_risk[0] - 0.125) <= 1e-12);
  CHECK(std::abs(table.max_risk[1] - 0.0625) <= 1e-12);
  CHECK(std::abs(table.max_risk[2] - 0.15625) <= 1e-12);

  // The shrunk mean dominates on average; the weighted mean trails both.
  CHECK(table.average_risk[1] < table.average_risk[0]);
  CHECK(table.average_risk[0] < table.average_risk[2]);
  CHECK(table.max_risk[1] < table.max_risk[0]);

  const std::size_t quarter = 250000;
  REQUIRE(table.thetas[quarter] == doctest::Approx(0.25));
  CHECK(std::abs(table.mse[0][quarter] - 0.09375) <= 1e-15);
  CHECK(std::abs(table.mse[1][quarter] - 0.0390625) <= 1e-15);
  CHECK(std::abs(table.mse[2][quarter] - 0.1171875) <= 1e-15);
  CHECK(table.mse[0][0] == 0.0);
  CHECK(table.mse[0].back() == 0.0);

  CHECK(BernoulliRiskTable::estimator_names[0] == "mean");
  CHECK(BernoulliRiskTable::estimator_names[1] == "shrink");
  CHECK(BernoulliRiskTable::estimator_names[2] == "weighted");

  CHECK_THROWS_AS(bernoulli_demo(1), std::invalid_argument);
  CHECK_THROWS_AS(bernoulli_demo(0), std::invalid_argument);
  const BernoulliRiskTable tiny = bernoulli_demo(2);
  REQUIRE(tiny.thetas.size() == 2);
  CHECK(tiny.thetas.front() == 0.0);
  CHECK(tiny.thetas.back() == 1.0);
}

TEST_CASE("analytics reports serialize to parseable records") {
  const CoverageReport rep = mc_coverage({Procedure::NP, true}, 0.25, kUnit, 1000, 3);
  const nlohmann::json jc = nlohmann::json::parse(to_json(rep));
  CHECK(jc.at("kind") == "np");
  CHECK(jc.at("method") == "monte_carlo");
  CHECK(jc.at("trials") == 1000);
  CHECK(jc.at("estimate").is_number());

  // A short profile leaves most bins empty; their rates must serialize as
  // null, not as NaN, which JSON cannot carry.
  const ConditionalCoverageProfile prof =
      mc_conditional_profile({Procedure::BC, true}, 0.5, 40, 10, 4);
  const nlohmann::json jp = nlohmann::json::parse(to_json(prof));
  REQUIRE(jp.at("coverage").size() == 40);
  bool saw_null = false;
  for (const auto& cell : jp.at("coverage")) saw_null = saw_null || cell.is_null();
  CHECK(saw_null);

  const RescueReport rr = rescue_simulation({Procedure::BC, true}, 0.25, kUnit, 1000, 5);
  const nlohmann::json jr = nlohmann::json::parse(to_json(rr));
  CHECK(jr.at("seed") == 5);
  CHECK(jr.at("success_rate").is_number());
}
