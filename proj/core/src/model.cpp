#include "ulci/model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ulci {

void validate(const ModelConfig& config) {
  if (!std::isfinite(config.theta) || !std::isfinite(config.half_length)) {
    throw std::invalid_argument("ModelConfig: theta and half_length must be finite");
  }
  if (config.half_length <= 0.0) {
    throw std::invalid_argument("ModelConfig: half_length must be > 0");
  }
  if (config.n < 2) {
    throw std::invalid_argument("ModelConfig: n must be >= 2");
  }
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

StreamRng::StreamRng(std::uint64_t seed, std::uint64_t stream)
    : engine_(splitmix64(seed ^ splitmix64(stream + 0x6a09e667f3bcc909ULL))) {}

std::uint64_t StreamRng::next_u64() { return engine_(); }

double StreamRng::uniform01() {
  // Top 53 bits; avoids distribution objects whose output the standard does
  // not pin down.
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double StreamRng::uniform(double lo, double hi) {
  return lo + (hi - lo) * uniform01();
}

Sample sample(const ModelConfig& config, std::uint64_t seed, std::uint64_t stream) {
  StreamRng rng(seed, stream);
  return draw_sample(rng, config);
}

Sample draw_sample(StreamRng& rng, const ModelConfig& config) {
  validate(config);
  const double lo = config.theta - config.half_length;
  const double hi = config.theta + config.half_length;
  Sample s;
  s.coords.resize(static_cast<std::size_t>(config.n));
  for (double& x : s.coords) x = rng.uniform(lo, hi);
  std::sort(s.coords.begin(), s.coords.end());
  return s;
}

SummaryStat summarize(const Sample& s, const ModelConfig& config) {
  validate(config);
  if (s.coords.size() < 2) {
    throw std::invalid_argument("summarize: need at least two coordinates");
  }
  if (s.coords.size() != static_cast<std::size_t>(config.n)) {
    throw std::invalid_argument("summarize: sample size disagrees with config.n");
  }
  SummaryStat stat;
  stat.n = config.n;
  stat.k_scale = config.half_length;
  if (config.n == 2) {
    // Keep the stored order so the range carries its sign.
    stat.m = 0.5 * (s.coords[0] + s.coords[1]);
    stat.v = s.coords[1] - s.coords[0];
  } else {
    auto [lo, hi] = std::minmax_element(s.coords.begin(), s.coords.end());
    stat.m = 0.5 * (*lo + *hi);
    stat.v = *hi - *lo;
  }
  return stat;
}

double density_v(double v) {
  const double a = std::abs(v);
  if (a >= 2.0) return 0.0;
  return (2.0 - a) / 4.0;
}

double conditional_density_m(double m, double v, double theta) {
  const double a = std::abs(v);
  if (a >= 2.0) {
    throw std::domain_error("conditional_density_m: |v| must be < 2");
  }
  const double half = 1.0 - 0.5 * a;
  if (std::abs(m - theta) >= half) return 0.0;
  return 1.0 / (2.0 - a);
}

SummaryStat standardize(const SummaryStat& stat) {
  if (!(stat.k_scale > 0.0)) {
    throw std::invalid_argument("standardize: k_scale must be > 0");
  }
  SummaryStat out = stat;
  out.m = stat.m / stat.k_scale;
  out.v = stat.v / stat.k_scale;
  out.k_scale = 1.0;
  return out;
}

}  // namespace ulci
