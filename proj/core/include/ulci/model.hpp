#pragma once

// Uniform location model: n independent draws on [theta - K, theta + K],
// reduced to the midrange m (the natural location estimate) and the range
// statistic v. Given v, the midrange is again uniform, centered at theta
// with half-length K * (1 - |v|/(2K)), which is what every interval
// procedure in this library conditions on.

#include <cstdint>
#include <random>
#include <vector>

namespace ulci {

struct ModelConfig {
  double theta = 0.0;        // location (interval center)
  double half_length = 1.0;  // K, half-length of the support, > 0
  int n = 2;                 // draws per sample, >= 2
};

// Throws std::invalid_argument on non-finite fields, half_length <= 0, or n < 2.
void validate(const ModelConfig& config);

// 64-bit finalizer used to spread (seed, stream) pairs into engine seeds.
std::uint64_t splitmix64(std::uint64_t x);

// Deterministic uniform generator addressed by (seed, stream). The pair fully
// determines the draw sequence: the engine is bit-specified by the standard
// and doubles are produced by an explicit 53-bit mapping, so results are
// reproducible across platforms and shards merge deterministically.
class StreamRng {
 public:
  StreamRng(std::uint64_t seed, std::uint64_t stream);

  std::uint64_t next_u64();
  double uniform01();                    // [0, 1), 53-bit resolution
  double uniform(double lo, double hi);  // lo + (hi - lo) * uniform01()

 private:
  std::mt19937_64 engine_;
};

// Coordinates are nondecreasing when produced by sample(); manually built
// samples may carry observation order (summarize() keeps the n = 2 sign).
struct Sample {
  std::vector<double> coords;
};

struct SummaryStat {
  double m = 0.0;        // midrange, (min + max) / 2
  double v = 0.0;        // range; signed x2 - x1 in stored order when n == 2
  int n = 2;
  double k_scale = 1.0;  // K of the generating model
};

// n draws on [theta - K, theta + K], sorted ascending.
Sample sample(const ModelConfig& config, std::uint64_t seed, std::uint64_t stream);

// Same draw path as sample() but on a live stream (no re-seeding).
Sample draw_sample(StreamRng& rng, const ModelConfig& config);

// Midrange and range of s. Throws std::invalid_argument if s has fewer than
// two coordinates or its size disagrees with config.n.
SummaryStat summarize(const Sample& s, const ModelConfig& config);

// Density of the range statistic for n = 2, K = 1: (2 - |v|) / 4 on (-2, 2),
// zero outside and at the support endpoints.
double density_v(double v);

// Conditional density of the midrange given the range, n = 2, K = 1:
// uniform on theta +- (1 - |v|/2), zero at and beyond the endpoints.
// Requires |v| < 2; throws std::domain_error otherwise.
double conditional_density_m(double m, double v, double theta);

// Rescale a summary to K = 1 units: m and v divide by k_scale.
SummaryStat standardize(const SummaryStat& stat);

}  // namespace ulci
