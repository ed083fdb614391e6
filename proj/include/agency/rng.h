#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

namespace agency {

// Seed derivation
// ---------------
// Every random stream is addressed by (master_seed, episode_index, stream_role):
//
//   episode_seed = splitmix64(master_seed ^ splitmix64(episode_index + 1))
//   stream_seed  = splitmix64(episode_seed ^ splitmix64(0x5eed0000 + role))
//
// where splitmix64(x) is the SplitMix64 output function applied to x + 0x9e3779b97f4a7c15.
// Each stream drives a std::mt19937_64 (bit-exact across standard libraries); the
// transforms below are implemented here rather than taken from <random> so that the
// sequence of variates is identical on every platform.
enum class StreamRole : std::uint64_t {
  HumanChoice = 1,
  Reward = 2,
  Drift = 3,
  Selection = 4,
  Sweep = 5,
  Test = 99,
};

std::uint64_t splitmix64(std::uint64_t x) noexcept;
std::uint64_t episode_seed(std::uint64_t master_seed, std::uint64_t episode_index) noexcept;
std::uint64_t stream_seed(std::uint64_t episode_seed, StreamRole role) noexcept;

class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : engine_(seed) {}
  RandomStream(std::uint64_t episode_seed, StreamRole role)
      : engine_(stream_seed(episode_seed, role)) {}

  std::uint64_t next_u64() { return engine_(); }
  // [0, 1) with 53 bits of resolution.
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  // Unbiased integer in [0, n).
  std::size_t index(std::size_t n);
  bool bernoulli(double p) { return uniform() < p; }
  // Marsaglia polar method; the second variate of each pair is discarded.
  double normal();
  // log of a Gamma(shape, 1) variate (Marsaglia-Tsang, with the U^(1/a) boost for a < 1).
  double log_gamma_variate(double shape);
  double gamma(double shape);
  double beta(double a, double b);

 private:
  std::mt19937_64 engine_;
};

}  // namespace agency
