#include "agency/rng.h"

#include <cmath>
#include <limits>

#include "agency/errors.h"

namespace agency {

std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t episode_seed(std::uint64_t master_seed, std::uint64_t episode_index) noexcept {
  return splitmix64(master_seed ^ splitmix64(episode_index + 1));
}

std::uint64_t stream_seed(std::uint64_t episode_seed, StreamRole role) noexcept {
  return splitmix64(episode_seed ^ splitmix64(0x5eed0000ULL + static_cast<std::uint64_t>(role)));
}

double RandomStream::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

std::size_t RandomStream::index(std::size_t n) {
  if (n == 0) throw ParameterError("RandomStream::index: n must be positive");
  const std::uint64_t bound = static_cast<std::uint64_t>(n);
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t x = engine_();
  while (x >= limit) x = engine_();
  return static_cast<std::size_t>(x % bound);
}

double RandomStream::normal() {
  double u, v, s;
  do {
    u = 2.0 * uniform() - 1.0;
    v = 2.0 * uniform() - 1.0;
    s = u * u + v * v;
  } while (s >= 1.0 || s == 0.0);
  return u * std::sqrt(-2.0 * std::log(s) / s);
}

double RandomStream::log_gamma_variate(double shape) {
  if (!(shape > 0.0)) throw ParameterError("gamma shape must be > 0");
  if (shape < 1.0) {
    // G(a) = G(a + 1) * U^(1/a); kept in log space so tiny shapes do not underflow.
    double u = uniform();
    while (u == 0.0) u = uniform();
    return log_gamma_variate(shape + 1.0) + std::log(u) / shape;
  }
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x, v;
    do {
      x = normal();
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = uniform();
    if (u < 1.0 - 0.0331 * x * x * x * x) return std::log(d * v);
    if (u > 0.0 && std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return std::log(d * v);
  }
}

double RandomStream::gamma(double shape) { return std::exp(log_gamma_variate(shape)); }

double RandomStream::beta(double a, double b) {
  if (!(a > 0.0) || !(b > 0.0)) throw ParameterError("beta shapes must be > 0");
  const double lx = log_gamma_variate(a);
  const double ly = log_gamma_variate(b);
  // x / (x + y) evaluated as a logistic of the log ratio.
  return 1.0 / (1.0 + std::exp(ly - lx));
}

}  // namespace agency
