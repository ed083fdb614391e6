#include "agency/analysis.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "agency/errors.h"

namespace agency {

double shannon_entropy(std::span<const double> shares) {
  double total = 0.0;
  for (double p : shares) {
    if (!(p >= 0.0)) throw ParameterError("shannon_entropy: negative share");
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-9) {
    throw ParameterError("shannon_entropy: shares sum to " + std::to_string(total) + ", not 1");
  }
  double h = 0.0;
  for (double p : shares) {
    if (p > 0.0) h -= p * std::log(p);
  }
  return h;
}

double freedom_proxy(std::span<const double> option_values) {
  double s = 0.0;
  for (double v : option_values) s += v;
  return s;
}

std::vector<double> window_shares(std::span<const std::size_t> choices, std::size_t options,
                                  std::size_t begin, std::size_t end) {
  if (begin >= end || end > choices.size()) throw ParameterError("window_shares: bad window");
  std::vector<double> shares(options, 0.0);
  for (std::size_t t = begin; t < end; ++t) shares.at(choices[t]) += 1.0;
  for (double& s : shares) s /= static_cast<double>(end - begin);
  return shares;
}

double k_prime_readout(const WorldEpisodeResult& episode, const PenaltySchedule& zeta) {
  const auto before = GoalPortfolio::from_values("human", episode.initial_values, 0);
  const auto after = GoalPortfolio::from_values("human", episode.final_values(), 1);
  return transition_k_prime(before, after, zeta);
}

MetricReport report(std::span<const WorldEpisodeResult> episodes, const ReportOptions& options) {
  const auto agg = aggregate_world(episodes);
  const PenaltySchedule zeta(options.zeta);
  const double inv = 1.0 / static_cast<double>(episodes.size());

  MetricReport m;
  m.per_option_shares = agg.mean_shares;
  m.per_option_rewards = agg.mean_option_rewards;
  m.total_reward = agg.mean_total_reward;
  m.entropy = shannon_entropy(agg.mean_shares);
  m.dominance = *std::max_element(agg.mean_shares.begin(), agg.mean_shares.end());
  m.min_value_ratio = std::numeric_limits<double>::infinity();

  for (const auto& e : episodes) {
    const std::size_t steps = e.steps();
    const std::size_t window = std::min(options.final_window, steps);
    const auto tail = window_shares(e.choice_trace, e.options, steps - window, steps);
    m.mean_episode_entropy += shannon_entropy(e.selection_shares) * inv;
    m.final_window_entropy += shannon_entropy(tail) * inv;
    m.final_window_dominance += *std::max_element(tail.begin(), tail.end()) * inv;
    m.freedom_proxy += freedom_proxy(e.final_values()) * inv;
    m.k_prime_readout += k_prime_readout(e, zeta) * inv;
    for (std::size_t t = 0; t < steps; ++t) {
      const auto v = e.values_at(t);
      for (std::size_t i = 0; i < e.options; ++i) {
        if (e.initial_values[i] > 0.0) m.min_value_ratio = std::min(m.min_value_ratio, v[i] / e.initial_values[i]);
      }
    }
  }
  return m;
}

MetricReport report(const BanditAggregate& aggregate) {
  MetricReport m;
  m.per_option_shares = aggregate.mean_histogram;
  m.per_option_rewards = aggregate.mean_arm_reward;
  m.total_reward = aggregate.mean_total_reward;
  m.entropy = shannon_entropy(aggregate.mean_histogram);
  m.dominance = *std::max_element(aggregate.mean_histogram.begin(), aggregate.mean_histogram.end());
  m.freedom_proxy = freedom_proxy(aggregate.q_mean);
  m.mean_episode_entropy = m.entropy;
  m.final_window_entropy = m.entropy;
  m.final_window_dominance = m.dominance;
  m.k_prime_readout = std::numeric_limits<double>::quiet_NaN();
  m.min_value_ratio = std::numeric_limits<double>::quiet_NaN();
  return m;
}

}  // namespace agency
