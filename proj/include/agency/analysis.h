#pragma once

// Metrics over episode results: entropy and dominance of selection shares,
// reward decomposition, and the agency-calculus readout of final option values.

#include <cstddef>
#include <span>
#include <vector>

#include "agency/bandit.h"
#include "agency/core.h"
#include "agency/world.h"

namespace agency {

// Natural-log entropy; shares must be non-negative and sum to 1 within 1e-9.
double shannon_entropy(std::span<const double> shares);

double freedom_proxy(std::span<const double> option_values);

// Selection shares of choices in [begin, end).
std::vector<double> window_shares(std::span<const std::size_t> choices, std::size_t options,
                                  std::size_t begin, std::size_t end);

// Penalized transition from the episode's initial option values to its final values.
double k_prime_readout(const WorldEpisodeResult& episode, const PenaltySchedule& zeta);

struct ReportOptions {
  std::size_t final_window = 1000;
  double zeta = PenaltySchedule::kDefaultZeta;
};

struct MetricReport {
  double entropy = 0.0;    // of the pooled per-option shares
  double dominance = 0.0;  // max of the pooled per-option shares
  std::vector<double> per_option_shares;
  std::vector<double> per_option_rewards;
  double total_reward = 0.0;
  double freedom_proxy = 0.0;

  // Episode-level readouts averaged over episodes. For bandit reports the entropy and
  // dominance fields repeat the pooled values and the value readouts are NaN.
  double mean_episode_entropy = 0.0;
  double final_window_entropy = 0.0;
  double final_window_dominance = 0.0;
  double k_prime_readout = 0.0;
  double min_value_ratio = 0.0;  // smallest recorded value / initial value
};

MetricReport report(std::span<const WorldEpisodeResult> episodes, const ReportOptions& options = {});
MetricReport report(const BanditAggregate& aggregate);

}  // namespace agency
