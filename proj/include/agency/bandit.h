#pragma once

// A temporal-difference observer watching a human play a multi-armed bandit
// uniformly at random. The observer never acts; its greedy preference over arms
// is recorded step by step.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "agency/rng.h"

namespace agency {

struct Arm {
  double success_prob;
  double reward;

  Arm(double success_prob, double reward);
  double expected_reward() const noexcept { return success_prob * reward; }
};

// Four arms with equal expected reward 1.0 and increasing variance.
std::vector<Arm> canonical_arms();

double td_update(double q, double observed_reward, double alpha);

class TDLearner {
 public:
  TDLearner(std::size_t arms, double alpha);

  void observe(std::size_t arm, double reward);
  // Highest-valued arm; ties go to the lowest index.
  std::size_t greedy() const;
  std::span<const double> q_values() const noexcept { return q_; }
  double alpha() const noexcept { return alpha_; }

 private:
  std::vector<double> q_;
  double alpha_;
};

double pull_arm(const Arm& arm, RandomStream& rng);

struct BanditEpisodeResult {
  std::size_t arms = 0;
  std::vector<double> q_trace;  // steps x arms, row-major, recorded after each update
  std::vector<std::size_t> chosen_trace;
  std::vector<double> reward_trace;
  std::vector<std::size_t> greedy_trace;
  std::vector<double> preference_histogram;

  std::size_t steps() const noexcept { return greedy_trace.size(); }
  std::span<const double> q_at(std::size_t step) const {
    return std::span<const double>(q_trace).subspan(step * arms, arms);
  }
  std::span<const double> final_q() const { return q_at(steps() - 1); }
};

// `seed` is the per-episode seed; the human-choice and reward draws use separate streams.
BanditEpisodeResult run_bandit_episode(std::span<const Arm> arms, std::size_t steps, double alpha,
                                       std::uint64_t seed);

struct BanditAggregate {
  std::vector<double> mean_histogram;
  std::vector<double> q_mean, q_min, q_max;  // statistics of the final q per arm
  std::vector<double> mean_arm_reward;       // per-episode reward collected from each arm, averaged
  double mean_total_reward = 0.0;
  std::size_t episodes = 0;
};

BanditAggregate aggregate_bandit(std::span<const BanditEpisodeResult> episodes);

}  // namespace agency
