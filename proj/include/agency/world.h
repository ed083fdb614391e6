#pragma once

// Continuous-reward options whose human valuations drift under random world
// influence, optionally with an embedded recommender that nudges the value of
// whatever it recommends, and an optional hard floor on value depletion.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "agency/rng.h"

namespace agency {

// Reward = base_reward * Beta(shape_a, shape_b).
struct ContinuousArm {
  double base_reward;
  double shape_a;
  double shape_b;

  ContinuousArm(double base_reward, double shape_a, double shape_b);
  // Shapes chosen so the mean reward is 1.0: a / (a + b) = 1 / base_reward, a + b = concentration.
  // Requires base_reward > 1.
  static ContinuousArm unit_mean(double base_reward, double concentration = 2.0);
  double mean() const noexcept { return base_reward * shape_a / (shape_a + shape_b); }
};

std::vector<ContinuousArm> canonical_continuous_arms(double concentration = 2.0);

struct OptionState {
  ContinuousArm arm;
  double value;
  double initial_value;

  OptionState(ContinuousArm arm, double initial_value);
};

struct WorldInfluence {
  double magnitude;  // half-width of the per-step uniform perturbation

  explicit WorldInfluence(double magnitude);
};

enum class AgentMode { Dynamic, Static };

struct AIAgent {
  double nudge_scale = 0.005;  // nudge size as a fraction of the world-influence magnitude
  AgentMode mode = AgentMode::Dynamic;
  std::vector<double> believed_values;

  AIAgent(double nudge_scale, AgentMode mode, std::vector<double> believed_values = {});
};

struct PreservationPolicy {
  double floor_fraction;

  explicit PreservationPolicy(double floor_fraction);
};

enum class SelectionRule { Proportional, Softmax };

struct SelectionParams {
  SelectionRule rule = SelectionRule::Proportional;
  double temperature = 0.1;  // softmax only
  double trust = 1.0;        // multiplier on the recommended option's selection weight
};

double sample_reward(const ContinuousArm& arm, RandomStream& rng);

// Adds a perturbation to every value and clamps at zero.
std::vector<OptionState> apply_drift(std::span<const OptionState> options,
                                     std::span<const double> perturbations);
std::vector<OptionState> drift_step(std::span<const OptionState> options, const WorldInfluence& influence,
                                    RandomStream& rng);

// Selection weights before normalisation (value, or exp(value / T)), with trust applied.
std::vector<double> selection_weights(std::span<const OptionState> options,
                                      std::optional<std::size_t> recommendation,
                                      const SelectionParams& params);
std::size_t human_select(std::span<const OptionState> options, std::optional<std::size_t> recommendation,
                         const SelectionParams& params, RandomStream& rng);

struct NudgeOutcome {
  std::size_t recommendation;
  std::vector<OptionState> options;
  AIAgent agent;
};

// Dynamic agents re-read the current values before recommending; static agents keep
// the beliefs they were given (or the first values they saw). The recommended option's
// value then rises by nudge_scale * influence.magnitude.
NudgeOutcome ai_recommend_and_nudge(std::span<const OptionState> options, const AIAgent& agent,
                                    const WorldInfluence& influence);

std::vector<OptionState> apply_preservation(std::span<const OptionState> options,
                                            const PreservationPolicy& policy);

struct WorldConfig {
  std::vector<OptionState> options;
  WorldInfluence influence{0.01};
  std::optional<AIAgent> agent;
  std::optional<PreservationPolicy> preservation;
  SelectionParams selection;
  std::size_t steps = 10000;
  std::uint64_t seed = 0;  // per-episode seed
};

struct WorldEpisodeResult {
  std::size_t options = 0;
  std::vector<std::optional<std::size_t>> recommendation_trace;
  std::vector<std::size_t> choice_trace;
  std::vector<double> reward_trace;  // value of the chosen option times the sampled reward
  std::vector<double> value_trace;   // steps x options, values the human chose from
  std::vector<double> initial_values;
  std::vector<double> selection_shares;
  std::vector<double> option_rewards;

  std::size_t steps() const noexcept { return choice_trace.size(); }
  std::span<const double> values_at(std::size_t step) const {
    return std::span<const double>(value_trace).subspan(step * options, options);
  }
  std::span<const double> final_values() const { return values_at(steps() - 1); }
  double total_reward() const;
};

// Per step: recommend + nudge, drift, preservation clamp, human selection, reward.
WorldEpisodeResult run_world_episode(const WorldConfig& config);

struct WorldAggregate {
  std::vector<double> mean_shares;
  std::vector<double> mean_option_rewards;
  double mean_total_reward = 0.0;
  std::size_t episodes = 0;
};

WorldAggregate aggregate_world(std::span<const WorldEpisodeResult> episodes);

}  // namespace agency
