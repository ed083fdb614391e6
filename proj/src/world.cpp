#include "agency/world.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "agency/errors.h"

namespace agency {

ContinuousArm::ContinuousArm(double base, double a, double b) : base_reward(base), shape_a(a), shape_b(b) {
  if (!(base > 0.0) || !std::isfinite(base)) throw ParameterError("base_reward must be positive");
  if (!(a > 0.0) || !(b > 0.0)) throw ParameterError("Beta shapes must be positive");
}

ContinuousArm ContinuousArm::unit_mean(double base_reward, double concentration) {
  if (!(base_reward > 1.0)) throw ParameterError("unit-mean arm needs base_reward > 1");
  if (!(concentration > 0.0)) throw ParameterError("concentration must be positive");
  const double a = concentration / base_reward;
  return ContinuousArm(base_reward, a, concentration - a);
}

std::vector<ContinuousArm> canonical_continuous_arms(double concentration) {
  std::vector<ContinuousArm> arms;
  for (double base : {2.0, 4.0, 10.0, 100.0}) arms.push_back(ContinuousArm::unit_mean(base, concentration));
  return arms;
}

OptionState::OptionState(ContinuousArm a, double initial) : arm(a), value(initial), initial_value(initial) {
  if (!(initial >= 0.0) || !std::isfinite(initial)) throw ParameterError("option value must be >= 0");
}

WorldInfluence::WorldInfluence(double m) : magnitude(m) {
  if (!(m > 0.0) || !std::isfinite(m)) throw ParameterError("world influence magnitude must be > 0");
}

AIAgent::AIAgent(double scale, AgentMode m, std::vector<double> beliefs)
    : nudge_scale(scale), mode(m), believed_values(std::move(beliefs)) {
  if (!(scale > 0.0) || !std::isfinite(scale)) throw ParameterError("nudge_scale must be > 0");
}

PreservationPolicy::PreservationPolicy(double f) : floor_fraction(f) {
  if (!(f > 0.0 && f <= 1.0)) throw ParameterError("floor_fraction must lie in (0, 1]");
}

double sample_reward(const ContinuousArm& arm, RandomStream& rng) {
  return arm.base_reward * rng.beta(arm.shape_a, arm.shape_b);
}

std::vector<OptionState> apply_drift(std::span<const OptionState> options,
                                     std::span<const double> perturbations) {
  if (options.size() != perturbations.size()) throw StructuralError("apply_drift: size mismatch");
  std::vector<OptionState> out(options.begin(), options.end());
  for (std::size_t i = 0; i < out.size(); ++i) out[i].value = std::max(0.0, out[i].value + perturbations[i]);
  return out;
}

std::vector<OptionState> drift_step(std::span<const OptionState> options, const WorldInfluence& influence,
                                    RandomStream& rng) {
  if (options.empty()) throw ParameterError("drift_step: no options");
  std::vector<double> d(options.size());
  for (double& x : d) x = rng.uniform(-influence.magnitude, influence.magnitude);
  return apply_drift(options, d);
}

std::vector<double> selection_weights(std::span<const OptionState> options,
                                      std::optional<std::size_t> recommendation,
                                      const SelectionParams& params) {
  if (options.empty()) throw ParameterError("human_select: no options");
  if (!(params.trust > 0.0)) throw ParameterError("trust factor must be > 0");
  std::vector<double> w(options.size());
  if (params.rule == SelectionRule::Proportional) {
    for (std::size_t i = 0; i < w.size(); ++i) w[i] = options[i].value;
  } else {
    if (!(params.temperature > 0.0)) throw ParameterError("softmax temperature must be > 0");
    double vmax = options[0].value;
    for (const auto& o : options) vmax = std::max(vmax, o.value);
    for (std::size_t i = 0; i < w.size(); ++i) w[i] = std::exp((options[i].value - vmax) / params.temperature);
  }
  if (recommendation) {
    if (*recommendation >= w.size()) throw StructuralError("recommendation index out of range");
    w[*recommendation] *= params.trust;
  }
  return w;
}

std::size_t human_select(std::span<const OptionState> options, std::optional<std::size_t> recommendation,
                         const SelectionParams& params, RandomStream& rng) {
  const auto w = selection_weights(options, recommendation, params);
  double total = 0.0;
  for (double x : w) total += x;
  if (!(total > 0.0)) return rng.index(w.size());
  const double u = rng.uniform() * total;
  double acc = 0.0;
  std::size_t last_positive = 0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w[i] <= 0.0) continue;
    acc += w[i];
    last_positive = i;
    if (u < acc) return i;
  }
  return last_positive;  // u landed on the rounding slack at the top of the range
}

NudgeOutcome ai_recommend_and_nudge(std::span<const OptionState> options, const AIAgent& agent,
                                    const WorldInfluence& influence) {
  if (options.empty()) throw ParameterError("ai_recommend_and_nudge: no options");
  NudgeOutcome out{0, std::vector<OptionState>(options.begin(), options.end()), agent};
  auto& beliefs = out.agent.believed_values;
  if (agent.mode == AgentMode::Dynamic || beliefs.empty()) {
    beliefs.resize(options.size());
    for (std::size_t i = 0; i < options.size(); ++i) beliefs[i] = options[i].value;
  }
  if (beliefs.size() != options.size()) throw StructuralError("agent beliefs do not match option count");

  double best = beliefs[0] * options[0].arm.mean();
  for (std::size_t i = 1; i < options.size(); ++i) {
    const double expected = beliefs[i] * options[i].arm.mean();
    if (expected > best) {
      best = expected;
      out.recommendation = i;
    }
  }
  out.options[out.recommendation].value += agent.nudge_scale * influence.magnitude;
  return out;
}

std::vector<OptionState> apply_preservation(std::span<const OptionState> options,
                                            const PreservationPolicy& policy) {
  std::vector<OptionState> out(options.begin(), options.end());
  for (auto& o : out) o.value = std::max(o.value, policy.floor_fraction * o.initial_value);
  return out;
}

double WorldEpisodeResult::total_reward() const {
  double s = 0.0;
  for (double r : option_rewards) s += r;
  return s;
}

WorldEpisodeResult run_world_episode(const WorldConfig& config) {
  const std::size_t n = config.options.size();
  if (n < 2) throw ParameterError("run_world_episode: need at least 2 options");
  if (config.steps == 0) throw ParameterError("steps must be >= 1");

  RandomStream drift_rng(config.seed, StreamRole::Drift);
  RandomStream select_rng(config.seed, StreamRole::Selection);
  RandomStream reward_rng(config.seed, StreamRole::Reward);

  std::vector<OptionState> options = config.options;
  std::optional<AIAgent> agent = config.agent;
  if (agent && agent->mode == AgentMode::Static && agent->believed_values.empty()) {
    for (const auto& o : options) agent->believed_values.push_back(o.value);
  }

  WorldEpisodeResult r;
  r.options = n;
  r.recommendation_trace.reserve(config.steps);
  r.choice_trace.reserve(config.steps);
  r.reward_trace.reserve(config.steps);
  r.value_trace.reserve(config.steps * n);
  for (const auto& o : options) r.initial_values.push_back(o.initial_value);
  r.selection_shares.assign(n, 0.0);
  r.option_rewards.assign(n, 0.0);

  for (std::size_t t = 0; t < config.steps; ++t) {
    std::optional<std::size_t> rec;
    if (agent) {
      auto nudged = ai_recommend_and_nudge(options, *agent, config.influence);
      rec = nudged.recommendation;
      options = std::move(nudged.options);
      agent = std::move(nudged.agent);
    }
    options = drift_step(options, config.influence, drift_rng);
    if (config.preservation) options = apply_preservation(options, *config.preservation);

    for (const auto& o : options) {
      if (!std::isfinite(o.value) || o.value < 0.0) {
        throw InvariantError(t, "option value " + std::to_string(o.value) + " is not a finite non-negative number");
      }
    }

    const std::size_t choice = human_select(options, rec, config.selection, select_rng);
    const double reward = options[choice].value * sample_reward(options[choice].arm, reward_rng);

    r.recommendation_trace.push_back(rec);
    r.choice_trace.push_back(choice);
    r.reward_trace.push_back(reward);
    for (const auto& o : options) r.value_trace.push_back(o.value);
    r.selection_shares[choice] += 1.0;
    r.option_rewards[choice] += reward;
  }
  for (double& s : r.selection_shares) s /= static_cast<double>(config.steps);
  return r;
}

WorldAggregate aggregate_world(std::span<const WorldEpisodeResult> episodes) {
  if (episodes.empty()) throw ParameterError("aggregate_world: no episodes");
  const std::size_t n = episodes.front().options;
  WorldAggregate agg;
  agg.episodes = episodes.size();
  agg.mean_shares.assign(n, 0.0);
  agg.mean_option_rewards.assign(n, 0.0);
  const double inv = 1.0 / static_cast<double>(episodes.size());
  for (const auto& e : episodes) {
    if (e.options != n) throw StructuralError("aggregate_world: episodes disagree on option count");
    for (std::size_t i = 0; i < n; ++i) {
      agg.mean_shares[i] += e.selection_shares[i] * inv;
      agg.mean_option_rewards[i] += e.option_rewards[i] * inv;
    }
  }
  for (double r : agg.mean_option_rewards) agg.mean_total_reward += r;
  return agg;
}

}  // namespace agency
