#include "agency/bandit.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "agency/errors.h"

namespace agency {

Arm::Arm(double p, double r) : success_prob(p), reward(r) {
  if (!(p >= 0.0 && p <= 1.0)) throw ParameterError("arm success_prob must lie in [0, 1]");
  if (!(r > 0.0) || !std::isfinite(r)) throw ParameterError("arm reward must be positive");
}

std::vector<Arm> canonical_arms() {
  return {Arm(1.0, 1.0), Arm(0.25, 4.0), Arm(0.10, 10.0), Arm(0.01, 100.0)};
}

double td_update(double q, double observed_reward, double alpha) {
  if (!(alpha > 0.0 && alpha <= 1.0)) throw ParameterError("alpha must lie in (0, 1]");
  return q + alpha * (observed_reward - q);
}

TDLearner::TDLearner(std::size_t arms, double alpha) : q_(arms, 0.0), alpha_(alpha) {
  if (arms == 0) throw ParameterError("TDLearner needs at least one arm");
  if (!(alpha > 0.0 && alpha <= 1.0)) throw ParameterError("alpha must lie in (0, 1]");
}

void TDLearner::observe(std::size_t arm, double reward) { q_.at(arm) = td_update(q_[arm], reward, alpha_); }

std::size_t TDLearner::greedy() const {
  return static_cast<std::size_t>(std::max_element(q_.begin(), q_.end()) - q_.begin());
}

double pull_arm(const Arm& arm, RandomStream& rng) {
  return rng.bernoulli(arm.success_prob) ? arm.reward : 0.0;
}

BanditEpisodeResult run_bandit_episode(std::span<const Arm> arms, std::size_t steps, double alpha,
                                       std::uint64_t seed) {
  if (arms.size() < 2) throw ParameterError("run_bandit_episode: need at least 2 arms");
  if (steps == 0) throw ParameterError("steps must be >= 1");

  RandomStream choice_rng(seed, StreamRole::HumanChoice);
  RandomStream reward_rng(seed, StreamRole::Reward);
  TDLearner learner(arms.size(), alpha);
  double max_reward = 0.0;
  for (const auto& a : arms) max_reward = std::max(max_reward, a.reward);

  BanditEpisodeResult r;
  r.arms = arms.size();
  r.q_trace.reserve(steps * arms.size());
  r.chosen_trace.reserve(steps);
  r.reward_trace.reserve(steps);
  r.greedy_trace.reserve(steps);
  r.preference_histogram.assign(arms.size(), 0.0);

  for (std::size_t t = 0; t < steps; ++t) {
    const std::size_t arm = choice_rng.index(arms.size());
    const double reward = pull_arm(arms[arm], reward_rng);
    learner.observe(arm, reward);
    const auto q = learner.q_values();
    for (double v : q) {
      if (!std::isfinite(v) || v < 0.0 || v > max_reward) {
        throw InvariantError(t, "q value " + std::to_string(v) + " left [0, max reward]");
      }
    }
    const std::size_t greedy = learner.greedy();
    r.q_trace.insert(r.q_trace.end(), q.begin(), q.end());
    r.chosen_trace.push_back(arm);
    r.reward_trace.push_back(reward);
    r.greedy_trace.push_back(greedy);
    r.preference_histogram[greedy] += 1.0;
  }
  for (double& h : r.preference_histogram) h /= static_cast<double>(steps);
  return r;
}

BanditAggregate aggregate_bandit(std::span<const BanditEpisodeResult> episodes) {
  if (episodes.empty()) throw ParameterError("aggregate_bandit: no episodes");
  const std::size_t n = episodes.front().arms;
  BanditAggregate agg;
  agg.episodes = episodes.size();
  agg.mean_histogram.assign(n, 0.0);
  agg.q_mean.assign(n, 0.0);
  agg.q_min.assign(n, std::numeric_limits<double>::infinity());
  agg.q_max.assign(n, -std::numeric_limits<double>::infinity());
  agg.mean_arm_reward.assign(n, 0.0);
  const double inv = 1.0 / static_cast<double>(episodes.size());
  for (const auto& e : episodes) {
    if (e.arms != n) throw StructuralError("aggregate_bandit: episodes disagree on arm count");
    const auto fq = e.final_q();
    for (std::size_t i = 0; i < n; ++i) {
      agg.mean_histogram[i] += e.preference_histogram[i] * inv;
      agg.q_mean[i] += fq[i] * inv;
      agg.q_min[i] = std::min(agg.q_min[i], fq[i]);
      agg.q_max[i] = std::max(agg.q_max[i], fq[i]);
    }
    for (std::size_t t = 0; t < e.steps(); ++t) agg.mean_arm_reward[e.chosen_trace[t]] += e.reward_trace[t] * inv;
  }
  for (double r : agg.mean_arm_reward) agg.mean_total_reward += r;
  return agg;
}

}  // namespace agency
