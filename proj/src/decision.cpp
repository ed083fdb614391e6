#include "agency/decision.h"


#include "agency/errors.h"

namespace agency {

namespace {

template <typename Score>
std::size_t stable_argmax(std::span<const ActionCandidate> candidates, const char* rule, Score score) {
  if (candidates.empty()) throw ParameterError(std::string(rule) + ": empty candidate list");
  std::size_t best = 0;
  double best_score = score(candidates[0]);
  for (std::size_t i = 1; i < candidates.size(); ++i) {
    const double s = score(candidates[i]);
    if (s > best_score) {
      best = i;
      best_score = s;
    }
  }
  return best;
}

}  // namespace

IntentContext::IntentContext(std::string intent, double expectation_weight)
    : intent_(std::move(intent)), weight_(expectation_weight) {
  if (!(expectation_weight >= 0.0 && expectation_weight <= 1.0)) {
    throw ParameterError("expectation_weight must lie in [0, 1]");
  }
}

MonotoneCheck check_reward_monotone(std::span<const ActionCandidate> trace) {
  if (trace.empty()) throw ParameterError("check_reward_monotone: empty trace");
  for (std::size_t t = 1; t < trace.size(); ++t) {
    if (trace[t].reward < trace[t - 1].reward) return {false, t};
  }
  return {};
}

double agency_score(const ActionCandidate& c, const MultiAgentState& current, const PenaltySchedule& zeta) {
  return c.reward + transition_k_w(current, c.projected_state, zeta);
}

double combined_score(const ActionCandidate& c, const IntentContext& ctx, const MultiAgentState& current,
                      const PenaltySchedule& zeta) {
  return ctx.expectation(c) + transition_k_w(current, c.projected_state, zeta);
}

std::size_t agency_preserving_argmax(std::span<const ActionCandidate> candidates,
                                     const MultiAgentState& current, const PenaltySchedule& zeta) {
  return stable_argmax(candidates, "agency_preserving_argmax",
                       [&](const ActionCandidate& c) { return agency_score(c, current, zeta); });
}

std::size_t intent_aligned_argmax(std::span<const ActionCandidate> candidates, const IntentContext& ctx) {
  return stable_argmax(candidates, "intent_aligned_argmax",
                       [&](const ActionCandidate& c) { return ctx.expectation(c); });
}

std::size_t combined_argmax(std::span<const ActionCandidate> candidates, const IntentContext& ctx,
                            const MultiAgentState& current, const PenaltySchedule& zeta) {
  return stable_argmax(candidates, "combined_argmax",
                       [&](const ActionCandidate& c) { return combined_score(c, ctx, current, zeta); });
}

}  // namespace agency
