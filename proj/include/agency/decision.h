#pragma once

// Action-selection rules built on the agency calculus: reward monotonicity,
// reward + agency argmax, intent-aligned argmax and the combined rule.
// All argmax functions return the winning candidate's index; ties go to the lowest index.

#include <cstddef>
#include <optional>
#include <span>
#include <string>

#include "agency/core.h"

namespace agency {

struct ActionCandidate {
  std::string id;
  double reward = 0.0;      // task utility R(a)
  double human_eval = 0.0;  // modeled human approval of the action
  MultiAgentState projected_state;
};

class IntentContext {
 public:
  IntentContext(std::string intent, double expectation_weight);

  const std::string& intent() const noexcept { return intent_; }
  double expectation_weight() const noexcept { return weight_; }
  // The AI's expectation of the action's acceptability.
  double expectation(const ActionCandidate& c) const noexcept { return weight_ * c.human_eval; }

 private:
  std::string intent_;
  double weight_;
};

struct MonotoneCheck {
  bool passed = true;
  std::optional<std::size_t> first_violation;
};

MonotoneCheck check_reward_monotone(std::span<const ActionCandidate> trace);

double agency_score(const ActionCandidate& c, const MultiAgentState& current, const PenaltySchedule& zeta);
double combined_score(const ActionCandidate& c, const IntentContext& ctx, const MultiAgentState& current,
                      const PenaltySchedule& zeta);

std::size_t agency_preserving_argmax(std::span<const ActionCandidate> candidates,
                                     const MultiAgentState& current, const PenaltySchedule& zeta);
std::size_t intent_aligned_argmax(std::span<const ActionCandidate> candidates, const IntentContext& ctx);
std::size_t combined_argmax(std::span<const ActionCandidate> candidates, const IntentContext& ctx,
                            const MultiAgentState& current, const PenaltySchedule& zeta);

}  // namespace agency
