#pragma once

// Agency calculus: goal portfolios, cumulative freedom, penalized transitions
// across one or many agents, ordered-weighted (Generalised Gini) aggregation and
// the rights-floor gate.
//
// A goal's value is taken as already evaluated: callers with their own notion of
// well-being rewrite values before handing portfolios to these functions.

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace agency {

class Goal {
 public:
  // Throws ParameterError on a negative or non-finite value.
  Goal(std::string id, double value);

  const std::string& id() const noexcept { return id_; }
  double value() const noexcept { return value_; }

 private:
  std::string id_;
  double value_;
};

class GoalPortfolio {
 public:
  // Goal ids must be unique (StructuralError otherwise).
  GoalPortfolio(std::string agent_id, std::vector<Goal> goals, std::int64_t timestamp);

  // Goals named "g0", "g1", ... in the order of `values`.
  static GoalPortfolio from_values(std::string agent_id, std::span<const double> values,
                                   std::int64_t timestamp);

  const std::string& agent_id() const noexcept { return agent_id_; }
  const std::vector<Goal>& goals() const noexcept { return goals_; }
  std::int64_t timestamp() const noexcept { return timestamp_; }
  std::size_t size() const noexcept { return goals_.size(); }
  bool contains(const std::string& goal_id) const;

 private:
  std::string agent_id_;
  std::vector<Goal> goals_;
  std::int64_t timestamp_;
};

// Loss-penalty coefficients. A uniform zeta applies to every (agent, goal) pair
// unless overridden; all coefficients lie in [0, 1).
class PenaltySchedule {
 public:
  static constexpr double kDefaultZeta = 0.25;

  explicit PenaltySchedule(double uniform_zeta = kDefaultZeta);

  PenaltySchedule& set(const std::string& agent_id, const std::string& goal_id, double zeta);
  double at(const std::string& agent_id, const std::string& goal_id) const;
  double uniform() const noexcept { return uniform_; }

 private:
  double uniform_;
  std::map<std::pair<std::string, std::string>, double> overrides_;
};

class MultiAgentState {
 public:
  // Non-empty, unique agent ids, one shared timestamp.
  explicit MultiAgentState(std::vector<GoalPortfolio> portfolios);

  const std::vector<GoalPortfolio>& portfolios() const noexcept { return portfolios_; }
  std::int64_t timestamp() const noexcept { return portfolios_.front().timestamp(); }

 private:
  std::vector<GoalPortfolio> portfolios_;
};

class RightsFloor {
 public:
  RightsFloor() = default;
  explicit RightsFloor(std::map<std::string, double> floors);

  const std::map<std::string, double>& floors() const noexcept { return floors_; }
  double total() const;

 private:
  std::map<std::string, double> floors_;
};

struct GateResult {
  bool passed = true;
  std::vector<std::string> violations;
};

double cumulative_freedom(const GoalPortfolio& portfolio);

// Unweighted transition value: the cumulative freedom after the action.
double transition_k(const GoalPortfolio& before, const GoalPortfolio& after);

// 1 when the goal kept or gained value, zeta when it lost value.
double weight_u(double before_value, double after_value, double zeta);

double transition_k_prime(const GoalPortfolio& before, const GoalPortfolio& after,
                          const PenaltySchedule& zeta);

// Sum of the per-agent penalized transitions; agent lists must match pairwise.
double transition_k_w(const MultiAgentState& before, const MultiAgentState& after,
                      const PenaltySchedule& zeta);

// Per-agent penalized transition values, in portfolio order (input for gini_aggregate).
std::vector<double> per_agent_k_prime(const MultiAgentState& before, const MultiAgentState& after,
                                      const PenaltySchedule& zeta);

// Ordered weighted average: weights (non-increasing, non-negative) are applied to
// scores sorted ascending, so the first weight lands on the worst-off agent.
double gini_aggregate(std::span<const double> scores, std::span<const double> weights);

GateResult rights_gate(const GoalPortfolio& after, const RightsFloor& floor);

}  // namespace agency
