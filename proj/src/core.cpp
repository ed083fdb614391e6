#include "agency/core.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "agency/errors.h"

namespace agency {

namespace {

void check_zeta(double zeta) {
  if (!(zeta >= 0.0 && zeta < 1.0)) {
    throw ParameterError("zeta must lie in [0, 1), got " + std::to_string(zeta));
  }
}

void check_transition(const GoalPortfolio& before, const GoalPortfolio& after) {
  if (after.timestamp() != before.timestamp() + 1) {
    throw StructuralError("transition: after.timestamp must equal before.timestamp + 1");
  }
  if (before.size() != after.size()) {
    throw StructuralError("transition: goal counts differ (" + std::to_string(before.size()) +
                          " vs " + std::to_string(after.size()) + ")");
  }
  for (std::size_t i = 0; i < before.size(); ++i) {
    if (before.goals()[i].id() != after.goals()[i].id()) {
      throw StructuralError("transition: goal " + std::to_string(i) + " is '" +
                            before.goals()[i].id() + "' before but '" + after.goals()[i].id() +
                            "' after");
    }
  }
}

}  // namespace

Goal::Goal(std::string id, double value) : id_(std::move(id)), value_(value) {
  if (!std::isfinite(value) || value < 0.0) {
    throw ParameterError("goal '" + id_ + "' has invalid value " + std::to_string(value));
  }
}

GoalPortfolio::GoalPortfolio(std::string agent_id, std::vector<Goal> goals, std::int64_t timestamp)
    : agent_id_(std::move(agent_id)), goals_(std::move(goals)), timestamp_(timestamp) {
  std::set<std::string> seen;
  for (const auto& g : goals_) {
    if (!seen.insert(g.id()).second) {
      throw StructuralError("portfolio '" + agent_id_ + "' has duplicate goal id '" + g.id() + "'");
    }
  }
}

GoalPortfolio GoalPortfolio::from_values(std::string agent_id, std::span<const double> values,
                                         std::int64_t timestamp) {
  std::vector<Goal> goals;
  goals.reserve(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) goals.emplace_back("g" + std::to_string(i), values[i]);
  return GoalPortfolio(std::move(agent_id), std::move(goals), timestamp);
}

bool GoalPortfolio::contains(const std::string& goal_id) const {
  return std::any_of(goals_.begin(), goals_.end(), [&](const Goal& g) { return g.id() == goal_id; });
}

PenaltySchedule::PenaltySchedule(double uniform_zeta) : uniform_(uniform_zeta) { check_zeta(uniform_zeta); }

PenaltySchedule& PenaltySchedule::set(const std::string& agent_id, const std::string& goal_id,
                                      double zeta) {
  check_zeta(zeta);
  overrides_[{agent_id, goal_id}] = zeta;
  return *this;
}

double PenaltySchedule::at(const std::string& agent_id, const std::string& goal_id) const {
  auto it = overrides_.find({agent_id, goal_id});
  return it == overrides_.end() ? uniform_ : it->second;
}

MultiAgentState::MultiAgentState(std::vector<GoalPortfolio> portfolios)
    : portfolios_(std::move(portfolios)) {
  if (portfolios_.empty()) throw StructuralError("multi-agent state needs at least one portfolio");
  std::set<std::string> agents;
  for (const auto& p : portfolios_) {
    if (p.timestamp() != portfolios_.front().timestamp()) {
      throw StructuralError("multi-agent state: portfolios disagree on timestamp");
    }
    if (!agents.insert(p.agent_id()).second) {
      throw StructuralError("multi-agent state: duplicate agent '" + p.agent_id() + "'");
    }
  }
}

RightsFloor::RightsFloor(std::map<std::string, double> floors) : floors_(std::move(floors)) {
  for (const auto& [id, v] : floors_) {
    if (!std::isfinite(v) || v < 0.0) throw ParameterError("rights floor for '" + id + "' must be >= 0");
  }
}

double RightsFloor::total() const {
  double s = 0.0;
  for (const auto& [id, v] : floors_) s += v;
  return s;
}

double cumulative_freedom(const GoalPortfolio& portfolio) {
  double sum = 0.0;
  for (const auto& g : portfolio.goals()) sum += g.value();
  return sum;
}

double transition_k(const GoalPortfolio& before, const GoalPortfolio& after) {
  check_transition(before, after);
  return cumulative_freedom(after);
}

double weight_u(double before_value, double after_value, double zeta) {
  check_zeta(zeta);
  return after_value >= before_value ? 1.0 : zeta;
}

double transition_k_prime(const GoalPortfolio& before, const GoalPortfolio& after,
                          const PenaltySchedule& zeta) {
  check_transition(before, after);
  double sum = 0.0;
  for (std::size_t i = 0; i < after.size(); ++i) {
    const Goal& b = before.goals()[i];
    const Goal& a = after.goals()[i];
    sum += weight_u(b.value(), a.value(), zeta.at(before.agent_id(), b.id())) * a.value();
  }
  return sum;
}

std::vector<double> per_agent_k_prime(const MultiAgentState& before, const MultiAgentState& after,
                                      const PenaltySchedule& zeta) {
  const auto& pb = before.portfolios();
  const auto& pa = after.portfolios();
  if (pb.size() != pa.size()) throw StructuralError("transition_k_w: agent counts differ");
  std::vector<double> out;
  out.reserve(pb.size());
  for (std::size_t j = 0; j < pb.size(); ++j) {
    if (pb[j].agent_id() != pa[j].agent_id()) {
      throw StructuralError("transition_k_w: agent '" + pb[j].agent_id() + "' vs '" +
                            pa[j].agent_id() + "'");
    }
    out.push_back(transition_k_prime(pb[j], pa[j], zeta));
  }
  return out;
}

double transition_k_w(const MultiAgentState& before, const MultiAgentState& after,
                      const PenaltySchedule& zeta) {
  const auto per_agent = per_agent_k_prime(before, after, zeta);
  return std::accumulate(per_agent.begin(), per_agent.end(), 0.0);
}

double gini_aggregate(std::span<const double> scores, std::span<const double> weights) {
  if (scores.size() != weights.size()) {
    throw ParameterError("gini_aggregate: " + std::to_string(scores.size()) + " scores but " +
                         std::to_string(weights.size()) + " weights");
  }
  for (std::size_t r = 0; r < weights.size(); ++r) {
    if (!(weights[r] >= 0.0)) throw ParameterError("gini_aggregate: weights must be non-negative");
    if (r > 0 && weights[r] > weights[r - 1]) {
      throw ParameterError("gini_aggregate: weights must be non-increasing");
    }
  }
  std::vector<double> sorted(scores.begin(), scores.end());
  std::sort(sorted.begin(), sorted.end());
  double sum = 0.0;
  for (std::size_t r = 0; r < sorted.size(); ++r) sum += weights[r] * sorted[r];
  return sum;
}

GateResult rights_gate(const GoalPortfolio& after, const RightsFloor& floor) {
  GateResult result;
  for (const auto& [id, minimum] : floor.floors()) {
    auto it = std::find_if(after.goals().begin(), after.goals().end(),
                           [&](const Goal& g) { return g.id() == id; });
    if (it == after.goals().end()) {
      throw StructuralError("rights_gate: floor names unknown goal '" + id + "'");
    }
    if (it->value() < minimum) result.violations.push_back(id);
  }
  // Report violations in portfolio order rather than map order.
  std::stable_sort(result.violations.begin(), result.violations.end(),
                   [&](const std::string& x, const std::string& y) {
                     auto pos = [&](const std::string& id) {
                       return std::find_if(after.goals().begin(), after.goals().end(),
                                           [&](const Goal& g) { return g.id() == id; }) -
                              after.goals().begin();
                     };
                     return pos(x) < pos(y);
                   });
  result.passed = result.violations.empty();
  return result;
}

}  // namespace agency
