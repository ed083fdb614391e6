#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <string>
#include <random>
#include <vector>

#include "agency/decision.h"
#include "agency/errors.h"

using namespace agency;

namespace {

GoalPortfolio P(std::vector<double> values, std::int64_t t, std::string agent) {
  return GoalPortfolio::from_values(std::move(agent), values, t);
}

MultiAgentState state(std::int64_t t, std::vector<double> human, std::vector<double> other) {
  return MultiAgentState({P(std::move(human), t, "human"), P(std::move(other), t, "world")});
}

ActionCandidate candidate(std::string id, double reward, double eval, MultiAgentState projected) {
  return ActionCandidate{std::move(id), reward, eval, std::move(projected)};
}

// Oracle: the multi-agent penalized sum written out directly from the goal values.
double oracle_kw(const MultiAgentState& before, const MultiAgentState& after, double zeta) {
  double s = 0.0;
  for (std::size_t j = 0; j < before.portfolios().size(); ++j) {
    const auto& gb = before.portfolios()[j].goals();
    const auto& ga = after.portfolios()[j].goals();
    for (std::size_t i = 0; i < gb.size(); ++i) s += (ga[i].value() >= gb[i].value() ? 1.0 : zeta) * ga[i].value();
  }
  return s;
}

// Oracle: exhaustive scan for the first maximal score.
template <typename Score>
std::size_t scan_argmax(const std::vector<ActionCandidate>& cs, Score score) {
  std::vector<double> s;
  for (const auto& c : cs) s.push_back(score(c));
  const double best = *std::max_element(s.begin(), s.end());
  return static_cast<std::size_t>(std::find(s.begin(), s.end(), best) - s.begin());
}

}  // namespace

TEST_CASE("check_reward_monotone") {
  const auto s = state(1, {1}, {1});
  auto trace = [&](std::vector<double> rewards) {
    std::vector<ActionCandidate> t;
    for (double r : rewards) t.push_back(candidate("a", r, 0, s));
    return t;
  };
  CHECK(check_reward_monotone(trace({1, 2, 2, 3})).passed);
  const auto bad = check_reward_monotone(trace({2, 1}));
  CHECK_FALSE(bad.passed);
  CHECK(bad.first_violation == 1u);
  CHECK(check_reward_monotone(trace({5})).passed);
  CHECK(check_reward_monotone(trace({1, 3, 2, 0})).first_violation == 2u);
  CHECK_THROWS_AS(check_reward_monotone(std::vector<ActionCandidate>{}), ParameterError);
}

TEST_CASE("agency_preserving_argmax") {
  const PenaltySchedule z(0.25);
  const auto now = MultiAgentState({P({0, 0}, 0, "human")});
  // K^w of candidate 0 is 5, of candidate 1 is 1.
  std::vector<ActionCandidate> cs = {
      {"a", 1.0, 0.0, MultiAgentState({P({2, 3}, 1, "human")})},
      {"b", 2.0, 0.0, MultiAgentState({P({1, 0}, 1, "human")})},
  };
  CHECK(agency_preserving_argmax(cs, now, z) == 0);

  std::vector<ActionCandidate> ties(3, cs[0]);
  CHECK(agency_preserving_argmax(ties, now, z) == 0);
  CHECK_THROWS_AS(agency_preserving_argmax(std::vector<ActionCandidate>{}, now, z), ParameterError);

  SUBCASE("incompatible projected state") {
    std::vector<ActionCandidate> wrong = {{"x", 0, 0, MultiAgentState({P({1, 1, 1}, 1, "human")})}};
    CHECK_THROWS_AS(agency_preserving_argmax(wrong, now, z), StructuralError);
  }
}

TEST_CASE("intent_aligned_argmax") {
  const auto s = state(1, {1}, {1});
  const IntentContext ctx("watch something", 1.0);
  std::vector<ActionCandidate> cs = {candidate("a", 0, 0.2, s), candidate("b", 0, 0.9, s), candidate("c", 0, 0.5, s)};
  CHECK(intent_aligned_argmax(cs, ctx) == 1);
  CHECK(intent_aligned_argmax(cs, IntentContext("x", 0.0)) == 0);
  for (auto& c : cs) c.human_eval += 7.5;
  CHECK(intent_aligned_argmax(cs, ctx) == 1);
  CHECK_THROWS_AS(IntentContext("x", 1.5), ParameterError);
  CHECK_THROWS_AS(intent_aligned_argmax(std::vector<ActionCandidate>{}, ctx), ParameterError);
}

TEST_CASE("combined_argmax rejects the option-erasing action") {
  // The human and one other agent each hold (3, 3). Candidate 0 pleases the human most
  // but wipes out the other agent's goals; candidate 1 changes nothing.
  const auto now = state(0, {3, 3}, {3, 3});
  const PenaltySchedule zero(0.0);
  const IntentContext ctx("intent", 1.0);
  std::vector<ActionCandidate> cs = {
      candidate("erase", 0.0, 1.0, state(1, {4, 4}, {0, 0})),
      candidate("keep", 0.0, 0.5, state(1, {3, 3}, {3, 3})),
  };
  // Oracle scores: erase = 1.0 + 8, keep = 0.5 + 12; the K^w gap (4) exceeds the eval gap (0.5).
  CHECK(oracle_kw(now, cs[0].projected_state, 0.0) == 8.0);
  CHECK(oracle_kw(now, cs[1].projected_state, 0.0) == 12.0);
  const auto expected = scan_argmax(cs, [&](const ActionCandidate& c) {
    return c.human_eval + oracle_kw(now, c.projected_state, 0.0);
  });
  CHECK(expected == 1);
  CHECK(intent_aligned_argmax(cs, ctx) == 0);
  CHECK(combined_argmax(cs, ctx, now, zero) == 1);

  SUBCASE("identical projections reduce to the intent-aligned rule") {
    std::vector<ActionCandidate> same = cs;
    same[0].projected_state = same[1].projected_state;
    CHECK(combined_argmax(same, ctx, now, zero) == intent_aligned_argmax(same, ctx));
  }
  SUBCASE("single candidate") {
    CHECK(combined_argmax(std::vector<ActionCandidate>{cs[0]}, ctx, now, zero) == 0);
  }
}

TEST_CASE("argmax properties against an exhaustive scan (10,000 random lists)") {
  std::mt19937_64 gen(77);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::uniform_int_distribution<int> len(1, 10), goals(1, 3), agents(1, 3);

  for (int c = 0; c < 10000; ++c) {
    const int na = agents(gen), ng = goals(gen);
    auto random_state = [&](std::int64_t t) {
      std::vector<GoalPortfolio> ps;
      for (int j = 0; j < na; ++j) {
        std::vector<double> v(ng);
        // Coarse grid so equal scores (and therefore tie-breaks) actually occur.
        for (auto& x : v) x = std::floor(u(gen) * 4.0);
        ps.push_back(P(v, t, "a" + std::to_string(j)));
      }
      return MultiAgentState(std::move(ps));
    };
    const auto now = random_state(0);
    const double zeta = std::floor(u(gen) * 4.0) / 4.0;
    const PenaltySchedule z(zeta);
    const IntentContext ctx("i", std::floor(u(gen) * 3.0) / 2.0);

    std::vector<ActionCandidate> cs;
    const int n = len(gen);
    for (int i = 0; i < n; ++i) {
      cs.push_back(candidate("c" + std::to_string(i), std::floor(u(gen) * 3.0), std::floor(u(gen) * 3.0),
                             random_state(1)));
    }

    const auto ap = agency_preserving_argmax(cs, now, z);
    const auto ia = intent_aligned_argmax(cs, ctx);
    const auto cb = combined_argmax(cs, ctx, now, z);
    REQUIRE(ap == scan_argmax(cs, [&](const ActionCandidate& a) { return a.reward + oracle_kw(now, a.projected_state, zeta); }));
    REQUIRE(ia == scan_argmax(cs, [&](const ActionCandidate& a) { return ctx.expectation_weight() * a.human_eval; }));
    REQUIRE(cb == scan_argmax(cs, [&](const ActionCandidate& a) {
              return ctx.expectation_weight() * a.human_eval + oracle_kw(now, a.projected_state, zeta);
            }));

    // Adding the same constant to every candidate's components leaves the winners alone.
    auto shifted = cs;
    for (auto& a : shifted) {
      a.reward += 3.0;
      a.human_eval += 2.0;
    }
    REQUIRE(agency_preserving_argmax(shifted, now, z) == ap);
    REQUIRE(combined_argmax(shifted, ctx, now, z) == cb);

    // When the weighted eval equals R for every candidate, the combined rule is the agency-preserving rule.
    auto mirrored = cs;
    for (auto& a : mirrored) a.human_eval = a.reward;
    const IntentContext unit("i", 1.0);
    REQUIRE(combined_argmax(mirrored, unit, now, z) == agency_preserving_argmax(mirrored, now, z));

    // Reversing the list: the winner keeps its score and becomes the first maximum in the new order.
    std::vector<ActionCandidate> reversed(cs.rbegin(), cs.rend());
    const auto rcb = combined_argmax(reversed, ctx, now, z);
    REQUIRE(combined_score(reversed[rcb], ctx, now, z) == combined_score(cs[cb], ctx, now, z));
    for (std::size_t i = 0; i < rcb; ++i) REQUIRE(combined_score(reversed[i], ctx, now, z) < combined_score(reversed[rcb], ctx, now, z));
  }
}
