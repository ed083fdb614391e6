#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <vector>

#include "agency/bandit.h"
#include "agency/errors.h"
#include "agency/rng.h"

using namespace agency;

TEST_CASE("seed derivation") {
  std::set<std::uint64_t> seeds;
  for (std::uint64_t e = 0; e < 1000; ++e) seeds.insert(episode_seed(1, e));
  CHECK(seeds.size() == 1000);
  CHECK(episode_seed(1, 0) != episode_seed(2, 0));
  const auto s = episode_seed(1, 0);
  CHECK(stream_seed(s, StreamRole::HumanChoice) != stream_seed(s, StreamRole::Reward));

  RandomStream a(s, StreamRole::Reward), b(s, StreamRole::Reward);
  for (int i = 0; i < 100; ++i) REQUIRE(a.next_u64() == b.next_u64());
}

TEST_CASE("random stream transforms") {
  RandomStream r(42);
  double lo = 1.0, hi = 0.0;
  std::vector<int> counts(7, 0);
  for (int i = 0; i < 70000; ++i) {
    const double u = r.uniform();
    lo = std::min(lo, u);
    hi = std::max(hi, u);
    counts[r.index(7)]++;
  }
  CHECK(lo >= 0.0);
  CHECK(hi < 1.0);
  for (int c : counts) CHECK(std::abs(c - 10000) < 400);

  double sum = 0.0, sq = 0.0;
  const int n = 100000;
  for (int i = 0; i < n; ++i) {
    const double z = r.normal();
    sum += z;
    sq += z * z;
  }
  CHECK(std::abs(sum / n) < 0.02);
  CHECK(std::abs(sq / n - 1.0) < 0.02);

  for (double shape : {0.3, 1.0, 2.5, 50.0}) {
    double g = 0.0;
    for (int i = 0; i < n; ++i) g += r.gamma(shape);
    CHECK(g / n == doctest::Approx(shape).epsilon(0.03));
  }
  CHECK_THROWS_AS(r.index(0), ParameterError);
}

TEST_CASE("td_update") {
  CHECK(td_update(0, 1, 0.1) == doctest::Approx(0.1));
  CHECK(td_update(5, 5, 0.1) == 5.0);
  CHECK(td_update(0, 100, 0.1) == doctest::Approx(10.0));
  CHECK_THROWS_AS(td_update(0, 1, 0.0), ParameterError);
  CHECK_THROWS_AS(td_update(0, 1, 1.5), ParameterError);
}

TEST_CASE("arms") {
  CHECK_THROWS_AS(Arm(1.5, 1), ParameterError);
  CHECK_THROWS_AS(Arm(0.5, -1), ParameterError);
  for (const auto& a : canonical_arms()) CHECK(a.expected_reward() == doctest::Approx(1.0));

  RandomStream r(7);
  for (int i = 0; i < 1000; ++i) {
    REQUIRE(pull_arm(Arm(1.0, 1.0), r) == 1.0);
    REQUIRE(pull_arm(Arm(0.0, 9.0), r) == 0.0);
  }
  double sum = 0.0;
  const int n = 1000000;
  for (int i = 0; i < n; ++i) sum += pull_arm(Arm(0.25, 4.0), r);
  CHECK(std::abs(sum / n - 1.0) <= 0.01);
}

TEST_CASE("td learner") {
  TDLearner l(3, 0.5);
  CHECK(l.greedy() == 0);
  l.observe(2, 4.0);
  CHECK(l.q_values()[2] == 2.0);
  CHECK(l.greedy() == 2);
  l.observe(1, 4.0);
  CHECK(l.greedy() == 1);
  CHECK_THROWS(l.observe(3, 1.0));
}

TEST_CASE("run_bandit_episode") {
  const auto arms = canonical_arms();
  const auto ep = run_bandit_episode(arms, 10000, 0.1, episode_seed(1, 0));
  REQUIRE(ep.steps() == 10000);
  for (std::size_t t = 0; t < ep.steps(); ++t) {
    const auto q = ep.q_at(t);
    for (std::size_t i = 0; i < arms.size(); ++i) {
      REQUIRE(q[i] >= 0.0);
      REQUIRE(q[i] <= arms[i].reward);
    }
    REQUIRE(ep.greedy_trace[t] == static_cast<std::size_t>(std::max_element(q.begin(), q.end()) - q.begin()));
  }
  CHECK(std::accumulate(ep.preference_histogram.begin(), ep.preference_histogram.end(), 0.0) ==
        doctest::Approx(1.0));

  SUBCASE("identical deterministic arms stay tied at arm 0") {
    // With alpha = 1 each q jumps to 1 on its first observation, so every q ties once all arms are seen.
    const std::vector<Arm> same(4, Arm(1.0, 1.0));
    const auto e = run_bandit_episode(same, 500, 1.0, 3);
    std::set<std::size_t> seen;
    for (std::size_t t = 0; t < e.steps(); ++t) {
      seen.insert(e.chosen_trace[t]);
      if (seen.size() == same.size()) REQUIRE(e.greedy_trace[t] == 0);
    }
    CHECK(seen.size() == same.size());
  }

  SUBCASE("same seed reproduces the episode") {
    const auto again = run_bandit_episode(arms, 10000, 0.1, episode_seed(1, 0));
    CHECK(again.q_trace == ep.q_trace);
    CHECK(again.chosen_trace == ep.chosen_trace);
  }

  SUBCASE("preconditions") {
    CHECK_THROWS_AS(run_bandit_episode(std::vector<Arm>{Arm(1, 1)}, 10, 0.1, 1), ParameterError);
    CHECK_THROWS_AS(run_bandit_episode(arms, 0, 0.1, 1), ParameterError);
  }
}

TEST_CASE("aggregate_bandit") {
  const auto arms = canonical_arms();
  const auto ep = run_bandit_episode(arms, 2000, 0.1, 11);
  const std::vector<BanditEpisodeResult> one{ep}, two{ep, ep};
  CHECK(aggregate_bandit(one).mean_histogram == ep.preference_histogram);
  const auto agg = aggregate_bandit(two);
  for (std::size_t i = 0; i < arms.size(); ++i) {
    CHECK(agg.mean_histogram[i] == doctest::Approx(ep.preference_histogram[i]));
    CHECK(agg.q_min[i] == agg.q_max[i]);
    CHECK(agg.q_mean[i] == doctest::Approx(ep.final_q()[i]));
  }
  CHECK(agg.episodes == 2);
  CHECK_THROWS_AS(aggregate_bandit(std::vector<BanditEpisodeResult>{}), ParameterError);
}

TEST_CASE("canonical ten-episode preference distribution") {
  const auto arms = canonical_arms();
  std::vector<BanditEpisodeResult> eps;
  for (std::uint64_t e = 0; e < 10; ++e) eps.push_back(run_bandit_episode(arms, 10000, 0.1, episode_seed(1, e)));
  const auto agg = aggregate_bandit(eps);
  const double target[] = {0.23, 0.28, 0.31, 0.18};
  for (std::size_t i = 0; i < 4; ++i) CHECK(std::abs(agg.mean_histogram[i] - target[i]) <= 0.05);
  // The observer favours the rare high-reward arms even though every arm pays 1.0 on average.
  CHECK(agg.mean_histogram[2] + agg.mean_histogram[3] > 0.4);
  CHECK(agg.mean_histogram[0] < 0.25);
}

TEST_CASE("equal long-run reward per canonical arm") {
  RandomStream r(episode_seed(5, 0), StreamRole::Test);
  for (const auto& a : canonical_arms()) {
    double sum = 0.0;
    for (int i = 0; i < 100000; ++i) sum += pull_arm(a, r);
    CHECK(std::abs(sum / 100000 - 1.0) <= 0.05);
  }
}
