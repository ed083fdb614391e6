#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <string>

#include "agency/config.h"
#include "agency/errors.h"

using namespace agency;

namespace {

std::string parse_error(std::string_view text, std::optional<ExperimentKind> kind, std::size_t* line = nullptr) {
  try {
    parse_config(text, kind);
  } catch (const ParseError& e) {
    if (line) *line = e.line();
    return e.what();
  }
  return {};
}

}  // namespace

TEST_CASE("experiment kinds") {
  for (auto k : {ExperimentKind::Bandit, ExperimentKind::Drift, ExperimentKind::Nudge, ExperimentKind::NudgeStatic,
                 ExperimentKind::Preserve})
    CHECK(parse_experiment_kind(to_string(k)) == k);
  CHECK_FALSE(parse_experiment_kind("other").has_value());
}

TEST_CASE("empty document gives the canonical bandit config") {
  const auto c = parse_config("", ExperimentKind::Bandit);
  CHECK(c == canonical_config(ExperimentKind::Bandit));
  CHECK(c.steps == 10000);
  CHECK(c.episodes == 10);
  CHECK(c.bandit.alpha == 0.1);
  CHECK(c.bandit.success_probs == std::vector<double>{1.0, 0.25, 0.10, 0.01});
  CHECK(c.bandit.rewards == std::vector<double>{1, 4, 10, 100});
  CHECK(parse_config("", ExperimentKind::Nudge).episodes == 100);
}

TEST_CASE("parse errors carry line numbers") {
  std::size_t line = 0;
  auto msg = parse_error("[run]\nsteps = 0\n", ExperimentKind::Bandit, &line);
  CHECK(msg.find("steps must be") != std::string::npos);
  CHECK(line == 2);

  msg = parse_error("# header\n[world]\ndelta = 0.01\nbogus = 3\n", ExperimentKind::Drift, &line);
  CHECK(msg.find("bogus") != std::string::npos);
  CHECK(line == 4);

  parse_error("[nowhere]\n", ExperimentKind::Drift, &line);
  CHECK(line == 1);
  parse_error("steps = 3\n", ExperimentKind::Drift, &line);
  CHECK(line == 1);
  parse_error("[run]\nsteps = ten\n", ExperimentKind::Drift, &line);
  CHECK(line == 2);
  parse_error("[run]\nsteps = 5\nsteps = 6\n", ExperimentKind::Drift, &line);
  CHECK(line == 3);
  parse_error("[bandit]\nalpha = 2\n", ExperimentKind::Bandit, &line);
  CHECK(line == 2);
  parse_error("[run]\nexperiment = drift\n", ExperimentKind::Bandit, &line);
  CHECK(line == 2);
  CHECK_FALSE(parse_error("", std::nullopt).empty());
  CHECK_FALSE(parse_error("[bandit]\nrewards = 1, 2\n", ExperimentKind::Bandit).empty());
}

TEST_CASE("values and comments") {
  const auto c = parse_config(
      "[run]\nexperiment = preserve ; inline\nsteps = 500\nseed = 18446744073709551615\n"
      "[agent]\nnudge_scale = 0.01\n[preserve]\nfloor_fraction = 0.5 # half\n"
      "[world]\nselection = softmax\ntemperature = 0.2\n",
      std::nullopt);
  CHECK(c.experiment == ExperimentKind::Preserve);
  CHECK(c.steps == 500);
  CHECK(c.master_seed == 18446744073709551615ull);
  CHECK(c.agent.nudge_scale == 0.01);
  CHECK(c.preserve.floor_fraction == 0.5);
  CHECK(c.world.selection == SelectionRule::Softmax);
  const auto w = c.world_config(3);
  REQUIRE(w.agent.has_value());
  CHECK(w.agent->mode == AgentMode::Dynamic);
  REQUIRE(w.preservation.has_value());
  CHECK(w.preservation->floor_fraction == 0.5);
  CHECK(w.options.size() == 4);
}

TEST_CASE("world_config per experiment") {
  CHECK_FALSE(canonical_config(ExperimentKind::Drift).world_config(1).agent.has_value());
  CHECK(canonical_config(ExperimentKind::NudgeStatic).world_config(1).agent->mode == AgentMode::Static);
  CHECK_FALSE(canonical_config(ExperimentKind::Nudge).world_config(1).preservation.has_value());
  auto zero = canonical_config(ExperimentKind::Nudge);
  zero.agent.nudge_scale = 0.0;
  CHECK_FALSE(zero.world_config(1).agent.has_value());
}

TEST_CASE("serialize round trip") {
  for (auto k : {ExperimentKind::Bandit, ExperimentKind::Drift, ExperimentKind::Nudge, ExperimentKind::NudgeStatic,
                 ExperimentKind::Preserve}) {
    auto c = canonical_config(k);
    c.agent.nudge_scale = 0.005;
    c.world.delta = 0.1 + 0.2;
    c.analysis.zeta = 1.0 / 3.0;
    c.master_seed = 0xdeadbeefcafef00dull;
    const auto back = parse_config(serialize_config(c));
    CHECK(back == c);
    CHECK(back.agent.nudge_scale == 0.005);
    CHECK(serialize_config(back) == serialize_config(c));
  }
}

TEST_CASE("set_numeric_field") {
  auto c = canonical_config(ExperimentKind::Nudge);
  set_numeric_field(c, "nudge_scale", 0.01);
  CHECK(c.agent.nudge_scale == 0.01);
  set_numeric_field(c, "preserve.floor_fraction", 0.3);
  CHECK(c.preserve.floor_fraction == 0.3);
  set_numeric_field(c, "steps", 200);
  CHECK(c.steps == 200);
  CHECK_THROWS_AS(set_numeric_field(c, "steps", 2.5), ParameterError);
  CHECK_THROWS_AS(set_numeric_field(c, "warp_factor", 1), ParameterError);
  CHECK_FALSE(numeric_fields().empty());
  for (const auto& f : numeric_fields()) CHECK(f.find('.') != std::string::npos);
}
