#pragma once

// Experiment configuration: a flat key=value document with [section] headers.
//
//   # comment
//   [run]
//   experiment = nudge        ; bandit | drift | nudge | nudge-static | preserve
//   steps = 10000
//   episodes = 100
//   seed = 1
//   output_dir = out
//   [bandit]   success_probs, rewards (comma lists), alpha
//   [world]    base_rewards (comma list), concentration, initial_value, delta,
//              selection (proportional | softmax), temperature, trust
//   [agent]    nudge_scale      ; 0 removes the agent entirely
//   [preserve] floor_fraction
//   [analysis] zeta, final_window
//
// Unknown sections or keys, malformed numbers and out-of-range values raise
// ParseError with the offending line number.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "agency/bandit.h"
#include "agency/world.h"

namespace agency {

enum class ExperimentKind { Bandit, Drift, Nudge, NudgeStatic, Preserve };

std::string_view to_string(ExperimentKind kind) noexcept;
std::optional<ExperimentKind> parse_experiment_kind(std::string_view name) noexcept;

struct BanditParams {
  std::vector<double> success_probs{1.0, 0.25, 0.10, 0.01};
  std::vector<double> rewards{1.0, 4.0, 10.0, 100.0};
  double alpha = 0.1;

  bool operator==(const BanditParams&) const = default;
};

struct WorldParams {
  std::vector<double> base_rewards{2.0, 4.0, 10.0, 100.0};
  double concentration = 2.0;
  double initial_value = 1.0;
  double delta = 0.01;
  SelectionRule selection = SelectionRule::Proportional;
  double temperature = 0.1;
  double trust = 10.0;

  bool operator==(const WorldParams&) const = default;
};

struct AgentParams {
  double nudge_scale = 0.005;

  bool operator==(const AgentParams&) const = default;
};

struct PreserveParams {
  double floor_fraction = 0.8;

  bool operator==(const PreserveParams&) const = default;
};

struct AnalysisParams {
  double zeta = 0.25;
  std::size_t final_window = 1000;

  bool operator==(const AnalysisParams&) const = default;
};

struct ExperimentConfig {
  ExperimentKind experiment = ExperimentKind::Bandit;
  std::size_t steps = 10000;
  std::size_t episodes = 10;
  std::uint64_t master_seed = 1;
  std::string output_dir = "out";
  BanditParams bandit;
  WorldParams world;
  AgentParams agent;
  PreserveParams preserve;
  AnalysisParams analysis;

  bool is_world() const noexcept { return experiment != ExperimentKind::Bandit; }
  std::vector<Arm> arms() const;
  // Fully built episode configuration for the given per-episode seed.
  WorldConfig world_config(std::uint64_t episode_seed) const;
  // Throws ParseError (line 0) on any precondition violation.
  void validate() const;

  bool operator==(const ExperimentConfig&) const = default;
};

// Canonical parameters: 10 episodes for bandit runs, 100 for the world experiments.
ExperimentConfig canonical_config(ExperimentKind kind);

// `experiment` comes from the CLI subcommand; it must agree with a [run] experiment key if both are present.
ExperimentConfig parse_config(std::string_view text, std::optional<ExperimentKind> experiment = std::nullopt);

// Every field, defaults included; parse_config(serialize_config(c)) == c.
std::string serialize_config(const ExperimentConfig& config);

// Numeric fields addressable by sweeps, as "section.key" names.
const std::vector<std::string>& numeric_fields();
// Accepts "section.key" or a bare key when it is unambiguous. Throws ParameterError on an unknown axis.
void set_numeric_field(ExperimentConfig& config, std::string_view axis, double value);

}  // namespace agency
