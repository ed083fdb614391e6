#pragma once

// Runs configured experiments: parallel episode execution, CSV/SVG emission and
// the run manifest. Results are a function of (config, master seed) only; the
// thread count never changes a byte of output.

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "agency/analysis.h"
#include "agency/bandit.h"
#include "agency/config.h"
#include "agency/world.h"

namespace agency {

struct RunOptions {
  unsigned threads = 0;  // 0 = hardware concurrency
  bool svg = false;
  bool write_traces = true;
};

struct BanditRun {
  std::vector<std::uint64_t> episode_seeds;
  std::vector<BanditEpisodeResult> episodes;
  BanditAggregate aggregate;
  MetricReport metrics;
};

struct WorldRun {
  std::vector<std::uint64_t> episode_seeds;
  std::vector<WorldEpisodeResult> episodes;
  WorldAggregate aggregate;
  MetricReport metrics;
};

std::vector<std::uint64_t> episode_seeds(const ExperimentConfig& config);

// In-memory runs (no files).
BanditRun simulate_bandit(const ExperimentConfig& config, unsigned threads = 0);
WorldRun simulate_world(const ExperimentConfig& config, unsigned threads = 0);
MetricReport simulate_metrics(const ExperimentConfig& config, unsigned threads = 0);

struct ArtifactRecord {
  std::string file;  // relative to the output directory
  std::string sha256;
};

struct RunManifest {
  std::string tool_version;
  std::string config_text;  // serialize_config output, defaults included
  std::uint64_t master_seed = 0;
  std::vector<std::uint64_t> episode_seeds;
  std::vector<ArtifactRecord> artifacts;

  std::string to_json() const;
};

std::string sha256_hex(std::string_view bytes);

// Writes config.ini, per-episode traces, aggregate.csv, metrics.csv, optional SVGs and
// finally manifest.json into config.output_dir.
RunManifest run_experiment(const ExperimentConfig& config, const RunOptions& options = {});

struct SweepRow {
  double value = 0.0;
  std::uint64_t seed = 0;
  MetricReport metrics;
};

// Point i of a sweep runs with master seed episode_seed(stream_seed(base seed, Sweep), i).
std::uint64_t sweep_point_seed(std::uint64_t master_seed, std::size_t point);

// One aggregate row per value, written to <output_dir>/sweep_<axis>.csv.
std::vector<SweepRow> run_sweep(const ExperimentConfig& base, std::string_view axis, std::span<const double> values,
                                const RunOptions& options = {});

// Renders an SVG for a trace or aggregate CSV written by this tool.
std::string plot_csv(std::string_view csv_text, const std::string& title);

}  // namespace agency
