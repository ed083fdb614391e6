// agencysim: runs the bandit, drift, nudge and preservation experiments,
// parameter sweeps, and renders SVG plots from the CSVs it writes.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "agency/config.h"
#include "agency/errors.h"
#include "agency/experiment.h"

namespace {

constexpr const char* kOutEnv = "AGENCYSIM_OUT";

struct CommonFlags {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> steps;
  std::optional<std::size_t> episodes;
  std::string out;
  bool svg = false;
  bool no_traces = false;
  unsigned threads = 0;
};

void add_common(CLI::App* cmd, CommonFlags& f) {
  cmd->add_option("--config", f.config_path, "Config file (key = value with [section] headers)");
  cmd->add_option("--seed", f.seed, "Master seed");
  cmd->add_option("--steps", f.steps, "Steps per episode");
  cmd->add_option("--episodes", f.episodes, "Number of episodes");
  cmd->add_option("--out", f.out, std::string("Output directory (default: $") + kOutEnv + " or ./out)");
  cmd->add_flag("--svg", f.svg, "Also render SVG plots");
  cmd->add_flag("--no-traces", f.no_traces, "Skip per-episode trace CSVs");
  cmd->add_option("--threads", f.threads, "Worker threads (0 = all cores)");
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

agency::ExperimentConfig load(agency::ExperimentKind kind, const CommonFlags& f) {
  const std::string text = f.config_path.empty() ? std::string() : read_file(f.config_path);
  auto cfg = agency::parse_config(text, kind);
  const bool config_sets_dir = text.find("output_dir") != std::string::npos;
  if (!f.out.empty()) {
    cfg.output_dir = f.out;
  } else if (!config_sets_dir) {
    if (const char* env = std::getenv(kOutEnv); env && *env) cfg.output_dir = env;
  }
  if (f.seed) cfg.master_seed = *f.seed;
  if (f.steps) cfg.steps = *f.steps;
  if (f.episodes) cfg.episodes = *f.episodes;
  cfg.validate();
  return cfg;
}

agency::RunOptions run_options(const CommonFlags& f) {
  agency::RunOptions o;
  o.threads = f.threads;
  o.svg = f.svg;
  o.write_traces = !f.no_traces;
  return o;
}

void summarize(const agency::ExperimentConfig& cfg) {
  const auto metrics_path = cfg.output_dir + "/metrics.csv";
  std::cout << "experiment " << agency::to_string(cfg.experiment) << ": " << cfg.episodes << " episodes x "
            << cfg.steps << " steps, seed " << cfg.master_seed << "\n"
            << "wrote " << cfg.output_dir << "/ (aggregate.csv, metrics.csv, manifest.json)\n";
  std::cout << read_file(metrics_path);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"agencysim - agency-preservation simulations"};
  app.set_version_flag("--version", AGENCYSIM_VERSION);
  app.require_subcommand(1);

  CommonFlags bandit_f, drift_f, nudge_f, preserve_f, sweep_f;
  bool nudge_static = false;
  auto* bandit = app.add_subcommand("bandit", "TD observer of a random human on a 4-armed bandit");
  add_common(bandit, bandit_f);
  auto* drift = app.add_subcommand("drift", "Continuous options under random world-influence drift");
  add_common(drift, drift_f);
  auto* nudge = app.add_subcommand("nudge", "Drift plus a recommending, value-nudging AI agent");
  add_common(nudge, nudge_f);
  nudge->add_flag("--static", nudge_static, "Agent keeps its episode-start beliefs");
  auto* preserve = app.add_subcommand("preserve", "Nudging agent with a hard floor on value depletion");
  add_common(preserve, preserve_f);

  std::string sweep_experiment = "nudge", axis;
  std::vector<double> values;
  auto* sweep = app.add_subcommand("sweep", "Run one aggregate per value of a numeric config field");
  add_common(sweep, sweep_f);
  sweep->add_option("--experiment", sweep_experiment, "bandit | drift | nudge | nudge-static | preserve")
      ->capture_default_str();
  sweep->add_option("--axis", axis, "Config field, e.g. nudge_scale or preserve.floor_fraction")->required();
  sweep->add_option("--values", values, "Comma-separated values")->required()->delimiter(',');

  std::string plot_in, plot_out, plot_title;
  auto* plot = app.add_subcommand("plot", "Render an SVG from a trace, aggregate or sweep CSV");
  plot->add_option("--in", plot_in, "CSV written by agencysim")->required();
  plot->add_option("--out", plot_out, "SVG path (default: input with .svg)");
  plot->add_option("--title", plot_title, "Chart title");

  CLI11_PARSE(app, argc, argv);

  try {
    using agency::ExperimentKind;
    auto run = [&](ExperimentKind kind, const CommonFlags& f) {
      const auto cfg = load(kind, f);
      agency::run_experiment(cfg, run_options(f));
      summarize(cfg);
    };
    if (*bandit) run(ExperimentKind::Bandit, bandit_f);
    if (*drift) run(ExperimentKind::Drift, drift_f);
    if (*nudge) run(nudge_static ? ExperimentKind::NudgeStatic : ExperimentKind::Nudge, nudge_f);
    if (*preserve) run(ExperimentKind::Preserve, preserve_f);
    if (*sweep) {
      const auto kind = agency::parse_experiment_kind(sweep_experiment);
      if (!kind) throw agency::ParameterError("unknown experiment '" + sweep_experiment + "'");
      const auto cfg = load(*kind, sweep_f);
      const auto rows = agency::run_sweep(cfg, axis, values, run_options(sweep_f));
      std::cout << "axis " << axis << ": " << rows.size() << " points written to " << cfg.output_dir << "/\n";
      for (const auto& r : rows) {
        std::cout << "  " << r.value << ": final-window dominance " << r.metrics.final_window_dominance
                  << ", final-window entropy " << r.metrics.final_window_entropy << ", total reward "
                  << r.metrics.total_reward << "\n";
      }
    }
    if (*plot) {
      if (plot_out.empty()) {
        plot_out = plot_in;
        const auto dot = plot_out.rfind('.');
        plot_out = (dot == std::string::npos ? plot_out : plot_out.substr(0, dot)) + ".svg";
      }
      const auto svg = agency::plot_csv(read_file(plot_in), plot_title.empty() ? plot_in : plot_title);
      std::ofstream out(plot_out, std::ios::binary | std::ios::trunc);
      out << svg;
      if (!out) throw std::runtime_error("cannot write " + plot_out);
      std::cout << "wrote " << plot_out << "\n";
    }
  } catch (const agency::ParseError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const agency::InvariantError& e) {
    std::cerr << "aborted: invariant violated at " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
