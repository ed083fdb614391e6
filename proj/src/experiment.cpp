#include "agency/experiment.h"

#include <openssl/evp.h>

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <limits>
#include <mutex>
#include <thread>

#include "agency/csv.h"
#include "agency/errors.h"
#include "agency/svg.h"
#include "json.hpp"

#ifndef AGENCYSIM_VERSION
#define AGENCYSIM_VERSION "dev"
#endif

namespace agency {

namespace fs = std::filesystem;

namespace {

// Runs body(i) for i in [0, n) on up to `threads` workers; the first exception is rethrown.
template <typename Body>
void parallel_for(std::size_t n, unsigned threads, Body body) {
  unsigned workers = threads ? threads : std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, n));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < n; i = next++) {
          try {
            body(i);
          } catch (...) {
            std::lock_guard lock(error_mutex);
            if (!error) error = std::current_exception();
            next = n;
          }
        }
      });
    }
  }
  if (error) std::rethrow_exception(error);
}

std::string option_label(std::size_t i) { return std::to_string(i); }

class ArtifactWriter {
 public:
  explicit ArtifactWriter(fs::path dir) : dir_(std::move(dir)) {}

  void write(const std::string& name, const std::string& bytes) {
    const auto path = dir_ / name;
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    out.close();
    if (!out) throw std::runtime_error("failed writing " + path.string());
    records_.push_back({name, sha256_hex(bytes)});
  }

  // SVG output is best-effort: failures are reported and skipped.
  template <typename Render>
  void try_svg(const std::string& name, Render render) {
    try {
      write(name, render());
    } catch (const std::exception& e) {
      std::cerr << "warning: plot " << name << " skipped: " << e.what() << "\n";
    }
  }

  std::vector<ArtifactRecord> records() const { return records_; }

 private:
  fs::path dir_;
  std::vector<ArtifactRecord> records_;
};

std::string episode_name(std::size_t e, std::size_t total) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "trace_episode_%0*zu.csv", total > 1000 ? 5 : 3, e);
  return buf;
}

std::string metrics_csv(const MetricReport& m) {
  csv::Table t({"metric", "value"});
  auto row = [&](const std::string& k, double v) { t.add_row({k, csv::number(v)}); };
  row("entropy", m.entropy);
  row("dominance", m.dominance);
  row("total_reward", m.total_reward);
  row("freedom_proxy", m.freedom_proxy);
  row("mean_episode_entropy", m.mean_episode_entropy);
  row("final_window_entropy", m.final_window_entropy);
  row("final_window_dominance", m.final_window_dominance);
  row("k_prime_readout", m.k_prime_readout);
  row("min_value_ratio", m.min_value_ratio);
  for (std::size_t i = 0; i < m.per_option_shares.size(); ++i) row("share_" + option_label(i), m.per_option_shares[i]);
  for (std::size_t i = 0; i < m.per_option_rewards.size(); ++i) row("reward_" + option_label(i), m.per_option_rewards[i]);
  return t.str();
}

std::string bandit_trace_csv(const BanditEpisodeResult& e) {
  std::vector<std::string> header = {"step", "chosen_arm", "reward"};
  for (std::size_t i = 0; i < e.arms; ++i) header.push_back("q" + option_label(i));
  header.push_back("greedy_arm");
  csv::Table t(std::move(header));
  for (std::size_t s = 0; s < e.steps(); ++s) {
    std::vector<std::string> row = {csv::integer(s), csv::integer(e.chosen_trace[s]), csv::number(e.reward_trace[s])};
    for (double q : e.q_at(s)) row.push_back(csv::number(q));
    row.push_back(csv::integer(e.greedy_trace[s]));
    t.add_row(std::move(row));
  }
  return t.str();
}

std::string world_trace_csv(const WorldEpisodeResult& e) {
  std::vector<std::string> header = {"step", "recommendation", "chosen", "reward"};
  for (std::size_t i = 0; i < e.options; ++i) header.push_back("v" + option_label(i));
  csv::Table t(std::move(header));
  for (std::size_t s = 0; s < e.steps(); ++s) {
    const auto rec = e.recommendation_trace[s];
    std::vector<std::string> row = {csv::integer(s), rec ? csv::integer(*rec) : std::string("-1"),
                                    csv::integer(e.choice_trace[s]), csv::number(e.reward_trace[s])};
    for (double v : e.values_at(s)) row.push_back(csv::number(v));
    t.add_row(std::move(row));
  }
  return t.str();
}

std::string bandit_aggregate_csv(const BanditAggregate& a) {
  csv::Table t({"arm", "preference", "q_mean", "q_min", "q_max", "mean_reward"});
  double pref_total = 0.0;
  for (std::size_t i = 0; i < a.mean_histogram.size(); ++i) {
    pref_total += a.mean_histogram[i];
    t.add_row({option_label(i), csv::number(a.mean_histogram[i]), csv::number(a.q_mean[i]), csv::number(a.q_min[i]),
               csv::number(a.q_max[i]), csv::number(a.mean_arm_reward[i])});
  }
  t.add_row({"total", csv::number(pref_total), "", "", "", csv::number(a.mean_total_reward)});
  return t.str();
}

std::string world_aggregate_csv(const WorldRun& run) {
  const auto& a = run.aggregate;
  const std::size_t n = a.mean_shares.size();
  std::vector<double> min_value(n, std::numeric_limits<double>::infinity());
  std::vector<double> initial(n, 0.0);
  for (const auto& e : run.episodes) {
    for (std::size_t i = 0; i < n; ++i) initial[i] = e.initial_values[i];
    for (std::size_t s = 0; s < e.steps(); ++s) {
      const auto v = e.values_at(s);
      for (std::size_t i = 0; i < n; ++i) min_value[i] = std::min(min_value[i], v[i]);
    }
  }
  csv::Table t({"option", "share", "mean_reward", "initial_value", "min_value"});
  double share_total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    share_total += a.mean_shares[i];
    t.add_row({option_label(i), csv::number(a.mean_shares[i]), csv::number(a.mean_option_rewards[i]),
               csv::number(initial[i]), csv::number(min_value[i])});
  }
  t.add_row({"total", csv::number(share_total), csv::number(a.mean_total_reward), "",
             csv::number(*std::min_element(min_value.begin(), min_value.end()))});
  return t.str();
}

std::vector<std::string> labels(std::size_t n, const std::string& prefix) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(prefix + option_label(i));
  return out;
}

}  // namespace

std::vector<std::uint64_t> episode_seeds(const ExperimentConfig& config) {
  std::vector<std::uint64_t> seeds(config.episodes);
  for (std::size_t e = 0; e < seeds.size(); ++e) seeds[e] = episode_seed(config.master_seed, e);
  return seeds;
}

BanditRun simulate_bandit(const ExperimentConfig& config, unsigned threads) {
  config.validate();
  if (config.experiment != ExperimentKind::Bandit) throw ParameterError("simulate_bandit: not a bandit config");
  BanditRun run;
  run.episode_seeds = episode_seeds(config);
  run.episodes.resize(config.episodes);
  const auto arms = config.arms();
  parallel_for(config.episodes, threads, [&](std::size_t e) {
    run.episodes[e] = run_bandit_episode(arms, config.steps, config.bandit.alpha, run.episode_seeds[e]);
  });
  run.aggregate = aggregate_bandit(run.episodes);
  run.metrics = report(run.aggregate);
  return run;
}

WorldRun simulate_world(const ExperimentConfig& config, unsigned threads) {
  config.validate();
  if (!config.is_world()) throw ParameterError("simulate_world: not a world config");
  WorldRun run;
  run.episode_seeds = episode_seeds(config);
  run.episodes.resize(config.episodes);
  parallel_for(config.episodes, threads, [&](std::size_t e) {
    run.episodes[e] = run_world_episode(config.world_config(run.episode_seeds[e]));
  });
  run.aggregate = aggregate_world(run.episodes);
  run.metrics = report(run.episodes, ReportOptions{config.analysis.final_window, config.analysis.zeta});
  return run;
}

MetricReport simulate_metrics(const ExperimentConfig& config, unsigned threads) {
  return config.is_world() ? simulate_world(config, threads).metrics : simulate_bandit(config, threads).metrics;
}

std::string sha256_hex(std::string_view bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("sha256 failed");
  }
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned i = 0; i < len; ++i) {
    out += hex[digest[i] >> 4];
    out += hex[digest[i] & 0xf];
  }
  return out;
}

std::string RunManifest::to_json() const {
  nlohmann::ordered_json j;
  j["tool"] = "agencysim";
  j["tool_version"] = tool_version;
  j["master_seed"] = master_seed;
  j["config"] = config_text;
  j["episode_seeds"] = episode_seeds;
  auto arts = nlohmann::ordered_json::array();
  for (const auto& a : artifacts) arts.push_back({{"file", a.file}, {"sha256", a.sha256}});
  j["artifacts"] = std::move(arts);
  return j.dump(2) + "\n";
}

RunManifest run_experiment(const ExperimentConfig& config, const RunOptions& options) {
  config.validate();
  const fs::path dir(config.output_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw std::runtime_error("cannot create output directory " + dir.string() + ": " + ec.message());

  RunManifest manifest;
  manifest.tool_version = AGENCYSIM_VERSION;
  manifest.config_text = serialize_config(config);
  manifest.master_seed = config.master_seed;

  ArtifactWriter out(dir);
  out.write("config.ini", manifest.config_text);

  if (config.experiment == ExperimentKind::Bandit) {
    const auto run = simulate_bandit(config, options.threads);
    manifest.episode_seeds = run.episode_seeds;
    if (options.write_traces) {
      for (std::size_t e = 0; e < run.episodes.size(); ++e) {
        out.write(episode_name(e, run.episodes.size()), bandit_trace_csv(run.episodes[e]));
      }
    }
    out.write("aggregate.csv", bandit_aggregate_csv(run.aggregate));
    out.write("metrics.csv", metrics_csv(run.metrics));
    if (options.svg) {
      const auto& e0 = run.episodes.front();
      out.try_svg("q_values.svg", [&] {
        std::vector<svg::Series> series;
        for (std::size_t i = 0; i < e0.arms; ++i) {
          svg::Series s{"arm " + option_label(i), {}};
          for (std::size_t t = 0; t < e0.steps(); ++t) s.y.push_back(e0.q_at(t)[i]);
          series.push_back(std::move(s));
        }
        return svg::line_chart("TD value estimates, episode 0", "step", series);
      });
      out.try_svg("preference.svg", [&] {
        const auto l = labels(run.aggregate.mean_histogram.size(), "arm ");
        return svg::bar_chart("Greedy preference (mean over episodes)", l, run.aggregate.mean_histogram);
      });
    }
  } else {
    const auto run = simulate_world(config, options.threads);
    manifest.episode_seeds = run.episode_seeds;
    if (options.write_traces) {
      for (std::size_t e = 0; e < run.episodes.size(); ++e) {
        out.write(episode_name(e, run.episodes.size()), world_trace_csv(run.episodes[e]));
      }
    }
    out.write("aggregate.csv", world_aggregate_csv(run));
    out.write("metrics.csv", metrics_csv(run.metrics));
    if (options.svg) {
      const auto& e0 = run.episodes.front();
      out.try_svg("values.svg", [&] {
        std::vector<svg::Series> series;
        for (std::size_t i = 0; i < e0.options; ++i) {
          svg::Series s{"option " + option_label(i), {}};
          for (std::size_t t = 0; t < e0.steps(); ++t) s.y.push_back(e0.values_at(t)[i]);
          series.push_back(std::move(s));
        }
        return svg::line_chart("Option values, episode 0", "step", series);
      });
      out.try_svg("shares.svg", [&] {
        const auto l = labels(e0.options, "option ");
        return svg::bar_chart("Selection share, episode 0", l, e0.selection_shares);
      });
      out.try_svg("mean_rewards.svg", [&] {
        const auto l = labels(run.aggregate.mean_option_rewards.size(), "option ");
        return svg::bar_chart("Mean reward per option", l, run.aggregate.mean_option_rewards);
      });
    }
  }

  manifest.artifacts = out.records();
  // The manifest is written last, after every artifact it lists.
  const auto json = manifest.to_json();
  std::ofstream mf(dir / "manifest.json", std::ios::binary | std::ios::trunc);
  mf << json;
  if (!mf) throw std::runtime_error("failed writing manifest.json");
  return manifest;
}

std::uint64_t sweep_point_seed(std::uint64_t master_seed, std::size_t point) {
  return episode_seed(stream_seed(master_seed, StreamRole::Sweep), point);
}

std::vector<SweepRow> run_sweep(const ExperimentConfig& base, std::string_view axis, std::span<const double> values,
                                const RunOptions& options) {
  if (values.empty()) throw ParameterError("run_sweep: no values");
  std::vector<SweepRow> rows;
  for (std::size_t p = 0; p < values.size(); ++p) {
    ExperimentConfig cfg = base;
    set_numeric_field(cfg, axis, values[p]);
    cfg.master_seed = sweep_point_seed(base.master_seed, p);
    rows.push_back({values[p], cfg.master_seed, simulate_metrics(cfg, options.threads)});
  }

  std::vector<std::string> header = {"axis",          "value",        "seed",
                                     "entropy",       "dominance",    "final_window_dominance",
                                     "final_window_entropy", "mean_episode_entropy", "total_reward",
                                     "freedom_proxy", "k_prime_readout", "min_value_ratio"};
  const std::size_t n = rows.front().metrics.per_option_shares.size();
  for (std::size_t i = 0; i < n; ++i) header.push_back("share_" + option_label(i));
  csv::Table t(std::move(header));
  for (const auto& r : rows) {
    const auto& m = r.metrics;
    std::vector<std::string> cells = {std::string(axis),
                                      csv::number(r.value),
                                      csv::integer(r.seed),
                                      csv::number(m.entropy),
                                      csv::number(m.dominance),
                                      csv::number(m.final_window_dominance),
                                      csv::number(m.final_window_entropy),
                                      csv::number(m.mean_episode_entropy),
                                      csv::number(m.total_reward),
                                      csv::number(m.freedom_proxy),
                                      csv::number(m.k_prime_readout),
                                      csv::number(m.min_value_ratio)};
    for (double s : m.per_option_shares) cells.push_back(csv::number(s));
    t.add_row(std::move(cells));
  }

  const fs::path dir(base.output_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw std::runtime_error("cannot create output directory " + dir.string() + ": " + ec.message());
  std::string safe_axis(axis);
  std::replace(safe_axis.begin(), safe_axis.end(), '.', '_');
  ArtifactWriter out(dir);
  out.write("sweep_" + safe_axis + ".csv", t.str());
  return rows;
}

std::string plot_csv(std::string_view csv_text, const std::string& title) {
  const auto table = csv::parse(csv_text);
  auto to_d = [](const std::string& s) {
    try {
      return s.empty() ? std::numeric_limits<double>::quiet_NaN() : std::stod(s);
    } catch (const std::exception&) {
      return std::numeric_limits<double>::quiet_NaN();
    }
  };

  // Trace files: plot every q*/v* column against the step column.
  std::vector<svg::Series> series;
  for (std::size_t c = 0; c < table.header.size(); ++c) {
    const auto& h = table.header[c];
    const bool trace_col = h.size() > 1 && (h[0] == 'q' || h[0] == 'v') &&
                           std::all_of(h.begin() + 1, h.end(), [](char ch) { return ch >= '0' && ch <= '9'; });
    if (!trace_col) continue;
    svg::Series s{h, {}};
    for (const auto& row : table.rows) s.y.push_back(c < row.size() ? to_d(row[c]) : 0.0);
    series.push_back(std::move(s));
  }
  if (!series.empty()) return svg::line_chart(title, "step", series);

  // Sweep files: final-window dominance per swept value.
  if (table.column("axis") != std::string_view::npos) {
    const auto vcol = table.column("value");
    const auto dcol = table.column("final_window_dominance");
    std::vector<std::string> bar_labels;
    std::vector<double> bar_values;
    for (const auto& row : table.rows) {
      if (vcol >= row.size() || dcol >= row.size()) continue;
      bar_labels.push_back(row[vcol]);
      bar_values.push_back(to_d(row[dcol]));
    }
    return svg::bar_chart(title + " (final-window dominance)", bar_labels, bar_values);
  }

  // Aggregate files: bar chart of the first share-like column, one bar per option row.
  for (const char* name : {"preference", "share", "value"}) {
    const auto col = table.column(name);
    if (col == std::string_view::npos) continue;
    std::vector<std::string> bar_labels;
    std::vector<double> bar_values;
    for (const auto& row : table.rows) {
      if (row.empty() || row[0] == "total" || col >= row.size()) continue;
      bar_labels.push_back(row[0]);
      bar_values.push_back(to_d(row[col]));
    }
    return svg::bar_chart(title, bar_labels, bar_values);
  }
  throw StructuralError("plot: no plottable columns (expected q*/v* trace columns or a preference/share column)");
}

}  // namespace agency
