#include "agency/config.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <sstream>

#include "agency/errors.h"

namespace agency {

namespace {

std::string_view trim(std::string_view s) {
  const auto ws = " \t\r";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

double to_double(std::string_view raw, std::size_t line, std::string_view key) {
  const auto s = trim(raw);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty() || !std::isfinite(v)) {
    throw ParseError(line, std::string(key) + ": expected a number, got '" + std::string(s) + "'");
  }
  return v;
}

std::uint64_t to_u64(std::string_view raw, std::size_t line, std::string_view key) {
  const auto s = trim(raw);
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
    throw ParseError(line, std::string(key) + ": expected a non-negative integer, got '" + std::string(s) + "'");
  }
  return v;
}

std::vector<double> to_list(std::string_view raw, std::size_t line, std::string_view key) {
  std::vector<double> out;
  std::size_t start = 0;
  while (start <= raw.size()) {
    const auto comma = raw.find(',', start);
    const auto piece = raw.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
    out.push_back(to_double(piece, line, key));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

// Shortest decimal form that parses back to the same double.
std::string exact(double v) {
  char buf[40];
  for (int precision = 1; precision <= 17; ++precision) {
    std::snprintf(buf, sizeof buf, "%.*g", precision, v);
    double back = 0.0;
    std::from_chars(buf, buf + std::char_traits<char>::length(buf), back);
    if (back == v) break;
  }
  return buf;
}

std::string join(const std::vector<double>& xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? ", " : "") + exact(xs[i]);
  return out;
}

using Setter = std::function<void(ExperimentConfig&, std::string_view, std::size_t)>;

const std::map<std::string, Setter, std::less<>>& setters() {
  static const std::map<std::string, Setter, std::less<>> table = {
      {"run.steps", [](auto& c, auto v, auto l) { c.steps = to_u64(v, l, "steps"); }},
      {"run.episodes", [](auto& c, auto v, auto l) { c.episodes = to_u64(v, l, "episodes"); }},
      {"run.seed", [](auto& c, auto v, auto l) { c.master_seed = to_u64(v, l, "seed"); }},
      {"run.output_dir", [](auto& c, auto v, auto) { c.output_dir = std::string(trim(v)); }},
      {"bandit.success_probs", [](auto& c, auto v, auto l) { c.bandit.success_probs = to_list(v, l, "success_probs"); }},
      {"bandit.rewards", [](auto& c, auto v, auto l) { c.bandit.rewards = to_list(v, l, "rewards"); }},
      {"bandit.alpha", [](auto& c, auto v, auto l) { c.bandit.alpha = to_double(v, l, "alpha"); }},
      {"world.base_rewards", [](auto& c, auto v, auto l) { c.world.base_rewards = to_list(v, l, "base_rewards"); }},
      {"world.concentration", [](auto& c, auto v, auto l) { c.world.concentration = to_double(v, l, "concentration"); }},
      {"world.initial_value", [](auto& c, auto v, auto l) { c.world.initial_value = to_double(v, l, "initial_value"); }},
      {"world.delta", [](auto& c, auto v, auto l) { c.world.delta = to_double(v, l, "delta"); }},
      {"world.selection",
       [](auto& c, auto v, auto l) {
         const auto s = trim(v);
         if (s == "proportional") c.world.selection = SelectionRule::Proportional;
         else if (s == "softmax") c.world.selection = SelectionRule::Softmax;
         else throw ParseError(l, "selection: expected proportional or softmax, got '" + std::string(s) + "'");
       }},
      {"world.temperature", [](auto& c, auto v, auto l) { c.world.temperature = to_double(v, l, "temperature"); }},
      {"world.trust", [](auto& c, auto v, auto l) { c.world.trust = to_double(v, l, "trust"); }},
      {"agent.nudge_scale", [](auto& c, auto v, auto l) { c.agent.nudge_scale = to_double(v, l, "nudge_scale"); }},
      {"preserve.floor_fraction",
       [](auto& c, auto v, auto l) { c.preserve.floor_fraction = to_double(v, l, "floor_fraction"); }},
      {"analysis.zeta", [](auto& c, auto v, auto l) { c.analysis.zeta = to_double(v, l, "zeta"); }},
      {"analysis.final_window", [](auto& c, auto v, auto l) { c.analysis.final_window = to_u64(v, l, "final_window"); }},
  };
  return table;
}

// Which key a validation failure belongs to, so the error can point at its line.
struct Violation {
  std::string key;
  std::string message;
};

std::optional<Violation> first_violation(const ExperimentConfig& c) {
  auto in = [](double x, double lo, double hi) { return x >= lo && x <= hi; };
  if (c.steps < 1) return Violation{"run.steps", "steps must be >= 1"};
  if (c.episodes < 1) return Violation{"run.episodes", "episodes must be >= 1"};
  if (c.output_dir.empty()) return Violation{"run.output_dir", "output_dir must not be empty"};
  if (c.experiment == ExperimentKind::Bandit) {
    const auto& b = c.bandit;
    if (b.success_probs.size() < 2) return Violation{"bandit.success_probs", "need at least 2 arms"};
    if (b.rewards.size() != b.success_probs.size()) {
      return Violation{"bandit.rewards", "rewards and success_probs must have the same length"};
    }
    for (double p : b.success_probs) {
      if (!in(p, 0.0, 1.0)) return Violation{"bandit.success_probs", "success_probs must lie in [0, 1]"};
    }
    for (double r : b.rewards) {
      if (!(r > 0.0)) return Violation{"bandit.rewards", "rewards must be > 0"};
    }
    if (!(b.alpha > 0.0 && b.alpha <= 1.0)) return Violation{"bandit.alpha", "alpha must lie in (0, 1]"};
  } else {
    const auto& w = c.world;
    if (w.base_rewards.size() < 2) return Violation{"world.base_rewards", "need at least 2 options"};
    for (double r : w.base_rewards) {
      if (!(r > 1.0)) return Violation{"world.base_rewards", "base_rewards must be > 1 (unit-mean Beta arms)"};
    }
    if (!(w.concentration > 0.0)) return Violation{"world.concentration", "concentration must be > 0"};
    if (!(w.initial_value > 0.0)) return Violation{"world.initial_value", "initial_value must be > 0"};
    if (!(w.delta > 0.0)) return Violation{"world.delta", "delta must be > 0"};
    if (!(w.temperature > 0.0)) return Violation{"world.temperature", "temperature must be > 0"};
    if (!(w.trust > 0.0)) return Violation{"world.trust", "trust must be > 0"};
    if (!(c.agent.nudge_scale >= 0.0)) return Violation{"agent.nudge_scale", "nudge_scale must be >= 0"};
    if (!(c.preserve.floor_fraction > 0.0 && c.preserve.floor_fraction <= 1.0)) {
      return Violation{"preserve.floor_fraction", "floor_fraction must lie in (0, 1]"};
    }
  }
  if (!(c.analysis.zeta >= 0.0 && c.analysis.zeta < 1.0)) return Violation{"analysis.zeta", "zeta must lie in [0, 1)"};
  if (c.analysis.final_window < 1) return Violation{"analysis.final_window", "final_window must be >= 1"};
  return std::nullopt;
}

}  // namespace

std::string_view to_string(ExperimentKind kind) noexcept {
  switch (kind) {
    case ExperimentKind::Bandit: return "bandit";
    case ExperimentKind::Drift: return "drift";
    case ExperimentKind::Nudge: return "nudge";
    case ExperimentKind::NudgeStatic: return "nudge-static";
    case ExperimentKind::Preserve: return "preserve";
  }
  return "?";
}

std::optional<ExperimentKind> parse_experiment_kind(std::string_view name) noexcept {
  for (auto k : {ExperimentKind::Bandit, ExperimentKind::Drift, ExperimentKind::Nudge, ExperimentKind::NudgeStatic,
                 ExperimentKind::Preserve}) {
    if (to_string(k) == name) return k;
  }
  return std::nullopt;
}

std::vector<Arm> ExperimentConfig::arms() const {
  std::vector<Arm> out;
  for (std::size_t i = 0; i < bandit.success_probs.size(); ++i) out.emplace_back(bandit.success_probs[i], bandit.rewards.at(i));
  return out;
}

WorldConfig ExperimentConfig::world_config(std::uint64_t episode_seed) const {
  WorldConfig wc;
  for (double base : world.base_rewards) {
    wc.options.emplace_back(ContinuousArm::unit_mean(base, world.concentration), world.initial_value);
  }
  wc.influence = WorldInfluence(world.delta);
  const bool has_agent = experiment == ExperimentKind::Nudge || experiment == ExperimentKind::NudgeStatic ||
                         experiment == ExperimentKind::Preserve;
  if (has_agent && agent.nudge_scale > 0.0) {
    wc.agent = AIAgent(agent.nudge_scale,
                       experiment == ExperimentKind::NudgeStatic ? AgentMode::Static : AgentMode::Dynamic);
  }
  if (experiment == ExperimentKind::Preserve) wc.preservation = PreservationPolicy(preserve.floor_fraction);
  wc.selection = SelectionParams{world.selection, world.temperature, world.trust};
  wc.steps = steps;
  wc.seed = episode_seed;
  return wc;
}

void ExperimentConfig::validate() const {
  if (auto v = first_violation(*this)) throw ParseError(0, v->message);
}

ExperimentConfig canonical_config(ExperimentKind kind) {
  ExperimentConfig c;
  c.experiment = kind;
  c.episodes = kind == ExperimentKind::Bandit ? 10 : 100;
  return c;
}

ExperimentConfig parse_config(std::string_view text, std::optional<ExperimentKind> experiment) {
  struct Entry {
    std::string key;
    std::string value;
    std::size_t line;
  };
  std::vector<Entry> entries;
  std::optional<Entry> kind_entry;
  std::map<std::string, std::size_t> seen;
  std::string section;

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    auto line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;

    if (const auto hash = line.find_first_of("#;"); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']') throw ParseError(line_no, "unterminated section header");
      section = std::string(trim(line.substr(1, line.size() - 2)));
      static const std::vector<std::string> sections = {"run", "bandit", "world", "agent", "preserve", "analysis"};
      if (std::find(sections.begin(), sections.end(), section) == sections.end()) {
        throw ParseError(line_no, "unknown section [" + section + "]");
      }
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ParseError(line_no, "expected key = value");
    const auto key = std::string(trim(line.substr(0, eq)));
    const auto value = std::string(trim(line.substr(eq + 1)));
    if (section.empty()) throw ParseError(line_no, "key '" + key + "' appears before any [section]");
    const auto full = section + "." + key;
    if (full != "run.experiment" && !setters().contains(full)) throw ParseError(line_no, "unknown key '" + full + "'");
    if (!seen.emplace(full, line_no).second) throw ParseError(line_no, "duplicate key '" + full + "'");
    if (full == "run.experiment") kind_entry = Entry{full, value, line_no};
    else entries.push_back({full, value, line_no});
  }

  std::optional<ExperimentKind> kind = experiment;
  if (kind_entry) {
    auto parsed = parse_experiment_kind(kind_entry->value);
    if (!parsed) throw ParseError(kind_entry->line, "unknown experiment '" + kind_entry->value + "'");
    if (kind && *kind != *parsed) {
      throw ParseError(kind_entry->line, "config says experiment '" + kind_entry->value + "' but '" +
                                             std::string(to_string(*kind)) + "' was requested");
    }
    kind = parsed;
  }
  if (!kind) throw ParseError(0, "no experiment given (use a subcommand or [run] experiment = ...)");

  ExperimentConfig c = canonical_config(*kind);
  for (const auto& e : entries) setters().at(e.key)(c, e.value, e.line);
  if (auto v = first_violation(c)) {
    auto it = seen.find(v->key);
    throw ParseError(it == seen.end() ? 0 : it->second, v->message);
  }
  return c;
}

std::string serialize_config(const ExperimentConfig& c) {
  std::ostringstream os;
  os << "[run]\n"
     << "experiment = " << to_string(c.experiment) << "\n"
     << "steps = " << c.steps << "\n"
     << "episodes = " << c.episodes << "\n"
     << "seed = " << c.master_seed << "\n"
     << "output_dir = " << c.output_dir << "\n"
     << "\n[bandit]\n"
     << "success_probs = " << join(c.bandit.success_probs) << "\n"
     << "rewards = " << join(c.bandit.rewards) << "\n"
     << "alpha = " << exact(c.bandit.alpha) << "\n"
     << "\n[world]\n"
     << "base_rewards = " << join(c.world.base_rewards) << "\n"
     << "concentration = " << exact(c.world.concentration) << "\n"
     << "initial_value = " << exact(c.world.initial_value) << "\n"
     << "delta = " << exact(c.world.delta) << "\n"
     << "selection = " << (c.world.selection == SelectionRule::Softmax ? "softmax" : "proportional") << "\n"
     << "temperature = " << exact(c.world.temperature) << "\n"
     << "trust = " << exact(c.world.trust) << "\n"
     << "\n[agent]\n"
     << "nudge_scale = " << exact(c.agent.nudge_scale) << "\n"
     << "\n[preserve]\n"
     << "floor_fraction = " << exact(c.preserve.floor_fraction) << "\n"
     << "\n[analysis]\n"
     << "zeta = " << exact(c.analysis.zeta) << "\n"
     << "final_window = " << c.analysis.final_window << "\n";
  return os.str();
}

const std::vector<std::string>& numeric_fields() {
  static const std::vector<std::string> fields = {
      "run.steps",        "run.episodes",        "run.seed",          "bandit.alpha",
      "world.concentration", "world.initial_value", "world.delta",    "world.temperature",
      "world.trust",      "agent.nudge_scale",   "preserve.floor_fraction", "analysis.zeta",
      "analysis.final_window",
  };
  return fields;
}

void set_numeric_field(ExperimentConfig& config, std::string_view axis, double value) {
  std::string resolved;
  for (const auto& f : numeric_fields()) {
    const auto bare = std::string_view(f).substr(f.find('.') + 1);
    if (f == axis || bare == axis) {
      if (!resolved.empty()) throw ParameterError("ambiguous sweep axis '" + std::string(axis) + "'");
      resolved = f;
    }
  }
  if (resolved.empty()) throw ParameterError("unknown sweep axis '" + std::string(axis) + "'");
  const bool integral = resolved == "run.steps" || resolved == "run.episodes" || resolved == "run.seed" ||
                        resolved == "analysis.final_window";
  if (integral && (value < 0.0 || value != std::floor(value))) {
    throw ParameterError("sweep axis '" + resolved + "' takes non-negative integers");
  }
  setters().at(resolved)(config, integral ? std::to_string(static_cast<std::uint64_t>(value)) : exact(value), 0);
}

}  // namespace agency
