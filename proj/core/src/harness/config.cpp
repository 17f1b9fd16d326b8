#include "outerpress/harness/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <vector>

#include "outerpress/harness/presets.hpp"

namespace outerpress::harness {

namespace {

struct Entry {
  std::string value;
  std::size_t line = 0;  // 0 for preset-supplied entries
};

using EntryMap = std::map<std::string, Entry, std::less<>>;

const std::set<std::string, std::less<>> kKnownKeys = {
    "preset",          "grid.n",           "time.dt",          "time.t_end",          "time.cfl",
    "solver.theta_floor", "output.stride", "output.snapshots", "stationary.tolerance", "params.R",
    "params.cv",       "params.mu",        "params.kappa",     "params.alpha",        "params.beta",
    "schedule.kind",   "schedule.p_bar",   "schedule.p0",      "schedule.p1",         "schedule.rate",
    "schedule.t0",     "schedule.t1",      "schedule.times",   "schedule.values",     "initial.kind",
    "initial.v0",      "initial.u0",       "initial.theta0",   "initial.amplitude",   "initial.u_amplitude",
    "initial.theta_amplitude", "initial.wavenumber", "initial.seed", "initial.path"};

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

// key -> (value, line); duplicate or unknown keys are errors.
EntryMap scan(std::string_view text, bool from_preset) {
  EntryMap entries;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto end = std::min(text.find('\n', pos), text.size());
    std::string_view raw = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (const auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    const std::string line = trim(raw);
    if (line.empty()) continue;
    const std::size_t reported = from_preset ? 0 : line_no;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError(reported, "", "expected 'key = value', got '" + line + "'");
    std::string key = trim(std::string_view(line).substr(0, eq));
    std::string value = trim(std::string_view(line).substr(eq + 1));
    if (!kKnownKeys.contains(key)) throw ConfigError(reported, key, "unknown key '" + key + "'");
    if (value.empty()) throw ConfigError(reported, key, "missing value for '" + key + "'");
    if (entries.contains(key)) throw ConfigError(reported, key, "duplicate key '" + key + "'");
    entries.emplace(std::move(key), Entry{std::move(value), reported});
  }
  return entries;
}

class Reader {
 public:
  explicit Reader(EntryMap entries) : entries_(std::move(entries)) {}

  bool has(std::string_view key) const { return entries_.find(key) != entries_.end(); }
  std::size_t line(std::string_view key) const {
    const auto it = entries_.find(key);
    return it == entries_.end() ? 0 : it->second.line;
  }

  std::string text(std::string_view key, std::string fallback) {
    const auto it = entries_.find(key);
    if (it == entries_.end()) return fallback;
    used_.insert(std::string(key));
    return it->second.value;
  }

  double number(std::string_view key, double fallback) {
    const auto it = entries_.find(key);
    if (it == entries_.end()) return fallback;
    used_.insert(std::string(key));
    return parse_number(it->second.value, key, it->second.line);
  }

  std::uint64_t integer(std::string_view key, std::uint64_t fallback) {
    const auto it = entries_.find(key);
    if (it == entries_.end()) return fallback;
    used_.insert(std::string(key));
    const std::string& s = it->second.value;
    std::uint64_t out = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    if (ec != std::errc() || ptr != s.data() + s.size()) {
      throw ConfigError(it->second.line, std::string(key), "expected a non-negative integer, got '" + s + "'");
    }
    return out;
  }

  bool boolean(std::string_view key, bool fallback) {
    const auto it = entries_.find(key);
    if (it == entries_.end()) return fallback;
    used_.insert(std::string(key));
    if (it->second.value == "true") return true;
    if (it->second.value == "false") return false;
    throw ConfigError(it->second.line, std::string(key), "expected true or false, got '" + it->second.value + "'");
  }

  std::vector<double> list(std::string_view key) {
    const auto it = entries_.find(key);
    if (it == entries_.end()) throw ConfigError(0, std::string(key), "missing required key '" + std::string(key) + "'");
    used_.insert(std::string(key));
    std::vector<double> out;
    std::stringstream ss(it->second.value);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(parse_number(trim(item), key, it->second.line));
    return out;
  }

  // Keys present but never read by the selected kinds.
  void reject_unused() const {
    for (const auto& [key, entry] : entries_) {
      if (key == "preset" || used_.contains(key)) continue;
      throw ConfigError(entry.line, key, "key '" + key + "' does not apply to the selected kind");
    }
  }

 private:
  static double parse_number(const std::string& s, std::string_view key, std::size_t line) {
    double out = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(out)) {
      throw ConfigError(line, std::string(key), "expected a number, got '" + s + "'");
    }
    return out;
  }

  EntryMap entries_;
  std::set<std::string, std::less<>> used_;
};

// Drops every "<prefix>.*" entry of the preset when the user picks a new kind for it.
void override_group(EntryMap& base, const EntryMap& user, const std::string& prefix) {
  if (!user.contains(prefix + ".kind")) return;
  std::erase_if(base, [&](const auto& kv) { return kv.first.starts_with(prefix + "."); });
}

double positive(Reader& r, std::string_view key, double fallback) {
  const double x = r.number(key, fallback);
  if (!(x > 0.0)) {
    throw ConfigError(r.line(key), std::string(key), std::string(key) + " must be positive, got " + std::to_string(x));
  }
  return x;
}

PressureSchedule read_schedule(Reader& r) {
  const std::string kind = r.text("schedule.kind", "constant");
  const std::size_t line = r.line("schedule.kind");
  try {
    if (kind == "constant") return PressureSchedule::constant(positive(r, "schedule.p_bar", 1.0));
    if (kind == "exponential") {
      const double p0 = positive(r, "schedule.p0", 2.0);
      const double p_bar = positive(r, "schedule.p_bar", 1.0);
      const double rate = positive(r, "schedule.rate", 1.0);
      return PressureSchedule::exponential(p0, p_bar, rate);
    }
    if (kind == "smoothstep") {
      const double p0 = positive(r, "schedule.p0", 1.0);
      const double p1 = positive(r, "schedule.p1", 1.0);
      const double t0 = r.number("schedule.t0", 0.0);
      const double t1 = r.number("schedule.t1", 1.0);
      return PressureSchedule::smoothstep(p0, p1, t0, t1);
    }
    if (kind == "tabulated") {
      auto times = r.list("schedule.times");
      auto values = r.list("schedule.values");
      return PressureSchedule::tabulated(std::move(times), std::move(values));
    }
  } catch (const ScheduleError& e) {
    throw ConfigError(line, "schedule", e.what());
  } catch (const DomainError& e) {
    throw ConfigError(line, "schedule", e.what());
  }
  throw ConfigError(line, "schedule.kind",
                    "unknown schedule kind '" + kind + "' (constant, exponential, smoothstep, tabulated)");
}

InitialData read_initial(Reader& r, const std::filesystem::path& base_dir) {
  const std::string kind = r.text("initial.kind", "constant");
  const std::size_t line = r.line("initial.kind");
  if (kind == "constant") {
    return ConstantInit{positive(r, "initial.v0", 1.0), r.number("initial.u0", 0.0),
                        positive(r, "initial.theta0", 1.0)};
  }
  if (kind == "sine") {
    SineInit s;
    s.v_base = positive(r, "initial.v0", 1.0);
    s.u_base = r.number("initial.u0", 0.0);
    s.theta_base = positive(r, "initial.theta0", 1.0);
    s.v_amplitude = r.number("initial.amplitude", 0.1);
    s.u_amplitude = r.number("initial.u_amplitude", 0.0);
    s.theta_amplitude = r.number("initial.theta_amplitude", 0.0);
    const auto k = r.integer("initial.wavenumber", 1);
    if (k < 1 || k > 1000000) throw ConfigError(r.line("initial.wavenumber"), "initial.wavenumber", "wavenumber must be in [1, 1e6]");
    s.wavenumber = static_cast<int>(k);
    s.seed = r.integer("initial.seed", 0);
    if (!(std::abs(s.v_amplitude) < s.v_base)) {
      throw ConfigError(r.line("initial.amplitude"), "initial.amplitude", "|amplitude| must be below initial.v0");
    }
    if (!(std::abs(s.theta_amplitude) < s.theta_base)) {
      throw ConfigError(r.line("initial.theta_amplitude"), "initial.theta_amplitude",
                        "|theta_amplitude| must be below initial.theta0");
    }
    return s;
  }
  if (kind == "file") {
    if (!r.has("initial.path")) throw ConfigError(line, "initial.path", "initial.kind = file needs initial.path");
    const std::size_t path_line = r.line("initial.path");
    std::filesystem::path path = r.text("initial.path", "");
    if (path.is_relative() && !base_dir.empty()) path = base_dir / path;
    try {
      return load_initial_table(path);
    } catch (const InitError& e) {
      throw ConfigError(path_line, "initial.path", e.what());
    } catch (const InputError& e) {
      throw ConfigError(path_line, "initial.path", e.what());
    }
  }
  throw ConfigError(line, "initial.kind", "unknown initial kind '" + kind + "' (constant, sine, file)");
}

ThermoParams read_params(Reader& r) {
  ThermoParams p;
  p.R = r.number("params.R", p.R);
  p.c_v = r.number("params.cv", p.c_v);
  p.mu_tilde = r.number("params.mu", p.mu_tilde);
  p.kappa_tilde = r.number("params.kappa", p.kappa_tilde);
  p.alpha = r.number("params.alpha", p.alpha);
  p.beta = r.number("params.beta", p.beta);
  try {
    p.validate();
  } catch (const DomainError& e) {
    static const std::map<std::string, std::string> keys = {{"R", "params.R"},         {"c_v", "params.cv"},
                                                            {"mu_tilde", "params.mu"}, {"kappa_tilde", "params.kappa"},
                                                            {"alpha", "params.alpha"}, {"beta", "params.beta"}};
    const auto it = keys.find(e.field());
    const std::string key = it == keys.end() ? e.field() : it->second;
    throw ConfigError(r.line(key), key, e.what());
  }
  return p;
}

SolverConfig read_solver(Reader& r) {
  SolverConfig c;
  c.dt = r.number("time.dt", c.dt);
  c.t_end = r.number("time.t_end", c.t_end);
  if (r.has("time.cfl")) c.cfl_factor = r.number("time.cfl", 0.0);
  c.theta_floor = r.number("solver.theta_floor", c.theta_floor);
  c.store_history_every = r.integer("output.stride", 1);
  try {
    c.validate();
  } catch (const DomainError& e) {
    static const std::map<std::string, std::string> keys = {{"dt", "time.dt"},
                                                            {"t_end", "time.t_end"},
                                                            {"cfl_factor", "time.cfl"},
                                                            {"theta_floor", "solver.theta_floor"},
                                                            {"store_history_every", "output.stride"}};
    const auto it = keys.find(e.field());
    const std::string key = it == keys.end() ? e.field() : it->second;
    throw ConfigError(r.line(key), key, e.what());
  }
  return c;
}

}  // namespace

ConfigError::ConfigError(std::size_t line, std::string field, const std::string& what)
    : Error(line > 0 ? "line " + std::to_string(line) + (field.empty() ? "" : " (" + field + ")") + ": " + what
                     : (field.empty() ? what : field + ": " + what)),
      line_(line),
      field_(std::move(field)) {}

RunConfig parse_config(std::string_view text, const std::filesystem::path& base_dir) {
  EntryMap user = scan(text, false);
  EntryMap merged;
  RunConfig config;
  if (const auto it = user.find("preset"); it != user.end()) {
    const auto body = preset_text(it->second.value);
    if (!body) {
      std::string names;
      for (const auto& n : preset_names()) names += (names.empty() ? "" : ", ") + n;
      throw ConfigError(it->second.line, "preset", "unknown preset '" + it->second.value + "' (" + names + ")");
    }
    config.preset = it->second.value;
    config.source = "# preset " + config.preset + "\n" + *body + "\n";
    merged = scan(*body, true);
    override_group(merged, user, "schedule");
    override_group(merged, user, "initial");
  }
  for (auto& [key, entry] : user) merged.insert_or_assign(key, entry);
  config.source += std::string(text);

  Reader r(std::move(merged));
  const auto n = r.integer("grid.n", 256);
  if (n < 2 || n > 10000000) throw ConfigError(r.line("grid.n"), "grid.n", "grid.n must be in [2, 1e7]");
  config.n_cells = static_cast<std::size_t>(n);
  config.solver = read_solver(r);
  config.params = read_params(r);
  config.schedule = read_schedule(r);
  config.initial = read_initial(r, base_dir);
  config.write_snapshots = r.boolean("output.snapshots", false);
  config.stationary_tolerance = r.number("stationary.tolerance", config.stationary_tolerance);
  if (!(config.stationary_tolerance > 0.0)) {
    throw ConfigError(r.line("stationary.tolerance"), "stationary.tolerance", "tolerance must be positive");
  }
  r.reject_unused();
  return config;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(0, "", "cannot read config file " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str(), path.parent_path());
}

RunConfig preset_config(std::string_view name) { return parse_config("preset = " + std::string(name) + "\n"); }

}  // namespace outerpress::harness
