#include "swarmest/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <limits>
#include <sstream>

#include <fmt/format.h>

#include "swarmest/errors.hpp"

namespace swarmest {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::string lower(std::string s) {
  for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

[[noreturn]] void bad_value(const std::string& key, const std::string& value, const std::string& expected) {
  throw ConfigError(key, "cannot parse '" + value + "', expected " + expected);
}

double parse_double(const std::string& key, const std::string& text) {
  double v = 0.0;
  const char* first = text.data();
  const char* last = first + text.size();
  if (!text.empty() && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc{} || ptr != last || !std::isfinite(v)) bad_value(key, text, "a finite number");
  return v;
}

long long parse_integer(const std::string& key, const std::string& text) {
  long long v = 0;
  const char* first = text.data();
  const char* last = first + text.size();
  if (!text.empty() && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc{} || ptr != last) bad_value(key, text, "an integer");
  return v;
}

int parse_int(const std::string& key, const std::string& text) {
  const long long v = parse_integer(key, text);
  if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max()) bad_value(key, text, "an int");
  return static_cast<int>(v);
}

std::uint64_t parse_u64(const std::string& key, const std::string& text) {
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size()) bad_value(key, text, "a non-negative integer");
  return v;
}

std::size_t parse_count(const std::string& key, const std::string& text) {
  const long long v = parse_integer(key, text);
  if (v < 0) throw ConfigError(key, "must be >= 0");
  return static_cast<std::size_t>(v);
}

bool parse_bool(const std::string& key, const std::string& text) {
  const std::string t = lower(text);
  if (t == "true" || t == "1" || t == "yes" || t == "on") return true;
  if (t == "false" || t == "0" || t == "no" || t == "off") return false;
  bad_value(key, text, "true or false");
}

std::optional<double> parse_auto(const std::string& key, const std::string& text) {
  if (lower(text) == "auto") return std::nullopt;
  return parse_double(key, text);
}

std::string fmt_double(double v) { return fmt::format("{}", v); }
std::string fmt_bool(bool v) { return v ? "true" : "false"; }
std::string fmt_auto(const std::optional<double>& v) { return v ? fmt_double(*v) : "auto"; }

template <class E>
struct EnumName {
  E value;
  const char* name;
};

template <class E, std::size_t N>
E parse_enum(const std::string& key, const std::string& text, const EnumName<E> (&names)[N]) {
  const std::string t = normalize_key(text);
  std::string expected;
  for (const auto& n : names) {
    if (normalize_key(n.name) == t) return n.value;
    expected += (expected.empty() ? "" : " | ") + std::string(n.name);
  }
  bad_value(key, text, expected);
}

template <class E, std::size_t N>
std::string enum_name(E v, const EnumName<E> (&names)[N]) {
  for (const auto& n : names) {
    if (n.value == v) return n.name;
  }
  return "?";
}

constexpr EnumName<Scenario> kScenarios[] = {{Scenario::Disperse, "disperse"},
                                             {Scenario::ConsensusStatic, "consensus-static"},
                                             {Scenario::Full, "full"},
                                             {Scenario::Control, "control"}};
constexpr EnumName<FieldSpecKind> kFields[] = {
    {FieldSpecKind::Cone, "cone"}, {FieldSpecKind::VShape, "vshape"}, {FieldSpecKind::Grid, "grid"}};
constexpr EnumName<RegionShape> kRegions[] = {{RegionShape::Disk, "disk"}, {RegionShape::Square, "square"}};
constexpr EnumName<WalkKind> kWalks[] = {{WalkKind::Dispersion, "dispersion"}, {WalkKind::Diffusion, "diffusion"}};
constexpr EnumName<ThresholdRule> kRules[] = {{ThresholdRule::WalkWhileClose, "walk-while-close"},
                                              {ThresholdRule::StopWhenClose, "stop-when-close"}};
constexpr EnumName<PassageMode> kPassages[] = {{PassageMode::DistanceToFinal, "distance-to-final"},
                                               {PassageMode::RawPrecision, "raw"}};

struct KeyDef {
  const char* section;
  const char* name;
  std::function<std::string(const ExperimentConfig&)> get;
  std::function<void(ExperimentConfig&, const std::string&)> set;
};

#define SW_DOUBLE(sec, key, member)                                         \
  KeyDef {                                                                  \
    sec, key, [](const ExperimentConfig& c) { return fmt_double(c.member); }, \
        [](ExperimentConfig& c, const std::string& v) { c.member = parse_double(key, v); } \
  }
#define SW_INT(sec, key, member)                                                 \
  KeyDef {                                                                       \
    sec, key, [](const ExperimentConfig& c) { return fmt::format("{}", c.member); }, \
        [](ExperimentConfig& c, const std::string& v) { c.member = parse_int(key, v); } \
  }
#define SW_BOOL(sec, key, member)                                         \
  KeyDef {                                                                \
    sec, key, [](const ExperimentConfig& c) { return fmt_bool(c.member); }, \
        [](ExperimentConfig& c, const std::string& v) { c.member = parse_bool(key, v); } \
  }
#define SW_AUTO(sec, key, member)                                         \
  KeyDef {                                                                \
    sec, key, [](const ExperimentConfig& c) { return fmt_auto(c.member); }, \
        [](ExperimentConfig& c, const std::string& v) { c.member = parse_auto(key, v); } \
  }
#define SW_ENUM(sec, key, member, table)                                             \
  KeyDef {                                                                           \
    sec, key, [](const ExperimentConfig& c) { return enum_name(c.member, table); },    \
        [](ExperimentConfig& c, const std::string& v) { c.member = parse_enum(key, v, table); } \
  }
#define SW_STRING(sec, key, member)                                \
  KeyDef {                                                         \
    sec, key, [](const ExperimentConfig& c) { return c.member; },    \
        [](ExperimentConfig& c, const std::string& v) { c.member = v; } \
  }

const std::vector<KeyDef>& key_table() {
  static const std::vector<KeyDef> table = {
      SW_ENUM("run", "scenario", scenario, kScenarios),
      KeyDef{"run", "seed", [](const ExperimentConfig& c) { return fmt::format("{}", c.seed); },
             [](ExperimentConfig& c, const std::string& v) { c.seed = parse_u64("seed", v); }},
      SW_INT("run", "seeds", seeds),
      KeyDef{"run", "workers", [](const ExperimentConfig& c) { return fmt::format("{}", c.workers); },
             [](ExperimentConfig& c, const std::string& v) {
               const std::size_t w = parse_count("workers", v);
               if (w > 4096) throw ConfigError("workers", "must be <= 4096");
               c.workers = static_cast<unsigned>(w);
             }},
      SW_STRING("run", "out_dir", out_dir),
      SW_BOOL("run", "trajectory", trajectory),
      SW_INT("run", "ticks", ticks),
      SW_INT("run", "t_sw", t_sw),

      KeyDef{"swarm", "n", [](const ExperimentConfig& c) { return fmt::format("{}", c.n); },
             [](ExperimentConfig& c, const std::string& v) { c.n = parse_count("n", v); }},
      SW_DOUBLE("swarm", "speed", motion.speed),
      SW_DOUBLE("swarm", "turn_rate", motion.turn_rate),
      SW_DOUBLE("swarm", "dt", motion.dt),
      SW_DOUBLE("swarm", "heading_noise", motion.heading_noise_sd),
      SW_DOUBLE("swarm", "r_comm", r_comm),
      SW_DOUBLE("swarm", "range_noise", range_noise),
      SW_DOUBLE("swarm", "range_smoothing", range_smoothing),
      SW_DOUBLE("swarm", "init_radius", init_radius),

      SW_ENUM("field", "field", field, kFields),
      SW_DOUBLE("field", "center_x", field_center.x),
      SW_DOUBLE("field", "center_y", field_center.y),
      SW_DOUBLE("field", "slope", slope),
      SW_DOUBLE("field", "offset", offset),
      SW_STRING("field", "grid_file", grid_file),
      SW_BOOL("field", "grid_bilinear", grid_bilinear),

      SW_ENUM("region", "region", region, kRegions),
      SW_DOUBLE("region", "region_size", region_size),
      SW_DOUBLE("region", "region_x", region_center.x),
      SW_DOUBLE("region", "region_y", region_center.y),
      SW_DOUBLE("region", "gt_resolution", gt_resolution),
      SW_AUTO("region", "sensor_noise", sensor_noise),

      SW_ENUM("dispersion", "walk", walk, kWalks),
      SW_DOUBLE("dispersion", "d_thr", dispersion.distance_threshold),
      SW_DOUBLE("dispersion", "hysteresis", dispersion.hysteresis),
      SW_INT("dispersion", "min_run", dispersion.min_run_ticks),
      SW_DOUBLE("dispersion", "tumble_prob", dispersion.tumble_probability),
      SW_INT("dispersion", "turn_burst", dispersion.max_turn_burst),
      SW_ENUM("dispersion", "threshold_rule", dispersion.rule, kRules),
      SW_BOOL("dispersion", "link_guard", dispersion.link_guard),
      SW_DOUBLE("dispersion", "guard_distance", dispersion.guard_distance),
      SW_INT("dispersion", "max_hold", dispersion.max_hold_ticks),
      SW_INT("dispersion", "quorum_timeout", quorum_timeout),

      SW_DOUBLE("consensus", "alpha", consensus.alpha),
      SW_INT("consensus", "t_comm", consensus.t_comm),
      SW_DOUBLE("consensus", "delta", consensus.delta),
      SW_ENUM("consensus", "passage", passage, kPassages),
      SW_BOOL("consensus", "freeze_samples", freeze_samples),

      SW_AUTO("cbpt", "cbpt_tol", cbpt_tol),
      SW_AUTO("cbpt", "cbpt_stop_band", cbpt_stop_band),
      SW_AUTO("cbpt", "cbpt_resume_band", cbpt_resume_band),
      SW_INT("cbpt", "cbpt_patience", cbpt_patience),
      SW_INT("cbpt", "cbpt_turn_burst", cbpt_turn_burst),
      SW_BOOL("cbpt", "cbpt_live_samples", cbpt_live_samples),

      SW_DOUBLE("metrics", "r_cover", r_cover),
      SW_DOUBLE("metrics", "cover_cell", cover_cell),

      SW_INT("static", "mc", mc),
      SW_STRING("static", "sweep_range", sweep_range),
      SW_DOUBLE("static", "static_noise", static_noise),

      SW_STRING("sweep", "grid", grid),
  };
  return table;
}

#undef SW_DOUBLE
#undef SW_INT
#undef SW_BOOL
#undef SW_AUTO
#undef SW_ENUM
#undef SW_STRING

const KeyDef& find_key(const std::string& raw) {
  const std::string key = normalize_key(raw);
  for (const auto& k : key_table()) {
    if (key == k.name) return k;
  }
  throw ConfigError(key, "unknown configuration key '" + raw + "'");
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(trim(cur));
  return out;
}

bool needs_quotes(const std::string& v) {
  return v.empty() || v.front() == ' ' || v.back() == ' ' || v.find('#') != std::string::npos ||
         v.front() == '"';
}

}  // namespace

const char* to_string(Scenario s) {
  for (const auto& n : kScenarios) {
    if (n.value == s) return n.name;
  }
  return "?";
}

Scenario parse_scenario(const std::string& text) { return parse_enum("scenario", text, kScenarios); }

std::vector<std::uint64_t> ExperimentConfig::seed_list() const {
  std::vector<std::uint64_t> out;
  for (int i = 0; i < seeds; ++i) out.push_back(seed + static_cast<std::uint64_t>(i));
  return out;
}

std::string normalize_key(std::string key) {
  key = lower(trim(key));
  std::replace(key.begin(), key.end(), '-', '_');
  return key;
}

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys = [] {
    std::vector<std::string> k;
    for (const auto& d : key_table()) k.emplace_back(d.name);
    return k;
  }();
  return keys;
}

void set_config_value(ExperimentConfig& config, const std::string& key, const std::string& value) {
  const KeyDef& def = find_key(key);
  def.set(config, trim(value));
  config.explicit_keys.insert(def.name);
}

std::string get_config_value(const ExperimentConfig& config, const std::string& key) {
  return find_key(key).get(config);
}

void apply_config_text(ExperimentConfig& config, const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string body = trim(line);
    if (body.empty() || body.front() == '#') continue;
    if (body.front() == '[') {
      if (body.back() != ']') throw ConfigError("", fmt::format("line {}: malformed section header", lineno));
      continue;
    }
    const auto eq = body.find('=');
    if (eq == std::string::npos) throw ConfigError("", fmt::format("line {}: expected key = value", lineno));
    const std::string key = trim(body.substr(0, eq));
    std::string value = trim(body.substr(eq + 1));
    bool quoted = false;
    if (!value.empty() && value.front() == '"') {
      quoted = true;
      const auto close = value.find('"', 1);
      if (close == std::string::npos) throw ConfigError(key, fmt::format("line {}: unterminated quote", lineno));
      const std::string rest = trim(value.substr(close + 1));
      if (!rest.empty() && rest.front() != '#') throw ConfigError(key, fmt::format("line {}: text after value", lineno));
      value = value.substr(1, close - 1);
    } else {
      const auto hash = value.find('#');
      if (hash != std::string::npos) value = trim(value.substr(0, hash));
    }
    const KeyDef& def = find_key(key);
    def.set(config, quoted ? value : trim(value));
    config.explicit_keys.insert(def.name);
  }
}

void apply_config_file(ExperimentConfig& config, const std::filesystem::path& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("config", "cannot read " + path.string());
  std::ostringstream buf;
  buf << f.rdbuf();
  apply_config_text(config, buf.str());
}

void apply_overrides(ExperimentConfig& config, const std::vector<std::pair<std::string, std::string>>& overrides) {
  for (const auto& [k, v] : overrides) set_config_value(config, k, v);
}

std::vector<std::pair<std::string, std::string>> config_entries(const ExperimentConfig& config) {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& d : key_table()) out.emplace_back(d.name, d.get(config));
  return out;
}

std::string serialize_config(const ExperimentConfig& config) {
  std::string out;
  std::string section;
  for (const auto& d : key_table()) {
    if (section != d.section) {
      if (!section.empty()) out += '\n';
      section = d.section;
      out += fmt::format("[{}]\n", section);
    }
    const std::string v = d.get(config);
    out += needs_quotes(v) ? fmt::format("{} = \"{}\"\n", d.name, v) : fmt::format("{} = {}\n", d.name, v);
  }
  return out;
}

bool same_settings(const ExperimentConfig& a, const ExperimentConfig& b) { return config_entries(a) == config_entries(b); }

SimulationConfig to_simulation(const ExperimentConfig& c) {
  SimulationConfig s;
  s.n = c.n;
  switch (c.field) {
    case FieldSpecKind::Cone:
      s.field = ScalarField::radial_cone(c.field_center, c.slope, c.offset);
      break;
    case FieldSpecKind::VShape:
      s.field = ScalarField::v_shape_ramp(c.field_center, c.slope, c.offset);
      break;
    case FieldSpecKind::Grid: {
      if (c.grid_file.empty()) throw ConfigError("grid_file", "required when field = grid");
      GridData g = load_grid(c.grid_file);
      g.bilinear = c.grid_bilinear;
      s.field = ScalarField::from_grid(std::move(g));
      break;
    }
  }
  s.region.shape = c.region;
  s.region.size = c.region_size;
  s.region.center = c.region_center;
  s.gt_resolution = c.gt_resolution;
  s.sensor_noise_sd = c.sensor_noise;
  s.motion = c.motion;
  s.r_comm = c.r_comm;
  s.range_noise = c.range_noise;
  s.range_smoothing = c.range_smoothing;
  s.r_cover = c.r_cover;
  s.cover_cell = c.cover_cell;
  s.dispersion = c.dispersion;
  s.consensus = c.consensus;
  s.freeze_samples = c.freeze_samples;
  s.cbpt_live_samples = c.cbpt_live_samples;
  s.quorum_timeout = c.quorum_timeout;
  s.cbpt_tolerance = c.cbpt_tol;
  s.cbpt_stop_band = c.cbpt_stop_band;
  s.cbpt_resume_band = c.cbpt_resume_band;
  s.cbpt_patience = c.cbpt_patience;
  s.cbpt_turn_burst = c.cbpt_turn_burst;
  s.total_ticks = c.ticks;
  s.init_radius = c.init_radius;
  s.t_sw = c.t_sw;
  s.seed = c.seed;
  s.record_trajectory = c.trajectory;
  if (c.seeds < 1) throw ConfigError("seeds", "must be >= 1");
  s.validate();
  return s;
}

StaticStudyParams to_static_study(const ExperimentConfig& c) {
  StaticStudyParams p;
  p.n = c.n;
  p.repetitions = c.mc;
  p.range_ratios = parse_linspace(c.sweep_range);
  p.consensus = c.consensus;
  p.passage_mode = c.passage;
  p.sensor_noise_sd = c.static_noise;
  p.seed = c.seed;
  p.workers = c.workers;
  p.validate();
  return p;
}

std::vector<std::pair<std::string, std::string>> parse_override_tokens(const std::vector<std::string>& tokens) {
  std::vector<std::pair<std::string, std::string>> out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    const std::string& t = tokens[i];
    if (t.size() < 3 || t.rfind("--", 0) != 0) throw ConfigError(t, "unexpected argument '" + t + "'");
    const std::string body = t.substr(2);
    const auto eq = body.find('=');
    if (eq != std::string::npos) {
      out.emplace_back(body.substr(0, eq), body.substr(eq + 1));
      continue;
    }
    if (i + 1 >= tokens.size()) throw ConfigError(normalize_key(body), "missing value for --" + body);
    out.emplace_back(body, tokens[++i]);
  }
  return out;
}

std::filesystem::path resolve_out_dir(const ExperimentConfig& config) {
  if (!config.out_dir.empty()) return config.out_dir;
  if (const char* env = std::getenv("SWARMEST_OUT_DIR"); env && *env) return env;
  return ".";
}

std::vector<SweepAxis> parse_sweep_grid(const ExperimentConfig& config) {
  std::vector<SweepAxis> axes;
  if (trim(config.grid).empty()) throw ConfigError("grid", "sweep needs a non-empty grid");
  for (const std::string& part : split(config.grid, ';')) {
    if (part.empty()) continue;
    const auto eq = part.find('=');
    if (eq == std::string::npos) throw ConfigError("grid", "expected key=v1,v2 in '" + part + "'");
    SweepAxis axis;
    axis.key = find_key(trim(part.substr(0, eq))).name;
    if (axis.key == "grid" || axis.key == "scenario" || axis.key == "seed" || axis.key == "seeds") {
      throw ConfigError("grid", "'" + axis.key + "' cannot be swept");
    }
    for (const std::string& v : split(part.substr(eq + 1), ',')) {
      if (v.empty()) throw ConfigError("grid", "empty value for '" + axis.key + "'");
      axis.values.push_back(v);
    }
    if (axis.values.empty()) throw ConfigError("grid", "no values for '" + axis.key + "'");
    for (const auto& a : axes) {
      if (a.key == axis.key) throw ConfigError("grid", "'" + axis.key + "' appears twice");
    }
    if (config.explicit_keys.count(axis.key)) {
      throw ConfigError(axis.key, "is both fixed and swept");
    }
    axes.push_back(std::move(axis));
  }
  if (axes.empty()) throw ConfigError("grid", "sweep needs a non-empty grid");
  return axes;
}

}  // namespace swarmest
