#include "elastica/cli/config.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "elastica/error.hpp"

namespace elastica::cli {

namespace {

constexpr std::array<std::string_view, 20> kKnownKeys = {
    "dimension", "N",       "delta",    "m_T",      "T",       "scheme",      "lambda",
    "lambda_tilde", "epsilon", "monitor", "preset",  "radius",  "R_outer",     "r_roll",
    "d_offset",  "alpha",   "points_file", "record_stride", "out_dir", "reference"};

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

[[noreturn]] void config_error(const std::string& message) {
  throw Error(ErrorCode::kConfig, message);
}

std::string at_line(const ConfigEntry& e) { return " (line " + std::to_string(e.line) + ")"; }

std::vector<double> read_points(const std::filesystem::path& path, int dim) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot read points_file '" + path.string() + "'");
  std::vector<double> coords;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    std::string_view body = line;
    if (const auto hash = body.find('#'); hash != std::string_view::npos) body = body.substr(0, hash);
    body = trim(body);
    if (body.empty()) continue;
    int count = 0;
    while (!body.empty()) {
      const auto end = body.find_first_of(" \t,");
      const std::string_view token = body.substr(0, end);
      coords.push_back(parse_real("points_file line " + std::to_string(number), token));
      ++count;
      body = end == std::string_view::npos ? std::string_view{} : trim(body.substr(end + 1));
      while (!body.empty() && body.front() == ',') body = trim(body.substr(1));
    }
    if (count != dim) {
      config_error("points_file line " + std::to_string(number) + " has " +
                   std::to_string(count) + " coordinates, expected " + std::to_string(dim));
    }
  }
  return coords;
}

}  // namespace

double parse_real(std::string_view key, std::string_view text) {
  text = trim(text);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size() ||
      !std::isfinite(value)) {
    config_error(std::string(key) + ": '" + std::string(text) + "' is not a finite number");
  }
  return value;
}

std::size_t parse_count(std::string_view key, std::string_view text) {
  text = trim(text);
  std::size_t value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (!text.empty() && ec == std::errc{} && ptr == text.data() + text.size()) return value;
  const double real = parse_real(key, text);
  if (real < 0.0 || real > 9007199254740992.0 || real != std::floor(real)) {
    config_error(std::string(key) + ": '" + std::string(text) +
                 "' is not a non-negative integer");
  }
  return static_cast<std::size_t>(real);
}

Monitor parse_monitor(std::string_view text) {
  if (text == "lemniscate-quadratic") return Monitor::lemniscate_quadratic();
  constexpr std::string_view prefix = "constant:";
  if (text.substr(0, prefix.size()) == prefix) {
    return Monitor::constant(parse_real("monitor", text.substr(prefix.size())));
  }
  throw Error(ErrorCode::kInvalidMonitor,
              "monitor must be 'constant:<c>' or 'lemniscate-quadratic', got '" +
                  std::string(text) + "'");
}

ConfigMap parse_config_text(std::string_view text) {
  ConfigMap config;
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto newline = text.find('\n');
    std::string_view line = text.substr(0, newline);
    text = newline == std::string_view::npos ? std::string_view{} : text.substr(newline + 1);

    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      config_error("line " + std::to_string(line_no) + ": expected 'key = value'");
    }
    const std::string key(trim(line.substr(0, eq)));
    const std::string value(trim(line.substr(eq + 1)));
    if (key.empty() || value.empty()) {
      config_error("line " + std::to_string(line_no) + ": empty key or value");
    }
    if (std::find(kKnownKeys.begin(), kKnownKeys.end(), key) == kKnownKeys.end()) {
      config_error("line " + std::to_string(line_no) + ": unknown key '" + key + "'");
    }
    if (const auto it = config.find(key); it != config.end()) {
      config_error("line " + std::to_string(line_no) + ": duplicate key '" + key +
                   "', first set on line " + std::to_string(it->second.line));
    }
    config.emplace(key, ConfigEntry{value, line_no});
  }
  return config;
}

PresetDefaults preset_defaults(std::string_view preset) {
  if (preset == "lemniscate") return {0.1, 0.2, 0.004, "lemniscate-quadratic"};
  if (preset == "hypotrochoid") return {0.005, 0.5, 1e-2, "constant:1"};
  return {};
}

ResolvedRun resolve_config(const ConfigMap& config, const std::filesystem::path& base_dir,
                           const char* env_out_dir) {
  auto find = [&](std::string_view key) -> const ConfigEntry* {
    const auto it = config.find(key);
    return it == config.end() ? nullptr : &it->second;
  };
  auto require = [&](std::string_view key) -> const ConfigEntry& {
    const ConfigEntry* e = find(key);
    if (!e) config_error("config is missing required key '" + std::string(key) + "'");
    return *e;
  };
  auto real_or = [&](std::string_view key, double fallback) {
    const ConfigEntry* e = find(key);
    return e ? parse_real(key, e->value) : fallback;
  };
  auto reject = [&](std::string_view key, const std::string& reason) {
    if (const ConfigEntry* e = find(key)) {
      config_error("key '" + std::string(key) + "'" + at_line(*e) + " " + reason);
    }
  };

  ResolvedRun out;
  RunConfig& cfg = out.run;

  cfg.vertices = parse_count("N", require("N").value);
  const std::string preset_name(require("preset").value);
  cfg.final_time = parse_real("T", require("T").value);
  const ConfigEntry* delta = find("delta");
  const ConfigEntry* steps = find("m_T");
  if (delta && steps) {
    config_error("keys 'delta'" + at_line(*delta) + " and 'm_T'" + at_line(*steps) +
                 " are mutually exclusive");
  }
  if (!delta && !steps) config_error("config is missing required key 'delta' or 'm_T'");
  if (!(cfg.final_time > 0.0)) config_error("T must be positive");

  if (const ConfigEntry* d = find("dimension")) {
    const std::size_t dim = parse_count("dimension", d->value);
    if (dim != 2 && dim != 3) config_error("dimension must be 2 or 3" + at_line(*d));
    cfg.dim = static_cast<int>(dim);
  }

  if (steps) {
    cfg.steps = parse_count("m_T", steps->value);
    if (cfg.steps < 1) config_error("m_T must be at least 1");
    cfg.scheme.delta = cfg.final_time / static_cast<double>(cfg.steps);
  } else {
    cfg.scheme.delta = parse_real("delta", delta->value);
    if (!(cfg.scheme.delta > 0.0)) config_error("delta must be positive");
    const double ratio = cfg.final_time / cfg.scheme.delta;
    if (ratio > 9007199254740992.0) config_error("T / delta is too large");
    cfg.steps = static_cast<std::size_t>(std::llround(ratio));
    if (cfg.steps < 1 || std::abs(cfg.scheme.delta * static_cast<double>(cfg.steps) -
                                  cfg.final_time) > 1e-12 * cfg.final_time) {
      config_error("T is not an integer multiple of delta");
    }
  }

  // Preset and its parameters.
  cfg.preset = preset_from_name(preset_name);
  const bool round = preset_name == "circle" || preset_name == "circle-nonequi";
  const bool hypo = preset_name == "hypotrochoid";
  const std::string not_for = "does not apply to preset '" + preset_name + "'";
  if (!round) reject("radius", not_for);
  if (!hypo) {
    for (const char* key : {"R_outer", "r_roll", "d_offset", "alpha"}) reject(key, not_for);
  }
  if (preset_name != "custom") reject("points_file", not_for);

  if (auto* c = std::get_if<CirclePreset>(&cfg.preset)) {
    c->radius = real_or("radius", c->radius);
  } else if (auto* c = std::get_if<CircleNonequiPreset>(&cfg.preset)) {
    c->radius = real_or("radius", c->radius);
  } else if (auto* h = std::get_if<HypotrochoidPreset>(&cfg.preset)) {
    h->outer_radius = real_or("R_outer", h->outer_radius);
    h->rolling_radius = real_or("r_roll", h->rolling_radius);
    h->offset = real_or("d_offset", h->offset);
    h->alpha = real_or("alpha", h->alpha);
  } else if (auto* custom = std::get_if<CustomNodalPreset>(&cfg.preset)) {
    std::filesystem::path points = require("points_file").value;
    if (points.is_relative()) points = base_dir / points;
    custom->coords = read_points(points, cfg.dim);
    out.points_file = points;
  }

  // Scheme and weights.
  const PresetDefaults defaults = preset_defaults(preset_name);
  const ConfigEntry* scheme = find("scheme");
  const std::string scheme_name = scheme ? scheme->value : "dirichlet";
  if (scheme_name == "dirichlet") {
    for (const char* key : {"lambda_tilde", "epsilon", "monitor"}) {
      reject(key, "only applies to the extended scheme");
    }
    cfg.scheme.variant = DirichletParams{real_or("lambda", defaults.lambda)};
  } else if (scheme_name == "extended") {
    reject("lambda", "only applies to the dirichlet scheme; use lambda_tilde");
    const ConfigEntry* monitor = find("monitor");
    cfg.scheme.variant =
        ExtendedParams{real_or("lambda_tilde", defaults.lambda_tilde),
                       real_or("epsilon", defaults.epsilon),
                       parse_monitor(monitor ? std::string_view(monitor->value) : defaults.monitor)};
  } else {
    config_error("scheme must be 'dirichlet' or 'extended', got '" + scheme_name + "'");
  }

  if (const ConfigEntry* s = find("record_stride")) {
    cfg.record_stride = parse_count("record_stride", s->value);
  }
  if (const ConfigEntry* r = find("reference")) {
    if (r->value == "circle") {
      cfg.reference = Reference::kCircle;
    } else if (r->value != "none") {
      config_error("reference must be 'none' or 'circle', got '" + r->value + "'");
    }
  }

  if (const ConfigEntry* o = find("out_dir")) {
    out.out_dir = o->value;
  } else if (env_out_dir && *env_out_dir) {
    out.out_dir = env_out_dir;
  } else {
    out.out_dir = "elastica-out";
  }

  validate(cfg);
  const CurveState x0 = sample_preset(cfg.preset, uniform_grid(cfg.vertices), cfg.dim);
  check_nondegenerate(x0);
  return out;
}

ResolvedRun load_config(const std::filesystem::path& path, const char* env_out_dir) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot read config file '" + path.string() + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return resolve_config(parse_config_text(text.str()), path.parent_path(), env_out_dir);
}

}  // namespace elastica::cli
