#pragma once

// Flat "key = value" run configuration files.
//
//   # lemniscate relaxation
//   preset = lemniscate
//   N = 100
//   delta = 1e-3
//   T = 100
//   lambda = 0.1
//
// '#' starts a comment. Keys are case-sensitive and may appear once.

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "elastica/flow.hpp"

namespace elastica::cli {

struct ConfigEntry {
  std::string value;
  std::size_t line = 0;
};

using ConfigMap = std::map<std::string, ConfigEntry, std::less<>>;

// Throws kConfig on malformed lines, unknown keys and duplicates.
ConfigMap parse_config_text(std::string_view text);

// Weights used when the config leaves them out, per preset.
struct PresetDefaults {
  double lambda = 0.5;
  double lambda_tilde = 0.5;
  double epsilon = 1e-2;
  std::string_view monitor = "constant:1";
};

PresetDefaults preset_defaults(std::string_view preset);

struct ResolvedRun {
  RunConfig run;
  std::filesystem::path out_dir;
  // Set for the custom preset.
  std::optional<std::filesystem::path> points_file;
};

// Applies defaults and cross-key checks. Relative points_file paths are taken
// relative to base_dir; out_dir falls back to env_out_dir, then to
// "elastica-out". Throws kConfig (or the more specific code of the failing
// component) for anything that makes the run ill-posed.
ResolvedRun resolve_config(const ConfigMap& config, const std::filesystem::path& base_dir,
                           const char* env_out_dir);

// Reads and resolves a config file; kIo if it cannot be read.
ResolvedRun load_config(const std::filesystem::path& path, const char* env_out_dir);

// Decimal with optional exponent; the whole string must be consumed.
double parse_real(std::string_view key, std::string_view text);
// Non-negative integer; exponent notation is accepted for integral values.
std::size_t parse_count(std::string_view key, std::string_view text);

Monitor parse_monitor(std::string_view text);

}  // namespace elastica::cli
