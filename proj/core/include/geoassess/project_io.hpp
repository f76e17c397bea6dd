#pragma once

// Project, calibration and tornado-range files (JSON).
//
// A project file holds the keys `name`, `site`, `plant`, `costs`,
// `automation`, `assumptions` and optionally `uncertainty` and `emissions`.
// Unknown keys are rejected with their location. Units: USD, MW, MWh, °C, km,
// fractions as decimals.

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "geoassess/scenarios.hpp"
#include "geoassess/uncertainty.hpp"

namespace geoassess {

struct ProjectFile {
  ProjectConfig config;
  std::optional<UncertaintySpec> uncertainty;

  bool operator==(const ProjectFile&) const = default;
};

/// Parses and validates a project document. `source` names it in parse errors.
/// Throws ParseError (with line and column) or ConfigError (naming the key).
ProjectFile parse_project(std::string_view text, Diagnostics& diag,
                          const std::string& source = "<input>");

ProjectFile load_project_file(const std::filesystem::path& path, Diagnostics& diag);

ProjectConfig load_project(const std::filesystem::path& path, Diagnostics& diag);

/// Pretty-printed document that parses back to an equal ProjectFile.
std::string serialize_project(const ProjectFile& file);
std::string serialize_project(const ProjectConfig& config);

/// Calibration file: {"parameters": {path: distribution, ...}, "samples": N, "seed": S}.
/// `samples` and `seed` are optional and default to those of `base`.
UncertaintySpec parse_calibration(std::string_view text, const UncertaintySpec& base = {},
                                  const std::string& source = "<input>");
UncertaintySpec load_calibration(const std::filesystem::path& path,
                                 const UncertaintySpec& base = {});

/// Ranges file: {"ranges": {path: [low, high] | {"low":…, "high":…, "scale":"relative"}}}.
std::map<std::string, ParameterRange> parse_ranges(std::string_view text,
                                                   const std::string& source = "<input>");
std::map<std::string, ParameterRange> load_ranges(const std::filesystem::path& path);

std::string read_text_file(const std::filesystem::path& path);

}  // namespace geoassess
