#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "vlcsec/geometry.hpp"

namespace vlcsec {

// One `key = value` entry of a sectioned key/value file.
struct KeyValue {
  std::string section;
  std::string key;
  std::string value;
  int line = 0;
};

// Parses `[section]` headers and `key = value` lines; `#` starts a comment.
// Throws ConfigError("<origin>:<line>: ...") on malformed lines.
std::vector<KeyValue> parse_key_values(std::string_view text, std::string_view origin);

std::string read_text_file(const std::filesystem::path& path);

// Field helpers; errors name the origin, line and key.
double parse_real(const KeyValue& kv, std::string_view origin);
long long parse_integer(const KeyValue& kv, std::string_view origin);
std::vector<double> parse_reals(const KeyValue& kv, std::string_view origin);
Point3 parse_point(const KeyValue& kv, std::string_view origin);

// Scenario grammar:
//   [source]        position = x y z          (default 0 0 3)
//   [users]         a = x y z ; b = x y z     (required)
//   [eavesdropper]  position = x y z          (required)
//   [relays]        relay = x y z             (repeatable, in order)
//   [optics]        detector_area, half_angle_deg
//   [budget]        amplitude, noise_clip_sigma
// The parsed scenario is validated; violations raise ConfigError.
Scenario parse_scenario(std::string_view text, std::string_view origin = "<scenario>");
Scenario load_scenario(const std::filesystem::path& path);

// Canonical text form accepted by parse_scenario.
std::string format_scenario(const Scenario& scenario);

// Shortest round-trip decimal.
std::string format_real(double x);

}  // namespace vlcsec
