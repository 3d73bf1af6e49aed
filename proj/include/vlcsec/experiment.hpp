#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "vlcsec/region.hpp"

namespace vlcsec {

enum class ExperimentKind : std::uint8_t {
  region,                   // sweep values are μ
  sumrate_vs_eve_y,         // eavesdropper y coordinate
  sumrate_vs_snr,           // strong-user SNR 20·log10(h1·A) in dB
  sumrate_vs_relay_center,  // offset c_y added to every relay's y
  sumrate_vs_relay_count,   // K relays on a square of half side ℓ
};

// Order in which the square's perimeter points are added after its center.
enum class RelayLayout : std::uint8_t { corners_first, sides_first };

enum class RateUnit : std::uint8_t { nats, bits };

struct ExperimentConfig {
  std::filesystem::path scenario_path;
  Scenario scenario;
  std::vector<Scheme> schemes;
  ExperimentKind kind = ExperimentKind::region;
  std::vector<double> sweep;
  RelayLayout layout = RelayLayout::corners_first;
  double half_side = 0.1;  // ℓ
  GridSpec grid;
  AfMode af_mode;
  RateUnit unit = RateUnit::nats;
  std::uint64_t seed = 1;
  std::filesystem::path output;  // empty: stdout
  int threads = 1;

  // Throws ConfigError on an empty scheme list, bad sweep values or grid.
  void validate() const;
};

// Config grammar (same key/value syntax as scenarios):
//   [experiment] scenario, kind, schemes, unit, af_mode, seed, output
//   [sweep]      values = v1 v2 ... | range = start stop step; layout; half_side
//   [grid]       alpha_steps, gamma_steps, refine_rounds, refine_shrink
// Relative paths resolve against `base_dir`.
ExperimentConfig parse_config(std::string_view text, std::string_view origin,
                              const std::filesystem::path& base_dir);
ExperimentConfig load_config(const std::filesystem::path& path);

Scheme parse_scheme(std::string_view name);
ExperimentKind parse_kind(std::string_view name);
const char* kind_name(ExperimentKind kind);
// "dinkelbach" or "lambda=<real>".
AfMode parse_af_mode(std::string_view text);

// The five-relay cross of the relay-center sweep uses the scenario's relays;
// the count sweep replaces them with center + perimeter points at z = 2.
Scenario relay_count_scenario(const Scenario& base, int count, RelayLayout layout,
                              double half_side);

inline constexpr std::string_view kCsvVersionLine = "# vlc-secrecy csv v1";
inline constexpr std::string_view kCsvHeader =
    "scheme,mu,alpha,gamma,r1s,r2s,objective,unit,flags";

// Runs the sweep and returns the CSV text (version line, header, rows).
// Scenario evaluated at one sweep coordinate (unchanged for region sweeps).
Scenario sweep_scenario(const ExperimentConfig& config, double value);

struct ExperimentRow {
  double coordinate = 0.0;  // sweep value; μ for region sweeps
  RegionPoint point;
};

// Rows in output order: schemes as listed, then sweep values as configured
// (region sweeps sort μ).
std::vector<ExperimentRow> run_experiment_rows(const ExperimentConfig& config);
std::string format_csv(const ExperimentConfig& config, const std::vector<ExperimentRow>& rows);
std::string run_experiment(const ExperimentConfig& config);

}  // namespace vlcsec
