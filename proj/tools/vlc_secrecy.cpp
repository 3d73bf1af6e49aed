#include <CLI11.hpp>

#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

#include "vlcsec/errors.hpp"
#include "vlcsec/experiment.hpp"
#include "vlcsec/io.hpp"
#include "vlcsec/soundness.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

int threads_from_env() {
  const char* env = std::getenv("VLC_SECRECY_THREADS");
  if (env == nullptr || *env == '\0') return 1;
  const std::string s(env);
  int v = 0;
  const auto r = std::from_chars(s.data(), s.data() + s.size(), v);
  if (r.ec != std::errc() || r.ptr != s.data() + s.size() || v < 1) {
    throw vlcsec::ConfigError("VLC_SECRECY_THREADS must be a positive integer, got '" + s + "'");
  }
  return v;
}

void parse_grid(const std::string& text, vlcsec::GridSpec& grid) {
  const auto x = text.find('x');
  auto to_int = [&](std::string_view s) {
    int v = 0;
    const auto r = std::from_chars(s.data(), s.data() + s.size(), v);
    if (r.ec != std::errc() || r.ptr != s.data() + s.size()) {
      throw vlcsec::ConfigError("--grid expects AxG, e.g. 51x51, got '" + text + "'");
    }
    return v;
  };
  if (x == std::string::npos) throw vlcsec::ConfigError("--grid expects AxG, e.g. 51x51");
  grid.alpha_steps = to_int(std::string_view(text).substr(0, x));
  grid.gamma_steps = to_int(std::string_view(text).substr(x + 1));
}

void print_gains(const vlcsec::Scenario& s) {
  const vlcsec::ChannelGains g = vlcsec::build_gains(s);
  std::printf("scenario ok: %zu relays, A = %s\n", s.relay_count(),
              vlcsec::format_real(s.amplitude).c_str());
  std::printf("h1 = %.6e  h2 = %.6e  he = %.6e  swapped = %s\n", g.h1, g.h2, g.he,
              g.swapped ? "true" : "false");
  for (std::size_t i = 0; i < g.relay_count(); ++i) {
    std::printf("relay %zu: hr = %.6e  g1 = %.6e  g2 = %.6e  ge = %.6e\n", i + 1, g.hr[i],
                g.g1[i], g.g2[i], g.ge[i]);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Secrecy-rate regions for two-user VLC broadcast with trusted relays"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_path;
  std::string grid_text;
  std::string unit_text;
  std::string af_mode_text;
  long long seed = -1;
  int threads = 0;
  auto* run = app.add_subcommand("run", "Run an experiment config and emit CSV");
  run->add_option("--config", config_path, "Experiment config file")->required();
  run->add_option("--out", out_path, "Write CSV here instead of the config's output/stdout");
  run->add_option("--grid", grid_text, "Alpha x gamma grid steps, e.g. 51x51");
  run->add_option("--unit", unit_text, "nats or bits")->check(CLI::IsMember({"nats", "bits"}));
  run->add_option("--af-mode", af_mode_text, "dinkelbach or lambda=<value>");
  run->add_option("--seed", seed, "Seed (echoed; used by random-search oracles)");
  run->add_option("--threads", threads, "Worker threads (fallback: VLC_SECRECY_THREADS)");

  std::string scenario_path;
  auto* val = app.add_subcommand("validate", "Check a scenario file and print its gains");
  val->add_option("--scenario", scenario_path, "Scenario file")->required();

  std::string oracle_scenario;
  long long oracle_seed = 1;
  std::size_t samples = 10000;
  auto* orc = app.add_subcommand("oracle", "Run the oracle soundness suite on a scenario");
  orc->add_option("--scenario", oracle_scenario, "Scenario file")->required();
  orc->add_option("--seed", oracle_seed, "Random-search seed");
  orc->add_option("--samples", samples, "Random-search samples per check");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*run) {
      vlcsec::ExperimentConfig cfg = vlcsec::load_config(config_path);
      if (!grid_text.empty()) parse_grid(grid_text, cfg.grid);
      if (!unit_text.empty()) cfg.unit = unit_text == "bits" ? vlcsec::RateUnit::bits : vlcsec::RateUnit::nats;
      if (!af_mode_text.empty()) cfg.af_mode = vlcsec::parse_af_mode(af_mode_text);
      if (seed >= 0) cfg.seed = static_cast<std::uint64_t>(seed);
      cfg.threads = threads > 0 ? threads : threads_from_env();
      if (!out_path.empty()) cfg.output = out_path;
      const std::string csv = vlcsec::run_experiment(cfg);
      if (cfg.output.empty()) {
        std::fwrite(csv.data(), 1, csv.size(), stdout);
      } else {
        std::ofstream f(cfg.output, std::ios::binary);
        if (!f) throw vlcsec::ConfigError("cannot write '" + cfg.output.string() + "'");
        f << csv;
      }
      return kExitOk;
    }
    if (*val) {
      print_gains(vlcsec::load_scenario(scenario_path));
      return kExitOk;
    }
    if (*orc) {
      if (oracle_seed < 0) throw vlcsec::ConfigError("--seed must be >= 0");
      const vlcsec::Scenario s = vlcsec::load_scenario(oracle_scenario);
      vlcsec::SoundnessOptions opt;
      opt.seed = static_cast<std::uint64_t>(oracle_seed);
      opt.samples = samples;
      bool ok = true;
      for (const auto& c : vlcsec::run_soundness_suite(s, opt)) {
        std::printf("%s  %s  (%s)\n", c.passed ? "PASS" : "FAIL", c.name.c_str(), c.detail.c_str());
        ok = ok && c.passed;
      }
      return ok ? kExitOk : kExitNumerical;
    }
  } catch (const vlcsec::ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kExitConfig;
  } catch (const vlcsec::Error& e) {
    std::fprintf(stderr, "numerical error: %s\n", e.what());
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitNumerical;
  }
  return kExitOk;
}
