#include "vlcsec/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <numbers>
#include <set>

#include "vlcsec/errors.hpp"
#include "vlcsec/io.hpp"

namespace vlcsec {

namespace {

constexpr double kRelayHeight = 2.0;
constexpr int kMaxLayoutRelays = 9;

std::string lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::vector<std::string> split_list(std::string_view s) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : s) {
    if (ch == ' ' || ch == ',' || ch == '\t') {
      if (!cur.empty()) out.push_back(std::move(cur));
      cur.clear();
    } else {
      cur += ch;
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

[[noreturn]] void fail(std::string_view origin, const KeyValue& kv, const std::string& msg) {
  throw ConfigError(std::string(origin) + ":" + std::to_string(kv.line) + ": " + msg);
}

std::vector<double> expand_range(const KeyValue& kv, std::string_view origin) {
  const std::vector<double> r = parse_reals(kv, origin);
  if (r.size() != 3) fail(origin, kv, "range expects 'start stop step'");
  const double start = r[0];
  const double stop = r[1];
  const double step = r[2];
  if (!(step > 0.0) || !(stop >= start)) fail(origin, kv, "range needs step > 0 and stop >= start");
  const double span = (stop - start) / step;
  const long long n = std::llround(std::floor(span + 1e-9)) + 1;
  if (n > 100000) fail(origin, kv, "range has too many points");
  std::vector<double> out;
  for (long long i = 0; i < n; ++i) {
    // Snap to 12 significant digits so 0.1-steps print as 0.3, not 0.30000000000000004.
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", start + static_cast<double>(i) * step);
    out.push_back(std::strtod(buf, nullptr));
  }
  if (std::abs(out.back() - stop) <= 1e-9 * std::max(1.0, std::abs(stop))) out.back() = stop;
  return out;
}

std::string coordinate_flag(ExperimentKind kind, double value) {
  switch (kind) {
    case ExperimentKind::region: return {};
    case ExperimentKind::sumrate_vs_eve_y: return "eve_y=" + format_real(value);
    case ExperimentKind::sumrate_vs_snr: return "snr_db=" + format_real(value);
    case ExperimentKind::sumrate_vs_relay_center: return "relay_cy=" + format_real(value);
    case ExperimentKind::sumrate_vs_relay_count:
      return "relays=" + std::to_string(static_cast<int>(value));
  }
  return {};
}

Scenario variant(const ExperimentConfig& c, double value) {
  Scenario s = c.scenario;
  switch (c.kind) {
    case ExperimentKind::region:
      break;
    case ExperimentKind::sumrate_vs_eve_y:
      s.eavesdropper.y = value;
      break;
    case ExperimentKind::sumrate_vs_snr:
      s.amplitude = std::pow(10.0, value / 20.0) / build_gains(s).h1;
      break;
    case ExperimentKind::sumrate_vs_relay_center:
      for (Point3& r : s.relays) r.y += value;
      break;
    case ExperimentKind::sumrate_vs_relay_count:
      s = relay_count_scenario(s, static_cast<int>(value), c.layout, c.half_side);
      break;
  }
  validate(s);
  return s;
}

std::string csv_row(const RegionPoint& p, RateUnit unit, const std::string& extra_flag) {
  const double k = unit == RateUnit::bits ? 1.0 / std::numbers::ln2 : 1.0;
  std::string flags = p.flags.to_string();
  if (!extra_flag.empty()) flags = flags.empty() ? extra_flag : extra_flag + ";" + flags;
  std::string row = scheme_name(p.scheme);
  for (double x : {p.mu, p.alpha, p.gamma, p.rates.r1s * k, p.rates.r2s * k, p.objective * k}) {
    row += ',';
    row += format_real(x);
  }
  row += unit == RateUnit::bits ? ",bits," : ",nats,";
  row += flags;
  row += '\n';
  return row;
}

}  // namespace

Scheme parse_scheme(std::string_view name) {
  const std::string n = lower(name);
  if (n == "dt") return Scheme::dt;
  if (n == "cj") return Scheme::cj;
  if (n == "df") return Scheme::df;
  if (n == "af") return Scheme::af;
  throw ConfigError("unknown scheme '" + std::string(name) + "' (expected DT, CJ, DF or AF)");
}

ExperimentKind parse_kind(std::string_view name) {
  for (ExperimentKind k : {ExperimentKind::region, ExperimentKind::sumrate_vs_eve_y,
                           ExperimentKind::sumrate_vs_snr, ExperimentKind::sumrate_vs_relay_center,
                           ExperimentKind::sumrate_vs_relay_count}) {
    if (name == kind_name(k)) return k;
  }
  throw ConfigError("unknown experiment kind '" + std::string(name) + "'");
}

const char* kind_name(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::region: return "region";
    case ExperimentKind::sumrate_vs_eve_y: return "sumrate_vs_eve_y";
    case ExperimentKind::sumrate_vs_snr: return "sumrate_vs_snr";
    case ExperimentKind::sumrate_vs_relay_center: return "sumrate_vs_relay_center";
    case ExperimentKind::sumrate_vs_relay_count: return "sumrate_vs_relay_count";
  }
  return "?";
}

AfMode parse_af_mode(std::string_view text) {
  if (text == "dinkelbach") return {};
  constexpr std::string_view prefix = "lambda=";
  if (text.substr(0, prefix.size()) == prefix) {
    const KeyValue kv{"", "af_mode", std::string(text.substr(prefix.size())), 0};
    double v = 0.0;
    try {
      v = parse_real(kv, "af_mode");
    } catch (const ConfigError&) {
      throw ConfigError("af_mode: bad lambda in '" + std::string(text) + "'");
    }
    if (!(v >= 0.0) || !std::isfinite(v)) throw ConfigError("af_mode: lambda must be finite and >= 0");
    return {v};
  }
  throw ConfigError("af_mode must be 'dinkelbach' or 'lambda=<value>', got '" + std::string(text) + "'");
}

Scenario relay_count_scenario(const Scenario& base, int count, RelayLayout layout,
                              double half_side) {
  if (count < 1 || count > kMaxLayoutRelays) {
    throw ConfigError("relay count must lie in [1, " + std::to_string(kMaxLayoutRelays) + "]");
  }
  if (!(half_side > 0.0)) throw ConfigError("half_side must be > 0");
  const double l = half_side;
  const std::vector<Point3> corners{{l, l, kRelayHeight}, {-l, l, kRelayHeight},
                                    {l, -l, kRelayHeight}, {-l, -l, kRelayHeight}};
  const std::vector<Point3> sides{{l, 0.0, kRelayHeight}, {0.0, l, kRelayHeight},
                                  {-l, 0.0, kRelayHeight}, {0.0, -l, kRelayHeight}};
  std::vector<Point3> order{{0.0, 0.0, kRelayHeight}};
  const auto& first = layout == RelayLayout::corners_first ? corners : sides;
  const auto& second = layout == RelayLayout::corners_first ? sides : corners;
  order.insert(order.end(), first.begin(), first.end());
  order.insert(order.end(), second.begin(), second.end());
  Scenario s = base;
  s.relays.assign(order.begin(), order.begin() + count);
  return s;
}

void ExperimentConfig::validate() const {
  if (schemes.empty()) throw ConfigError("at least one scheme is required");
  std::set<Scheme> uniq(schemes.begin(), schemes.end());
  if (uniq.size() != schemes.size()) throw ConfigError("schemes must not repeat");
  if (sweep.empty()) throw ConfigError("sweep needs at least one value");
  grid.validate();
  if (threads < 1) throw ConfigError("threads must be >= 1");
  for (double v : sweep) {
    if (!std::isfinite(v)) throw ConfigError("sweep values must be finite");
    switch (kind) {
      case ExperimentKind::region:
        if (v < 0.0 || v > 1.0) throw ConfigError("region mu values must lie in [0, 1]");
        break;
      case ExperimentKind::sumrate_vs_relay_count:
        if (v != std::floor(v) || v < 1 || v > kMaxLayoutRelays) {
          throw ConfigError("relay counts must be integers in [1, 9]");
        }
        break;
      default:
        break;
    }
  }
  if (kind == ExperimentKind::sumrate_vs_relay_count && !(half_side > 0.0)) {
    throw ConfigError("half_side must be > 0");
  }
  for (double v : sweep) {
    try {
      (void)variant(*this, v);
    } catch (const ConfigError& e) {
      throw ConfigError("sweep value " + format_real(v) + ": " + e.what());
    }
  }
}

ExperimentConfig parse_config(std::string_view text, std::string_view origin,
                              const std::filesystem::path& base_dir) {
  ExperimentConfig c;
  bool have_scenario = false;
  bool have_kind = false;
  bool have_sweep = false;
  std::map<std::string, int> seen;
  for (const KeyValue& kv : parse_key_values(text, origin)) {
    const std::string id = kv.section + "." + kv.key;
    if (seen.count(id)) fail(origin, kv, "duplicate '" + kv.key + "' in [" + kv.section + "]");
    seen.emplace(id, kv.line);
    try {
      if (id == "experiment.scenario") {
        c.scenario_path = base_dir / kv.value;
        have_scenario = true;
      } else if (id == "experiment.kind") {
        c.kind = parse_kind(kv.value);
        have_kind = true;
      } else if (id == "experiment.schemes") {
        for (const std::string& tok : split_list(kv.value)) {
          c.schemes.push_back(parse_scheme(tok));
        }
      } else if (id == "experiment.unit") {
        if (kv.value == "nats") {
          c.unit = RateUnit::nats;
        } else if (kv.value == "bits") {
          c.unit = RateUnit::bits;
        } else {
          fail(origin, kv, "unit must be 'nats' or 'bits'");
        }
      } else if (id == "experiment.af_mode") {
        c.af_mode = parse_af_mode(kv.value);
      } else if (id == "experiment.seed") {
        const long long s = parse_integer(kv, origin);
        if (s < 0) fail(origin, kv, "seed must be >= 0");
        c.seed = static_cast<std::uint64_t>(s);
      } else if (id == "experiment.output") {
        c.output = base_dir / kv.value;
      } else if (id == "sweep.values" || id == "sweep.range") {
        if (have_sweep) fail(origin, kv, "give either 'values' or 'range', not both");
        c.sweep = kv.key == "values" ? parse_reals(kv, origin) : expand_range(kv, origin);
        have_sweep = true;
      } else if (id == "sweep.layout") {
        if (kv.value == "corners_first") {
          c.layout = RelayLayout::corners_first;
        } else if (kv.value == "sides_first") {
          c.layout = RelayLayout::sides_first;
        } else {
          fail(origin, kv, "layout must be 'corners_first' or 'sides_first'");
        }
      } else if (id == "sweep.half_side") {
        c.half_side = parse_real(kv, origin);
      } else if (id == "grid.alpha_steps") {
        c.grid.alpha_steps = static_cast<int>(parse_integer(kv, origin));
      } else if (id == "grid.gamma_steps") {
        c.grid.gamma_steps = static_cast<int>(parse_integer(kv, origin));
      } else if (id == "grid.refine_rounds") {
        c.grid.refine_rounds = static_cast<int>(parse_integer(kv, origin));
      } else if (id == "grid.refine_shrink") {
        c.grid.refine_shrink = parse_real(kv, origin);
      } else {
        fail(origin, kv, "unknown field '" + kv.key + "' in [" + kv.section + "]");
      }
    } catch (const ConfigError& e) {
      const std::string msg = e.what();
      if (msg.rfind(std::string(origin) + ":", 0) == 0) throw;
      fail(origin, kv, msg);
    }
  }
  if (!have_scenario) throw ConfigError(std::string(origin) + ": [experiment] 'scenario' is required");
  if (!have_kind) throw ConfigError(std::string(origin) + ": [experiment] 'kind' is required");
  if (!have_sweep) throw ConfigError(std::string(origin) + ": [sweep] needs 'values' or 'range'");
  c.scenario = load_scenario(c.scenario_path);
  try {
    c.validate();
  } catch (const ConfigError& e) {
    throw ConfigError(std::string(origin) + ": " + e.what());
  }
  return c;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  return parse_config(read_text_file(path), path.string(), path.parent_path());
}

Scenario sweep_scenario(const ExperimentConfig& config, double value) {
  return variant(config, value);
}

std::vector<ExperimentRow> run_experiment_rows(const ExperimentConfig& config) {
  config.validate();
  RegionOptions opt;
  opt.grid = config.grid;
  opt.af_mode = config.af_mode;
  opt.threads = config.threads;

  std::vector<ExperimentRow> rows;
  for (Scheme scheme : config.schemes) {
    if (config.kind == ExperimentKind::region) {
      for (const RegionPoint& p : boundary_sweep(scheme, config.scenario, config.sweep, opt)) {
        rows.push_back({p.mu, p});
      }
      continue;
    }
    for (double v : config.sweep) rows.push_back({v, sum_rate(scheme, variant(config, v), opt)});
  }
  return rows;
}

std::string format_csv(const ExperimentConfig& config, const std::vector<ExperimentRow>& rows) {
  std::string out;
  out += kCsvVersionLine;
  out += '\n';
  out += kCsvHeader;
  out += '\n';
  for (const ExperimentRow& r : rows) {
    out += csv_row(r.point, config.unit, coordinate_flag(config.kind, r.coordinate));
  }
  return out;
}

std::string run_experiment(const ExperimentConfig& config) {
  return format_csv(config, run_experiment_rows(config));
}

}  // namespace vlcsec
