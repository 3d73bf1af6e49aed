#include "vlcsec/io.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

#include "vlcsec/errors.hpp"

namespace vlcsec {

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

[[noreturn]] void fail(std::string_view origin, int line, const std::string& msg) {
  throw ConfigError(std::string(origin) + ":" + std::to_string(line) + ": " + msg);
}

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == ',')) ++i;
    const std::size_t b = i;
    while (i < s.size() && s[i] != ' ' && s[i] != '\t' && s[i] != ',') ++i;
    if (i > b) out.push_back(s.substr(b, i - b));
  }
  return out;
}

bool to_real(std::string_view tok, double& out) {
  if (!tok.empty() && tok.front() == '+') tok.remove_prefix(1);
  const auto* end = tok.data() + tok.size();
  const auto r = std::from_chars(tok.data(), end, out);
  return r.ec == std::errc() && r.ptr == end;
}

}  // namespace

std::vector<KeyValue> parse_key_values(std::string_view text, std::string_view origin) {
  std::vector<KeyValue> out;
  std::string section;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? text.size() - pos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') fail(origin, line_no, "unterminated section header");
      section = std::string(trim(line.substr(1, line.size() - 2)));
      if (section.empty()) fail(origin, line_no, "empty section name");
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) fail(origin, line_no, "expected 'key = value'");
    const std::string_view key = trim(line.substr(0, eq));
    if (key.empty()) fail(origin, line_no, "missing key");
    if (section.empty()) fail(origin, line_no, "entry '" + std::string(key) + "' outside any section");
    out.push_back({section, std::string(key), std::string(trim(line.substr(eq + 1))), line_no});
  }
  return out;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

double parse_real(const KeyValue& kv, std::string_view origin) {
  double v = 0.0;
  if (!to_real(kv.value, v)) fail(origin, kv.line, "'" + kv.key + "' expects a real number, got '" + kv.value + "'");
  return v;
}

long long parse_integer(const KeyValue& kv, std::string_view origin) {
  long long v = 0;
  const std::string_view s = kv.value;
  const auto r = std::from_chars(s.data(), s.data() + s.size(), v);
  if (r.ec != std::errc() || r.ptr != s.data() + s.size()) {
    fail(origin, kv.line, "'" + kv.key + "' expects an integer, got '" + kv.value + "'");
  }
  return v;
}

std::vector<double> parse_reals(const KeyValue& kv, std::string_view origin) {
  std::vector<double> out;
  for (std::string_view tok : split_ws(kv.value)) {
    double v = 0.0;
    if (!to_real(tok, v)) fail(origin, kv.line, "'" + kv.key + "': bad number '" + std::string(tok) + "'");
    out.push_back(v);
  }
  return out;
}

Point3 parse_point(const KeyValue& kv, std::string_view origin) {
  const std::vector<double> v = parse_reals(kv, origin);
  if (v.size() != 3) fail(origin, kv.line, "'" + kv.key + "' expects three coordinates 'x y z'");
  return {v[0], v[1], v[2]};
}

Scenario parse_scenario(std::string_view text, std::string_view origin) {
  Scenario s;
  bool have_a = false;
  bool have_b = false;
  bool have_eve = false;
  std::map<std::string, int> seen;
  for (const KeyValue& kv : parse_key_values(text, origin)) {
    const std::string id = kv.section + "." + kv.key;
    if (id != "relays.relay" && seen.count(id)) {
      fail(origin, kv.line, "duplicate '" + kv.key + "' in [" + kv.section + "] (first on line " +
                                std::to_string(seen[id]) + ")");
    }
    seen.emplace(id, kv.line);
    if (id == "source.position") {
      s.source = parse_point(kv, origin);
    } else if (id == "users.a") {
      s.user_a = parse_point(kv, origin);
      have_a = true;
    } else if (id == "users.b") {
      s.user_b = parse_point(kv, origin);
      have_b = true;
    } else if (id == "eavesdropper.position") {
      s.eavesdropper = parse_point(kv, origin);
      have_eve = true;
    } else if (id == "relays.relay") {
      s.relays.push_back(parse_point(kv, origin));
    } else if (id == "optics.detector_area") {
      s.optics.detector_area = parse_real(kv, origin);
    } else if (id == "optics.half_angle_deg") {
      s.optics.half_angle_deg = parse_real(kv, origin);
    } else if (id == "budget.amplitude") {
      s.amplitude = parse_real(kv, origin);
    } else if (id == "budget.noise_clip_sigma") {
      s.noise_clip_sigma = parse_real(kv, origin);
    } else {
      fail(origin, kv.line, "unknown field '" + kv.key + "' in [" + kv.section + "]");
    }
  }
  if (!have_a || !have_b) throw ConfigError(std::string(origin) + ": [users] needs both 'a' and 'b'");
  if (!have_eve) throw ConfigError(std::string(origin) + ": [eavesdropper] 'position' is required");
  try {
    validate(s);
  } catch (const ConfigError& e) {
    throw ConfigError(std::string(origin) + ": invariant violated: " + e.what());
  }
  return s;
}

Scenario load_scenario(const std::filesystem::path& path) {
  return parse_scenario(read_text_file(path), path.string());
}

std::string format_real(double x) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, r.ptr);
}

std::string format_scenario(const Scenario& s) {
  auto pt = [](const Point3& p) {
    return format_real(p.x) + " " + format_real(p.y) + " " + format_real(p.z);
  };
  std::string out;
  out += "[source]\nposition = " + pt(s.source) + "\n\n";
  out += "[users]\na = " + pt(s.user_a) + "\nb = " + pt(s.user_b) + "\n\n";
  out += "[eavesdropper]\nposition = " + pt(s.eavesdropper) + "\n\n";
  out += "[relays]\n";
  for (const Point3& r : s.relays) out += "relay = " + pt(r) + "\n";
  out += "\n[optics]\ndetector_area = " + format_real(s.optics.detector_area) +
         "\nhalf_angle_deg = " + format_real(s.optics.half_angle_deg) + "\n\n";
  out += "[budget]\namplitude = " + format_real(s.amplitude) +
         "\nnoise_clip_sigma = " + format_real(s.noise_clip_sigma) + "\n";
  return out;
}

}  // namespace vlcsec
