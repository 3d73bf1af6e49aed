#include "vlcsec/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <utility>

#include "vlcsec/errors.hpp"

namespace vlcsec {

double distance(const Point3& a, const Point3& b) {
  return std::hypot(a.x - b.x, a.y - b.y, a.z - b.z);
}

bool is_finite(const Point3& p) {
  return std::isfinite(p.x) && std::isfinite(p.y) && std::isfinite(p.z);
}

double lambertian_order(double half_angle_deg) {
  if (!(half_angle_deg > 0.0 && half_angle_deg < 90.0)) {
    throw DomainError("half-power semi-angle must lie in (0, 90) degrees, got " +
                      std::to_string(half_angle_deg));
  }
  const double rad = half_angle_deg * std::numbers::pi / 180.0;
  return -std::numbers::ln2 / std::log(std::cos(rad));
}

double OpticalParams::lambertian_order() const {
  return vlcsec::lambertian_order(half_angle_deg);
}

double channel_gain(const Point3& tx, const Point3& rx,
                    const OpticalParams& optics) {
  const double dx = tx.x - rx.x;
  const double dy = tx.y - rx.y;
  const double dz = tx.z - rx.z;
  const double l2 = dx * dx + dy * dy + dz * dz;
  if (l2 == 0.0) {
    throw GeometryError("channel gain undefined for coincident nodes");
  }
  if (dz == 0.0) return 0.0;
  const double m = optics.lambertian_order();
  const double l = std::sqrt(l2);
  return optics.detector_area * (m + 1.0) / (2.0 * std::numbers::pi * l2) *
         std::pow(std::abs(dz) / l, m + 1.0);
}

namespace {

struct NamedPoint {
  std::string name;
  Point3 p;
};

}  // namespace

void validate(const Scenario& s) {
  if (!(s.amplitude > 0.0) || !std::isfinite(s.amplitude)) {
    throw ConfigError("amplitude must be finite and > 0");
  }
  if (!(s.noise_clip_sigma >= 0.0) || !std::isfinite(s.noise_clip_sigma)) {
    throw ConfigError("noise_clip_sigma must be finite and >= 0");
  }
  if (!(s.optics.detector_area > 0.0) ||
      !std::isfinite(s.optics.detector_area)) {
    throw ConfigError("detector_area must be finite and > 0");
  }
  if (!(s.optics.half_angle_deg > 0.0 && s.optics.half_angle_deg < 90.0)) {
    throw ConfigError("half_angle_deg must lie in (0, 90)");
  }

  std::vector<NamedPoint> nodes{{"source", s.source},
                                {"user_a", s.user_a},
                                {"user_b", s.user_b},
                                {"eavesdropper", s.eavesdropper}};
  for (std::size_t i = 0; i < s.relays.size(); ++i) {
    nodes.push_back({"relay " + std::to_string(i + 1), s.relays[i]});
  }
  for (const auto& n : nodes) {
    if (!is_finite(n.p)) throw ConfigError(n.name + " has non-finite coordinates");
  }
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    for (std::size_t j = i + 1; j < nodes.size(); ++j) {
      if (nodes[i].p == nodes[j].p) {
        throw ConfigError(nodes[i].name + " and " + nodes[j].name +
                          " share a position");
      }
    }
  }

  const double floor_top =
      std::max({s.user_a.z, s.user_b.z, s.eavesdropper.z});
  if (!(s.source.z > floor_top)) {
    throw ConfigError("source must be strictly above users and eavesdropper");
  }
  for (std::size_t i = 0; i < s.relays.size(); ++i) {
    if (!(s.relays[i].z > floor_top)) {
      throw ConfigError("relay " + std::to_string(i + 1) +
                        " must be strictly above users and eavesdropper");
    }
  }
}

ChannelGains build_gains(const Scenario& s) {
  const auto& o = s.optics;
  ChannelGains g;
  const double ha = channel_gain(s.source, s.user_a, o);
  const double hb = channel_gain(s.source, s.user_b, o);
  g.swapped = hb > ha;
  const Point3& strong = g.swapped ? s.user_b : s.user_a;
  const Point3& weak = g.swapped ? s.user_a : s.user_b;
  g.h1 = g.swapped ? hb : ha;
  g.h2 = g.swapped ? ha : hb;
  g.he = channel_gain(s.source, s.eavesdropper, o);

  const std::size_t k = s.relays.size();
  g.hr.reserve(k);
  g.g1.reserve(k);
  g.g2.reserve(k);
  g.ge.reserve(k);
  for (const auto& r : s.relays) {
    g.hr.push_back(channel_gain(s.source, r, o));
    g.g1.push_back(channel_gain(r, strong, o));
    g.g2.push_back(channel_gain(r, weak, o));
    g.ge.push_back(channel_gain(r, s.eavesdropper, o));
  }
  return g;
}

}  // namespace vlcsec
