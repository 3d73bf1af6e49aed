#pragma once

#include <vector>

namespace vlcsec {

struct Point3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  friend bool operator==(const Point3&, const Point3&) = default;
};

double distance(const Point3& a, const Point3& b);
bool is_finite(const Point3& p);

struct OpticalParams {
  double detector_area = 1e-4;  // m^2
  double half_angle_deg = 60.0;

  // Lambertian order m derived from the half-power semi-angle.
  double lambertian_order() const;
};

struct Scenario {
  Point3 source{0.0, 0.0, 3.0};
  Point3 user_a;
  Point3 user_b;
  Point3 eavesdropper;
  std::vector<Point3> relays;
  OpticalParams optics;
  double amplitude = 1e7;         // peak-amplitude budget A
  double noise_clip_sigma = 3.0;  // AF amplitude surrogate clip factor

  std::size_t relay_count() const { return relays.size(); }
};

// Throws ConfigError naming the first violated invariant.
void validate(const Scenario& scenario);

// All gains are dimensionless and >= 0. User 1 is always the strong user
// (h1 >= h2); `swapped` records that user_b of the scenario became user 1.
struct ChannelGains {
  double h1 = 0.0;
  double h2 = 0.0;
  double he = 0.0;
  std::vector<double> hr;
  std::vector<double> g1;
  std::vector<double> g2;
  std::vector<double> ge;
  bool swapped = false;

  std::size_t relay_count() const { return hr.size(); }
};

double lambertian_order(double half_angle_deg);

// Line-of-sight gain of a downward-facing Lambertian emitter at `tx` seen by a
// detector at `rx`. No field-of-view cutoff is modeled.
double channel_gain(const Point3& tx, const Point3& rx,
                    const OpticalParams& optics);

ChannelGains build_gains(const Scenario& scenario);

}  // namespace vlcsec
