#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "vlcsec/geometry.hpp"

namespace vlcsec::test {

// Room layout used throughout the numerical evaluation: 5×5×3 m room,
// source on the ceiling, five relays in a cross at z = 2.
inline Scenario default_scenario(double eve_y = 1.5) {
  Scenario s;
  s.source = {0.0, 0.0, 3.0};
  s.user_a = {0.75, 0.75, 0.7};
  s.user_b = {-1.25, 0.75, 0.7};
  s.eavesdropper = {0.0, eve_y, 0.7};
  s.relays = {{0.1, 0.1, 2.0}, {0.1, -0.1, 2.0}, {0.0, 0.0, 2.0}, {-0.1, 0.1, 2.0}, {-0.1, -0.1, 2.0}};
  return s;
}

// Users and eavesdropper uniform on the 5×5 floor plan at z = 0.7; five
// relays uniform in a 1×1 square at z = 2; A = 1e7.
inline Scenario random_scenario(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> floor(-2.5, 2.5);
  std::uniform_real_distribution<double> ceil(-0.5, 0.5);
  Scenario s;
  s.user_a = {floor(rng), floor(rng), 0.7};
  s.user_b = {floor(rng), floor(rng), 0.7};
  s.eavesdropper = {floor(rng), floor(rng), 0.7};
  for (int i = 0; i < 5; ++i) s.relays.push_back({ceil(rng), ceil(rng), 2.0});
  validate(s);
  return s;
}

inline bool rel_close(double a, double b, double rel, double abs_floor = 0.0) {
  return std::abs(a - b) <= std::max(rel * std::max(std::abs(a), std::abs(b)), abs_floor);
}

}  // namespace vlcsec::test
