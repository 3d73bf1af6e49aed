#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "vlcsec/geometry.hpp"

namespace vlcsec {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct SoundnessOptions {
  std::uint64_t seed = 1;
  std::size_t samples = 10000;
  double gamma = 0.5;  // power split used by the CJ, DF and AF checks
};

// Oracle checks on one scenario: closed-form rates lower-bound exact mutual
// information, beamformers beat random feasible search, Dinkelbach converges.
std::vector<CheckResult> run_soundness_suite(const Scenario& scenario,
                                             const SoundnessOptions& options = {});

}  // namespace vlcsec
