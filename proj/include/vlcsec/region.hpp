#pragma once

#include <string>
#include <vector>

#include "vlcsec/beamforming.hpp"
#include "vlcsec/geometry.hpp"
#include "vlcsec/rates.hpp"

namespace vlcsec {

struct GridSpec {
  int alpha_steps = 101;
  int gamma_steps = 101;
  int refine_rounds = 2;
  double refine_shrink = 0.2;

  // Throws ConfigError on steps < 2, rounds < 0 or shrink outside (0, 1).
  void validate() const;
};

struct PointFlags {
  bool cj_mono1 = false;
  bool cj_mono2 = false;
  bool null_fallback = false;
  int dinkelbach_iters = -1;  // < 0: not applicable

  // Tokens joined by ';', e.g. "cj_mono1;dinkelbach_iters=27".
  std::string to_string() const;
};

struct Evaluation {
  RatePair rates;
  double objective = 0.0;
  PointFlags flags;
};

struct RegionPoint {
  Scheme scheme = Scheme::dt;
  double mu = 0.5;
  double alpha = 0.0;
  double gamma = 0.0;
  RatePair rates;
  double objective = 0.0;
  PointFlags flags;
};

struct RegionOptions {
  GridSpec grid;
  Design design = Design::vertex;
  AfMode af_mode;
  int threads = 1;
};

// μ·r1 + (1−μ)·r2 at one (α, γ). DT ignores γ.
Evaluation objective_eval(Scheme scheme, const Scenario& scenario, double mu,
                          double alpha, double gamma,
                          const RegionOptions& options = {});

// Grid over α ∈ [0,1] and γ = sin θ, θ ∈ [0, π/2] uniform, followed by
// shrinking local refinements. Ties go to the smaller α, then smaller γ.
RegionPoint optimize_point(Scheme scheme, const Scenario& scenario, double mu,
                           const RegionOptions& options = {});

// One optimize_point per μ, ordered by μ.
std::vector<RegionPoint> boundary_sweep(Scheme scheme, const Scenario& scenario,
                                        std::vector<double> mu_list,
                                        const RegionOptions& options = {});

RegionPoint sum_rate(Scheme scheme, const Scenario& scenario,
                     const RegionOptions& options = {});

}  // namespace vlcsec
