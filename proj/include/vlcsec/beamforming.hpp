#pragma once

#include <cstdint>
#include <optional>

#include "vlcsec/geometry.hpp"
#include "vlcsec/numerics.hpp"
#include "vlcsec/rates.hpp"

namespace vlcsec {

enum class Scheme : std::uint8_t { dt, cj, df, af };

const char* scheme_name(Scheme s);

// How a beamformer is chosen.
//   vertex:     exact maximizer of the design problem over its L1 polytope.
//   projection: null-space projection closed form (leading eigenvector).
enum class Design : std::uint8_t { vertex, projection };

struct Beamformer {
  Vector weights;
  Scheme scheme = Scheme::cj;
  // 1 for CJ/DF; A_bar for AF.
  double norm_budget = 1.0;
  // AF only: deterministic worst-case relay input amplitudes w.
  Vector amplitude_weights;

  // Budget used by the weights: ‖weights‖₁, or ‖diag(w)·weights‖₁ for AF.
  double budget_used() const;
  // Throws NullingError / DomainError when the type invariants fail.
  void validate(const ChannelGains& g) const;
};

// Maximizes (g_eᵀJ)² s.t. g1ᵀJ = g2ᵀJ = 0, ‖J‖₁ ≤ 1. Requires K ≥ 3.
Beamformer cj_vector(const ChannelGains& g, Design design = Design::vertex);

// Maximizes α(g1ᵀd)² + (1−α)(g2ᵀd)² s.t. g_eᵀd = 0, ‖d‖₁ ≤ 1. Requires K ≥ 3.
Beamformer df_vector(const ChannelGains& g, double alpha,
                     Design design = Design::vertex);

// w_i = h_{r,i}·A_γ + clip_sigma (unit noise standard deviation).
Vector af_surrogate_weights(const ChannelGains& g, const SchemeParams& p,
                            double amplitude, double clip_sigma);

struct AfContext {
  SchemeParams params;
  double amplitude = 1e7;
  double clip_sigma = 3.0;
  Design design = Design::vertex;
};

// Maximizes (g_jᵀdiag(h_r)a)² − λ(1 + (g_jᵀa)²) over the eve-nulled AF
// polytope. `user` is 1 or 2. Requires K ≥ 2.
Beamformer af_vector_user(const ChannelGains& g, int user, double lambda,
                          const AfContext& ctx);

// Value of the auxiliary objective at `a` for user j.
double af_auxiliary(const ChannelGains& g, int user, double lambda,
                    std::span<const double> a);
// (g_jᵀdiag(h_r)a)² / (1 + (g_jᵀa)²)
double af_ratio(const ChannelGains& g, int user, std::span<const double> a);

struct DinkelbachResult {
  double lambda = 0.0;
  Beamformer beamformer;
  int iterations = 0;
};

// Root λ* of p_j(λ) = max_a auxiliary(λ). Bisection runs on λ/p_j(0), so
// `tol` bounds |p_j(λ*)| relative to p_j(0).
DinkelbachResult af_dinkelbach(const ChannelGains& g, int user,
                               const AfContext& ctx, double tol = 1e-8);

struct AfMode {
  // Empty: Dinkelbach. Otherwise the fixed λ for both users.
  std::optional<double> fixed_lambda;
};

struct AfVectorResult {
  Beamformer beamformer;
  int iterations = 0;  // Dinkelbach iterations summed over both users
};

// a* = α·a⁽¹⁾ + (1−α)·a⁽²⁾
Beamformer af_combine(const Beamformer& a1, const Beamformer& a2, double alpha);
AfVectorResult af_vector(const ChannelGains& g, double alpha,
                         const AfContext& ctx, const AfMode& mode = {});

}  // namespace vlcsec
