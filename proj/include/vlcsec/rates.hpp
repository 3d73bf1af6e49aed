#pragma once

#include <numbers>
#include <span>

#include "vlcsec/geometry.hpp"

namespace vlcsec {

// 2/(πe): EPI constant for a uniform input.
inline constexpr double kEpiUniform = 2.0 / (std::numbers::pi * std::numbers::e);
// 1/3: variance of a uniform input on [−1, 1].
inline constexpr double kUniformVariance = 1.0 / 3.0;
// Jamming helps user j iff h_e²·(...)·A_γ² exceeds this (≈ 1.27).
inline constexpr double kJamThreshold =
    std::numbers::pi * std::numbers::e / 2.0 - 3.0;

// Superposition weight α and relay power-split fraction γ.
struct SchemeParams {
  double alpha = 0.5;
  double gamma = 0.0;

  // Throws DomainError outside [0, 1].
  void validate() const;
  // A_γ = √(1−γ²)·A, the source's share of the amplitude budget.
  double source_amplitude(double amplitude) const;
  // Ā = γ·A, the relays' share.
  double relay_amplitude(double amplitude) const;
};

// Secrecy rates in nats per channel use.
struct RatePair {
  double r1s = 0.0;
  double r2s = 0.0;
};

struct UserFlags {
  bool user1 = false;
  bool user2 = false;
};

// |vᵀx| / Σ|v_i x_i|, or 0 when the denominator vanishes. Scale-free measure
// of how well x nulls v.
double nulling_residual(std::span<const double> v, std::span<const double> x);
inline constexpr double kNullingTolerance = 1e-9;
inline constexpr double kNormTolerance = 1e-12;

RatePair dt_rates(const ChannelGains& g, double alpha, double amplitude);
UserFlags dt_positivity(const ChannelGains& g, double alpha, double amplitude);

// Requires ‖J‖₁ ≤ 1 and g1ᵀJ = g2ᵀJ = 0 (NullingError otherwise).
RatePair cj_rates(const ChannelGains& g, const SchemeParams& p,
                  double amplitude, std::span<const double> jam);
UserFlags cj_monotonicity(const ChannelGains& g, const SchemeParams& p,
                          double amplitude);

// Requires K ≥ 1, ‖d‖₁ ≤ 1 and g_eᵀd = 0.
RatePair df_rates(const ChannelGains& g, const SchemeParams& p,
                  double amplitude, std::span<const double> d);

// κ_j² = h_j² + (g_jᵀdiag(h_r)a)² / (1 + (g_jᵀa)²)
struct KappaSq {
  double user1 = 0.0;
  double user2 = 0.0;
};
KappaSq af_kappa(const ChannelGains& g, std::span<const double> a);

// Requires g_eᵀdiag(h_r)a = 0.
RatePair af_rates(const ChannelGains& g, const SchemeParams& p,
                  double amplitude, std::span<const double> a);

}  // namespace vlcsec
