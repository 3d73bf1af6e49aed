#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "vlcsec/geometry.hpp"
#include "vlcsec/numerics.hpp"
#include "vlcsec/rates.hpp"

namespace vlcsec {

struct JamTerm {
  double gain = 0.0;       // g_eᵀJ
  double amplitude = 0.0;  // Ā
};

// Received value gain·(α·A·u₁ [+ (1−α)·A·u₂]) [+ jam] + σ·n with independent
// u_k ~ U[−1, 1] and n ~ N(0, 1).
struct ScalarChannelSpec {
  enum class Component { user1_only, superposition };
  double gain = 0.0;
  double alpha = 1.0;
  double amplitude = 0.0;
  Component component = Component::user1_only;
  std::optional<JamTerm> jam;
  double noise_sigma = 1.0;

  // Half-widths of the uniform components, in units of noise_sigma.
  std::vector<double> normalized_widths() const;
  double variance() const;
};

// Density of Σ U[−w_k, w_k] + N(0, 1) for up to three widths.
double mixture_density(std::span<const double> widths, double y);
// Differential entropy in nats of the same mixture.
double mixture_entropy(std::span<const double> widths, double tol = 1e-8);

double output_density(const ScalarChannelSpec& spec, double y);
double diff_entropy(const ScalarChannelSpec& spec, double tol = 1e-8);

// Exact I(x; y₁|x₂) − I(x; y_e|x₂) and I(x₂; y₂) − I(x₂; y_e) for uniform
// inputs, clamped at 0.
RatePair mi_secrecy_oracle(const ChannelGains& g, double alpha, double amplitude);
// Same with the source on A_γ and the jam term added at the eavesdropper.
RatePair mi_secrecy_oracle_cj(const ChannelGains& g, const SchemeParams& p,
                              double amplitude, std::span<const double> jam);

// Exact mutual informations of one scalar link with gain h and amplitude A:
//   user1 = I(x; y | x₂), user2 = I(x₂; y).
struct LinkInformation {
  double user1 = 0.0;
  double user2 = 0.0;
};
LinkInformation link_information(double gain, double alpha, double amplitude);

struct FeasibleSet {
  std::vector<Vector> null_vectors;  // x must be orthogonal to each
  double norm_budget = 1.0;          // ‖diag(w)·x‖₁ = budget
  Vector surrogate_weights;          // empty: all ones
};

struct SearchResult {
  Vector best;
  double value = 0.0;
};

// Gaussian draws projected onto the null space and scaled to the budget
// surface. Deterministic given the seed.
SearchResult random_feasible_search(const std::function<double(const Vector&)>& objective,
                                    const FeasibleSet& set, std::size_t dimension,
                                    std::size_t samples, std::uint64_t seed);

}  // namespace vlcsec
