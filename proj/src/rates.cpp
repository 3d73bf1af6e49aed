#include "vlcsec/rates.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "vlcsec/errors.hpp"
#include "vlcsec/numerics.hpp"

namespace vlcsec {

void SchemeParams::validate() const {
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw DomainError("alpha must lie in [0, 1]");
  if (!(gamma >= 0.0 && gamma <= 1.0)) throw DomainError("gamma must lie in [0, 1]");
}

double SchemeParams::source_amplitude(double amplitude) const {
  return std::sqrt(std::max(0.0, 1.0 - gamma * gamma)) * amplitude;
}

double SchemeParams::relay_amplitude(double amplitude) const {
  return gamma * amplitude;
}

double nulling_residual(std::span<const double> v, std::span<const double> x) {
  if (v.size() != x.size()) throw DomainError("nulling_residual: size mismatch");
  double s = 0.0;
  double mag = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    s += v[i] * x[i];
    mag += std::abs(v[i] * x[i]);
  }
  return mag == 0.0 ? 0.0 : std::abs(s) / mag;
}

namespace {

void check_inputs(double alpha, double amplitude) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw DomainError("alpha must lie in [0, 1]");
  if (!(amplitude > 0.0) || !std::isfinite(amplitude)) {
    throw DomainError("amplitude must be finite and > 0");
  }
}

void check_size(std::span<const double> v, std::size_t k, const char* what) {
  if (v.size() != k) {
    throw DomainError(std::string(what) + ": beamformer length must equal relay count");
  }
}

void check_nulled(std::span<const double> channel, std::span<const double> w,
                  const char* what) {
  const double r = nulling_residual(channel, w);
  if (r > kNullingTolerance) {
    throw NullingError(std::string(what) + ": nulling residual " +
                       std::to_string(r) + " exceeds tolerance");
  }
}

double half_log1p(double x) { return 0.5 * std::log1p(x); }

// ½log((1+x)/(1+y))
double half_log_ratio(double x, double y) {
  return 0.5 * (std::log1p(x) - std::log1p(y));
}

// Eavesdropper leakage terms shared by DF and AF (no jamming).
double eve_term_user1(double he, double alpha, double amp) {
  return half_log1p(he * he * alpha * alpha * amp * amp * kUniformVariance);
}

double eve_term_user2(double he, double alpha, double amp) {
  const double p = he * he * amp * amp;
  return half_log_ratio(p * kUniformVariance, p * alpha * alpha * kEpiUniform);
}

// Main-channel terms for a scalar gain `h` and amplitude `amp`.
double main_term_user1(double h, double alpha, double amp) {
  return half_log1p(kEpiUniform * h * h * alpha * alpha * amp * amp);
}

double main_term_user2(double h, double alpha, double amp) {
  const double p = h * h * amp * amp;
  return half_log_ratio(kEpiUniform * p, kUniformVariance * alpha * alpha * p);
}

}  // namespace

RatePair dt_rates(const ChannelGains& g, double alpha, double amplitude) {
  check_inputs(alpha, amplitude);
  const double r1 = main_term_user1(g.h1, alpha, amplitude) -
                    eve_term_user1(g.he, alpha, amplitude);
  const double r2 = main_term_user2(g.h2, alpha, amplitude) -
                    eve_term_user2(g.he, alpha, amplitude);
  return {std::max(r1, 0.0), std::max(r2, 0.0)};
}

UserFlags dt_positivity(const ChannelGains& g, double alpha, double amplitude) {
  check_inputs(alpha, amplitude);
  const double h2 = g.h2 * g.h2;
  const double he = g.he * g.he;
  const double a2 = alpha * alpha;
  UserFlags out;
  out.user1 = kEpiUniform * g.h1 * g.h1 > kUniformVariance * he;
  const double lhs = (kEpiUniform - a2 * kUniformVariance) * h2 +
                     (kEpiUniform * a2 - kUniformVariance) * he;
  const double rhs = (kUniformVariance * kUniformVariance -
                      kEpiUniform * kEpiUniform) *
                     a2 * h2 * he * amplitude * amplitude;
  out.user2 = lhs > rhs;
  return out;
}

RatePair cj_rates(const ChannelGains& g, const SchemeParams& p,
                  double amplitude, std::span<const double> jam) {
  p.validate();
  check_inputs(p.alpha, amplitude);
  check_size(jam, g.relay_count(), "cj_rates");
  if (norm1(jam) > 1.0 + kNormTolerance) throw DomainError("cj_rates: ‖J‖₁ exceeds 1");
  if (!jam.empty()) {
    check_nulled(g.g1, jam, "cj_rates (strong user)");
    check_nulled(g.g2, jam, "cj_rates (weak user)");
  }

  const double a_src = p.source_amplitude(amplitude);
  const double a_rel = p.relay_amplitude(amplitude);
  const double ej = jam.empty() ? 0.0 : dot(g.ge, jam);
  const double q = ej * ej * a_rel * a_rel;
  const double a2 = p.alpha * p.alpha;
  const double pe = g.he * g.he * a_src * a_src;

  const double r1 = main_term_user1(g.h1, p.alpha, a_src) -
                    half_log_ratio(pe * a2 * kUniformVariance + q * kUniformVariance,
                                   kEpiUniform * q);
  const double r2 = main_term_user2(g.h2, p.alpha, a_src) -
                    half_log_ratio(pe * kUniformVariance + q * kUniformVariance,
                                   kEpiUniform * (pe * a2 + q));
  return {std::max(r1, 0.0), std::max(r2, 0.0)};
}

UserFlags cj_monotonicity(const ChannelGains& g, const SchemeParams& p,
                          double amplitude) {
  p.validate();
  check_inputs(p.alpha, amplitude);
  const double a_src = p.source_amplitude(amplitude);
  const double base = g.he * g.he * a_src * a_src;
  const double a2 = p.alpha * p.alpha;
  return {base * a2 > kJamThreshold, base * (1.0 - a2) > kJamThreshold};
}

RatePair df_rates(const ChannelGains& g, const SchemeParams& p,
                  double amplitude, std::span<const double> d) {
  p.validate();
  check_inputs(p.alpha, amplitude);
  const std::size_t k = g.relay_count();
  if (k == 0) throw DegenerateBeamformerError("df_rates: decode-and-forward needs K >= 1");
  check_size(d, k, "df_rates");
  if (norm1(d) > 1.0 + kNormTolerance) throw DomainError("df_rates: ‖d‖₁ exceeds 1");
  check_nulled(g.ge, d, "df_rates (eavesdropper)");

  const double alpha = p.alpha;
  const double a2 = alpha * alpha;
  const double a_src = p.source_amplitude(amplitude);
  const double a_rel = p.relay_amplitude(amplitude);
  const double g1d = dot(g.g1, d);
  const double g2d = dot(g.g2, d);

  // Decoding at every relay bottlenecks both messages.
  double relay1 = std::numeric_limits<double>::infinity();
  double relay2 = std::numeric_limits<double>::infinity();
  for (double hr : g.hr) {
    relay1 = std::min(relay1, main_term_user1(hr, alpha, a_src));
    relay2 = std::min(relay2, main_term_user2(hr, alpha, a_src));
  }

  const double coop1 = main_term_user1(g.h1, alpha, a_src) +
                       half_log1p(kEpiUniform * g1d * g1d * a2 * a_rel * a_rel);
  const double q2 = g2d * g2d * a_rel * a_rel;
  const double coop2 = main_term_user2(g.h2, alpha, a_src) +
                       half_log_ratio(kEpiUniform * q2, kUniformVariance * a2 * q2);

  const double r1 = std::min(coop1, relay1) - eve_term_user1(g.he, alpha, a_src);
  const double r2 = std::min(coop2, relay2) - eve_term_user2(g.he, alpha, a_src);
  return {0.5 * std::max(r1, 0.0), 0.5 * std::max(r2, 0.0)};
}

KappaSq af_kappa(const ChannelGains& g, std::span<const double> a) {
  const std::size_t k = g.relay_count();
  if (k == 0) throw DegenerateBeamformerError("af_kappa: amplify-and-forward needs K >= 1");
  check_size(a, k, "af_kappa");
  auto one = [&](double h, const Vector& gj) {
    double through = 0.0;  // g_jᵀdiag(h_r)a
    double noise = 0.0;    // g_jᵀa
    for (std::size_t i = 0; i < k; ++i) {
      through += gj[i] * g.hr[i] * a[i];
      noise += gj[i] * a[i];
    }
    return h * h + through * through / (1.0 + noise * noise);
  };
  return {one(g.h1, g.g1), one(g.h2, g.g2)};
}

RatePair af_rates(const ChannelGains& g, const SchemeParams& p,
                  double amplitude, std::span<const double> a) {
  p.validate();
  check_inputs(p.alpha, amplitude);
  const KappaSq kappa = af_kappa(g, a);
  check_nulled(hadamard(g.hr, g.ge), a, "af_rates (eavesdropper)");

  const double alpha = p.alpha;
  const double a_src = p.source_amplitude(amplitude);
  const double r1 =
      main_term_user1(std::sqrt(kappa.user1), alpha, a_src) -
      eve_term_user1(g.he, alpha, a_src);
  const double r2 =
      main_term_user2(std::sqrt(kappa.user2), alpha, a_src) -
      eve_term_user2(g.he, alpha, a_src);
  return {0.5 * std::max(r1, 0.0), 0.5 * std::max(r2, 0.0)};
}

}  // namespace vlcsec
