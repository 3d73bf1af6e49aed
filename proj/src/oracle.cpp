#include "vlcsec/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "vlcsec/errors.hpp"

namespace vlcsec {

namespace {

// Widths below this change the entropy by less than ~1e-9 nats.
constexpr double kNegligibleWidth = 1e-4;

double phi(double u) { return std::exp(-0.5 * u * u) / std::sqrt(2.0 * std::numbers::pi); }
double big_phi(double u) { return 0.5 * std::erfc(-u / std::numbers::sqrt2); }

// Repeated integrals of Φ: G₀ = Φ, G₁' = G₀, G₂' = G₁.
double g_int(int order, double u) {
  switch (order) {
    case 0: return big_phi(u);
    case 1: return u * big_phi(u) + phi(u);
    default: return 0.5 * ((u * u + 1.0) * big_phi(u) + u * phi(u));
  }
}

std::vector<double> significant(std::span<const double> widths) {
  std::vector<double> out;
  for (double w : widths) {
    if (!(w >= 0.0) || !std::isfinite(w)) throw DomainError("mixture width must be finite and >= 0");
    if (w > kNegligibleWidth) out.push_back(w);
  }
  if (out.size() > 3) throw DomainError("at most three uniform components are supported");
  return out;
}

double density_of(const std::vector<double>& w, double y) {
  // Symmetric; the left tail avoids cancellation between Φ values near 1.
  y = -std::abs(y);
  const std::size_t n = w.size();
  if (n == 0) return phi(y);
  double sum = 0.0;
  double prod = 1.0;
  for (double x : w) prod *= 2.0 * x;
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    double shift = 0.0;
    int sign = 1;
    for (std::size_t k = 0; k < n; ++k) {
      if (mask & (1u << k)) {
        shift -= w[k];
        sign = -sign;
      } else {
        shift += w[k];
      }
    }
    sum += sign * g_int(static_cast<int>(n) - 1, y + shift);
  }
  return std::max(sum / prod, 0.0);
}

double neg_plogp(double p) { return p > 0.0 ? -p * std::log(p) : 0.0; }

struct Simpson {
  const std::vector<double>& w;
  int failures = 0;

  double f(double y) const { return neg_plogp(density_of(w, y)); }

  double run(double a, double b, double fa, double fm, double fb, double whole,
             double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
    if (depth <= 0) {
      ++failures;
      return left + right + delta / 15.0;
    }
    return run(a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           run(m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
  }

  double integrate(double a, double b, double tol) {
    const double fa = f(a);
    const double fb = f(b);
    const double fm = f(0.5 * (a + b));
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return run(a, b, fa, fm, fb, whole, tol, 50);
  }
};

}  // namespace

double mixture_density(std::span<const double> widths, double y) {
  return density_of(significant(widths), y);
}

double mixture_entropy(std::span<const double> widths, double tol) {
  if (!(tol > 0.0)) throw DomainError("quadrature tolerance must be > 0");
  const std::vector<double> w = significant(widths);
  if (w.empty()) return 0.5 * std::log(2.0 * std::numbers::pi * std::numbers::e);

  // Breakpoints where the density's derivatives jump: |Σ ±w_k|.
  std::vector<double> pts{0.0};
  const std::size_t n = w.size();
  double total = 0.0;
  for (double x : w) total += x;
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    double s = 0.0;
    for (std::size_t k = 0; k < n; ++k) s += (mask & (1u << k)) ? -w[k] : w[k];
    pts.push_back(std::abs(s));
  }
  pts.push_back(total + 8.0);
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

  Simpson simpson{w};
  double half = 0.0;
  const double seg_tol = 0.5 * tol / static_cast<double>(pts.size());
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    half += simpson.integrate(pts[i], pts[i + 1], seg_tol);
  }
  if (simpson.failures > 0) throw ConvergenceError("entropy quadrature did not converge");
  return 2.0 * half;
}

std::vector<double> ScalarChannelSpec::normalized_widths() const {
  if (!(amplitude >= 0.0) || !(gain >= 0.0)) throw DomainError("gain and amplitude must be >= 0");
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw DomainError("alpha must lie in [0, 1]");
  if (!(noise_sigma > 0.0)) throw DomainError("noise sigma must be > 0");
  std::vector<double> w{gain * alpha * amplitude / noise_sigma};
  if (component == Component::superposition) {
    w.push_back(gain * (1.0 - alpha) * amplitude / noise_sigma);
  }
  if (jam) w.push_back(std::abs(jam->gain) * jam->amplitude / noise_sigma);
  return w;
}

double ScalarChannelSpec::variance() const {
  double v = 1.0;
  for (double w : normalized_widths()) v += w * w / 3.0;
  return v * noise_sigma * noise_sigma;
}

double output_density(const ScalarChannelSpec& spec, double y) {
  return mixture_density(spec.normalized_widths(), y / spec.noise_sigma) / spec.noise_sigma;
}

double diff_entropy(const ScalarChannelSpec& spec, double tol) {
  return mixture_entropy(spec.normalized_widths(), tol) + std::log(spec.noise_sigma);
}

LinkInformation link_information(double gain, double alpha, double amplitude) {
  const double noise = mixture_entropy(std::vector<double>{});
  const std::vector<double> own{gain * alpha * amplitude};
  const std::vector<double> both{gain * alpha * amplitude, gain * (1.0 - alpha) * amplitude};
  const double h_own = mixture_entropy(own);
  return {h_own - noise, mixture_entropy(both) - h_own};
}

RatePair mi_secrecy_oracle(const ChannelGains& g, double alpha, double amplitude) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw DomainError("alpha must lie in [0, 1]");
  const LinkInformation u1 = link_information(g.h1, alpha, amplitude);
  const LinkInformation u2 = link_information(g.h2, alpha, amplitude);
  const LinkInformation e = link_information(g.he, alpha, amplitude);
  return {std::max(u1.user1 - e.user1, 0.0), std::max(u2.user2 - e.user2, 0.0)};
}

RatePair mi_secrecy_oracle_cj(const ChannelGains& g, const SchemeParams& p,
                              double amplitude, std::span<const double> jam) {
  p.validate();
  const double a = p.source_amplitude(amplitude);
  const double alpha = p.alpha;
  const double q = jam.empty() ? 0.0 : std::abs(dot(g.ge, jam)) * p.relay_amplitude(amplitude);

  const LinkInformation u1 = link_information(g.h1, alpha, a);
  const LinkInformation u2 = link_information(g.h2, alpha, a);
  const double own = g.he * alpha * a;
  const double other = g.he * (1.0 - alpha) * a;
  const double h_jam = mixture_entropy(std::vector<double>{q});
  const double h_own = mixture_entropy(std::vector<double>{own, q});
  const double h_both = mixture_entropy(std::vector<double>{own, other, q});
  const double eve1 = h_own - h_jam;
  const double eve2 = h_both - h_own;
  return {std::max(u1.user1 - eve1, 0.0), std::max(u2.user2 - eve2, 0.0)};
}

SearchResult random_feasible_search(const std::function<double(const Vector&)>& objective,
                                    const FeasibleSet& set, std::size_t dimension,
                                    std::size_t samples, std::uint64_t seed) {
  if (samples == 0) throw DomainError("samples must be >= 1");
  if (dimension == 0) throw DomainError("dimension must be >= 1");
  if (!set.surrogate_weights.empty() && set.surrogate_weights.size() != dimension) {
    throw DomainError("surrogate weights length must equal dimension");
  }
  if (set.null_vectors.size() >= dimension) {
    throw DegenerateBeamformerError("random_feasible_search: null space is empty");
  }
  const MatrixK proj = set.null_vectors.empty()
                           ? MatrixK::identity(dimension)
                           : orth_projection(std::span<const Vector>(set.null_vectors));
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);

  SearchResult out;
  bool have = false;
  Vector z(dimension);
  for (std::size_t s = 0; s < samples; ++s) {
    for (double& x : z) x = normal(rng);
    Vector v = proj * z;
    double used = 0.0;
    for (std::size_t i = 0; i < dimension; ++i) {
      const double wi = set.surrogate_weights.empty() ? 1.0 : set.surrogate_weights[i];
      used += std::abs(wi * v[i]);
    }
    if (used == 0.0) continue;
    for (double& x : v) x *= set.norm_budget / used;
    const double val = objective(v);
    if (!have || val > out.value) {
      out = {std::move(v), val};
      have = true;
    }
  }
  if (!have) throw DegenerateBeamformerError("random_feasible_search: every draw vanished");
  return out;
}

}  // namespace vlcsec
