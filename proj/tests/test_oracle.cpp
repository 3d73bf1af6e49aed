#include <doctest.h>

#include <cmath>
#include <numbers>

#include "fixtures.hpp"
#include "vlcsec/beamforming.hpp"
#include "vlcsec/oracle.hpp"
#include "vlcsec/rates.hpp"

using namespace vlcsec;

namespace {

constexpr double kA = 1e7;
const double kGaussEntropy = 0.5 * std::log(2.0 * std::numbers::pi * std::numbers::e);

// Trapezoid-rule moment integrals on a fine grid.
struct Moments {
  double mass = 0.0;
  double var = 0.0;
};

Moments moments(const ScalarChannelSpec& s) {
  double half = 10.0;
  for (double w : s.normalized_widths()) half += w;
  half *= s.noise_sigma;
  const int n = 200000;
  const double h = 2.0 * half / n;
  Moments m;
  for (int i = 0; i <= n; ++i) {
    const double y = -half + i * h;
    const double wt = (i == 0 || i == n) ? 0.5 : 1.0;
    const double p = output_density(s, y);
    m.mass += wt * p * h;
    m.var += wt * p * y * y * h;
  }
  return m;
}

}  // namespace

TEST_CASE("zero gain gives the standard normal") {
  ScalarChannelSpec s;
  for (double y : {0.0, 0.5, -1.3, 4.0}) {
    CHECK(output_density(s, y) == doctest::Approx(std::exp(-0.5 * y * y) / std::sqrt(2 * std::numbers::pi)));
  }
  CHECK(diff_entropy(s) == doctest::Approx(kGaussEntropy).epsilon(1e-10));
  CHECK(diff_entropy(s) == doctest::Approx(1.41894).epsilon(1e-5));
}

TEST_CASE("single uniform density closed form") {
  ScalarChannelSpec s;
  s.gain = 2e-6;
  s.alpha = 0.5;
  s.amplitude = 3e6;  // w = 3
  const double w = 3.0;
  for (double y : {0.0, 1.0, 2.9, 3.1, 6.0, -4.0}) {
    const auto cdf = [](double u) { return 0.5 * std::erfc(-u / std::numbers::sqrt2); };
    CHECK(output_density(s, y) == doctest::Approx((cdf(y + w) - cdf(y - w)) / (2 * w)).epsilon(1e-12));
  }
}

TEST_CASE("densities normalize and match analytic variances") {
  std::vector<ScalarChannelSpec> specs;
  ScalarChannelSpec a;
  a.gain = 3e-6;
  a.alpha = 0.4;
  a.amplitude = 1e7;
  specs.push_back(a);
  ScalarChannelSpec b = a;
  b.component = ScalarChannelSpec::Component::superposition;
  specs.push_back(b);
  ScalarChannelSpec c = b;
  c.jam = JamTerm{1e-6, 5e6};
  specs.push_back(c);
  ScalarChannelSpec d = a;
  d.noise_sigma = 2.5;
  specs.push_back(d);
  for (const auto& s : specs) {
    const Moments m = moments(s);
    CHECK(m.mass == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(m.var == doctest::Approx(s.variance()).epsilon(1e-6));
    // Entropy between the EPI-style lower bound and the Gaussian upper bound.
    const double h = diff_entropy(s);
    CHECK(h <= 0.5 * std::log(2 * std::numbers::pi * std::numbers::e * s.variance()) + 1e-9);
  }
  // Single-uniform analytic variance (hαA)²/3 + 1.
  CHECK(a.variance() == doctest::Approx(std::pow(3e-6 * 0.4 * 1e7, 2) / 3 + 1));
}

TEST_CASE("entropy limits and EPI bound") {
  const std::vector<double> big{1e4};
  CHECK(std::abs(mixture_entropy(big) - std::log(2e4)) <= 1e-3);
  for (double w : {0.01, 0.3, 1.0, 5.0, 40.0, 400.0}) {
    const std::vector<double> one{w};
    const double h = mixture_entropy(one);
    const double epi = 0.5 * std::log(std::exp(2 * std::log(2 * w)) + 2 * std::numbers::pi * std::numbers::e);
    CHECK(h >= epi - 1e-9);
    CHECK(h <= 0.5 * std::log(2 * std::numbers::pi * std::numbers::e * (1 + w * w / 3)) + 1e-9);
  }
}

TEST_CASE("mi_secrecy_oracle simple cases") {
  ChannelGains g = build_gains(test::default_scenario());
  ChannelGains same = g;
  same.he = same.h1;
  CHECK(mi_secrecy_oracle(same, 1.0, kA).r1s == doctest::Approx(0.0).epsilon(1e-9));
  ChannelGains blind = g;
  blind.he = 0.0;
  const RatePair r = mi_secrecy_oracle(blind, 1.0, kA);
  const std::vector<double> w{g.h1 * kA};
  CHECK(r.r1s == doctest::Approx(mixture_entropy(w) - kGaussEntropy).epsilon(1e-9));
  CHECK(r.r1s > 0.0);
  const RatePair dt = dt_rates(g, 0.5, kA);
  CHECK(mi_secrecy_oracle(g, 0.5, kA).r1s >= dt.r1s - 1e-6);
}

TEST_CASE("closed forms lower-bound exact rates at the operating point") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const ChannelGains g = build_gains(test::random_scenario(seed));
    const Beamformer j = cj_vector(g);
    for (double a : {0.1, 0.3, 0.5, 0.7, 0.9}) {
      const RatePair cf = dt_rates(g, a, kA);
      const RatePair mi = mi_secrecy_oracle(g, a, kA);
      CHECK(cf.r1s <= mi.r1s + 1e-6);
      CHECK(cf.r2s <= mi.r2s + 1e-6);
      const SchemeParams p{a, 0.8};
      const RatePair cj = cj_rates(g, p, kA, j.weights);
      const RatePair mj = mi_secrecy_oracle_cj(g, p, kA, j.weights);
      CHECK(cj.r1s <= mj.r1s + 1e-6);
      CHECK(cj.r2s <= mj.r2s + 1e-6);
    }
  }
}

TEST_CASE("weak-user closed form overshoots the exact rate at low SNR") {
  // Known gap: the weak-user bound's concavity step does not hold for sums of
  // independent uniforms, and at A = 1e6 the closed form exceeds I(x2;y2) − I(x2;ye).
  Scenario s = test::default_scenario();
  s.user_a = {0.75, 0.75, 0.7};
  s.user_b = {-0.8, 0.2, 0.7};
  s.eavesdropper = {2.4, -2.3, 0.7};
  const ChannelGains g = build_gains(s);
  const double amp = 1e6;
  const RatePair cf = dt_rates(g, 0.5, amp);
  const RatePair mi = mi_secrecy_oracle(g, 0.5, amp);
  CHECK(cf.r2s > mi.r2s + 1e-4);
  // The per-link term alone already overshoots at high SNR: α = ½ gives
  // ½log(6/(πe·¼)) ≈ 0.517 versus I(x2; ½x1 + ½x2) → ½.
  const LinkInformation li = link_information(1e-4, 0.5, 1e7);
  CHECK(li.user2 == doctest::Approx(0.5).epsilon(1e-2));
  CHECK(0.5 * std::log(6.0 / (std::numbers::pi * std::numbers::e * 0.25)) > li.user2 + 0.01);
}

TEST_CASE("random_feasible_search") {
  const ChannelGains g = build_gains(test::default_scenario());
  const auto obj = [&](const Vector& v) {
    const double e = dot(g.ge, v);
    return e * e;
  };
  const FeasibleSet set{{g.g1, g.g2}, 1.0, {}};
  const SearchResult a = random_feasible_search(obj, set, 5, 1, 42);
  const SearchResult b = random_feasible_search(obj, set, 5, 1, 42);
  CHECK(a.best == b.best);
  CHECK(a.value == b.value);
  CHECK(norm1(a.best) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(nulling_residual(g.g1, a.best) <= 1e-9);
  const SearchResult many = random_feasible_search(obj, set, 5, 10000, 42);
  CHECK(many.value <= obj(cj_vector(g).weights) * (1 + 1e-12));
  CHECK_THROWS(random_feasible_search(obj, {{g.g1, g.g2, g.ge, g.hr, g.g1}, 1.0, {}}, 5, 10, 1));
}
