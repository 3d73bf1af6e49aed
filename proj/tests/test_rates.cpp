#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "fixtures.hpp"
#include "vlcsec/beamforming.hpp"
#include "vlcsec/errors.hpp"
#include "vlcsec/rates.hpp"

using namespace vlcsec;

namespace {

constexpr double kPe = std::numbers::pi * std::numbers::e;
constexpr double kA = 1e7;

double pos(double x) { return x > 0.0 ? x : 0.0; }

// Direct transcriptions of the theorems with plain log of ratios.
RatePair dt_ref(double h1, double h2, double he, double a, double A) {
  const double r1 = 0.5 * std::log(1 + 2 * h1 * h1 * a * a * A * A / kPe) -
                    0.5 * std::log(1 + he * he * a * a * A * A / 3);
  const double r2 = 0.5 * std::log((1 + 2 * h2 * h2 * A * A / kPe) / (1 + h2 * h2 * a * a * A * A / 3)) -
                    0.5 * std::log((1 + he * he * A * A / 3) / (1 + 2 * he * he * a * a * A * A / kPe));
  return {pos(r1), pos(r2)};
}

RatePair df_ref(const ChannelGains& g, double a, double gm, double A, const Vector& d) {
  const double ag = std::sqrt(1 - gm * gm) * A;
  const double ab = gm * A;
  double g1d = 0, g2d = 0;
  for (std::size_t i = 0; i < d.size(); ++i) {
    g1d += g.g1[i] * d[i];
    g2d += g.g2[i] * d[i];
  }
  double min1 = 1e300, min2 = 1e300;
  for (double h : g.hr) {
    min1 = std::min(min1, 1 + 2 * h * h * a * a * ag * ag / kPe);
    min2 = std::min(min2, (1 + 2 * h * h * ag * ag / kPe) / (1 + h * h * a * a * ag * ag / 3));
  }
  const double t1 = 0.5 * std::log(1 + 2 * g.h1 * g.h1 * a * a * ag * ag / kPe) +
                    0.5 * std::log(1 + 2 * g1d * g1d * a * a * ab * ab / kPe);
  const double t2 = 0.5 * std::log((1 + 2 * g.h2 * g.h2 * ag * ag / kPe) / (1 + g.h2 * g.h2 * a * a * ag * ag / 3)) +
                    0.5 * std::log((1 + 2 * g2d * g2d * ab * ab / kPe) / (1 + g2d * g2d * a * a * ab * ab / 3));
  const double r1 = std::min(t1, 0.5 * std::log(min1));
  const double r2 = std::min(t2, 0.5 * std::log(min2));
  const double e1 = 0.5 * std::log(1 + g.he * g.he * a * a * ag * ag / 3);
  const double e2 = 0.5 * std::log((1 + g.he * g.he * ag * ag / 3) / (1 + 2 * g.he * g.he * a * a * ag * ag / kPe));
  return {0.5 * pos(r1 - e1), 0.5 * pos(r2 - e2)};
}

RatePair af_ref(const ChannelGains& g, double a, double gm, double A, const Vector& v) {
  const double ag = std::sqrt(1 - gm * gm) * A;
  auto kappa2 = [&](double h, const Vector& gj) {
    double num = 0, den = 0;
    for (std::size_t i = 0; i < v.size(); ++i) {
      num += gj[i] * g.hr[i] * v[i];
      den += gj[i] * v[i];
    }
    return h * h + num * num / (1 + den * den);
  };
  const double k1 = kappa2(g.h1, g.g1);
  const double k2 = kappa2(g.h2, g.g2);
  const double he2 = g.he * g.he;
  const double r1 = 0.5 * std::log(1 + 2 * k1 * a * a * ag * ag / kPe) - 0.5 * std::log(1 + he2 * a * a * ag * ag / 3);
  const double r2 = 0.5 * std::log((1 + 2 * k2 * ag * ag / kPe) / (1 + k2 * a * a * ag * ag / 3)) -
                    0.5 * std::log((1 + he2 * ag * ag / 3) / (1 + 2 * he2 * a * a * ag * ag / kPe));
  return {0.5 * pos(r1), 0.5 * pos(r2)};
}

}  // namespace

TEST_CASE("scheme params") {
  const SchemeParams p{0.3, 0.6};
  const double ag = p.source_amplitude(kA);
  const double ab = p.relay_amplitude(kA);
  CHECK(ag * ag + ab * ab == doctest::Approx(kA * kA).epsilon(1e-14));
  CHECK_THROWS_AS((SchemeParams{1.2, 0.0}.validate()), DomainError);
  CHECK_THROWS_AS((SchemeParams{0.5, -0.1}.validate()), DomainError);
}

TEST_CASE("dt_rates matches transcription and hand value") {
  const ChannelGains g = build_gains(test::default_scenario());
  const RatePair r = dt_rates(g, 0.5, kA);
  CHECK(r.r1s == doctest::Approx(0.145).epsilon(5e-3));
  for (double a : {0.0, 0.1, 0.37, 0.5, 0.83, 1.0}) {
    const RatePair ours = dt_rates(g, a, kA);
    const RatePair ref = dt_ref(g.h1, g.h2, g.he, a, kA);
    CHECK(test::rel_close(ours.r1s, ref.r1s, 1e-12, 1e-15));
    CHECK(test::rel_close(ours.r2s, ref.r2s, 1e-12, 1e-15));
  }
  CHECK(dt_rates(g, 1.0, kA).r2s == 0.0);
  CHECK(dt_rates(g, 0.0, kA).r1s == 0.0);
  CHECK_THROWS_AS(dt_rates(g, 0.5, 0.0), DomainError);
}

TEST_CASE("dt_rates monotone in h1 and he") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(1e-7, 1e-5), al(0.0, 1.0);
  ChannelGains g;
  for (int i = 0; i < 1000; ++i) {
    g.h1 = u(rng);
    g.h2 = u(rng);
    g.he = u(rng);
    const double a = al(rng);
    const double base = dt_rates(g, a, kA).r1s;
    ChannelGains up = g;
    up.h1 *= 1.1;
    CHECK(dt_rates(up, a, kA).r1s >= base);
    ChannelGains eve = g;
    eve.he *= 1.1;
    CHECK(dt_rates(eve, a, kA).r1s <= base);
  }
}

TEST_CASE("dt_positivity") {
  ChannelGains g = build_gains(test::default_scenario());
  const double lhs = 2.0 / kPe * g.h1 * g.h1;
  const double rhs = g.he * g.he / 3.0;
  CHECK(lhs == doctest::Approx(3.92e-12).epsilon(2e-3));
  CHECK(rhs == doctest::Approx(2.92e-12).epsilon(2e-3));
  CHECK(dt_positivity(g, 0.5, kA).user1);
  ChannelGains same = g;
  same.he = same.h1;
  CHECK_FALSE(dt_positivity(same, 0.5, kA).user1);
  ChannelGains blind = g;
  blind.he = 0.0;
  CHECK(dt_positivity(blind, 0.5, kA).user1);

  // The conditions characterize strict positivity of the unclamped rates.
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(1e-7, 1e-5), al(0.01, 0.99);
  for (int i = 0; i < 2000; ++i) {
    g.h1 = u(rng);
    g.h2 = u(rng);
    g.he = u(rng);
    const double a = al(rng);
    const RatePair r = dt_rates(g, a, kA);
    const UserFlags f = dt_positivity(g, a, kA);
    CHECK(f.user1 == (r.r1s > 0.0));
    CHECK(f.user2 == (r.r2s > 0.0));
  }
}

TEST_CASE("weak-user rate vanishes above alpha = 0.838 when h2 = he") {
  const double threshold = std::sqrt((2.0 / kPe) / (1.0 / 3.0));
  CHECK(threshold == doctest::Approx(0.838).epsilon(1e-3));
  ChannelGains g;
  g.h1 = 5e-6;
  for (double h : {1e-7, 1e-6, 3e-6, 1e-5}) {
    g.h2 = g.he = h;
    for (double a = threshold + 1e-3; a <= 1.0; a += 0.01) CHECK(dt_rates(g, a, kA).r2s == 0.0);
  }
}

TEST_CASE("cj_rates reductions") {
  const ChannelGains g = build_gains(test::default_scenario());
  const Beamformer j = cj_vector(g);
  for (double a : {0.0, 0.2, 0.5, 0.9, 1.0}) {
    const RatePair cj = cj_rates(g, {a, 0.0}, kA, j.weights);
    const RatePair dt = dt_rates(g, a, kA);
    CHECK(test::rel_close(cj.r1s, dt.r1s, 1e-12));
    CHECK(test::rel_close(cj.r2s, dt.r2s, 1e-12));
    // g_eᵀJ = 0 reduces to DT on A_γ.
    const SchemeParams p{a, 0.6};
    const RatePair zero = cj_rates(g, p, kA, Vector(5, 0.0));
    const RatePair dtg = dt_rates(g, a, p.source_amplitude(kA));
    CHECK(test::rel_close(zero.r1s, dtg.r1s, 1e-12));
    CHECK(test::rel_close(zero.r2s, dtg.r2s, 1e-12));
  }
  const SchemeParams p{0.5, 0.6};
  const RatePair r = cj_rates(g, p, kA, j.weights);
  CHECK(std::isfinite(r.r1s));
  if (cj_monotonicity(g, p, kA).user1) CHECK(r.r1s >= dt_rates(g, 0.5, p.source_amplitude(kA)).r1s);
  CHECK(cj_rates(g, {1.0, 0.7}, kA, j.weights).r2s == 0.0);
  CHECK(cj_rates(g, {0.0, 0.7}, kA, j.weights).r1s == 0.0);
}

TEST_CASE("cj_rates rejects non-nulling or over-budget jamming") {
  const ChannelGains g = build_gains(test::default_scenario());
  CHECK_THROWS_AS(cj_rates(g, {0.5, 0.5}, kA, Vector{1, 0, 0, 0, 0}), NullingError);
  Vector j = cj_vector(g).weights;
  for (double& x : j) x *= 1.01;
  CHECK_THROWS_AS(cj_rates(g, {0.5, 0.5}, kA, j), DomainError);
  CHECK_THROWS_AS(cj_rates(g, {0.5, 0.5}, kA, Vector{0, 0}), DomainError);
}

TEST_CASE("cj_monotonicity") {
  CHECK(kJamThreshold == doctest::Approx(1.27).epsilon(2e-3));
  ChannelGains g = build_gains(test::default_scenario());
  const UserFlags f = cj_monotonicity(g, {1.0, 0.3}, kA);
  CHECK_FALSE(f.user2);
  g.he = 0.0;
  const UserFlags z = cj_monotonicity(g, {0.5, 0.3}, kA);
  CHECK_FALSE(z.user1);
  CHECK_FALSE(z.user2);
}

TEST_CASE("df_rates matches transcription") {
  const ChannelGains g = build_gains(test::default_scenario());
  for (double a : {0.0, 0.5, 0.8, 1.0}) {
    for (double gm : {0.0, 0.3, 0.6, 0.95}) {
      const Beamformer d = df_vector(g, a == 0.0 ? 0.5 : a);
      const RatePair ours = df_rates(g, {a, gm}, kA, d.weights);
      const RatePair ref = df_ref(g, a, gm, kA, d.weights);
      CHECK(test::rel_close(ours.r1s, ref.r1s, 1e-11, 1e-15));
      CHECK(test::rel_close(ours.r2s, ref.r2s, 1e-11, 1e-15));
    }
  }
  const Beamformer d = df_vector(g, 0.5);
  CHECK(df_rates(g, {0.0, 0.6}, kA, d.weights).r1s == 0.0);
  CHECK(df_rates(g, {1.0, 0.6}, kA, d.weights).r2s == 0.0);
  ChannelGains dead = g;
  dead.hr[2] = 0.0;
  const RatePair r = df_rates(dead, {0.5, 0.6}, kA, d.weights);
  CHECK(r.r1s == 0.0);
  CHECK(r.r2s == 0.0);
  ChannelGains none = g;
  none.hr.clear();
  none.g1.clear();
  none.g2.clear();
  none.ge.clear();
  CHECK_THROWS_AS(df_rates(none, {0.5, 0.5}, kA, Vector{}), DegenerateBeamformerError);
  CHECK_THROWS_AS(df_rates(g, {0.5, 0.5}, kA, Vector{1, 0, 0, 0, 0}), NullingError);
}

TEST_CASE("af_kappa and af_rates") {
  const ChannelGains g = build_gains(test::default_scenario());
  const KappaSq zero = af_kappa(g, Vector(5, 0.0));
  CHECK(zero.user1 == g.h1 * g.h1);
  CHECK(zero.user2 == g.h2 * g.h2);

  // a = 0, γ = 0: half of DT per component.
  for (double a : {0.0, 0.3, 0.5, 1.0}) {
    const RatePair af = af_rates(g, {a, 0.0}, kA, Vector(5, 0.0));
    const RatePair dt = dt_rates(g, a, kA);
    CHECK(test::rel_close(af.r1s, 0.5 * dt.r1s, 1e-12, 1e-15));
    CHECK(test::rel_close(af.r2s, 0.5 * dt.r2s, 1e-12, 1e-15));
  }

  const AfContext ctx{{0.5, 0.6}, kA, 3.0, Design::vertex};
  const Beamformer a = af_vector(g, 0.5, ctx).beamformer;
  const KappaSq k = af_kappa(g, a.weights);
  CHECK(k.user1 >= g.h1 * g.h1);
  CHECK(k.user2 >= g.h2 * g.h2);
  for (double al : {0.0, 0.5, 0.7, 1.0}) {
    const RatePair ours = af_rates(g, {al, 0.6}, kA, a.weights);
    const RatePair ref = af_ref(g, al, 0.6, kA, a.weights);
    CHECK(test::rel_close(ours.r1s, ref.r1s, 1e-11, 1e-15));
    CHECK(test::rel_close(ours.r2s, ref.r2s, 1e-11, 1e-15));
  }
  CHECK(af_rates(g, {1.0, 0.6}, kA, a.weights).r2s == 0.0);
  CHECK(af_rates(g, {0.0, 0.6}, kA, a.weights).r1s == 0.0);
  CHECK_THROWS_AS(af_rates(g, {0.5, 0.6}, kA, Vector{1, 0, 0, 0, 0}), NullingError);
}

TEST_CASE("relay-scheme rates stay under the coarse single-link cap") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const ChannelGains g = build_gains(test::random_scenario(seed));
    double hmax = std::max({g.h1, g.h2, g.he});
    for (double h : g.hr) hmax = std::max(hmax, h);
    const double cap = 0.5 * std::log1p(2.0 * hmax * hmax * kA * kA / kPe);
    for (double gm : {0.0, 0.5, 0.9}) {
      const Beamformer d = df_vector(g, 0.5);
      const RatePair df = df_rates(g, {0.5, gm}, kA, d.weights);
      CHECK(df.r1s <= cap);
      CHECK(df.r2s <= cap);
      const AfContext ctx{{0.5, gm}, kA, 3.0, Design::vertex};
      const RatePair af = af_rates(g, {0.5, gm}, kA, af_vector(g, 0.5, ctx).beamformer.weights);
      CHECK(af.r1s <= cap);
      CHECK(af.r2s <= cap);
    }
  }
}
