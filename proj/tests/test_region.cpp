#include <doctest.h>

#include "fixtures.hpp"
#include "vlcsec/errors.hpp"
#include "vlcsec/region.hpp"

using namespace vlcsec;

namespace {

RegionOptions small_grid(int rounds = 1) {
  RegionOptions o;
  o.grid = {21, 21, rounds, 0.2};
  return o;
}

bool same(const RegionPoint& a, const RegionPoint& b) {
  return a.alpha == b.alpha && a.gamma == b.gamma && a.objective == b.objective &&
         a.rates.r1s == b.rates.r1s && a.rates.r2s == b.rates.r2s &&
         a.flags.to_string() == b.flags.to_string();
}

}  // namespace

TEST_CASE("reductions at the grid edges") {
  const Scenario s = test::default_scenario();
  for (double a : {0.0, 0.3, 0.8, 1.0}) {
    const Evaluation dt = objective_eval(Scheme::dt, s, 0.5, a, 0.0);
    const Evaluation cj = objective_eval(Scheme::cj, s, 0.5, a, 0.0);
    CHECK(test::rel_close(cj.rates.r1s, dt.rates.r1s, 1e-12));
    CHECK(test::rel_close(cj.rates.r2s, dt.rates.r2s, 1e-12));
  }
  for (Scheme sc : {Scheme::dt, Scheme::cj, Scheme::df, Scheme::af}) {
    for (double g : {0.0, 0.5, 0.9}) {
      CHECK(objective_eval(sc, s, 0.5, 1.0, g).rates.r2s == 0.0);
      CHECK(objective_eval(sc, s, 0.5, 0.0, g).rates.r1s == 0.0);
    }
  }
}

TEST_CASE("optimize_point dominates its grid and CJ contains DT") {
  const Scenario s = test::default_scenario();
  const RegionOptions o = small_grid();
  for (double mu : {0.0, 0.25, 0.5, 1.0}) {
    const RegionPoint dt = optimize_point(Scheme::dt, s, mu, o);
    const RegionPoint cj = optimize_point(Scheme::cj, s, mu, o);
    CHECK(cj.objective >= dt.objective - 1e-15);
    for (Scheme sc : {Scheme::dt, Scheme::cj, Scheme::df, Scheme::af}) {
      const RegionPoint p = optimize_point(sc, s, mu, o);
      CHECK(p.rates.r1s >= 0.0);
      CHECK(p.rates.r2s >= 0.0);
      CHECK(p.objective == doctest::Approx(mu * p.rates.r1s + (1 - mu) * p.rates.r2s).epsilon(1e-12));
      const Evaluation e = objective_eval(sc, s, mu, p.alpha, p.gamma, o);
      CHECK(e.objective == p.objective);
      for (int i = 0; i < 21; i += 5) {
        CHECK(objective_eval(sc, s, mu, i / 20.0, 0.0, o).objective <= p.objective + 1e-15);
      }
    }
  }
}

TEST_CASE("refinement never lowers the objective") {
  const Scenario s = test::default_scenario();
  for (Scheme sc : {Scheme::dt, Scheme::cj, Scheme::df, Scheme::af}) {
    double prev = -1.0;
    for (int rounds = 0; rounds <= 3; ++rounds) {
      const double v = optimize_point(sc, s, 0.5, small_grid(rounds)).objective;
      CHECK(v >= prev);
      prev = v;
    }
  }
}

TEST_CASE("tie-break prefers the smallest alpha and gamma") {
  // Eavesdropper on top of user b: every point with α < 1 ties at zero for μ = 0.
  Scenario s = test::default_scenario();
  s.eavesdropper = s.user_b;
  const RegionPoint p = optimize_point(Scheme::dt, s, 0.0, small_grid());
  CHECK(p.objective == 0.0);
  CHECK(p.alpha == 0.0);
  CHECK(p.gamma == 0.0);
}

TEST_CASE("determinism and thread independence") {
  const Scenario s = test::default_scenario();
  for (Scheme sc : {Scheme::cj, Scheme::df, Scheme::af}) {
    RegionOptions one = small_grid(2);
    RegionOptions three = one;
    three.threads = 3;
    const RegionPoint a = optimize_point(sc, s, 0.4, one);
    CHECK(same(a, optimize_point(sc, s, 0.4, one)));
    CHECK(same(a, optimize_point(sc, s, 0.4, three)));
  }
}

TEST_CASE("boundary_sweep and sum_rate") {
  const Scenario s = test::default_scenario();
  const RegionOptions o = small_grid();
  const auto pts = boundary_sweep(Scheme::df, s, {1.0, 0.0, 0.5}, o);
  REQUIRE(pts.size() == 3);
  CHECK(pts[0].mu == 0.0);
  CHECK(pts[2].mu == 1.0);
  CHECK(same(pts[1], sum_rate(Scheme::df, s, o)));
  CHECK_THROWS_AS(boundary_sweep(Scheme::df, s, {}, o), DomainError);
  CHECK_THROWS_AS(optimize_point(Scheme::dt, s, 1.5, o), DomainError);
  RegionOptions bad = o;
  bad.grid.alpha_steps = 1;
  CHECK_THROWS_AS(optimize_point(Scheme::dt, s, 0.5, bad), ConfigError);
}

TEST_CASE("flags") {
  PointFlags f;
  CHECK(f.to_string().empty());
  f.cj_mono1 = true;
  f.dinkelbach_iters = 12;
  CHECK(f.to_string() == "cj_mono1;dinkelbach_iters=12");
  const RegionPoint af = optimize_point(Scheme::af, test::default_scenario(), 0.5, small_grid());
  CHECK(af.flags.dinkelbach_iters >= 0);
}
