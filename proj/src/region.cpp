#include "vlcsec/region.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <numbers>
#include <optional>
#include <thread>
#include <utility>

#include "vlcsec/errors.hpp"

namespace vlcsec {

void GridSpec::validate() const {
  if (alpha_steps < 2 || gamma_steps < 2) throw ConfigError("grid steps must be >= 2");
  if (refine_rounds < 0) throw ConfigError("refine_rounds must be >= 0");
  if (!(refine_shrink > 0.0 && refine_shrink < 1.0)) {
    throw ConfigError("refine_shrink must lie in (0, 1)");
  }
}

std::string PointFlags::to_string() const {
  std::string out;
  auto add = [&](const std::string& tok) {
    if (!out.empty()) out += ';';
    out += tok;
  };
  if (cj_mono1) add("cj_mono1");
  if (cj_mono2) add("cj_mono2");
  if (null_fallback) add("null_fallback");
  if (dinkelbach_iters >= 0) add("dinkelbach_iters=" + std::to_string(dinkelbach_iters));
  return out;
}

namespace {

constexpr double kHalfPi = std::numbers::pi / 2.0;

struct Candidate {
  double alpha = 0.0;
  double theta = 0.0;
  double gamma = 0.0;
  Evaluation eval;
  bool valid = false;
};

bool better(const Candidate& a, const Candidate& b) {
  if (!a.valid) return false;
  if (!b.valid) return true;
  if (a.eval.objective != b.eval.objective) return a.eval.objective > b.eval.objective;
  if (a.alpha != b.alpha) return a.alpha < b.alpha;
  return a.gamma < b.gamma;
}

double gamma_of(double theta) { return theta >= kHalfPi ? 1.0 : std::sin(theta); }

std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> v(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) v[i] = lo + (hi - lo) * i / (n - 1);
  v.back() = hi;
  return v;
}

// Beamformers shared by every point of one grid row.
struct Row {
  std::optional<Beamformer> d;
  std::optional<Beamformer> a1;
  std::optional<Beamformer> a2;
  int iterations = -1;
};

class Evaluator {
 public:
  Evaluator(Scheme scheme, const Scenario& scenario, const RegionOptions& options)
      : scheme_(scheme),
        options_(options),
        gains_(build_gains(scenario)),
        amplitude_(scenario.amplitude),
        clip_(scenario.noise_clip_sigma) {
    options_.grid.validate();
    if (scheme_ == Scheme::cj) {
      try {
        jam_ = cj_vector(gains_, options_.design).weights;
      } catch (const DegenerateBeamformerError&) {
      } catch (const RankDeficientError&) {
      }
    }
  }

  Scheme scheme() const { return scheme_; }
  const RegionOptions& options() const { return options_; }

  // AF rows fix γ; every other scheme's rows fix α.
  bool rows_are_gamma() const { return scheme_ == Scheme::af; }

  Row prepare(double alpha, double gamma) const {
    Row row;
    try {
      if (scheme_ == Scheme::df) {
        row.d = df_vector(gains_, alpha, options_.design);
      } else if (scheme_ == Scheme::af) {
        const AfContext ctx{{alpha, gamma}, amplitude_, clip_, options_.design};
        if (options_.af_mode.fixed_lambda) {
          row.a1 = af_vector_user(gains_, 1, *options_.af_mode.fixed_lambda, ctx);
          row.a2 = af_vector_user(gains_, 2, *options_.af_mode.fixed_lambda, ctx);
        } else {
          DinkelbachResult d1 = af_dinkelbach(gains_, 1, ctx);
          DinkelbachResult d2 = af_dinkelbach(gains_, 2, ctx);
          row.a1 = std::move(d1.beamformer);
          row.a2 = std::move(d2.beamformer);
          row.iterations = d1.iterations + d2.iterations;
        }
      }
    } catch (const DegenerateBeamformerError&) {
    } catch (const RankDeficientError&) {
    }
    return row;
  }

  Candidate eval(double mu, double alpha, double theta, const Row& row) const {
    Candidate c;
    c.alpha = alpha;
    c.theta = theta;
    c.gamma = scheme_ == Scheme::dt ? 0.0 : gamma_of(theta);
    c.valid = true;
    const Vector zeros(gains_.relay_count(), 0.0);
    SchemeParams p{alpha, c.gamma};
    PointFlags& f = c.eval.flags;
    RatePair r;
    switch (scheme_) {
      case Scheme::dt:
        r = dt_rates(gains_, alpha, amplitude_);
        break;
      case Scheme::cj:
        if (!jam_) fallback(c, p);
        r = cj_rates(gains_, p, amplitude_, jam_ ? *jam_ : zeros);
        {
          const UserFlags m = cj_monotonicity(gains_, p, amplitude_);
          f.cj_mono1 = m.user1;
          f.cj_mono2 = m.user2;
        }
        break;
      case Scheme::df:
        if (!row.d) fallback(c, p);
        r = df_rates(gains_, p, amplitude_, row.d ? row.d->weights : zeros);
        break;
      case Scheme::af:
        f.dinkelbach_iters = row.iterations;
        if (!row.a1) {
          fallback(c, p);
          r = af_rates(gains_, p, amplitude_, zeros);
        } else {
          r = af_rates(gains_, p, amplitude_, af_combine(*row.a1, *row.a2, alpha).weights);
        }
        break;
    }
    c.eval.rates = r;
    c.eval.objective = mu * r.r1s + (1.0 - mu) * r.r2s;
    return c;
  }

  double gamma_to_theta(double gamma) const { return std::asin(std::clamp(gamma, 0.0, 1.0)); }

 private:
  static void fallback(Candidate& c, SchemeParams& p) {
    c.eval.flags.null_fallback = true;
    c.gamma = 0.0;
    c.theta = 0.0;
    p.gamma = 0.0;
  }

  Scheme scheme_;
  RegionOptions options_;
  ChannelGains gains_;
  double amplitude_;
  double clip_;
  std::optional<Vector> jam_;
};

Candidate search_row(const Evaluator& ev, double mu, double outer,
                     const std::vector<double>& inner) {
  Candidate best;
  if (ev.rows_are_gamma()) {
    const double gamma = gamma_of(outer);
    const Row row = ev.prepare(0.5, gamma);
    for (double alpha : inner) {
      Candidate c = ev.eval(mu, alpha, outer, row);
      if (better(c, best)) best = std::move(c);
    }
  } else {
    const Row row = ev.prepare(outer, 0.0);
    for (double theta : inner) {
      Candidate c = ev.eval(mu, outer, theta, row);
      if (better(c, best)) best = std::move(c);
    }
  }
  return best;
}

Candidate search_grid(const Evaluator& ev, double mu, const std::vector<double>& alphas,
                      const std::vector<double>& thetas) {
  const std::vector<double>& outer = ev.rows_are_gamma() ? thetas : alphas;
  const std::vector<double>& inner = ev.rows_are_gamma() ? alphas : thetas;
  std::vector<Candidate> rows(outer.size());
  const int threads =
      std::clamp(ev.options().threads, 1, static_cast<int>(outer.size()));
  if (threads == 1) {
    for (std::size_t i = 0; i < outer.size(); ++i) rows[i] = search_row(ev, mu, outer[i], inner);
  } else {
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(threads));
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) {
      pool.emplace_back([&, t] {
        try {
          for (std::size_t i = t; i < outer.size(); i += threads) {
            rows[i] = search_row(ev, mu, outer[i], inner);
          }
        } catch (...) {
          errors[t] = std::current_exception();
        }
      });
    }
    for (auto& th : pool) th.join();
    for (auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }
  Candidate best;
  for (auto& c : rows) {
    if (better(c, best)) best = std::move(c);
  }
  return best;
}

RegionPoint optimize_with(const Evaluator& ev, double mu) {
  if (!(mu >= 0.0 && mu <= 1.0)) throw DomainError("mu must lie in [0, 1]");
  const GridSpec& grid = ev.options().grid;
  const bool dt = ev.scheme() == Scheme::dt;
  const std::vector<double> theta0 = dt ? std::vector<double>{0.0} : linspace(0.0, kHalfPi, grid.gamma_steps);
  Candidate best = search_grid(ev, mu, linspace(0.0, 1.0, grid.alpha_steps), theta0);

  double width = 1.0;
  for (int r = 0; r < grid.refine_rounds; ++r) {
    width *= grid.refine_shrink;
    const double ha = 0.5 * width;
    const std::vector<double> alphas =
        linspace(std::max(0.0, best.alpha - ha), std::min(1.0, best.alpha + ha), grid.alpha_steps);
    std::vector<double> thetas{0.0};
    if (!dt) {
      const double ht = 0.5 * width * kHalfPi;
      thetas = linspace(std::max(0.0, best.theta - ht), std::min(kHalfPi, best.theta + ht),
                        grid.gamma_steps);
    }
    Candidate c = search_grid(ev, mu, alphas, thetas);
    if (better(c, best)) best = std::move(c);
  }

  RegionPoint out;
  out.scheme = ev.scheme();
  out.mu = mu;
  out.alpha = best.alpha;
  out.gamma = best.gamma;
  out.rates = best.eval.rates;
  out.objective = best.eval.objective;
  out.flags = best.eval.flags;
  return out;
}

}  // namespace

Evaluation objective_eval(Scheme scheme, const Scenario& scenario, double mu,
                          double alpha, double gamma, const RegionOptions& options) {
  if (!(mu >= 0.0 && mu <= 1.0)) throw DomainError("mu must lie in [0, 1]");
  SchemeParams{alpha, gamma}.validate();
  const Evaluator ev(scheme, scenario, options);
  const Row row = ev.prepare(alpha, gamma);
  return ev.eval(mu, alpha, ev.gamma_to_theta(gamma), row).eval;
}

RegionPoint optimize_point(Scheme scheme, const Scenario& scenario, double mu,
                           const RegionOptions& options) {
  const Evaluator ev(scheme, scenario, options);
  return optimize_with(ev, mu);
}

std::vector<RegionPoint> boundary_sweep(Scheme scheme, const Scenario& scenario,
                                        std::vector<double> mu_list,
                                        const RegionOptions& options) {
  if (mu_list.empty()) throw DomainError("mu list must be nonempty");
  std::sort(mu_list.begin(), mu_list.end());
  const Evaluator ev(scheme, scenario, options);
  std::vector<RegionPoint> out;
  out.reserve(mu_list.size());
  for (double mu : mu_list) out.push_back(optimize_with(ev, mu));
  return out;
}

RegionPoint sum_rate(Scheme scheme, const Scenario& scenario, const RegionOptions& options) {
  return optimize_point(scheme, scenario, 0.5, options);
}

}  // namespace vlcsec
