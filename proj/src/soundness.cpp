#include "vlcsec/soundness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "vlcsec/beamforming.hpp"
#include "vlcsec/errors.hpp"
#include "vlcsec/oracle.hpp"
#include "vlcsec/rates.hpp"

namespace vlcsec {

namespace {

constexpr double kBoundSlack = 1e-6;
constexpr double kRelMargin = 1e-12;

template <class... Args>
std::string fmt(const char* f, Args... args) {
  char buf[200];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

// Closed-form per-term bounds re-derived independently of the rates module.
double lower_user1(double h, double alpha, double amp) {
  return 0.5 * std::log1p(2.0 * h * h * alpha * alpha * amp * amp /
                          (std::numbers::pi * std::numbers::e));
}
double lower_user2(double h, double alpha, double amp) {
  const double p = h * h * amp * amp;
  return 0.5 * std::log((1.0 + 2.0 * p / (std::numbers::pi * std::numbers::e)) /
                        (1.0 + alpha * alpha * p / 3.0));
}
double upper_user1(double h, double alpha, double amp) {
  return 0.5 * std::log1p(h * h * alpha * alpha * amp * amp / 3.0);
}
double upper_user2(double h, double alpha, double amp) {
  const double p = h * h * amp * amp;
  return 0.5 * std::log((1.0 + p / 3.0) /
                        (1.0 + 2.0 * alpha * alpha * p / (std::numbers::pi * std::numbers::e)));
}

void link_checks(std::vector<CheckResult>& out, const std::string& label, double h,
                 double alpha, double amp, bool eve) {
  const LinkInformation info = link_information(h, alpha, amp);
  if (!eve) {
    const double l1 = lower_user1(h, alpha, amp);
    const double l2 = lower_user2(h, alpha, amp);
    out.push_back({label + " user1 term <= I", l1 <= info.user1 + kBoundSlack,
                   fmt("bound %.9g, exact %.9g", l1, info.user1)});
    out.push_back({label + " user2 term <= I", l2 <= info.user2 + kBoundSlack,
                   fmt("bound %.9g, exact %.9g", l2, info.user2)});
  } else {
    const double u1 = upper_user1(h, alpha, amp);
    const double u2 = upper_user2(h, alpha, amp);
    out.push_back({label + " eve user1 term >= I", u1 + kBoundSlack >= info.user1,
                   fmt("bound %.9g, exact %.9g", u1, info.user1)});
    out.push_back({label + " eve user2 term >= I", u2 + kBoundSlack >= info.user2,
                   fmt("bound %.9g, exact %.9g", u2, info.user2)});
  }
}

bool beats(double ours, double oracle) {
  return ours - oracle >= -kRelMargin * std::max(std::abs(ours), std::abs(oracle));
}

}  // namespace

std::vector<CheckResult> run_soundness_suite(const Scenario& scenario,
                                             const SoundnessOptions& options) {
  validate(scenario);
  const ChannelGains g = build_gains(scenario);
  const double amp = scenario.amplitude;
  const std::size_t k = g.relay_count();
  std::vector<CheckResult> out;
  const std::vector<double> alphas{0.1, 0.3, 0.5, 0.7, 0.9};

  for (double a : alphas) {
    const RatePair cf = dt_rates(g, a, amp);
    const RatePair mi = mi_secrecy_oracle(g, a, amp);
    out.push_back({"DT bound alpha=" + std::to_string(a).substr(0, 3),
                   cf.r1s <= mi.r1s + kBoundSlack && cf.r2s <= mi.r2s + kBoundSlack,
                   fmt("closed (%.9g, %.9g) exact (%.9g, %.9g)", cf.r1s, cf.r2s, mi.r1s, mi.r2s)});
  }

  const SchemeParams base{0.5, options.gamma};
  const double a_src = base.source_amplitude(amp);
  const double a_rel = base.relay_amplitude(amp);

  if (k >= 3) {
    try {
      const Beamformer jam = cj_vector(g);
      for (double a : alphas) {
        const SchemeParams p{a, options.gamma};
        const RatePair cf = cj_rates(g, p, amp, jam.weights);
        const RatePair mi = mi_secrecy_oracle_cj(g, p, amp, jam.weights);
        out.push_back({"CJ bound alpha=" + std::to_string(a).substr(0, 3),
                       cf.r1s <= mi.r1s + kBoundSlack && cf.r2s <= mi.r2s + kBoundSlack,
                       fmt("closed (%.9g, %.9g) exact (%.9g, %.9g)", cf.r1s, cf.r2s, mi.r1s, mi.r2s)});
      }
      const auto obj = [&](const Vector& j) {
        const double e = dot(g.ge, j);
        return e * e;
      };
      const SearchResult rs = random_feasible_search(obj, {{g.g1, g.g2}, 1.0, {}}, k,
                                                     options.samples, options.seed);
      const double ours = obj(jam.weights);
      out.push_back({"CJ beamformer optimality", beats(ours, rs.value),
                     fmt("design %.9g, random search %.9g", ours, rs.value)});
    } catch (const DegenerateBeamformerError& e) {
      out.push_back({"CJ beamformer", false, e.what()});
    }

    for (double a : {0.0, 0.5, 1.0}) {
      try {
        const Beamformer d = df_vector(g, a);
        const auto obj = [&](const Vector& v) {
          const double x = dot(g.g1, v);
          const double y = dot(g.g2, v);
          return a * x * x + (1.0 - a) * y * y;
        };
        const SearchResult rs = random_feasible_search(obj, {{g.ge}, 1.0, {}}, k,
                                                       options.samples, options.seed + 1);
        const double ours = obj(d.weights);
        out.push_back({"DF beamformer optimality alpha=" + std::to_string(a).substr(0, 3),
                       beats(ours, rs.value),
                       fmt("design %.9g, random search %.9g", ours, rs.value)});
        const double g1d = std::abs(dot(g.g1, d.weights));
        const double g2d = std::abs(dot(g.g2, d.weights));
        if (a > 0.0 && a < 1.0) {
          link_checks(out, "DF relay->strong", g1d, a, a_rel, false);
          link_checks(out, "DF relay->weak", g2d, a, a_rel, false);
        }
      } catch (const DegenerateBeamformerError& e) {
        out.push_back({"DF beamformer", false, e.what()});
      }
    }
  }

  link_checks(out, "source->strong", g.h1, 0.5, a_src, false);
  link_checks(out, "source->weak", g.h2, 0.5, a_src, false);
  link_checks(out, "source->eve", g.he, 0.5, a_src, true);
  for (std::size_t i = 0; i < k; ++i) {
    link_checks(out, "source->relay" + std::to_string(i + 1), g.hr[i], 0.5, a_src, false);
  }

  if (k >= 2) {
    const AfContext ctx{base, amp, scenario.noise_clip_sigma, Design::vertex};
    const Vector w = af_surrogate_weights(g, base, amp, scenario.noise_clip_sigma);
    const Vector e = hadamard(g.hr, g.ge);
    for (int user : {1, 2}) {
      const Beamformer a = af_vector_user(g, user, 1.0, ctx);
      const auto obj = [&](const Vector& v) { return af_auxiliary(g, user, 1.0, v); };
      const SearchResult rs = random_feasible_search(obj, {{e}, a_rel, w}, k, options.samples,
                                                     options.seed + 2 + user);
      const double ours = obj(a.weights);
      out.push_back({"AF auxiliary optimality user=" + std::to_string(user), beats(ours, rs.value),
                     fmt("design %.9g, random search %.9g", ours, rs.value)});

      const DinkelbachResult d = af_dinkelbach(g, user, ctx);
      const Beamformer at0 = af_vector_user(g, user, 0.0, ctx);
      const double p0 = af_auxiliary(g, user, 0.0, at0.weights);
      const double p_star = af_auxiliary(g, user, d.lambda, d.beamformer.weights);
      const double ratio = af_ratio(g, user, d.beamformer.weights);
      const bool fixed_point = p0 <= 0.0 || std::abs(p_star) <= 1e-8 * p0;
      const bool ratio_ok = std::abs(ratio - d.lambda) <= 1e-6 * std::max(d.lambda, 1e-300);
      out.push_back({"AF Dinkelbach user=" + std::to_string(user), fixed_point && ratio_ok,
                     fmt("lambda* %.9g, achieved ratio %.9g", d.lambda, ratio)});

      const double kappa = std::sqrt(user == 1 ? af_kappa(g, d.beamformer.weights).user1
                                               : af_kappa(g, d.beamformer.weights).user2);
      link_checks(out, "AF combined user" + std::to_string(user), kappa, 0.5, a_src, false);
    }
  }
  return out;
}

}  // namespace vlcsec
