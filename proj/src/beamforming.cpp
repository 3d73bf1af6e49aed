#include "vlcsec/beamforming.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>
#include <utility>

#include "vlcsec/errors.hpp"

namespace vlcsec {

const char* scheme_name(Scheme s) {
  switch (s) {
    case Scheme::dt: return "DT";
    case Scheme::cj: return "CJ";
    case Scheme::df: return "DF";
    case Scheme::af: return "AF";
  }
  return "?";
}

double Beamformer::budget_used() const {
  if (scheme != Scheme::af) return norm1(weights);
  return norm1(hadamard(amplitude_weights, weights));
}

void Beamformer::validate(const ChannelGains& g) const {
  if (weights.size() != g.relay_count()) {
    throw DomainError("beamformer length must equal relay count");
  }
  auto null_check = [&](std::span<const double> ch, const char* what) {
    const double r = nulling_residual(ch, weights);
    if (r > kNullingTolerance) {
      throw NullingError(std::string(what) + ": nulling residual " + std::to_string(r));
    }
  };
  switch (scheme) {
    case Scheme::cj:
      if (budget_used() > 1.0 + kNormTolerance) throw DomainError("CJ: ‖J‖₁ exceeds 1");
      null_check(g.g1, "CJ strong user");
      null_check(g.g2, "CJ weak user");
      break;
    case Scheme::df:
      if (budget_used() > 1.0 + kNormTolerance) throw DomainError("DF: ‖d‖₁ exceeds 1");
      null_check(g.ge, "DF eavesdropper");
      break;
    case Scheme::af:
      if (amplitude_weights.size() != weights.size()) {
        throw DomainError("AF: surrogate weights missing");
      }
      if (budget_used() > norm_budget * (1.0 + 1e-9)) {
        throw DomainError("AF: ‖diag(w)a‖₁ exceeds A_bar");
      }
      null_check(hadamard(g.hr, g.ge), "AF eavesdropper");
      break;
    case Scheme::dt:
      break;
  }
}

namespace {

void require_relays(const ChannelGains& g, std::size_t k, const char* what) {
  if (g.relay_count() < k) {
    throw DegenerateBeamformerError(std::string(what) + ": needs at least " +
                                    std::to_string(k) + " relays, have " +
                                    std::to_string(g.relay_count()));
  }
}

// Flip so the first component above 1e-9 of the largest magnitude is positive.
void canonical_sign(Vector& v) {
  const double scale = norm_inf(v);
  if (scale == 0.0) return;
  for (double x : v) {
    if (std::abs(x) > 1e-9 * scale) {
      if (x < 0.0) {
        for (double& y : v) y = -y;
      }
      return;
    }
  }
}

// Vertices of {x : cᵀx = 0, ‖x‖₁ ≤ 1} up to sign: pairs x_i = c_k, x_k = −c_i.
std::vector<Vector> nulled_l1_vertices(std::span<const double> c) {
  const std::size_t k = c.size();
  std::vector<Vector> out;
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) {
      Vector v(k, 0.0);
      v[i] = c[j];
      v[j] = -c[i];
      const double s = norm1(v);
      if (s == 0.0) continue;
      for (double& x : v) x /= s;
      out.push_back(std::move(v));
    }
  }
  return out;
}

Beamformer cj_vertex(const ChannelGains& g) {
  const std::size_t k = g.relay_count();
  Vector best;
  double best_obj = -1.0;
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j)
      for (std::size_t l = j + 1; l < k; ++l) {
        const std::array<std::size_t, 3> s{i, j, l};
        // Null vector of the 2×3 minor [g1_S; g2_S] is their cross product.
        const std::array<double, 3> a{g.g1[i], g.g1[j], g.g1[l]};
        const std::array<double, 3> b{g.g2[i], g.g2[j], g.g2[l]};
        const std::array<double, 3> x{a[1] * b[2] - a[2] * b[1],
                                      a[2] * b[0] - a[0] * b[2],
                                      a[0] * b[1] - a[1] * b[0]};
        const double n = std::abs(x[0]) + std::abs(x[1]) + std::abs(x[2]);
        if (n == 0.0) continue;
        Vector v(k, 0.0);
        for (int t = 0; t < 3; ++t) v[s[t]] = x[t] / n;
        const double e = dot(g.ge, v);
        if (e * e > best_obj) {
          best_obj = e * e;
          best = std::move(v);
        }
      }
  if (best.empty()) throw DegenerateBeamformerError("CJ: users' channels span every relay triple");
  return {best, Scheme::cj, 1.0, {}};
}

Beamformer cj_projection(const ChannelGains& g) {
  const std::array<Vector, 2> cols{g.g1, g.g2};
  const MatrixK p = orth_projection(std::span<const Vector>(cols));
  Vector v = p * (p * g.ge);
  const double n = norm1(v);
  if (n <= 1e-12 * norm1(g.ge)) {
    throw DegenerateBeamformerError("CJ: eavesdropper channel lies in the users' span");
  }
  for (double& x : v) x /= n;
  return {v, Scheme::cj, 1.0, {}};
}

double df_objective(const ChannelGains& g, double alpha, std::span<const double> d) {
  const double a = dot(g.g1, d);
  const double b = dot(g.g2, d);
  return alpha * a * a + (1.0 - alpha) * b * b;
}

Beamformer df_vertex(const ChannelGains& g, double alpha) {
  Vector best;
  double best_obj = -1.0;
  for (auto& v : nulled_l1_vertices(g.ge)) {
    const double o = df_objective(g, alpha, v);
    if (o > best_obj) {
      best_obj = o;
      best = std::move(v);
    }
  }
  if (best.empty()) throw DegenerateBeamformerError("DF: no eve-nulling direction");
  return {best, Scheme::df, 1.0, {}};
}

Beamformer df_projection(const ChannelGains& g, double alpha) {
  const MatrixK f = orth_projection(std::span<const double>(g.ge));
  MatrixK q = MatrixK::outer(g.g1, g.g1);
  q *= alpha;
  MatrixK q2 = MatrixK::outer(g.g2, g.g2);
  q2 *= 1.0 - alpha;
  q += q2;
  MatrixK m = f * q * f;
  // Restore exact symmetry lost in the triple product.
  m = 0.5 * (m + m.transposed());
  const EigenPair lead = leading_eigenvector(m);
  const double scale = alpha * dot(g.g1, g.g1) + (1.0 - alpha) * dot(g.g2, g.g2);
  if (!(lead.value > 1e-12 * scale)) {
    throw DegenerateBeamformerError("DF: leading eigenvalue is zero");
  }
  Vector d = f * lead.vector;
  const double n = norm1(d);
  for (double& x : d) x /= n;
  return {d, Scheme::df, 1.0, {}};
}

const Vector& user_channel(const ChannelGains& g, int user) {
  if (user == 1) return g.g1;
  if (user == 2) return g.g2;
  throw DomainError("user must be 1 or 2");
}

struct Pt {
  double s;
  double t;
};

double cross(const Pt& o, const Pt& a, const Pt& b) {
  return (a.s - o.s) * (b.t - o.t) - (a.t - o.t) * (b.s - o.s);
}

// Convex hull by monotone chain; returns indices in counter-clockwise order.
std::vector<std::size_t> hull_indices(const std::vector<Pt>& pts) {
  std::vector<std::size_t> idx(pts.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    if (pts[a].s != pts[b].s) return pts[a].s < pts[b].s;
    return pts[a].t < pts[b].t;
  });
  if (idx.size() < 3) return idx;
  std::vector<std::size_t> h(2 * idx.size());
  std::size_t n = 0;
  for (std::size_t i : idx) {
    while (n >= 2 && cross(pts[h[n - 2]], pts[h[n - 1]], pts[i]) <= 0.0) --n;
    h[n++] = i;
  }
  const std::size_t lower = n + 1;
  for (auto it = idx.rbegin() + 1; it != idx.rend(); ++it) {
    while (n >= lower && cross(pts[h[n - 2]], pts[h[n - 1]], pts[*it]) <= 0.0) --n;
    h[n++] = *it;
  }
  h.resize(n - 1);
  return h;
}

Beamformer af_vertex(const ChannelGains& g, const Vector& gj, double lambda,
                     const Vector& w, double a_bar) {
  const std::size_t k = g.relay_count();
  const Vector b = hadamard(g.hr, gj);
  const Vector e = hadamard(g.hr, g.ge);
  Vector c(k);
  for (std::size_t i = 0; i < k; ++i) c[i] = e[i] / w[i];

  // Polytope vertices in a-space and their images (bᵀa, g_jᵀa).
  std::vector<Vector> verts;
  std::vector<Pt> raw;
  for (auto& x : nulled_l1_vertices(c)) {
    Vector a(k);
    for (std::size_t i = 0; i < k; ++i) a[i] = x[i] * a_bar / w[i];
    const Pt p{dot(b, a), dot(gj, a)};
    verts.push_back(a);
    raw.push_back(p);
    for (double& y : a) y = -y;
    verts.push_back(std::move(a));
    raw.push_back({-p.s, -p.t});
  }

  Vector best(k, 0.0);
  double best_val = 0.0;  // a = 0
  if (verts.empty()) return {best, Scheme::af, a_bar, w};

  // Hull in axis-normalized coordinates; the objective uses raw ones.
  double ms = 0.0;
  double mt = 0.0;
  for (const Pt& p : raw) {
    ms = std::max(ms, std::abs(p.s));
    mt = std::max(mt, std::abs(p.t));
  }
  std::vector<Pt> unit(raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i) {
    unit[i] = {ms > 0.0 ? raw[i].s / ms : 0.0, mt > 0.0 ? raw[i].t / mt : 0.0};
  }
  const std::vector<std::size_t> hull = hull_indices(unit);

  auto value = [&](double s, double t) { return s * s - lambda * t * t; };
  for (std::size_t h = 0; h < hull.size(); ++h) {
    const std::size_t i0 = hull[h];
    const std::size_t i1 = hull[(h + 1) % hull.size()];
    const Pt p0 = raw[i0];
    const double ds = raw[i1].s - p0.s;
    const double dt = raw[i1].t - p0.t;
    const double quad = ds * ds - lambda * dt * dt;
    const double lin = 2.0 * (p0.s * ds - lambda * p0.t * dt);
    std::array<double, 3> taus{0.0, 1.0, 0.0};
    std::size_t nt = 2;
    if (quad < 0.0) taus[nt++] = std::clamp(-lin / (2.0 * quad), 0.0, 1.0);
    for (std::size_t q = 0; q < nt; ++q) {
      const double tau = taus[q];
      const double v = value(p0.s + tau * ds, p0.t + tau * dt);
      if (v > best_val) {
        best_val = v;
        for (std::size_t i = 0; i < k; ++i) {
          best[i] = (1.0 - tau) * verts[i0][i] + tau * verts[i1][i];
        }
      }
    }
  }
  canonical_sign(best);
  return {best, Scheme::af, a_bar, w};
}

Beamformer af_projection(const ChannelGains& g, const Vector& gj, double lambda,
                         const Vector& w, double a_bar) {
  const Vector b = hadamard(g.hr, gj);
  const Vector e = hadamard(g.hr, g.ge);
  const MatrixK f = orth_projection(std::span<const double>(e));
  MatrixK q = MatrixK::outer(b, b);
  MatrixK r = MatrixK::outer(gj, gj);
  r *= -lambda;
  q += r;
  MatrixK m = f * q * f;
  m = 0.5 * (m + m.transposed());
  const EigenPair lead = leading_eigenvector(m);
  Vector a = f * lead.vector;
  const double n = norm1(hadamard(w, a));
  if (n == 0.0) throw DegenerateBeamformerError("AF: projected eigenvector is zero");
  for (double& x : a) x *= a_bar / n;
  return {a, Scheme::af, a_bar, w};
}

}  // namespace

Beamformer cj_vector(const ChannelGains& g, Design design) {
  require_relays(g, 3, "CJ");
  Beamformer bf = design == Design::vertex ? cj_vertex(g) : cj_projection(g);
  const double e = dot(g.ge, bf.weights);
  if (std::abs(e) <= 1e-12 * norm_inf(g.ge)) {
    throw DegenerateBeamformerError("CJ: jamming cannot reach the eavesdropper");
  }
  if (e < 0.0) {
    for (double& x : bf.weights) x = -x;
  }
  return bf;
}

Beamformer df_vector(const ChannelGains& g, double alpha, Design design) {
  require_relays(g, 3, "DF");
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw DomainError("alpha must lie in [0, 1]");
  Beamformer bf = design == Design::vertex ? df_vertex(g, alpha) : df_projection(g, alpha);
  const double scale = std::max(norm_inf(g.g1), norm_inf(g.g2));
  if (df_objective(g, alpha, bf.weights) <= 1e-24 * scale * scale) {
    throw DegenerateBeamformerError("DF: relays cannot reach the users while nulling");
  }
  canonical_sign(bf.weights);
  return bf;
}

Vector af_surrogate_weights(const ChannelGains& g, const SchemeParams& p,
                            double amplitude, double clip_sigma) {
  if (!(clip_sigma >= 0.0)) throw DomainError("clip sigma must be >= 0");
  const double a_src = p.source_amplitude(amplitude);
  Vector w(g.relay_count());
  for (std::size_t i = 0; i < w.size(); ++i) w[i] = g.hr[i] * a_src + clip_sigma;
  for (double x : w) {
    if (!(x > 0.0)) throw DomainError("AF surrogate amplitude must be positive");
  }
  return w;
}

double af_auxiliary(const ChannelGains& g, int user, double lambda,
                    std::span<const double> a) {
  const Vector& gj = user_channel(g, user);
  const double s = dot(hadamard(g.hr, gj), a);
  const double t = dot(gj, a);
  return s * s - lambda * (1.0 + t * t);
}

double af_ratio(const ChannelGains& g, int user, std::span<const double> a) {
  const Vector& gj = user_channel(g, user);
  const double s = dot(hadamard(g.hr, gj), a);
  const double t = dot(gj, a);
  return s * s / (1.0 + t * t);
}

Beamformer af_vector_user(const ChannelGains& g, int user, double lambda,
                          const AfContext& ctx) {
  require_relays(g, 2, "AF");
  if (!(lambda >= 0.0)) throw DomainError("lambda must be >= 0");
  ctx.params.validate();
  const Vector& gj = user_channel(g, user);
  const Vector w = af_surrogate_weights(g, ctx.params, ctx.amplitude, ctx.clip_sigma);
  const double a_bar = ctx.params.relay_amplitude(ctx.amplitude);
  if (a_bar == 0.0) return {Vector(g.relay_count(), 0.0), Scheme::af, 0.0, w};
  return ctx.design == Design::vertex ? af_vertex(g, gj, lambda, w, a_bar)
                                      : af_projection(g, gj, lambda, w, a_bar);
}

DinkelbachResult af_dinkelbach(const ChannelGains& g, int user,
                               const AfContext& ctx, double tol) {
  Beamformer at0 = af_vector_user(g, user, 0.0, ctx);
  const double p0 = af_auxiliary(g, user, 0.0, at0.weights);
  if (!(p0 > 0.0)) return {0.0, std::move(at0), 0};
  auto p = [&](double mu) {
    const double lambda = mu * p0;
    const Beamformer bf = af_vector_user(g, user, lambda, ctx);
    return af_auxiliary(g, user, lambda, bf.weights) / p0;
  };
  const BisectResult r = bisect_decreasing(p, 0.0, 1.0, tol);
  const double lambda = r.root * p0;
  return {lambda, af_vector_user(g, user, lambda, ctx), r.iterations};
}

Beamformer af_combine(const Beamformer& a1, const Beamformer& a2, double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw DomainError("alpha must lie in [0, 1]");
  if (a1.weights.size() != a2.weights.size()) throw DomainError("af_combine: size mismatch");
  Beamformer out = a1;
  for (std::size_t i = 0; i < out.weights.size(); ++i) {
    out.weights[i] = alpha * a1.weights[i] + (1.0 - alpha) * a2.weights[i];
  }
  return out;
}

AfVectorResult af_vector(const ChannelGains& g, double alpha,
                         const AfContext& ctx, const AfMode& mode) {
  if (mode.fixed_lambda) {
    const Beamformer a1 = af_vector_user(g, 1, *mode.fixed_lambda, ctx);
    const Beamformer a2 = af_vector_user(g, 2, *mode.fixed_lambda, ctx);
    return {af_combine(a1, a2, alpha), 0};
  }
  const DinkelbachResult d1 = af_dinkelbach(g, 1, ctx);
  const DinkelbachResult d2 = af_dinkelbach(g, 2, ctx);
  return {af_combine(d1.beamformer, d2.beamformer, alpha),
          d1.iterations + d2.iterations};
}

}  // namespace vlcsec
