#include "vlcsec/numerics.hpp"

#include <cmath>
#include <algorithm>
#include <numeric>
#include <utility>

namespace vlcsec {

double dot(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw DomainError("dot: size mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm1(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += std::abs(x);
  return s;
}

double norm2(std::span<const double> v) {
  double scale = norm_inf(v);
  if (scale == 0.0) return 0.0;
  double s = 0.0;
  for (double x : v) s += (x / scale) * (x / scale);
  return scale * std::sqrt(s);
}

double norm_inf(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

Vector hadamard(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw DomainError("hadamard: size mismatch");
  Vector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] * b[i];
  return out;
}

Vector scaled(std::span<const double> v, double s) {
  Vector out(v.begin(), v.end());
  for (double& x : out) x *= s;
  return out;
}

MatrixK MatrixK::identity(std::size_t n) {
  MatrixK m(n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

MatrixK MatrixK::outer(std::span<const double> u, std::span<const double> v) {
  if (u.size() != v.size()) throw DomainError("outer: size mismatch");
  MatrixK m(u.size());
  for (std::size_t i = 0; i < u.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j) m(i, j) = u[i] * v[j];
  return m;
}

Vector MatrixK::operator*(std::span<const double> v) const {
  if (v.size() != n_) throw DomainError("matrix-vector: size mismatch");
  Vector out(n_, 0.0);
  for (std::size_t i = 0; i < n_; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < n_; ++j) s += (*this)(i, j) * v[j];
    out[i] = s;
  }
  return out;
}

MatrixK MatrixK::operator*(const MatrixK& rhs) const {
  if (rhs.n_ != n_) throw DomainError("matrix-matrix: size mismatch");
  MatrixK out(n_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t k = 0; k < n_; ++k) {
      const double a = (*this)(i, k);
      if (a == 0.0) continue;
      for (std::size_t j = 0; j < n_; ++j) out(i, j) += a * rhs(k, j);
    }
  return out;
}

MatrixK& MatrixK::operator+=(const MatrixK& rhs) {
  if (rhs.n_ != n_) throw DomainError("matrix add: size mismatch");
  for (std::size_t i = 0; i < a_.size(); ++i) a_[i] += rhs.a_[i];
  return *this;
}

MatrixK& MatrixK::operator*=(double s) {
  for (double& x : a_) x *= s;
  return *this;
}

MatrixK MatrixK::transposed() const {
  MatrixK t(n_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

double MatrixK::norm_inf() const {
  double m = 0.0;
  for (std::size_t i = 0; i < n_; ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < n_; ++j) row += std::abs((*this)(i, j));
    m = std::max(m, row);
  }
  return m;
}

bool MatrixK::is_symmetric(double rel_tol) const {
  double worst = 0.0;
  for (std::size_t i = 0; i < n_; ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < n_; ++j)
      row += std::abs((*this)(i, j) - (*this)(j, i));
    worst = std::max(worst, row);
  }
  return worst <= rel_tol * norm_inf();
}

MatrixK orth_projection(std::span<const Vector> columns) {
  if (columns.empty()) throw DomainError("orth_projection: no columns");
  const std::size_t k = columns.front().size();
  for (const auto& c : columns) {
    if (c.size() != k) throw DomainError("orth_projection: ragged columns");
  }
  if (columns.size() >= k) {
    throw DomainError("orth_projection: need fewer columns than dimension");
  }

  double largest = 0.0;
  for (const auto& c : columns) largest = std::max(largest, norm2(c));
  if (largest == 0.0) throw RankDeficientError("orth_projection: zero columns");

  std::vector<Vector> q;
  q.reserve(columns.size());
  for (const auto& c : columns) {
    Vector v = c;
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& qi : q) {
        const double r = dot(qi, v);
        for (std::size_t i = 0; i < k; ++i) v[i] -= r * qi[i];
      }
    }
    const double r = norm2(v);
    if (r <= 1e-12 * largest) {
      throw RankDeficientError("orth_projection: columns are linearly dependent");
    }
    for (double& x : v) x /= r;
    q.push_back(std::move(v));
  }

  MatrixK p = MatrixK::identity(k);
  for (const auto& qi : q)
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) p(i, j) -= qi[i] * qi[j];
  // Symmetrize away rounding asymmetry.
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j) {
      const double s = 0.5 * (p(i, j) + p(j, i));
      p(i, j) = s;
      p(j, i) = s;
    }
  return p;
}

MatrixK orth_projection(std::span<const double> column) {
  const Vector c(column.begin(), column.end());
  return orth_projection(std::span<const Vector>(&c, 1));
}

namespace {

void apply_sign_convention(Vector& v) {
  for (double x : v) {
    if (std::abs(x) > 1e-9) {
      if (x < 0.0) {
        for (double& y : v) y = -y;
      }
      return;
    }
  }
  // All components tiny: fall back to the largest one.
  auto it = std::max_element(v.begin(), v.end(), [](double a, double b) {
    return std::abs(a) < std::abs(b);
  });
  if (it != v.end() && *it < 0.0) {
    for (double& y : v) y = -y;
  }
}

}  // namespace

std::vector<EigenPair> symmetric_eigen(const MatrixK& m) {
  if (!m.is_symmetric()) throw DomainError("symmetric_eigen: matrix is not symmetric");
  const std::size_t n = m.size();
  if (n == 0) return {};

  // Work on a scaled copy so that tiny gain-derived entries do not meet the
  // underflow guard below.
  const double scale = m.norm_inf();
  MatrixK a = m;
  if (scale > 0.0) a *= 1.0 / scale;
  MatrixK v = MatrixK::identity(n);

  auto off_norm = [&] {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (i != j) s += a(i, j) * a(i, j);
    return std::sqrt(s);
  };

  constexpr int kMaxSweeps = 100;
  int sweep = 0;
  for (; sweep < kMaxSweeps; ++sweep) {
    if (off_norm() <= 1e-300) break;
    bool rotated = false;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double app = a(p, p);
        const double aqq = a(q, q);
        // Skip rotations that cannot change the diagonal at double precision.
        const double g = 100.0 * std::abs(apq);
        if (sweep > 3 && std::abs(app) + g == std::abs(app) &&
            std::abs(aqq) + g == std::abs(aqq)) {
          a(p, q) = a(q, p) = 0.0;
          continue;
        }
        rotated = true;
        const double theta = (aqq - app) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a(k, p);
          const double akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a(p, k);
          const double aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        a(p, q) = a(q, p) = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
          const double vkp = v(k, p);
          const double vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
    if (!rotated) break;
  }
  if (sweep == kMaxSweeps) throw ConvergenceError("Jacobi eigensolver did not converge");

  std::vector<EigenPair> out(n);
  for (std::size_t j = 0; j < n; ++j) {
    out[j].value = a(j, j) * scale;
    out[j].vector.resize(n);
    for (std::size_t i = 0; i < n; ++i) out[j].vector[i] = v(i, j);
    const double nv = norm2(out[j].vector);
    for (double& x : out[j].vector) x /= nv;
    apply_sign_convention(out[j].vector);
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const EigenPair& l, const EigenPair& r) {
                     return l.value > r.value;
                   });
  return out;
}

EigenPair leading_eigenvector(const MatrixK& m) {
  if (m.size() == 0) throw DomainError("leading_eigenvector: empty matrix");
  auto all = symmetric_eigen(m);
  return std::move(all.front());
}

}  // namespace vlcsec
