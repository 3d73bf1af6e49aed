#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "vlcsec/errors.hpp"

namespace vlcsec {

using Vector = std::vector<double>;

double dot(std::span<const double> a, std::span<const double> b);
double norm1(std::span<const double> v);
double norm2(std::span<const double> v);
double norm_inf(std::span<const double> v);
// Elementwise product a∘b.
Vector hadamard(std::span<const double> a, std::span<const double> b);
Vector scaled(std::span<const double> v, double s);

// Dense K×K matrix, row-major. K is small (relay counts up to ~16), so no
// attempt is made at blocking or sparsity.
class MatrixK {
 public:
  MatrixK() = default;
  explicit MatrixK(std::size_t n) : n_(n), a_(n * n, 0.0) {}

  static MatrixK identity(std::size_t n);
  // u vᵀ
  static MatrixK outer(std::span<const double> u, std::span<const double> v);

  std::size_t size() const { return n_; }
  double& operator()(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
  double operator()(std::size_t i, std::size_t j) const {
    return a_[i * n_ + j];
  }

  Vector operator*(std::span<const double> v) const;
  MatrixK operator*(const MatrixK& rhs) const;
  MatrixK& operator+=(const MatrixK& rhs);
  MatrixK& operator*=(double s);

  MatrixK transposed() const;
  double norm_inf() const;  // max absolute row sum
  // ‖M − Mᵀ‖∞ ≤ rel_tol·‖M‖∞
  bool is_symmetric(double rel_tol = 1e-12) const;

 private:
  std::size_t n_ = 0;
  std::vector<double> a_;
};

inline MatrixK operator+(MatrixK a, const MatrixK& b) { return a += b; }
inline MatrixK operator*(double s, MatrixK m) { return m *= s; }

// Orthogonal projector onto the complement of span(columns):
// I − B(BᵀB)⁻¹Bᵀ, computed as I − QQᵀ from a re-orthogonalized Gram–Schmidt
// factorization of B. Throws DomainError when there are K or more columns
// and RankDeficientError when a column's residual falls below
// 1e-12 × the largest column norm.
MatrixK orth_projection(std::span<const Vector> columns);
MatrixK orth_projection(std::span<const double> column);

struct EigenPair {
  Vector vector;  // unit L2 norm
  double value = 0.0;
};

// Full eigen-decomposition of a symmetric matrix by cyclic Jacobi rotations,
// eigenvalues in descending order. Each eigenvector follows the sign
// convention of leading_eigenvector.
std::vector<EigenPair> symmetric_eigen(const MatrixK& m);

// Eigenpair of the largest algebraic eigenvalue. The first component with
// magnitude above 1e-9 is made positive.
EigenPair leading_eigenvector(const MatrixK& m);

struct BisectResult {
  double root = 0.0;
  int iterations = 0;
};

// Root of a decreasing function with f(lo) > 0. `hi` is doubled (at most 60
// times) until f(hi) <= 0. Stops when |f| <= tol, when the bracket is
// narrower than tol·max(1, |root|), or when it is narrower than
// rel_width·|root| (rel_width = 0 disables that test).
template <class F>
BisectResult bisect_decreasing(F&& f, double lo, double hi, double tol,
                               double rel_width = 0.0) {
  if (!(hi > lo)) throw DomainError("bisection requires hi > lo");
  double flo = f(lo);
  if (flo <= 0.0) {
    if (flo == 0.0 || std::abs(flo) <= tol) return {lo, 0};
    throw ConvergenceError("bisection bracketing failed: f(lo) < 0");
  }
  double fhi = f(hi);
  int doublings = 0;
  while (fhi > 0.0) {
    if (++doublings > 60) {
      throw ConvergenceError("bisection bracketing failed: no sign change");
    }
    lo = hi;
    hi *= 2.0;
    fhi = f(hi);
  }

  BisectResult out{hi, 0};
  for (int it = 1; it <= 2000; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) {  // bracket exhausted at double resolution
      out = {mid, it};
      return out;
    }
    const double fm = f(mid);
    out = {mid, it};
    if (std::abs(fm) <= tol) return out;
    if (fm > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
    const double width = hi - lo;
    const double at = 0.5 * (lo + hi);
    if (width <= tol * std::max(1.0, std::abs(at)) ||
        (rel_width > 0.0 && width <= rel_width * std::abs(at))) {
      out.root = at;
      return out;
    }
  }
  throw ConvergenceError("bisection did not converge");
}

}  // namespace vlcsec
