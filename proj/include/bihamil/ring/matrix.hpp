#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <optional>
#include <vector>

#include "bihamil/errors.hpp"
#include "bihamil/ring/scalar.hpp"

namespace bihamil {

inline bool is_zero(const Rational& q) { return sgn(q) == 0; }
inline bool is_zero(const Scalar& s) { return s.is_zero(); }
inline std::size_t pivot_cost(const Rational& q) {
  return mpz_sizeinbase(q.get_num_mpz_t(), 2) + mpz_sizeinbase(q.get_den_mpz_t(), 2);
}
inline std::size_t pivot_cost(const Scalar& s) { return s.complexity(); }

// Dense row-major matrix over an exact field (Rational or Scalar).
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : r_(rows), c_(cols), a_(rows * cols, T(0)) {}
  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }
  static Matrix from_rows(const std::vector<std::vector<T>>& rows) {
    Matrix m(rows.size(), rows.empty() ? 0 : rows[0].size());
    for (std::size_t i = 0; i < m.r_; ++i) {
      if (rows[i].size() != m.c_) throw PreconditionError("ragged matrix rows");
      for (std::size_t j = 0; j < m.c_; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }
  static Matrix from_columns(const std::vector<std::vector<T>>& cols, std::size_t rows) {
    Matrix m(rows, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j)
      for (std::size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
    return m;
  }

  std::size_t rows() const { return r_; }
  std::size_t cols() const { return c_; }
  bool square() const { return r_ == c_; }
  T& operator()(std::size_t i, std::size_t j) { return a_[i * c_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return a_[i * c_ + j]; }

  std::vector<T> column(std::size_t j) const {
    std::vector<T> v(r_);
    for (std::size_t i = 0; i < r_; ++i) v[i] = (*this)(i, j);
    return v;
  }
  Matrix columns(const std::vector<std::size_t>& idx) const {
    Matrix m(r_, idx.size());
    for (std::size_t k = 0; k < idx.size(); ++k)
      for (std::size_t i = 0; i < r_; ++i) m(i, k) = (*this)(i, idx[k]);
    return m;
  }
  Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    Matrix m(nr, nc);
    for (std::size_t i = 0; i < nr; ++i)
      for (std::size_t j = 0; j < nc; ++j) m(i, j) = (*this)(r0 + i, c0 + j);
    return m;
  }
  Matrix transpose() const {
    Matrix m(c_, r_);
    for (std::size_t i = 0; i < r_; ++i)
      for (std::size_t j = 0; j < c_; ++j) m(j, i) = (*this)(i, j);
    return m;
  }
  bool is_zero() const {
    return std::all_of(a_.begin(), a_.end(), [](const T& x) { return bihamil::is_zero(x); });
  }
  bool is_skew() const {
    if (!square()) return false;
    for (std::size_t i = 0; i < r_; ++i)
      for (std::size_t j = 0; j <= i; ++j)
        if ((*this)(i, j) != -(*this)(j, i)) return false;
    return true;
  }

  Matrix& operator+=(const Matrix& o) {
    check_same(o);
    for (std::size_t k = 0; k < a_.size(); ++k) a_[k] += o.a_[k];
    return *this;
  }
  Matrix& operator-=(const Matrix& o) {
    check_same(o);
    for (std::size_t k = 0; k < a_.size(); ++k) a_[k] -= o.a_[k];
    return *this;
  }
  Matrix& operator*=(const T& s) {
    for (auto& x : a_) x *= s;
    return *this;
  }
  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(Matrix a, const T& s) { return a *= s; }
  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.c_ != b.r_) throw PreconditionError("matrix shapes do not compose");
    Matrix m(a.r_, b.c_);
    for (std::size_t i = 0; i < a.r_; ++i)
      for (std::size_t k = 0; k < a.c_; ++k) {
        const T& x = a(i, k);
        if (bihamil::is_zero(x)) continue;
        for (std::size_t j = 0; j < b.c_; ++j)
          if (!bihamil::is_zero(b(k, j))) m(i, j) += x * b(k, j);
      }
    return m;
  }
  friend bool operator==(const Matrix& a, const Matrix& b) { return a.r_ == b.r_ && a.c_ == b.c_ && a.a_ == b.a_; }
  friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

  template <class F>
  auto map(F f) const {
    using U = decltype(f(a_[0]));
    Matrix<U> m(r_, c_);
    for (std::size_t i = 0; i < r_; ++i)
      for (std::size_t j = 0; j < c_; ++j) m(i, j) = f((*this)(i, j));
    return m;
  }

 private:
  void check_same(const Matrix& o) const {
    if (r_ != o.r_ || c_ != o.c_) throw PreconditionError("matrix shapes differ");
  }
  std::size_t r_ = 0, c_ = 0;
  std::vector<T> a_;
};

template <class T>
Matrix<T> hstack(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.rows() != b.rows()) throw PreconditionError("hstack row mismatch");
  Matrix<T> m(a.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = a(i, j);
    for (std::size_t j = 0; j < b.cols(); ++j) m(i, a.cols() + j) = b(i, j);
  }
  return m;
}

template <class T>
Matrix<T> vstack(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.cols() != b.cols()) throw PreconditionError("vstack column mismatch");
  Matrix<T> m(a.rows() + b.rows(), a.cols());
  for (std::size_t j = 0; j < a.cols(); ++j) {
    for (std::size_t i = 0; i < a.rows(); ++i) m(i, j) = a(i, j);
    for (std::size_t i = 0; i < b.rows(); ++i) m(a.rows() + i, j) = b(i, j);
  }
  return m;
}

template <class T>
struct Echelon {
  Matrix<T> reduced;                 // reduced row echelon form
  std::vector<std::size_t> pivots;  // pivot column of each nonzero row
};

// Gauss-Jordan elimination choosing the cheapest nonzero pivot in each column.
template <class T>
Echelon<T> rref(Matrix<T> m) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t best = m.rows();
    std::size_t best_cost = 0;
    for (std::size_t i = row; i < m.rows(); ++i) {
      if (is_zero(m(i, col))) continue;
      std::size_t c = pivot_cost(m(i, col));
      if (best == m.rows() || c < best_cost) {
        best = i;
        best_cost = c;
      }
    }
    if (best == m.rows()) continue;
    if (best != row)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(best, j), m(row, j));
    T inv = T(1) / m(row, col);
    for (std::size_t j = col; j < m.cols(); ++j)
      if (!is_zero(m(row, j))) m(row, j) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == row || is_zero(m(i, col))) continue;
      T f = m(i, col);
      for (std::size_t j = col; j < m.cols(); ++j)
        if (!is_zero(m(row, j))) m(i, j) -= f * m(row, j);
    }
    pivots.push_back(col);
    ++row;
  }
  return {std::move(m), std::move(pivots)};
}

template <class T>
std::size_t rank(const Matrix<T>& m) {
  return rref(m).pivots.size();
}

// Columns form a basis of the kernel.
template <class T>
Matrix<T> nullspace(const Matrix<T>& m) {
  Echelon<T> e = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : e.pivots) is_pivot[p] = true;
  std::vector<std::size_t> free;
  for (std::size_t j = 0; j < m.cols(); ++j)
    if (!is_pivot[j]) free.push_back(j);
  Matrix<T> basis(m.cols(), free.size());
  for (std::size_t k = 0; k < free.size(); ++k) {
    basis(free[k], k) = T(1);
    for (std::size_t r = 0; r < e.pivots.size(); ++r) basis(e.pivots[r], k) = -e.reduced(r, free[k]);
  }
  return basis;
}

// Columns form a basis of the column space (a subset of the input columns).
template <class T>
Matrix<T> column_basis(const Matrix<T>& m) {
  return m.columns(rref(m).pivots);
}

// Some X with a X = b, or nullopt when inconsistent.
template <class T>
std::optional<Matrix<T>> solve(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.rows() != b.rows()) throw PreconditionError("solve: row mismatch");
  Echelon<T> e = rref(hstack(a, b));
  Matrix<T> x(a.cols(), b.cols());
  for (std::size_t r = 0; r < e.pivots.size(); ++r) {
    std::size_t p = e.pivots[r];
    if (p >= a.cols()) return std::nullopt;
    for (std::size_t j = 0; j < b.cols(); ++j) x(p, j) = e.reduced(r, a.cols() + j);
  }
  return x;
}

template <class T>
std::optional<Matrix<T>> inverse(const Matrix<T>& a) {
  if (!a.square()) throw PreconditionError("inverse of a non-square matrix");
  Echelon<T> e = rref(hstack(a, Matrix<T>::identity(a.rows())));
  if (e.pivots.size() < a.rows() || (a.rows() > 0 && e.pivots[a.rows() - 1] != a.rows() - 1)) return std::nullopt;
  return e.reduced.block(0, a.cols(), a.rows(), a.rows());
}

template <class T>
T determinant(Matrix<T> m) {
  if (!m.square()) throw PreconditionError("determinant of a non-square matrix");
  T det(1);
  const std::size_t n = m.rows();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t best = n, best_cost = 0;
    for (std::size_t i = col; i < n; ++i) {
      if (is_zero(m(i, col))) continue;
      std::size_t c = pivot_cost(m(i, col));
      if (best == n || c < best_cost) {
        best = i;
        best_cost = c;
      }
    }
    if (best == n) return T(0);
    if (best != col) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(best, j), m(col, j));
      det = -det;
    }
    det *= m(col, col);
    T inv = T(1) / m(col, col);
    for (std::size_t i = col + 1; i < n; ++i) {
      if (is_zero(m(i, col))) continue;
      T f = m(i, col) * inv;
      for (std::size_t j = col; j < n; ++j)
        if (!is_zero(m(col, j))) m(i, j) -= f * m(col, j);
    }
  }
  return det;
}

template <class T>
T trace(const Matrix<T>& m) {
  T s(0);
  for (std::size_t i = 0; i < std::min(m.rows(), m.cols()); ++i) s += m(i, i);
  return s;
}

// Characteristic polynomial det(tI - m), ascending coefficients, monic
// (Faddeev-LeVerrier).
template <class T>
std::vector<T> charpoly(const Matrix<T>& m) {
  if (!m.square()) throw PreconditionError("characteristic polynomial of a non-square matrix");
  const std::size_t n = m.rows();
  std::vector<T> c(n + 1, T(0));
  c[n] = T(1);
  Matrix<T> mk(n, n);  // M_0 = 0
  for (std::size_t k = 1; k <= n; ++k) {
    Matrix<T> next = m * mk;
    for (std::size_t i = 0; i < n; ++i) next(i, i) += c[n - k + 1];
    mk = std::move(next);
    T tr = trace(m * mk);
    c[n - k] = -tr / T(static_cast<long>(k));
  }
  return c;
}

// Basis (columns) of the intersection of two column spaces.
template <class T>
Matrix<T> intersect(const Matrix<T>& u, const Matrix<T>& v) {
  if (u.rows() != v.rows()) throw PreconditionError("intersect: ambient dimension mismatch");
  Matrix<T> ub = column_basis(u);
  Matrix<T> vb = column_basis(v);
  if (ub.cols() == 0 || vb.cols() == 0) return Matrix<T>(u.rows(), 0);
  Matrix<T> k = nullspace(hstack(ub, vb * T(-1)));
  Matrix<T> coeff = k.block(0, 0, ub.cols(), k.cols());
  return column_basis(ub * coeff);
}

template <class T>
bool same_span(const Matrix<T>& u, const Matrix<T>& v) {
  std::size_t ru = rank(u), rv = rank(v);
  return ru == rv && rank(hstack(u, v)) == ru;
}

template <class T>
bool contained_in(const Matrix<T>& u, const Matrix<T>& v) {
  return rank(hstack(v, u)) == rank(v);
}

using QMatrix = Matrix<Rational>;
using SMatrix = Matrix<Scalar>;

inline QMatrix evaluate(const SMatrix& m, const std::vector<Rational>& point) {
  return m.map([&](const Scalar& s) { return s.evaluate(point); });
}

inline SMatrix to_scalar(const QMatrix& m) {
  return m.map([](const Rational& q) { return Scalar(q); });
}

}  // namespace bihamil
