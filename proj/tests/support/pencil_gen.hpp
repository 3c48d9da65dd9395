#pragma once

#include <algorithm>

#include "bihamil/pencil/pencil.hpp"
#include "support/gen.hpp"

namespace gen {

using bihamil::SkewPencil;

// Direct sum of canonical Kronecker blocks and symplectic blocks, with the
// answers that are known blockwise.
struct PlantedPencil {
  SkewPencil pencil;
  std::vector<int> kronecker_dims;     // ascending
  std::size_t symplectic_dim = 0;
  QMatrix k;                           // planted endomorphism on the symplectic part
  QMatrix axis;                        // primary axis, columns
  QMatrix secondary;                   // secondary axis, columns
};

// Kronecker block of size 2k+1 on (u_1..u_k, w_0..w_k):
//   lambda = sum u_i ^ w_{i-1},  lambda1 = sum u_i ^ w_i.
// Symplectic block on (q_1..q_p, p_1..p_p) with W = [0 I; -I 0],
// K = diag(A, A^T), W1 = K^T W, bivectors -W^{-1} and -W1^{-1}.
inline PlantedPencil planted(const std::vector<int>& kron, const std::vector<QMatrix>& symp_blocks) {
  std::size_t m = 0;
  for (int d : kron) m += static_cast<std::size_t>(d);
  for (const auto& a : symp_blocks) m += 2 * a.rows();
  PlantedPencil out;
  QMatrix l(m, m), l1(m, m);
  std::vector<std::vector<Rational>> axis_cols, sec_cols;
  auto unit = [&](std::size_t i) {
    std::vector<Rational> v(m, Rational(0));
    v[i] = 1;
    return v;
  };
  std::size_t off = 0;
  std::vector<int> sorted = kron;
  std::sort(sorted.begin(), sorted.end());
  for (int d : sorted) {
    std::size_t k = static_cast<std::size_t>(d - 1) / 2;
    auto u = [&](std::size_t i) { return off + i - 1; };  // i = 1..k
    auto w = [&](std::size_t i) { return off + k + i; };  // i = 0..k
    for (std::size_t i = 1; i <= k; ++i) {
      l(u(i), w(i - 1)) += 1;
      l(w(i - 1), u(i)) -= 1;
      l1(u(i), w(i)) += 1;
      l1(w(i), u(i)) -= 1;
      axis_cols.push_back(unit(u(i)));
      sec_cols.push_back(unit(u(i)));
    }
    off += static_cast<std::size_t>(d);
  }
  std::size_t sdim = 0;
  for (const auto& a : symp_blocks) sdim += 2 * a.rows();
  QMatrix kk(sdim, sdim);
  std::size_t koff = 0;
  for (const auto& a : symp_blocks) {
    const std::size_t p = a.rows();
    QMatrix w(2 * p, 2 * p), kb(2 * p, 2 * p);
    for (std::size_t i = 0; i < p; ++i) {
      w(i, p + i) = 1;
      w(p + i, i) = -1;
    }
    for (std::size_t i = 0; i < p; ++i)
      for (std::size_t j = 0; j < p; ++j) {
        kb(i, j) = a(i, j);
        kb(p + i, p + j) = a(j, i);
      }
    QMatrix w1 = kb.transpose() * w;
    QMatrix b = *bihamil::inverse(w) * Rational(-1);
    QMatrix b1 = *bihamil::inverse(w1) * Rational(-1);
    for (std::size_t i = 0; i < 2 * p; ++i) {
      for (std::size_t j = 0; j < 2 * p; ++j) {
        l(off + i, off + j) = b(i, j);
        l1(off + i, off + j) = b1(i, j);
        kk(koff + i, koff + j) = kb(i, j);
      }
      axis_cols.push_back(unit(off + i));
    }
    off += 2 * p;
    koff += 2 * p;
  }
  out.pencil = bihamil::make_pencil(l, l1);
  out.kronecker_dims = sorted;
  out.symplectic_dim = sdim;
  out.k = kk;
  out.axis = QMatrix::from_columns(axis_cols, m);
  out.secondary = QMatrix::from_columns(sec_cols, m);
  return out;
}

// Change of basis v -> Q v: P -> Q P Q^T, subspaces -> Q V.
inline PlantedPencil conjugate(const PlantedPencil& p, const QMatrix& q) {
  PlantedPencil out = p;
  out.pencil = bihamil::make_pencil(q * p.pencil.lambda * q.transpose(), q * p.pencil.lambda1 * q.transpose());
  out.axis = q * p.axis;
  out.secondary = q * p.secondary;
  return out;
}

// Random planted pencil of total dimension <= max_dim.
inline PlantedPencil random_planted(std::mt19937_64& rng, std::size_t max_dim) {
  std::vector<int> kron;
  std::vector<QMatrix> symp;
  std::size_t used = 0;
  std::size_t target = 1 + rng() % max_dim;
  while (used < target) {
    std::size_t left = target - used;
    if (left >= 2 && rng() % 2 == 0) {
      std::size_t p = 1 + rng() % std::min<std::size_t>(left / 2, 2);
      QMatrix a = invertible_matrix(rng, p);
      if (rng() % 3 == 0) {  // repeated eigenvalues
        a = QMatrix::identity(p) * nonzero_rational(rng);
        if (p > 1) a(0, 1) = 1;
      }
      symp.push_back(a);
      used += 2 * p;
    } else {
      int d = 1 + 2 * static_cast<int>(rng() % ((left + 1) / 2));
      kron.push_back(d);
      used += static_cast<std::size_t>(d);
    }
  }
  PlantedPencil p = planted(kron, symp);
  return conjugate(p, invertible_matrix(rng, p.pencil.dim()));
}

}  // namespace gen
