#pragma once

#include "bihamil/chart/calculus.hpp"
#include "bihamil/ring/unipoly.hpp"
#include "support/field_gen.hpp"

namespace gen {

using bihamil::SMatrix;
using bihamil::UniPoly;

// s(Q u) as a function of u.
inline Scalar substitute_linear(const Scalar& s, const QMatrix& q) {
  const std::size_t n = q.rows();
  std::vector<Polynomial> images;
  for (std::size_t i = 0; i < n; ++i) {
    Polynomial p(n, Rational(0));
    for (std::size_t j = 0; j < n; ++j) p += Polynomial::variable(n, j) * q(i, j);
    images.push_back(p);
  }
  return bihamil::compose(s, n, images);
}

// G expressed in coordinates u with x = Q u: Q^{-1} G(Q u) Q.
inline Tensor11 linear_change(const Tensor11& g, const QMatrix& q) {
  QMatrix qi = *bihamil::inverse(q);
  SMatrix m = g.matrix().map([&](const Scalar& s) { return substitute_linear(s, q); });
  return Tensor11::from_matrix(g.chart(), bihamil::to_scalar(qi) * m * bihamil::to_scalar(q));
}

inline UniPoly substitute_linear(const UniPoly& p, const QMatrix& q) {
  std::vector<Scalar> c;
  for (const auto& s : p.coeffs()) c.push_back(substitute_linear(s, q));
  return UniPoly(c);
}

// Torsion-free block sum on coordinates (first n1 | last n2), conjugated by Q.
struct SplitInstance {
  Tensor11 g;
  UniPoly phi1, phi2;
  QMatrix image1, image2;  // expected column spans
};

inline SplitInstance split_instance(std::mt19937_64& rng, std::size_t n1, std::size_t n2, bool conjugate) {
  const std::size_t n = n1 + n2;
  Chart c = chart(n);
  Tensor11 g(c);
  UniPoly phi1 = UniPoly::from_rationals({1}), phi2 = UniPoly::from_rationals({1});
  // First block: distinct affine eigenvalues f_i(x_i) = 10 i + u_i x_i.
  for (std::size_t i = 0; i < n1; ++i) {
    Scalar f = Scalar(Rational(10 * static_cast<long>(i + 1))) +
               Scalar(nonzero_rational(rng)) * c.coordinate(i) * Scalar(static_cast<long>(rng() % 2));
    g.add(static_cast<int>(i), static_cast<int>(i), f);
    phi1 = phi1 * UniPoly::linear_root(f);
  }
  // Second block: constant eigenvalue with a random nilpotent part.
  Rational e = -1 - static_cast<long>(rng() % 3);
  for (std::size_t i = n1; i < n; ++i) {
    g.add(static_cast<int>(i), static_cast<int>(i), Scalar(e));
    for (std::size_t j = i + 1; j < n; ++j)
      if (rng() % 2) g.add(static_cast<int>(i), static_cast<int>(j), Scalar(small_rational(rng, 3, 1)));
    phi2 = phi2 * UniPoly::linear_root(Scalar(e));
  }
  QMatrix e1(n, n1), e2(n, n2);
  for (std::size_t i = 0; i < n1; ++i) e1(i, i) = 1;
  for (std::size_t i = 0; i < n2; ++i) e2(n1 + i, i) = 1;
  if (!conjugate) return {g, phi1, phi2, e1, e2};
  QMatrix q = invertible_matrix(rng, n);
  QMatrix qi = *bihamil::inverse(q);
  return {linear_change(g, q), substitute_linear(phi1, q), substitute_linear(phi2, q), qi * e1, qi * e2};
}

}  // namespace gen
