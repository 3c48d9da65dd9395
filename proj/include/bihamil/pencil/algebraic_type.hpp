#pragma once

#include <vector>

#include "bihamil/ring/matrix.hpp"
#include "bihamil/ring/unipoly.hpp"

namespace bihamil {

// Similarity fingerprint: charpoly, its square-free decomposition over Q, and
// rank(p(K)^a) for every square-free factor p and a = 1..m.
struct AlgebraicType {
  UniPoly charpoly;
  std::vector<SquareFreeFactor> factors;
  std::vector<std::vector<std::size_t>> rank_fingerprint;  // [factor][a - 1]

  // Product of p^e with e the first power at which rank(p(K)^e) stabilizes.
  UniPoly minimal_polynomial() const;
  friend bool operator==(const AlgebraicType& a, const AlgebraicType& b);
  friend bool operator!=(const AlgebraicType& a, const AlgebraicType& b) { return !(a == b); }
};

AlgebraicType algebraic_type(const QMatrix& k);

// Same factor degrees, multiplicities and rank fingerprints; the eigenvalues
// themselves may differ.
bool same_shape(const AlgebraicType& a, const AlgebraicType& b);

// Newton identities. Power sums p_1..p_s and elementary symmetric e_1..e_s.
template <class T>
std::vector<T> elementary_from_power_sums(const std::vector<T>& p);
template <class T>
std::vector<T> power_sums_from_elementary(const std::vector<T>& e);

// Monic t^s - e_1 t^{s-1} + e_2 t^{s-2} - ... from power sums, and back.
UniPoly charpoly_from_power_sums(const std::vector<Scalar>& p);
std::vector<Scalar> power_sums_from_charpoly(const UniPoly& monic);

// tr(K^k) for k = 1..count.
template <class T>
std::vector<T> trace_powers(const Matrix<T>& k, std::size_t count);

}  // namespace bihamil
