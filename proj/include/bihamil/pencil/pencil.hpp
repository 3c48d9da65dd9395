#pragma once

#include <cstddef>
#include <vector>

#include "bihamil/ring/matrix.hpp"
#include "bihamil/ring/unipoly.hpp"

namespace bihamil {

// Pair of skew matrices P_ab = lambda(e_a*, e_b*) over Rational (pointwise) or
// Scalar (over a rational function field).
template <class T>
struct SkewPencilT {
  Matrix<T> lambda;
  Matrix<T> lambda1;
  std::size_t dim() const { return lambda.rows(); }
  Matrix<T> at(const Rational& t) const;  // (1 - t) lambda + t lambda1
};
using SkewPencil = SkewPencilT<Rational>;
using SymbolicPencil = SkewPencilT<Scalar>;

// Validates shapes and skew-symmetry.
SkewPencil make_pencil(QMatrix lambda, QMatrix lambda1);
SymbolicPencil make_pencil(SMatrix lambda, SMatrix lambda1);

// {0, 1, ..., floor(m/2) + 2}, each value bumped past any excluded one.
std::vector<Rational> probe_params(std::size_t m, const std::vector<Rational>& exclude = {});

struct RankProfile {
  std::size_t rank = 0;
  std::vector<Rational> probes;
  std::vector<std::size_t> probe_ranks;
  std::vector<Rational> exceptional;  // probes with rank below `rank`
};
template <class T>
RankProfile generic_rank(const SkewPencilT<T>& p, const std::vector<Rational>& exclude = {});

template <class T>
bool is_maximal(const SkewPencilT<T>& p, const RankProfile& prof);

// Intersection of the images of the pencil over the non-exceptional probes,
// as a column basis. Throws PreconditionError for a non-maximal pencil.
template <class T>
Matrix<T> primary_axis(const SkewPencilT<T>& p, const std::vector<Rational>& exclude = {});

template <class T>
struct DecompositionT {
  std::size_t dim = 0;
  RankProfile profile;
  std::size_t corank = 0;
  std::vector<int> kronecker_dims;  // ascending
  std::size_t symplectic_dim = 0;
  std::size_t web_dim = 0;  // m - dim of the primary axis
  Matrix<T> primary_axis;     // dim x a
  Matrix<T> secondary_axis;   // dim x s, kernel of the restricted form
  // Induced forms on a complement of the secondary axis inside the primary one,
  // and K with w1 = w(K., .) there.
  Matrix<T> complement;  // dim x symplectic_dim
  Matrix<T> omega;
  Matrix<T> omega1;
  Matrix<T> k_endomorphism;
  UniPoly symplectic_charpoly;  // charpoly of K
  UniPoly recursion_charpoly;   // charpoly of K^{-1}
  // Codimension of the intersection of the first j + 1 generic images.
  std::vector<std::size_t> intersection_codims;
};
using PencilDecomposition = DecompositionT<Rational>;
using SymbolicDecomposition = DecompositionT<Scalar>;

// Kronecker-symplectic decomposition of a maximal pencil. Throws
// PreconditionError if not maximal and DefectError on an internal invariant
// violation.
template <class T>
DecompositionT<T> decompose(const SkewPencilT<T>& p, const std::vector<Rational>& exclude = {});

// Block sizes recovered from the codimensions c_j of iterated image
// intersections: #{blocks of size >= 2j+1} = c_j - c_{j-1}.
std::vector<int> kronecker_dims_from_codims(std::size_t corank, const std::vector<std::size_t>& codims);

}  // namespace bihamil
