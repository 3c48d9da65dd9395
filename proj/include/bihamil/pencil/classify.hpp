#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bihamil/chart/fields.hpp"
#include "bihamil/pencil/algebraic_type.hpp"
#include "bihamil/pencil/pencil.hpp"

namespace bihamil {

struct ClassifyConfig {
  // Cloud points p + o e_i for every coordinate i and every offset o.
  std::vector<Rational> offsets{Rational(1, 7), Rational(-1, 11)};
  std::vector<Rational> exclude;  // pencil parameters never probed
  bool trace_differentials_on_cloud = true;
};

struct PointSummary {
  Point point;
  bool evaluated = false;
  std::string problem;  // pole, non-maximal pencil, ...
  std::size_t generic_rank = 0;
  std::size_t symplectic_dim = 0;
  std::vector<int> kronecker_dims;
  std::optional<AlgebraicType> type;  // of the symplectic-factor endomorphism
  // Rank of span{dg_1, ..., dg_{2m'}} with g_k = tr(K^k); empty when the
  // structure is not constant along some coordinate line through the point.
  std::optional<std::size_t> trace_differential_rank;
};

struct RegularityReport {
  PointSummary center;
  std::vector<PointSummary> cloud;
  bool rank_constant = true;
  bool symplectic_dim_constant = true;
  bool type_constant = true;
  bool trace_rank_constant = true;
  bool regular = false;  // all four, on the sampled cloud only
  // Necessary condition at the center: the differentials of the charpoly
  // coefficients of K span a space of the same dimension as their
  // restrictions to the primary axis.
  std::optional<std::size_t> coefficient_differential_rank;
  std::optional<std::size_t> restricted_differential_rank;
  bool necessary_condition = false;
};

PointSummary summarize_point(const Multivector& lambda, const Multivector& lambda1, const Point& p,
                             const ClassifyConfig& cfg, bool with_traces);

RegularityReport classify_point(const Multivector& lambda, const Multivector& lambda1, const Point& p,
                                const ClassifyConfig& cfg = {});

// Pencil restricted to the line q + s e_i, as matrices over Q(s).
SymbolicPencil line_pencil(const Multivector& lambda, const Multivector& lambda1, const Point& q, std::size_t i);

// Row k: d/dx_i of the k-th charpoly coefficient (if `coefficients`) or of
// tr(K^{k+1}) at q. nullopt when the pointwise structure changes along a line.
std::optional<QMatrix> trace_differentials(const Multivector& lambda, const Multivector& lambda1, const Point& q,
                                           std::size_t symplectic_dim, bool coefficients,
                                           const std::vector<Rational>& exclude = {});

}  // namespace bihamil
