#include "bihamil/pencil/classify.hpp"

#include "bihamil/errors.hpp"

namespace bihamil {

SymbolicPencil line_pencil(const Multivector& lambda, const Multivector& lambda1, const Point& q, std::size_t i) {
  const std::size_t n = lambda.chart().dim();
  if (q.size() != n || i >= n) throw PreconditionError("line through a point of the wrong dimension");
  std::vector<Polynomial> images;
  for (std::size_t j = 0; j < n; ++j) {
    Polynomial c(1, q[j]);
    images.push_back(j == i ? c + Polynomial::variable(1, 0) : c);
  }
  auto restrict = [&](const Multivector& b) {
    return bivector_matrix(b).map([&](const Scalar& s) { return compose(s, 1, images); });
  };
  return make_pencil(restrict(lambda), restrict(lambda1));
}

std::optional<QMatrix> trace_differentials(const Multivector& lambda, const Multivector& lambda1, const Point& q,
                                           std::size_t symplectic_dim, bool coefficients,
                                           const std::vector<Rational>& exclude) {
  const std::size_t n = lambda.chart().dim();
  QMatrix out(symplectic_dim, n);
  const std::vector<Rational> origin{Rational(0)};
  for (std::size_t i = 0; i < n; ++i) {
    SymbolicPencil lp = line_pencil(lambda, lambda1, q, i);
    SymbolicDecomposition d;
    try {
      d = decompose(lp, exclude);
    } catch (const PreconditionError&) {
      return std::nullopt;
    }
    if (d.symplectic_dim != symplectic_dim) return std::nullopt;
    std::vector<Scalar> g;
    if (coefficients) {
      for (std::size_t k = 0; k < symplectic_dim; ++k) g.push_back(d.symplectic_charpoly.coeff(k));
    } else {
      g = trace_powers(d.k_endomorphism, symplectic_dim);
    }
    try {
      for (std::size_t k = 0; k < symplectic_dim; ++k) out(k, i) = g[k].derivative(0).evaluate(origin);
    } catch (const PoleError&) {
      return std::nullopt;
    }
  }
  return out;
}

PointSummary summarize_point(const Multivector& lambda, const Multivector& lambda1, const Point& p,
                             const ClassifyConfig& cfg, bool with_traces) {
  PointSummary s;
  s.point = p;
  SkewPencil pen;
  try {
    pen = make_pencil(bivector_at(lambda, p), bivector_at(lambda1, p));
  } catch (const PoleError& e) {
    s.problem = std::string("pole: ") + e.what();
    return s;
  }
  PencilDecomposition d;
  try {
    d = decompose(pen, cfg.exclude);
  } catch (const PreconditionError& e) {
    s.problem = e.what();
    return s;
  }
  s.evaluated = true;
  s.generic_rank = d.profile.rank;
  s.symplectic_dim = d.symplectic_dim;
  s.kronecker_dims = d.kronecker_dims;
  s.type = algebraic_type(d.k_endomorphism);
  if (with_traces) {
    auto dg = trace_differentials(lambda, lambda1, p, d.symplectic_dim, false, cfg.exclude);
    if (dg) s.trace_differential_rank = rank(*dg);
  }
  return s;
}

RegularityReport classify_point(const Multivector& lambda, const Multivector& lambda1, const Point& p,
                                const ClassifyConfig& cfg) {
  require_same_chart(lambda.chart(), lambda1.chart());
  RegularityReport r;
  r.center = summarize_point(lambda, lambda1, p, cfg, true);
  if (!r.center.evaluated) {
    r.regular = false;
    return r;
  }
  for (std::size_t i = 0; i < p.size(); ++i)
    for (const auto& o : cfg.offsets) {
      Point q = p;
      q[i] += o;
      r.cloud.push_back(summarize_point(lambda, lambda1, q, cfg, cfg.trace_differentials_on_cloud));
    }
  for (const auto& c : r.cloud) {
    if (!c.evaluated) {
      // A pole is a skipped sample; a non-maximal neighbour breaks constancy.
      if (c.problem.rfind("pole", 0) != 0) r.rank_constant = false;
      continue;
    }
    if (c.generic_rank != r.center.generic_rank) r.rank_constant = false;
    if (c.symplectic_dim != r.center.symplectic_dim) r.symplectic_dim_constant = false;
    if (!c.type || !same_shape(*c.type, *r.center.type)) r.type_constant = false;
    if (cfg.trace_differentials_on_cloud && c.trace_differential_rank != r.center.trace_differential_rank)
      r.trace_rank_constant = false;
  }
  if (!r.center.trace_differential_rank) r.trace_rank_constant = false;
  r.regular = r.rank_constant && r.symplectic_dim_constant && r.type_constant && r.trace_rank_constant;

  auto dh = trace_differentials(lambda, lambda1, p, r.center.symplectic_dim, true, cfg.exclude);
  if (dh) {
    PencilDecomposition d = decompose(make_pencil(bivector_at(lambda, p), bivector_at(lambda1, p)), cfg.exclude);
    r.coefficient_differential_rank = rank(*dh);
    r.restricted_differential_rank = rank(*dh * d.primary_axis);
    r.necessary_condition = *r.coefficient_differential_rank == *r.restricted_differential_rank;
  }
  return r;
}

}  // namespace bihamil
