#include "bihamil/pencil/pencil.hpp"

#include <algorithm>
#include <numeric>

#include "bihamil/errors.hpp"

namespace bihamil {

namespace {

UniPoly to_unipoly(const std::vector<Rational>& c) { return UniPoly::from_rationals(c); }
UniPoly to_unipoly(const std::vector<Scalar>& c) { return UniPoly(c); }

template <class T>
void check_skew_pair(const Matrix<T>& a, const Matrix<T>& b) {
  if (!a.square() || !b.square() || a.rows() != b.rows()) throw PreconditionError("pencil matrices must be square of equal size");
  if (!a.is_skew() || !b.is_skew()) throw PreconditionError("pencil matrices must be skew-symmetric");
}

// Columns e_k completing `n` (in its ambient space) to a basis.
template <class T>
Matrix<T> complement_of(const Matrix<T>& n) {
  const std::size_t a = n.rows();
  Matrix<T> acc = n;
  std::vector<std::vector<T>> cols;
  std::size_t r = rank(acc);
  for (std::size_t k = 0; k < a && r < a; ++k) {
    Matrix<T> e(a, 1);
    e(k, 0) = T(1);
    Matrix<T> trial = hstack(acc, e);
    std::size_t rt = rank(trial);
    if (rt > r) {
      acc = std::move(trial);
      r = rt;
      std::vector<T> col(a, T(0));
      col[k] = T(1);
      cols.push_back(std::move(col));
    }
  }
  return Matrix<T>::from_columns(cols, a);
}

}  // namespace

template <class T>
Matrix<T> SkewPencilT<T>::at(const Rational& t) const {
  if (t == 0) return lambda;
  if (t == 1) return lambda1;
  return lambda * T(Rational(1 - t)) + lambda1 * T(t);
}

SkewPencil make_pencil(QMatrix lambda, QMatrix lambda1) {
  check_skew_pair(lambda, lambda1);
  return {std::move(lambda), std::move(lambda1)};
}

SymbolicPencil make_pencil(SMatrix lambda, SMatrix lambda1) {
  check_skew_pair(lambda, lambda1);
  return {std::move(lambda), std::move(lambda1)};
}

std::vector<Rational> probe_params(std::size_t m, const std::vector<Rational>& exclude) {
  const std::size_t count = m / 2 + 3;
  std::vector<Rational> out;
  for (long v = 0; out.size() < count; ++v) {
    Rational q(v);
    if (std::find(exclude.begin(), exclude.end(), q) == exclude.end()) out.push_back(q);
  }
  return out;
}

template <class T>
RankProfile generic_rank(const SkewPencilT<T>& p, const std::vector<Rational>& exclude) {
  RankProfile prof;
  prof.probes = probe_params(p.dim(), exclude);
  for (const auto& t : prof.probes) prof.probe_ranks.push_back(rank(p.at(t)));
  prof.rank = prof.probe_ranks.empty() ? 0 : *std::max_element(prof.probe_ranks.begin(), prof.probe_ranks.end());
  for (std::size_t i = 0; i < prof.probes.size(); ++i)
    if (prof.probe_ranks[i] < prof.rank) prof.exceptional.push_back(prof.probes[i]);
  return prof;
}

template <class T>
bool is_maximal(const SkewPencilT<T>& p, const RankProfile& prof) {
  return rank(p.lambda) == prof.rank && rank(p.lambda1) == prof.rank;
}

namespace {

template <class T>
struct AxisData {
  Matrix<T> axis;
  std::vector<std::size_t> codims;
};

template <class T>
AxisData<T> axis_with_codims(const SkewPencilT<T>& p, const RankProfile& prof) {
  const std::size_t m = p.dim();
  AxisData<T> out;
  bool first = true;
  for (std::size_t i = 0; i < prof.probes.size(); ++i) {
    if (prof.probe_ranks[i] != prof.rank) continue;
    Matrix<T> img = column_basis(p.at(prof.probes[i]));
    out.axis = first ? img : intersect(out.axis, img);
    first = false;
    out.codims.push_back(m - out.axis.cols());
  }
  if (first) out.axis = Matrix<T>(m, 0);
  return out;
}

}  // namespace

template <class T>
Matrix<T> primary_axis(const SkewPencilT<T>& p, const std::vector<Rational>& exclude) {
  RankProfile prof = generic_rank(p, exclude);
  if (!is_maximal(p, prof)) throw PreconditionError("pencil is not maximal: rank(lambda) or rank(lambda1) is below the generic rank");
  return axis_with_codims(p, prof).axis;
}

std::vector<int> kronecker_dims_from_codims(std::size_t corank, const std::vector<std::size_t>& codims) {
  if (corank == 0) {
    for (auto c : codims)
      if (c != 0) throw DefectError("generic images are proper although the pencil has full rank");
    return {};
  }
  if (codims.empty() || codims[0] != corank) throw DefectError("first image codimension differs from the corank");
  std::vector<std::size_t> at_least{corank};  // blocks of size >= 2j+1
  for (std::size_t j = 1; j < codims.size(); ++j) {
    if (codims[j] < codims[j - 1]) throw DefectError("image intersections grew");
    std::size_t n = codims[j] - codims[j - 1];
    if (n > at_least.back()) throw DefectError("inconsistent Kronecker rank profile");
    at_least.push_back(n);
    if (n == 0) break;
  }
  if (at_least.back() != 0) throw DefectError("too few generic probes to resolve the Kronecker blocks");
  std::vector<int> dims;
  for (std::size_t j = 0; j + 1 < at_least.size(); ++j)
    for (std::size_t c = 0; c < at_least[j] - at_least[j + 1]; ++c) dims.push_back(static_cast<int>(2 * j + 1));
  return dims;
}

template <class T>
DecompositionT<T> decompose(const SkewPencilT<T>& p, const std::vector<Rational>& exclude) {
  const std::size_t m = p.dim();
  DecompositionT<T> d;
  d.dim = m;
  d.profile = generic_rank(p, exclude);
  if (!is_maximal(p, d.profile))
    throw PreconditionError("pencil is not maximal: rank(lambda) or rank(lambda1) is below the generic rank");
  d.corank = m - d.profile.rank;

  AxisData<T> ax = axis_with_codims(p, d.profile);
  d.primary_axis = ax.axis;
  d.intersection_codims = ax.codims;
  d.kronecker_dims = kronecker_dims_from_codims(d.corank, ax.codims);
  const std::size_t a = ax.axis.cols();
  d.web_dim = m - a;

  // Induced forms on the axis: w(lambda alpha, lambda beta) = lambda(alpha, beta)
  // with (lambda alpha)^b = sum_a alpha_a P_ab = -(P alpha)^b.
  auto induced = [&](const Matrix<T>& pm) {
    auto pre = solve(pm * T(-1), ax.axis);
    if (!pre) throw DefectError("primary axis is not contained in a generic image");
    return pre->transpose() * pm * *pre;
  };
  Matrix<T> w = induced(p.lambda);
  Matrix<T> w1 = induced(p.lambda1);
  Matrix<T> ker = nullspace(w);
  if (!same_span(ker, nullspace(w1))) throw DefectError("the two induced forms have different kernels on the primary axis");
  d.secondary_axis = ax.axis * ker;
  Matrix<T> c = complement_of(ker);
  d.complement = ax.axis * c;
  d.symplectic_dim = c.cols();
  d.omega = c.transpose() * w * c;
  d.omega1 = c.transpose() * w1 * c;
  if (d.symplectic_dim > 0) {
    auto k = solve(d.omega, d.omega1);
    if (!k || rank(d.omega) != d.symplectic_dim) throw DefectError("induced form is degenerate on the symplectic quotient");
    d.k_endomorphism = *k;
    auto kinv = inverse(*k);
    if (!kinv) throw DefectError("second induced form is degenerate on the symplectic quotient");
    d.symplectic_charpoly = to_unipoly(charpoly(*k));
    d.recursion_charpoly = to_unipoly(charpoly(*kinv));
  } else {
    d.k_endomorphism = Matrix<T>(0, 0);
    d.symplectic_charpoly = UniPoly::constant(Scalar(1));
    d.recursion_charpoly = UniPoly::constant(Scalar(1));
  }

  std::size_t kron_total = std::accumulate(d.kronecker_dims.begin(), d.kronecker_dims.end(), std::size_t{0},
                                           [](std::size_t s, int x) { return s + static_cast<std::size_t>(x); });
  std::size_t half_sum = 0;
  for (int x : d.kronecker_dims) half_sum += static_cast<std::size_t>(x - 1) / 2;
  if (d.symplectic_dim % 2 != 0) throw DefectError("symplectic factor has odd dimension");
  if (kron_total + d.symplectic_dim != m) throw DefectError("block dimensions do not add up to the pencil dimension");
  if (d.kronecker_dims.size() != d.corank) throw DefectError("number of Kronecker blocks differs from the corank");
  if (ker.cols() != half_sum) throw DefectError("secondary axis dimension disagrees with the Kronecker blocks");
  return d;
}

template struct SkewPencilT<Rational>;
template struct SkewPencilT<Scalar>;
template RankProfile generic_rank(const SkewPencil&, const std::vector<Rational>&);
template RankProfile generic_rank(const SymbolicPencil&, const std::vector<Rational>&);
template bool is_maximal(const SkewPencil&, const RankProfile&);
template bool is_maximal(const SymbolicPencil&, const RankProfile&);
template QMatrix primary_axis(const SkewPencil&, const std::vector<Rational>&);
template SMatrix primary_axis(const SymbolicPencil&, const std::vector<Rational>&);
template PencilDecomposition decompose(const SkewPencil&, const std::vector<Rational>&);
template SymbolicDecomposition decompose(const SymbolicPencil&, const std::vector<Rational>&);

}  // namespace bihamil
