#include "bihamil/pencil/algebraic_type.hpp"

#include "bihamil/errors.hpp"

namespace bihamil {

AlgebraicType algebraic_type(const QMatrix& k) {
  if (!k.square()) throw PreconditionError("algebraic type of a non-square matrix");
  const std::size_t m = k.rows();
  AlgebraicType t;
  t.charpoly = UniPoly::from_rationals(charpoly(k));
  t.factors = square_free(t.charpoly);
  for (const auto& f : t.factors) {
    QMatrix pk = unipoly_eval_endo(f.factor, k);
    QMatrix acc = QMatrix::identity(m);
    std::vector<std::size_t> ranks;
    for (std::size_t a = 1; a <= m; ++a) {
      acc = acc * pk;
      ranks.push_back(rank(acc));
    }
    t.rank_fingerprint.push_back(std::move(ranks));
  }
  return t;
}

UniPoly AlgebraicType::minimal_polynomial() const {
  UniPoly out = UniPoly::constant(Scalar(1));
  for (std::size_t i = 0; i < factors.size(); ++i) {
    const auto& r = rank_fingerprint[i];
    unsigned e = 1;
    while (e < r.size() && r[e] != r[e - 1]) ++e;
    out = out * factors[i].factor.pow(e);
  }
  return out;
}

bool operator==(const AlgebraicType& a, const AlgebraicType& b) {
  if (a.charpoly != b.charpoly || a.factors.size() != b.factors.size()) return false;
  for (std::size_t i = 0; i < a.factors.size(); ++i)
    if (a.factors[i].factor != b.factors[i].factor || a.factors[i].multiplicity != b.factors[i].multiplicity) return false;
  return a.rank_fingerprint == b.rank_fingerprint;
}

bool same_shape(const AlgebraicType& a, const AlgebraicType& b) {
  if (a.charpoly.degree() != b.charpoly.degree() || a.factors.size() != b.factors.size()) return false;
  for (std::size_t i = 0; i < a.factors.size(); ++i)
    if (a.factors[i].factor.degree() != b.factors[i].factor.degree() ||
        a.factors[i].multiplicity != b.factors[i].multiplicity)
      return false;
  return a.rank_fingerprint == b.rank_fingerprint;
}

template <class T>
std::vector<T> elementary_from_power_sums(const std::vector<T>& p) {
  std::vector<T> e{T(1)};
  for (std::size_t k = 1; k <= p.size(); ++k) {
    T s(0);
    for (std::size_t i = 1; i <= k; ++i) {
      T term = e[k - i] * p[i - 1];
      if (i % 2 == 1)
        s += term;
      else
        s -= term;
    }
    e.push_back(s / T(Rational(static_cast<long>(k))));
  }
  e.erase(e.begin());
  return e;
}

template <class T>
std::vector<T> power_sums_from_elementary(const std::vector<T>& e) {
  std::vector<T> p;
  for (std::size_t k = 1; k <= e.size(); ++k) {
    T s(0);
    for (std::size_t i = 1; i < k; ++i) {
      T term = e[i - 1] * p[k - i - 1];
      if (i % 2 == 1)
        s += term;
      else
        s -= term;
    }
    T last = e[k - 1] * T(Rational(static_cast<long>(k)));
    if (k % 2 == 1)
      s += last;
    else
      s -= last;
    p.push_back(s);
  }
  return p;
}

UniPoly charpoly_from_power_sums(const std::vector<Scalar>& p) {
  std::vector<Scalar> e = elementary_from_power_sums(p);
  const std::size_t s = e.size();
  std::vector<Scalar> c(s + 1);
  c[s] = Scalar(1);
  for (std::size_t k = 1; k <= s; ++k) c[s - k] = k % 2 == 0 ? e[k - 1] : -e[k - 1];
  return UniPoly(c);
}

std::vector<Scalar> power_sums_from_charpoly(const UniPoly& monic) {
  if (!monic.is_monic()) throw PreconditionError("power sums need a monic polynomial");
  const std::size_t s = static_cast<std::size_t>(monic.degree());
  std::vector<Scalar> e;
  for (std::size_t k = 1; k <= s; ++k) {
    Scalar c = monic.coeff(s - k);
    e.push_back(k % 2 == 0 ? c : -c);
  }
  return power_sums_from_elementary(e);
}

template <class T>
std::vector<T> trace_powers(const Matrix<T>& k, std::size_t count) {
  std::vector<T> out;
  Matrix<T> acc = Matrix<T>::identity(k.rows());
  for (std::size_t i = 0; i < count; ++i) {
    acc = acc * k;
    out.push_back(trace(acc));
  }
  return out;
}

template std::vector<Rational> elementary_from_power_sums(const std::vector<Rational>&);
template std::vector<Scalar> elementary_from_power_sums(const std::vector<Scalar>&);
template std::vector<Rational> power_sums_from_elementary(const std::vector<Rational>&);
template std::vector<Scalar> power_sums_from_elementary(const std::vector<Scalar>&);
template std::vector<Rational> trace_powers(const QMatrix&, std::size_t);
template std::vector<Scalar> trace_powers(const SMatrix&, std::size_t);

}  // namespace bihamil
