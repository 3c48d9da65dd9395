#include "bihamil/ring/unipoly.hpp"

#include <sstream>

#include "bihamil/errors.hpp"

namespace bihamil {

UniPoly::UniPoly(std::vector<Scalar> coeffs) : c_(std::move(coeffs)) { trim(); }

UniPoly UniPoly::monomial(const Scalar& c, std::size_t degree) {
  std::vector<Scalar> v(degree + 1);
  v[degree] = c;
  return UniPoly(std::move(v));
}

UniPoly UniPoly::from_rationals(const std::vector<Rational>& coeffs) {
  std::vector<Scalar> v;
  v.reserve(coeffs.size());
  for (const auto& q : coeffs) v.emplace_back(q);
  return UniPoly(std::move(v));
}

void UniPoly::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

bool UniPoly::has_constant_coefficients() const {
  for (const auto& c : c_)
    if (!c.is_constant()) return false;
  return true;
}

std::vector<Rational> UniPoly::rational_coeffs() const {
  std::vector<Rational> out;
  out.reserve(c_.size());
  for (const auto& c : c_) {
    if (!c.is_constant()) throw PreconditionError("polynomial has non-constant coefficients");
    out.push_back(c.constant_value());
  }
  return out;
}

UniPoly UniPoly::operator-() const {
  UniPoly r(*this);
  for (auto& c : r.c_) c = -c;
  return r;
}

UniPoly& UniPoly::operator+=(const UniPoly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
  trim();
  return *this;
}

UniPoly& UniPoly::operator-=(const UniPoly& o) { return *this += -o; }

UniPoly operator*(const UniPoly& a, const UniPoly& b) {
  if (a.is_zero() || b.is_zero()) return UniPoly();
  std::vector<Scalar> v(a.c_.size() + b.c_.size() - 1);
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j) v[i + j] += a.c_[i] * b.c_[j];
  }
  return UniPoly(std::move(v));
}

UniPoly operator*(const UniPoly& a, const Scalar& s) {
  std::vector<Scalar> v = a.c_;
  for (auto& c : v) c *= s;
  return UniPoly(std::move(v));
}

UniPoly UniPoly::pow(unsigned e) const {
  UniPoly r = constant(Scalar(1));
  for (unsigned i = 0; i < e; ++i) r = r * *this;
  return r;
}

UniPoly UniPoly::monic() const {
  if (is_zero()) return *this;
  return *this * leading().inverse();
}

UniPoly UniPoly::derivative() const {
  if (c_.size() <= 1) return UniPoly();
  std::vector<Scalar> v(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i) v[i - 1] = c_[i] * Scalar(static_cast<long>(i));
  return UniPoly(std::move(v));
}

Scalar UniPoly::evaluate(const Scalar& t) const {
  Scalar acc;
  for (std::size_t i = c_.size(); i-- > 0;) acc = acc * t + c_[i];
  return acc;
}

std::pair<UniPoly, UniPoly> divmod(const UniPoly& a, const UniPoly& b) {
  if (b.is_zero()) throw PreconditionError("polynomial division by zero");
  std::vector<Scalar> r = a.coeffs();
  const std::size_t db = static_cast<std::size_t>(b.degree());
  if (r.size() <= db) return {UniPoly(), a};
  std::vector<Scalar> q(r.size() - db);
  Scalar inv = b.leading().inverse();
  for (std::size_t k = r.size(); k-- > db;) {
    if (r[k].is_zero()) continue;
    Scalar f = r[k] * inv;
    q[k - db] = f;
    for (std::size_t i = 0; i <= db; ++i) r[k - db + i] -= f * b.coeffs()[i];
  }
  return {UniPoly(std::move(q)), UniPoly(std::move(r))};
}

UniPoly gcd(const UniPoly& a, const UniPoly& b) {
  UniPoly x = a, y = b;
  while (!y.is_zero()) {
    UniPoly r = divmod(x, y).second;
    x = std::move(y);
    y = std::move(r);
  }
  return x.monic();
}

Scalar resultant(const UniPoly& a, const UniPoly& b) {
  if (a.is_zero() || b.is_zero()) return Scalar();
  const std::size_t m = static_cast<std::size_t>(a.degree());
  const std::size_t n = static_cast<std::size_t>(b.degree());
  if (m + n == 0) return Scalar(1);
  SMatrix s(m + n, m + n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j <= m; ++j) s(i, i + j) = a.coeffs()[m - j];
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j <= n; ++j) s(n + i, i + j) = b.coeffs()[n - j];
  return determinant(s);
}

std::vector<SquareFreeFactor> square_free(const UniPoly& p) {
  std::vector<SquareFreeFactor> out;
  if (p.degree() <= 0) return out;
  UniPoly f = p.monic();
  UniPoly fp = f.derivative();
  UniPoly a0 = gcd(f, fp);
  UniPoly b = divmod(f, a0).first;
  UniPoly c = divmod(fp, a0).first;
  UniPoly d = c - b.derivative();
  for (unsigned i = 1; b.degree() > 0; ++i) {
    UniPoly a = gcd(b, d);
    if (a.degree() > 0) out.push_back({a, i});
    b = divmod(b, a).first;
    c = divmod(d, a).first;
    d = c - b.derivative();
  }
  return out;
}

QMatrix unipoly_eval_endo(const UniPoly& p, const QMatrix& k) {
  if (!k.square()) throw PreconditionError("endomorphism must be square");
  std::vector<Rational> c = p.rational_coeffs();
  const std::size_t n = k.rows();
  QMatrix acc(n, n);
  for (std::size_t i = c.size(); i-- > 0;) {
    acc = acc * k;
    for (std::size_t j = 0; j < n; ++j) acc(j, j) += c[i];
  }
  return acc;
}

SMatrix unipoly_eval_endo(const UniPoly& p, const SMatrix& k) {
  if (!k.square()) throw PreconditionError("endomorphism must be square");
  const std::size_t n = k.rows();
  SMatrix acc(n, n);
  for (std::size_t i = p.coeffs().size(); i-- > 0;) {
    acc = acc * k;
    for (std::size_t j = 0; j < n; ++j) acc(j, j) += p.coeffs()[i];
  }
  return acc;
}

std::string render(const UniPoly& p, const std::vector<std::string>& names, const std::string& var) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = p.coeffs().size(); i-- > 0;) {
    const Scalar& c = p.coeffs()[i];
    if (c.is_zero()) continue;
    std::string mono = i == 0 ? "" : (i == 1 ? var : var + "^" + std::to_string(i));
    if (c.is_constant()) {
      Rational q = c.constant_value();
      bool neg = q < 0;
      if (neg) q = -q;
      os << (first ? (neg ? "-" : "") : (neg ? " - " : " + "));
      if (mono.empty()) {
        os << q.get_str();
      } else {
        if (q != 1) os << q.get_str() << '*';
        os << mono;
      }
    } else {
      os << (first ? "" : " + ") << '(' << render(c, names) << ')';
      if (!mono.empty()) os << '*' << mono;
    }
    first = false;
  }
  return os.str();
}

}  // namespace bihamil
