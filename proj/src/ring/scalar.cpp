#include "bihamil/ring/scalar.hpp"

#include "bihamil/errors.hpp"

namespace bihamil {

namespace {

Polynomial exact_div(const Polynomial& a, const Polynomial& b) {
  if (b.is_one()) return a;
  auto q = a.divide_exact(b);
  if (!q) throw DefectError("inexact division during rational-function normalization");
  return *q;
}

}  // namespace

Scalar::Scalar(Polynomial p) : num_(std::move(p)), den_(0, Rational(1)) {}

Scalar::Scalar(Polynomial num, Polynomial den) {
  if (den.is_zero()) throw PreconditionError("division by the zero polynomial");
  if (num.is_zero()) {
    num_ = Polynomial(num.nvars());
    den_ = Polynomial(0, Rational(1));
    return;
  }
  if (!den.is_constant()) {
    Polynomial g = gcd(num, den);
    if (!g.is_one()) {
      num = exact_div(num, g);
      den = exact_div(den, g);
    }
  }
  *this = make_normalized(std::move(num), std::move(den));
}

Scalar Scalar::make_normalized(Polynomial num, Polynomial den) {
  if (num.is_zero()) return Scalar(Polynomial(num.nvars()), Polynomial(0, Rational(1)), Normalized{});
  if (den.is_constant()) {
    Rational c = den.constant_value();
    if (c != 1) num *= Rational(1) / c;
    return Scalar(std::move(num), Polynomial(0, Rational(1)), Normalized{});
  }
  Rational lc = den.leading_coeff();
  if (lc != 1) {
    Rational inv = Rational(1) / lc;
    num *= inv;
    den *= inv;
  }
  return Scalar(std::move(num), std::move(den), Normalized{});
}

std::size_t Scalar::complexity() const {
  if (is_zero()) return 0;
  if (is_constant()) return 1;
  return 2 + num_.size() + num_.total_degree() + 4 * (den_.size() + den_.total_degree() - 1);
}

Scalar Scalar::operator-() const { return Scalar(-num_, den_, Normalized{}); }

Scalar& Scalar::operator+=(const Scalar& o) {
  if (o.is_zero()) return *this;
  if (is_zero()) return *this = o;
  if (den_.is_one() && o.den_.is_one()) {
    num_ += o.num_;
    return *this;
  }
  if (o.den_.is_one()) {
    num_ += o.num_ * den_;  // (a + c b)/b stays reduced
    if (num_.is_zero()) *this = Scalar();
    return *this;
  }
  if (den_.is_one()) {
    num_ = num_ * o.den_ + o.num_;
    den_ = o.den_;
    if (num_.is_zero()) *this = Scalar();
    return *this;
  }
  const Polynomial& b = den_;
  const Polynomial& d = o.den_;
  Polynomial g = gcd(b, d);
  if (g.is_one()) {
    Polynomial t = num_ * d + o.num_ * b;
    if (t.is_zero()) return *this = Scalar();
    Polynomial den = b * d;
    *this = make_normalized(std::move(t), std::move(den));
    return *this;
  }
  Polynomial b1 = exact_div(b, g);
  Polynomial d1 = exact_div(d, g);
  Polynomial t = num_ * d1 + o.num_ * b1;
  if (t.is_zero()) return *this = Scalar();
  Polynomial g2 = gcd(t, g);
  Polynomial num = exact_div(t, g2);
  Polynomial den = b1 * exact_div(d, g2);
  *this = make_normalized(std::move(num), std::move(den));
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) { return *this += -o; }

Scalar& Scalar::operator*=(const Scalar& o) {
  if (is_zero()) return *this;
  if (o.is_zero()) return *this = Scalar();
  if (o.is_constant()) {
    num_ *= o.constant_value();
    return *this;
  }
  if (is_constant()) {
    Rational c = constant_value();
    *this = o;
    num_ *= c;
    return *this;
  }
  Polynomial a = num_, c = o.num_;
  Polynomial b = den_, d = o.den_;
  if (!d.is_one()) {
    Polynomial g1 = gcd(a, d);
    if (!g1.is_one()) {
      a = exact_div(a, g1);
      d = exact_div(d, g1);
    }
  }
  if (!b.is_one()) {
    Polynomial g2 = gcd(c, b);
    if (!g2.is_one()) {
      c = exact_div(c, g2);
      b = exact_div(b, g2);
    }
  }
  *this = make_normalized(a * c, b * d);
  return *this;
}

Scalar& Scalar::operator/=(const Scalar& o) { return *this *= o.inverse(); }

Scalar Scalar::inverse() const {
  if (is_zero()) throw PreconditionError("division by the zero polynomial");
  return make_normalized(den_.with_nvars(num_.nvars()), num_);
}

Scalar Scalar::pow(unsigned e) const {
  // Powers of a reduced fraction stay reduced.
  return make_normalized(num_.pow(e), den_.pow(e));
}

Scalar Scalar::derivative(std::size_t var) const {
  if (den_.is_one()) return Scalar(num_.derivative(var));
  Polynomial dn = num_.derivative(var);
  Polynomial dd = den_.derivative(var);
  if (dd.is_zero()) return Scalar(dn, den_);
  return Scalar(dn * den_ - num_ * dd, den_ * den_);
}

Rational Scalar::evaluate(const std::vector<Rational>& point) const {
  Rational d = den_.evaluate(point);
  if (d == 0) throw PoleError("denominator vanishes at the evaluation point");
  return num_.evaluate(point) / d;
}

bool Scalar::has_pole_at(const std::vector<Rational>& point) const { return den_.evaluate(point) == 0; }

Scalar Scalar::substitute(std::size_t var, const Rational& value) const {
  if (!involves(var)) return *this;
  Polynomial den = den_.substitute(var, value);
  if (den.is_zero()) throw PoleError("denominator vanishes on the substituted locus");
  return Scalar(num_.substitute(var, value), std::move(den));
}

Scalar Scalar::reindex(std::size_t new_nvars, const std::vector<int>& map) const {
  Polynomial den = den_.is_one() ? den_ : den_.reindex(new_nvars, map);
  return Scalar(num_.reindex(new_nvars, map), std::move(den), Normalized{});
}

Scalar compose(const Scalar& s, std::size_t new_nvars, const std::vector<Polynomial>& images) {
  Polynomial den = compose(s.den(), new_nvars, images);
  if (den.is_zero()) throw PoleError("denominator vanishes after substitution");
  return Scalar(compose(s.num(), new_nvars, images), std::move(den));
}

std::string render(const Scalar& s, const std::vector<std::string>& names) {
  if (s.den().is_one()) return render(s.num(), names);
  std::string num = render(s.num(), names);
  std::string den = render(s.den(), names);
  return "(" + num + ")/(" + den + ")";
}

}  // namespace bihamil
