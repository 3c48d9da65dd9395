#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace bihamil {

using Rational = mpq_class;

Rational parse_rational(const std::string& text);
std::string to_string(const Rational& q);

// Exponent vector with the total degree stored first, so lexicographic
// comparison of the raw storage is graded-lex with x0 > x1 > ...
class Monomial {
 public:
  Monomial() : e_{0} {}
  explicit Monomial(std::size_t nvars) : e_(nvars + 1, 0) {}

  std::size_t nvars() const { return e_.size() - 1; }
  std::uint32_t degree() const { return e_[0]; }
  std::uint32_t operator[](std::size_t i) const { return e_[i + 1]; }
  void set(std::size_t i, std::uint32_t v) {
    e_[0] = e_[0] - e_[i + 1] + v;
    e_[i + 1] = v;
  }
  bool is_one() const { return e_[0] == 0; }

  Monomial operator*(const Monomial& o) const;
  bool divides(const Monomial& o) const;
  Monomial operator/(const Monomial& o) const;  // requires divides(o) on the divisor side
  Monomial gcd(const Monomial& o) const;

  friend bool operator==(const Monomial& a, const Monomial& b) { return a.e_ == b.e_; }
  friend bool operator!=(const Monomial& a, const Monomial& b) { return a.e_ != b.e_; }
  friend bool operator<(const Monomial& a, const Monomial& b) { return a.e_ < b.e_; }
  friend bool operator>(const Monomial& a, const Monomial& b) { return b.e_ < a.e_; }

 private:
  std::vector<std::uint32_t> e_;
};

struct Term {
  Monomial mono;
  Rational coeff;
};

// Sparse polynomial over Q. Terms are kept sorted by decreasing monomial
// with no zero coefficients. A polynomial with nvars()==0 is a constant
// and combines with polynomials of any arity.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::size_t nvars) : nvars_(nvars) {}
  Polynomial(std::size_t nvars, const Rational& c);
  static Polynomial variable(std::size_t nvars, std::size_t i);
  static Polynomial from_terms(std::size_t nvars, std::vector<Term> terms);  // any order, duplicates merged

  std::size_t nvars() const { return nvars_; }
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one()); }
  bool is_one() const;
  Rational constant_value() const;  // requires is_constant()
  const Term& leading() const { return terms_.front(); }
  const Rational& leading_coeff() const { return terms_.front().coeff; }
  std::uint32_t total_degree() const;
  std::uint32_t degree_in(std::size_t var) const;
  bool involves(std::size_t var) const;
  std::vector<bool> variables_used() const;

  Polynomial with_nvars(std::size_t n) const;  // constant promotion or identity

  Polynomial operator-() const;
  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial& operator*=(const Polynomial& o);
  Polynomial& operator*=(const Rational& c);
  Polynomial mul_term(const Monomial& m, const Rational& c) const;
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(Polynomial a, const Rational& c) { return a *= c; }
  friend bool operator==(const Polynomial& a, const Polynomial& b);
  friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

  Polynomial pow(unsigned e) const;
  Polynomial derivative(std::size_t var) const;
  Rational evaluate(const std::vector<Rational>& point) const;
  // Replace variable `var` by the constant `value`.
  Polynomial substitute(std::size_t var, const Rational& value) const;
  // Re-index variables into a chart with `new_nvars` coordinates. map[i] is the
  // new index of old variable i, or -1 when that variable must be absent.
  Polynomial reindex(std::size_t new_nvars, const std::vector<int>& map) const;

  // Exact division; nullopt when `d` does not divide *this.
  std::optional<Polynomial> divide_exact(const Polynomial& d) const;
  Polynomial monic() const;
  Monomial min_monomial() const;

  // Coefficients with respect to `var`: degree -> coefficient free of `var`.
  std::vector<Polynomial> coefficients_in(std::size_t var) const;
  static Polynomial from_coefficients_in(std::size_t nvars, std::size_t var, const std::vector<Polynomial>& c);

 private:
  void normalize_sorted();
  std::size_t nvars_ = 0;
  std::vector<Term> terms_;
};

// p(images[0], ..., images[nvars-1]) with every image in `new_nvars` variables.
Polynomial compose(const Polynomial& p, std::size_t new_nvars, const std::vector<Polynomial>& images);

// Monic greatest common divisor (0 when both are 0).
Polynomial gcd(const Polynomial& a, const Polynomial& b);

std::string render(const Polynomial& p, const std::vector<std::string>& names);

}  // namespace bihamil
