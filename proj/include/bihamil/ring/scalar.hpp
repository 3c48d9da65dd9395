#pragma once

#include <string>
#include <vector>

#include "bihamil/ring/polynomial.hpp"

namespace bihamil {

// Rational function num/den in normalized form: gcd(num, den) = 1 and den has
// leading coefficient 1 under graded-lex order. Constants may have arity 0 and
// then combine with scalars of any arity.
class Scalar {
 public:
  Scalar() : num_(0), den_(0, Rational(1)) {}
  Scalar(const Rational& c) : num_(0, c), den_(0, Rational(1)) {}  // NOLINT(implicit)
  Scalar(long c) : Scalar(Rational(c)) {}                            // NOLINT(implicit)
  Scalar(int c) : Scalar(Rational(c)) {}                             // NOLINT(implicit)
  explicit Scalar(Polynomial p);
  Scalar(Polynomial num, Polynomial den);  // normalizes; throws PreconditionError on den == 0
  static Scalar variable(std::size_t nvars, std::size_t i) { return Scalar(Polynomial::variable(nvars, i)); }

  const Polynomial& num() const { return num_; }
  const Polynomial& den() const { return den_; }
  std::size_t nvars() const { return std::max(num_.nvars(), den_.nvars()); }
  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const { return num_.is_one() && den_.is_one(); }
  bool is_polynomial() const { return den_.is_one(); }
  bool is_constant() const { return num_.is_constant() && den_.is_one(); }
  Rational constant_value() const { return num_.constant_value(); }
  // Crude size measure used for pivot selection.
  std::size_t complexity() const;

  Scalar operator-() const;
  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o);  // throws PreconditionError on division by zero
  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
  friend bool operator==(const Scalar& a, const Scalar& b) { return a.num_ == b.num_ && a.den_ == b.den_; }
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

  Scalar inverse() const;
  Scalar pow(unsigned e) const;
  Scalar derivative(std::size_t var) const;
  Rational evaluate(const std::vector<Rational>& point) const;  // PoleError if den vanishes
  bool has_pole_at(const std::vector<Rational>& point) const;
  Scalar substitute(std::size_t var, const Rational& value) const;  // PoleError if den becomes 0
  Scalar reindex(std::size_t new_nvars, const std::vector<int>& map) const;
  bool involves(std::size_t var) const { return num_.involves(var) || den_.involves(var); }

 private:
  struct Normalized {};
  Scalar(Polynomial num, Polynomial den, Normalized) : num_(std::move(num)), den_(std::move(den)) {}
  static Scalar make_normalized(Polynomial num, Polynomial den);
  Polynomial num_;
  Polynomial den_;
};

// Substitute polynomials for every variable; PoleError if the denominator becomes 0.
Scalar compose(const Scalar& s, std::size_t new_nvars, const std::vector<Polynomial>& images);

std::string render(const Scalar& s, const std::vector<std::string>& names);

}  // namespace bihamil
