#pragma once

#include <string>
#include <utility>
#include <vector>

#include "bihamil/ring/matrix.hpp"
#include "bihamil/ring/scalar.hpp"

namespace bihamil {

// Polynomial in one formal variable with Scalar coefficients, ascending.
class UniPoly {
 public:
  UniPoly() = default;
  explicit UniPoly(std::vector<Scalar> coeffs);
  static UniPoly constant(const Scalar& c) { return UniPoly({c}); }
  static UniPoly monomial(const Scalar& c, std::size_t degree);
  static UniPoly from_rationals(const std::vector<Rational>& coeffs);
  static UniPoly linear_root(const Scalar& root) { return UniPoly({-root, Scalar(1)}); }  // t - root

  const std::vector<Scalar>& coeffs() const { return c_; }
  bool is_zero() const { return c_.empty(); }
  int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
  const Scalar& leading() const { return c_.back(); }
  Scalar coeff(std::size_t i) const { return i < c_.size() ? c_[i] : Scalar(); }
  bool is_monic() const { return !c_.empty() && c_.back().is_one(); }
  bool has_constant_coefficients() const;
  std::vector<Rational> rational_coeffs() const;  // requires constant coefficients

  UniPoly operator-() const;
  UniPoly& operator+=(const UniPoly& o);
  UniPoly& operator-=(const UniPoly& o);
  friend UniPoly operator+(UniPoly a, const UniPoly& b) { return a += b; }
  friend UniPoly operator-(UniPoly a, const UniPoly& b) { return a -= b; }
  friend UniPoly operator*(const UniPoly& a, const UniPoly& b);
  friend UniPoly operator*(const UniPoly& a, const Scalar& s);
  friend bool operator==(const UniPoly& a, const UniPoly& b) { return a.c_ == b.c_; }
  friend bool operator!=(const UniPoly& a, const UniPoly& b) { return !(a == b); }

  UniPoly pow(unsigned e) const;
  UniPoly monic() const;
  UniPoly derivative() const;
  Scalar evaluate(const Scalar& t) const;

 private:
  void trim();
  std::vector<Scalar> c_;
};

std::pair<UniPoly, UniPoly> divmod(const UniPoly& a, const UniPoly& b);
UniPoly gcd(const UniPoly& a, const UniPoly& b);  // monic
// Resultant via the Sylvester determinant.
Scalar resultant(const UniPoly& a, const UniPoly& b);

struct SquareFreeFactor {
  UniPoly factor;
  unsigned multiplicity;
};
// Yun's algorithm: p = lc * prod factor^multiplicity with pairwise coprime
// square-free monic factors.
std::vector<SquareFreeFactor> square_free(const UniPoly& p);

// Horner evaluation p(K). Coefficients must be constant for the rational version.
QMatrix unipoly_eval_endo(const UniPoly& p, const QMatrix& k);
SMatrix unipoly_eval_endo(const UniPoly& p, const SMatrix& k);

std::string render(const UniPoly& p, const std::vector<std::string>& names, const std::string& var = "t");

}  // namespace bihamil
