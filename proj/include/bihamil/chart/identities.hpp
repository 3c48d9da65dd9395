#pragma once

#include <optional>
#include <vector>

#include "bihamil/chart/calculus.hpp"

namespace bihamil {

// Residual of
//   d(rho o H)(HX,Y) + d(rho o H)(X,HY) = d rho(HX,HY) + d(rho o H^2)(X,Y) + rho(N_H(X,Y)).
struct Identity11Report {
  Scalar lhs;
  Scalar rhs;
  Scalar residual;  // lhs - rhs
};
Identity11Report check_identity_1_1(const KForm& rho, const Tensor11& h, const VectorField& x, const VectorField& y);

// With beta1 = beta(K., .) and beta2 = beta(K^2., .):
//   beta(N_K(X1,X2),X3) + d beta(KX1,KX2,X3)
//     = -d beta2(X1,X2,X3) + d beta1(KX1,X2,X3) + d beta1(X1,KX2,X3)
// and, for closed beta, beta1 and tau = beta1((K+tI)^{-1}., .),
//   d tau((K+t)X1,(K+t)X2,(K+t)X3) = t beta(N_K(X1,X2),X3) = -t d beta2(X1,X2,X3).
struct Identity13Report {
  Tensor11 k;
  Scalar lemma_residual;
  struct Shifted {
    Rational t;
    Scalar tau_residual;     // d tau(...) - t beta(N_K(X1,X2),X3)
    Scalar torsion_residual; // t beta(N_K(X1,X2),X3) + t d beta2(X1,X2,X3)
  };
  std::vector<Shifted> corollary;
};
Identity13Report check_identity_1_3(const KForm& beta, const KForm& beta1, const VectorField& x1,
                                    const VectorField& x2, const VectorField& x3, const Point& sample,
                                    const std::vector<Rational>& shifts = {});

// K with beta1 = beta(K., .); beta must be nondegenerate at `sample`.
Tensor11 solve_endomorphism(const KForm& beta, const KForm& beta1, const Point& sample);

}  // namespace bihamil
