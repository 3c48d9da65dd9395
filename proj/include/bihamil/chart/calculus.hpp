#pragma once

#include <vector>

#include "bihamil/chart/fields.hpp"

namespace bihamil {

KForm differential(const Chart& c, const Scalar& f);  // df
KForm exterior_derivative(const KForm& f);
KForm wedge(const KForm& a, const KForm& b);
KForm wedge_all(const std::vector<KForm>& forms);  // empty list -> constant 1
Multivector wedge(const Multivector& a, const Multivector& b);
Tensor1r wedge(const Tensor1r& t, const KForm& a);  // (T ^ a)^i = T^i ^ a, form slots last

KForm interior(const VectorField& x, const KForm& f);
Scalar evaluate(const KForm& f, const std::vector<VectorField>& args);
// Form evaluated on coordinate fields d/dx_{idx...}.
inline Scalar evaluate_on_coordinates(const KForm& f, const MultiIndex& idx) { return f.get(idx); }

VectorField lie_bracket(const VectorField& x, const VectorField& y);
Scalar lie_derivative(const VectorField& x, const Scalar& f);
KForm lie_derivative(const VectorField& x, const KForm& f);
VectorField lie_derivative(const VectorField& x, const VectorField& y);
Multivector lie_derivative(const VectorField& x, const Multivector& p);
Tensor11 lie_derivative(const VectorField& x, const Tensor11& t);
Tensor1r lie_derivative(const VectorField& x, const Tensor1r& t);

// Contractions.
KForm compose(const KForm& alpha, const Tensor11& h);          // 1-form alpha o h
Bilinear contract_first(const KForm& w, const Tensor11& h);    // (X, Y) -> w(hX, Y)
Bilinear contract_second(const KForm& w, const Tensor11& h);   // (X, Y) -> w(X, hY)
inline VectorField contract(const Tensor11& t, const VectorField& x) { return t.apply(x); }
inline VectorField contract(const Tensor1r& t, const std::vector<VectorField>& xs) { return t.evaluate(xs); }
// The r-form alpha(T(.., ..)) for a 1-form alpha: sum_i alpha_i T^i.
KForm contract_output(const KForm& alpha, const Tensor1r& t);

// Unnormalized torsion N(X,Y) = [GX,GY] - G[GX,Y] - G[X,GY] + G^2[X,Y].
Tensor12 nijenhuis_torsion(const Tensor11& g);
// The trivector {{x_i,x_j},x_k} + cyclic for the bracket {f,g} = p(df,dg).
Multivector schouten_jacobiator(const Multivector& p);

// Poisson bivector of a nondegenerate 2-form, with i_{X_f} w = -df and
// p(df, .) = X_f. Throws PreconditionError if w is degenerate.
Multivector invert_two_form(const KForm& w);
// Bivector on a leaf-tangent quotient: p(df, .) = X where theta_j(X) = 0 and
// i_X w = -df + sum c_j theta_j. Throws PreconditionError if singular.
Multivector constrained_bivector(const KForm& w, const std::vector<KForm>& thetas);

}  // namespace bihamil
