#include "bihamil/chart/identities.hpp"

namespace bihamil {

Identity11Report check_identity_1_1(const KForm& rho, const Tensor11& h, const VectorField& x, const VectorField& y) {
  KForm drh = exterior_derivative(compose(rho, h));
  VectorField hx = h.apply(x), hy = h.apply(y);
  Scalar lhs = evaluate(drh, {hx, y}) + evaluate(drh, {x, hy});
  Scalar rhs = evaluate(exterior_derivative(rho), {hx, hy}) +
               evaluate(exterior_derivative(compose(rho, h * h)), {x, y}) +
               evaluate(rho, {nijenhuis_torsion(h).evaluate({x, y})});
  return {lhs, rhs, lhs - rhs};
}

Tensor11 solve_endomorphism(const KForm& beta, const KForm& beta1, const Point& sample) {
  SMatrix b = form2_matrix(beta);
  if (rank(evaluate(b, sample)) != b.rows()) throw PreconditionError("beta is singular at the sample point");
  // beta(KX, Y) = X^T K^T B Y, so K^T B = B1 and K = B^{-1} B1 (both skew).
  auto k = solve(b, form2_matrix(beta1));
  if (!k) throw DefectError("nondegenerate beta gave an inconsistent system");
  return Tensor11::from_matrix(beta.chart(), *k);
}

Identity13Report check_identity_1_3(const KForm& beta, const KForm& beta1, const VectorField& x1,
                                    const VectorField& x2, const VectorField& x3, const Point& sample,
                                    const std::vector<Rational>& shifts) {
  Identity13Report rep;
  rep.k = solve_endomorphism(beta, beta1, sample);
  const Tensor11& k = rep.k;
  const Chart& c = beta.chart();
  KForm beta2 = contract_first(beta, k * k).to_form();
  KForm db = exterior_derivative(beta), db1 = exterior_derivative(beta1), db2 = exterior_derivative(beta2);
  VectorField kx1 = k.apply(x1), kx2 = k.apply(x2);
  VectorField n12 = nijenhuis_torsion(k).evaluate({x1, x2});
  Scalar torsion_term = evaluate(beta, {n12, x3});
  Scalar lhs = torsion_term + evaluate(db, {kx1, kx2, x3});
  Scalar db2_term = evaluate(db2, {x1, x2, x3});
  Scalar rhs = -db2_term + evaluate(db1, {kx1, x2, x3}) + evaluate(db1, {x1, kx2, x3});
  rep.lemma_residual = lhs - rhs;

  if (!shifts.empty() && (!db.is_zero() || !db1.is_zero()))
    throw PreconditionError("the shifted identity needs closed beta and beta1");
  for (const Rational& t : shifts) {
    Tensor11 kt = k + Tensor11::identity(c) * Scalar(t);
    auto inv = inverse(kt.matrix());
    if (!inv) throw PreconditionError("K + tI is not invertible for t = " + t.get_str());
    KForm tau = contract_first(beta1, Tensor11::from_matrix(c, *inv)).to_form();
    KForm dtau = exterior_derivative(tau);
    Scalar lhs_t = evaluate(dtau, {kt.apply(x1), kt.apply(x2), kt.apply(x3)});
    Scalar mid = Scalar(t) * torsion_term;
    rep.corollary.push_back({t, lhs_t - mid, mid + Scalar(t) * db2_term});
  }
  return rep;
}

}  // namespace bihamil
