#include <gtest/gtest.h>

#include "bihamil/lift/lift.hpp"
#include "support/field_gen.hpp"

using namespace bihamil;

namespace {

Tensor11 diag(const Chart& c, const std::vector<std::string>& entries) {
  Tensor11 t(c);
  for (std::size_t i = 0; i < entries.size(); ++i)
    t.add(static_cast<int>(i), static_cast<int>(i), c.parse(entries[i]));
  return t;
}

KForm one_form(const Chart& c, const std::vector<std::string>& comps) {
  KForm f(c, 1);
  for (std::size_t i = 0; i < comps.size(); ++i) f.add({static_cast<int>(i)}, c.parse(comps[i]));
  return f;
}

// r = 1 prolongation written out by hand:
//   h_jk (d/dx_j (x) dx_k + d/dy_k (x) dy_j) - y_j (d_a h_jb - d_b h_ja) d/dy_a (x) dx_b.
Tensor11 prolong_r1_oracle(const CotangentChart& cot, const Tensor11& h) {
  const int n = static_cast<int>(cot.base.dim());
  Tensor11 out(cot.total);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) {
      Scalar v = cot.pullback.apply(h.get(j, k));
      out.add(j, k, v);
      out.add(n + k, n + j, v);
    }
  for (int j = 0; j < n; ++j) {
    Scalar y = cot.total.coordinate(static_cast<std::size_t>(n + j));
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        Scalar d = h.get(j, b).derivative(static_cast<std::size_t>(a)) - h.get(j, a).derivative(static_cast<std::size_t>(b));
        out.add(n + a, b, -(y * cot.pullback.apply(d)));
      }
  }
  return out;
}

bool all_jacobiators_vanish(const BihamiltonianPair& p) {
  return schouten_jacobiator(p.lambda).is_zero() && schouten_jacobiator(p.lambda1).is_zero() &&
         schouten_jacobiator(p.lambda + p.lambda1).is_zero();
}

}  // namespace

TEST(Liouville, Examples) {
  CotangentChart c1 = cotangent_chart(gen::chart(1));
  Liouville l = liouville(c1);
  KForm rho(c1.total, 1), w(c1.total, 2);
  rho.add({0}, c1.total.parse("y1"));
  w.add({1, 0}, Scalar(1));
  EXPECT_EQ(l.r_form, rho);
  EXPECT_EQ(l.omega, w);

  Chart base("R7", {"x1", "x2", "x3", "y1", "y2", "y3", "y4"});
  CotangentChart c7 = cotangent_chart(base, {"X1", "X2", "X3", "Y1", "Y2", "Y3", "Y4"});
  KForm expected(c7.total, 2);
  for (int j = 0; j < 7; ++j) expected.add({7 + j, j}, Scalar(1));
  Liouville l7 = liouville(c7);
  EXPECT_EQ(l7.omega, expected);
  EXPECT_TRUE(exterior_derivative(l7.omega).is_zero());
  EXPECT_EQ(c7.total.coord(7), "X1");

  // Lambda^2 T*R^3: fibers z12, z13, z23 and Omega = sum dz_K ^ dx_K.
  CotangentChart e = exterior_chart(gen::chart(3), 2);
  ASSERT_EQ(e.total.dim(), 6u);
  EXPECT_EQ(e.total.coord(3), "z12");
  EXPECT_EQ(e.total.coord(5), "z23");
  Liouville le = liouville(e);
  EXPECT_EQ(le.omega.degree(), 3);
  EXPECT_EQ(le.omega.get({3, 0, 1}), Scalar(1));
  EXPECT_EQ(le.omega.get({4, 0, 2}), Scalar(1));
  EXPECT_EQ(le.omega.components().size(), 3u);
  EXPECT_EQ(exterior_derivative(le.r_form), le.omega);
  EXPECT_TRUE(exterior_derivative(le.omega).is_zero());

  EXPECT_THROW(exterior_chart(gen::chart(2), 3), PreconditionError);
  EXPECT_THROW(cotangent_chart(gen::chart(2), {"x1", "q"}), PreconditionError);
}

TEST(Prolong, Examples) {
  Chart base = gen::chart(3);
  CotangentChart cot = cotangent_chart(base);
  Tensor1r id = prolong(cot, Tensor1r::from_tensor11(Tensor11::identity(base)));
  EXPECT_EQ(id.to_tensor11(), Tensor11::identity(cot.total));

  Tensor11 a = diag(base, {"1", "2", "3"});
  Tensor11 expected(cot.total);
  for (int j = 0; j < 3; ++j) {
    expected.add(j, j, Scalar(j + 1));
    expected.add(3 + j, 3 + j, Scalar(j + 1));
  }
  EXPECT_EQ(prolong(cot, Tensor1r::from_tensor11(a)).to_tensor11(), expected);

  // h = x2 d/dx1 (x) dx1: the correction couples y1 with dx1, dx2.
  Chart b2 = gen::chart(2);
  CotangentChart c2 = cotangent_chart(b2);
  Tensor11 h(b2);
  h.add(0, 0, b2.parse("x2"));
  Tensor1r hs = prolong(c2, Tensor1r::from_tensor11(h));
  Tensor11 want(c2.total);
  want.add(0, 0, c2.total.parse("x2"));
  want.add(2, 2, c2.total.parse("x2"));
  want.add(2, 1, c2.total.parse("y1"));
  want.add(3, 0, c2.total.parse("-y1"));
  EXPECT_EQ(hs.to_tensor11(), want);
  ProlongationCheck ok = check_prolongation(c2, Tensor1r::from_tensor11(h), hs);
  EXPECT_TRUE(ok.ok());
  EXPECT_TRUE(ok.witnesses.empty());

  // Each hand perturbation breaks one of the four properties.
  auto perturbed = [&](int out, int in, const std::string& v) {
    Tensor1r p = hs;
    p.add(out, {in}, c2.total.parse(v));
    return check_prolongation(c2, Tensor1r::from_tensor11(h), p);
  };
  EXPECT_FALSE(perturbed(0, 2, "1").projects);        // horizontal output on a vertical argument
  EXPECT_FALSE(perturbed(0, 1, "x1").projects);       // different base tensor
  EXPECT_FALSE(perturbed(2, 2, "y2").radial_invariant);
  EXPECT_FALSE(perturbed(3, 0, "y1").closed_form);
  EXPECT_FALSE(perturbed(3, 1, "y1^2").radial_invariant);
}

TEST(Prolong, MatchesHandFormulaForR1) {
  std::mt19937_64 rng(101);
  for (int it = 0; it < 30; ++it) {
    Chart base = gen::chart(2 + it % 2);
    CotangentChart cot = cotangent_chart(base);
    Tensor11 h = gen::tensor11(rng, base, 2);
    ASSERT_EQ(prolong(cot, Tensor1r::from_tensor11(h)).to_tensor11(), prolong_r1_oracle(cot, h)) << it;
  }
}

TEST(Prolong, PropertiesOnRandomTensors) {
  std::mt19937_64 rng(202);
  for (int r = 1; r <= 2; ++r)
    for (int it = 0; it < 50; ++it) {
      Chart base = gen::chart(static_cast<std::size_t>(r + it % (4 - r)));
      CotangentChart cot = cotangent_chart(base);
      Tensor1r h = gen::tensor1r(rng, base, r, 2);
      Tensor1r hs = prolong(cot, h);
      ProlongationCheck rep = check_prolongation(cot, h, hs);
      ASSERT_TRUE(rep.ok()) << "r=" << r << " it=" << it << " " << (rep.witnesses.empty() ? "" : rep.witnesses[0]);
      // H* connects omega and (-1)^{r+1} phi_H^* Omega.
      ContractedForm lam = contract_into(liouville(cot).omega, hs);
      KForm w1 = prolonged_form(cot, h);
      ASSERT_EQ(lam.form, r % 2 == 1 ? w1 : -w1) << "r=" << r << " it=" << it;
    }
}

TEST(Prolong, UniquenessAgainstPerturbationFamily) {
  std::mt19937_64 rng(303);
  int tried = 0;
  for (int it = 0; it < 40; ++it) {
    Chart base = gen::chart(2 + it % 2);
    CotangentChart cot = cotangent_chart(base);
    const int m = static_cast<int>(cot.total.dim());
    Tensor11 h = gen::tensor11(rng, base, 2);
    Tensor1r h1 = Tensor1r::from_tensor11(h);
    Tensor1r hs = prolong(cot, h1);

    // A second prolongation satisfies (b), (c), (d) but moves the base part.
    Tensor11 g = gen::tensor11(rng, base, 1);
    if (!g.is_zero()) {
      ProlongationCheck rep = check_prolongation(cot, h1, hs + prolong(cot, Tensor1r::from_tensor11(g)));
      EXPECT_FALSE(rep.projects);
      EXPECT_TRUE(rep.radial_invariant && rep.vertical_kills && rep.closed_form);
    }

    // Single injected terms, monomial in x and y.
    for (int k = 0; k < 6; ++k) {
      Tensor1r p = hs;
      int out = static_cast<int>(rng() % static_cast<unsigned>(m));
      int in = static_cast<int>(rng() % static_cast<unsigned>(m));
      Scalar coeff = Scalar(gen::nonzero_rational(rng)) *
                     gen::poly_scalar(rng, cot.total.dim(), 2, 1);
      if (coeff.is_zero()) continue;
      p.add(out, {in}, coeff);
      ++tried;
      EXPECT_FALSE(check_prolongation(cot, h1, p).ok()) << cot.total.coord(out) << " <- " << cot.total.coord(in);
    }
  }
  EXPECT_GT(tried, 100);
}

TEST(ProlongTorsion, ConstantAndRandom) {
  CotangentChart c3 = cotangent_chart(gen::chart(3));
  std::mt19937_64 rng(404);
  Tensor11 k(c3.base);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) k.add(i, j, Scalar(gen::small_rational(rng)));
  TorsionCheck t0 = prolong_torsion_check(c3, k);
  EXPECT_TRUE(t0.lifted_torsion.is_zero());
  EXPECT_TRUE(t0.prolonged.is_zero());

  for (int it = 0; it < 50; ++it) {
    Chart base = gen::chart(static_cast<std::size_t>(1 + it % 3));
    CotangentChart cot = cotangent_chart(base);
    TorsionCheck t = prolong_torsion_check(cot, gen::tensor11(rng, base, 2));
    ASSERT_TRUE(t.zero()) << it;
  }
}

TEST(ProlongTorsion, NonzeroTorsion) {
  // h = x2 d/dx1 (x) dx1 + 2 d/dx2 (x) dx2: N(d1, d2) = (x2 - 2) d1.
  Chart base = gen::chart(2);
  CotangentChart cot = cotangent_chart(base);
  Tensor11 h = diag(base, {"x2", "2"});
  Tensor1r n = nijenhuis_torsion(h);
  EXPECT_EQ(n.get(0, {0, 1}), base.parse("x2 - 2"));
  TorsionCheck t = prolong_torsion_check(cot, h);
  EXPECT_FALSE(t.lifted_torsion.is_zero());
  EXPECT_EQ(t.lifted_torsion, t.prolonged);
  // Its horizontal part is the base torsion.
  EXPECT_EQ(t.lifted_torsion.get(0, {0, 1}), cot.total.parse("x2 - 2"));
}

TEST(Connect, Examples) {
  Chart c = gen::chart(4);
  Point s{1, 2, 3, 4};
  KForm w(c, 2);
  w.add({2, 0}, Scalar(1));
  w.add({3, 1}, Scalar(1));
  EXPECT_TRUE(connect(w, KForm(c, 2), s).is_zero());
  EXPECT_EQ(connect(w, w, s).to_tensor11(), Tensor11::identity(c));
  EXPECT_THROW(connect(KForm(c, 2), w, s), PreconditionError);

  std::mt19937_64 rng(505);
  for (int it = 0; it < 20; ++it) {
    KForm a = gen::constant_symplectic(rng, c);
    for (int r = 1; r <= 2; ++r) {
      KForm beta = gen::form(rng, c, r + 1, 2);
      Tensor1r h = connect(a, beta, s);
      ContractedForm back = contract_into(a, h);
      ASSERT_TRUE(back.alternating);
      ASSERT_EQ(back.form, beta) << it;
      ASSERT_TRUE(connect_symmetry_violations(a, h).empty()) << it;
    }
  }

  // A tensor that is not self-adjoint for alpha fails the symmetry.
  Tensor11 bad(c);
  bad.add(0, 1, Scalar(1));
  EXPECT_FALSE(connect_symmetry_violations(w, Tensor1r::from_tensor11(bad)).empty());
}

TEST(G0, ExampleOne) {
  Chart base = gen::chart(2);
  CotangentChart cot = cotangent_chart(base);
  Tensor11 h = diag(base, {"1", "1 + x2^2"});
  KForm alpha = one_form(base, {"1", "1"});
  Tensor1r h1 = Tensor1r::from_tensor11(h);
  KForm w = liouville(cot).omega;
  KForm w1 = prolonged_form(cot, h1);
  G0Result g = g0_generators(cot, w, w1, h, {alpha}, {1, 2, 3, 4});
  ASSERT_EQ(g.g0.span.size(), 1u);
  // omega1 = h1 dy1^dx1 + h2 dy2^dx2, so Cramer gives Y = sum h_j^{-1} d/dy_j.
  VectorField y(cot.total);
  y.add(2, Scalar(1));
  y.add(3, cot.total.parse("1/(1 + x2^2)"));
  EXPECT_EQ(g.g0.span[0], y);
  EXPECT_TRUE(g.omega1_orthogonal);
  EXPECT_TRUE(g.omega_orthogonal);
  EXPECT_EQ(interior(g.g0.span[0], w1), pull_to_total(cot, alpha));

  G0Result triv = g0_generators(cot, w, w, Tensor11::identity(base), {one_form(base, {"1", "0"})}, {1, 2, 3, 4});
  EXPECT_EQ(triv.g0.span[0], VectorField::coordinate(cot.total, 2));

  EXPECT_THROW(g0_generators(cot, w, w1, h, {one_form(base, {"x2", "0"})}, {1, 2, 3, 4}), PreconditionError);
  EXPECT_THROW(g0_generators(cot, w, KForm(cot.total, 2), h, {alpha}, {1, 2, 3, 4}), PreconditionError);
}

TEST(Compat, Examples) {
  Chart c = gen::chart(4);
  KForm w(c, 2);
  w.add({2, 0}, Scalar(1));
  w.add({3, 1}, Scalar(1));
  Tensor11 k = Tensor11::identity(c) * Scalar(3);
  EXPECT_TRUE(compat_criterion(w, k, {one_form(c, {"1", "0", "0", "0"})}).is_zero());

  // Example 1 lifted to the cotangent chart.
  Chart base = gen::chart(2);
  CotangentChart cot = cotangent_chart(base);
  Tensor11 h = diag(base, {"1", "1 + x2^2"});
  Tensor11 hs = prolong(cot, Tensor1r::from_tensor11(h)).to_tensor11();
  KForm alpha = pull_to_total(cot, one_form(base, {"1", "1"}));
  EXPECT_TRUE(compat_criterion(liouville(cot).omega, hs, {alpha}).is_zero());

  // Torsion along the foliation dx3 = 0 breaks the criterion.
  Chart b3 = gen::chart(3);
  CotangentChart c3 = cotangent_chart(b3);
  Tensor11 bad = diag(b3, {"x2", "2", "3"});
  Tensor11 bads = prolong(c3, Tensor1r::from_tensor11(bad)).to_tensor11();
  KForm res = compat_criterion(liouville(c3).omega, bads, {pull_to_total(c3, one_form(b3, {"0", "0", "1"}))});
  EXPECT_FALSE(res.is_zero());

  Tensor11 nonskew(c);
  nonskew.add(0, 1, Scalar(1));
  EXPECT_THROW(compat_criterion(w, nonskew, {}), PreconditionError);
}

TEST(Transversal, ExampleOne) {
  Chart base = gen::chart(2);
  Tensor11 h = diag(base, {"1", "1 + x2^2"});
  LiftResult l = lift(base, h, {one_form(base, {"1", "1"})}, {"y2"});
  EXPECT_EQ(l.transversal.chart.coords(), (std::vector<std::string>{"x1", "x2", "y1"}));
  EXPECT_EQ(l.pair.lambda.chart().dim(), 3u);
  EXPECT_TRUE(all_jacobiators_vanish(l.pair));
  EXPECT_FALSE(l.pair.lambda.is_zero());
  EXPECT_THROW(lift(base, h, {one_form(base, {"1", "1"})}, {"x1"}), PreconditionError);

  // H = I: both constructions see the same constrained form.
  LiftResult t = lift(base, Tensor11::identity(base), {one_form(base, {"1", "0"})}, {"y1"});
  EXPECT_EQ(t.pair.lambda, t.pair.lambda1);
  EXPECT_TRUE(all_jacobiators_vanish(t.pair));
}

TEST(Transversal, CompatibleFamiliesArePoisson) {
  std::mt19937_64 rng(606);
  for (int it = 0; it < 12; ++it) {
    const std::size_t n = 2 + static_cast<std::size_t>(it % 2);
    Chart base = gen::chart(n);
    // H = diag(h_j(x_j)) and alpha = sum c_j(x_j) dx_j satisfy both hypotheses.
    Tensor11 h(base);
    KForm alpha(base, 1);
    for (std::size_t j = 0; j < n; ++j) {
      Polynomial p1 = gen::polynomial(rng, 1, 2, 2);
      Polynomial p2 = gen::polynomial(rng, 1, 1, 2);
      std::vector<Polynomial> img{Polynomial::variable(n, j)};
      Scalar hj = compose(Scalar(p1), n, img) + Scalar(static_cast<long>(5 + j));
      Scalar cj = j + 1 == n ? Scalar(gen::nonzero_rational(rng)) : compose(Scalar(p2), n, img);
      h.add(static_cast<int>(j), static_cast<int>(j), hj);
      alpha.add({static_cast<int>(j)}, cj);
    }
    Tensor11 hs;
    LiftResult l = lift(base, h, {alpha}, {"y" + std::to_string(n)});
    hs = l.hstar.to_tensor11();
    ASSERT_TRUE(compat_criterion(l.omega, hs, {pull_to_total(l.cot, alpha)}).is_zero()) << it;
    ASSERT_TRUE(all_jacobiators_vanish(l.pair)) << it;
  }
}
