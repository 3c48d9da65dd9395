#include <gtest/gtest.h>

#include "bihamil/pencil/algebraic_type.hpp"
#include "bihamil/pencil/classify.hpp"
#include "bihamil/pencil/pencil.hpp"
#include "support/field_gen.hpp"
#include "support/pencil_gen.hpp"

using namespace bihamil;

namespace {

QMatrix wedge2(std::size_t m, std::size_t i, std::size_t j, const Rational& c = 1) {
  QMatrix p(m, m);
  p(i, j) = c;
  p(j, i) = -c;
  return p;
}

UniPoly poly(std::vector<Rational> c) { return UniPoly::from_rationals(c); }

// Brute force: intersection of the column spaces of P_t for the given t.
QMatrix brute_axis(const SkewPencil& p, const std::vector<Rational>& ts) {
  QMatrix acc = QMatrix::identity(p.dim());
  for (const auto& t : ts) acc = intersect(acc, p.at(t));
  return acc;
}

}  // namespace

TEST(GenericRank, Examples) {
  SkewPencil kron = make_pencil(wedge2(3, 0, 1), wedge2(3, 1, 2));
  RankProfile pr = generic_rank(kron);
  EXPECT_EQ(pr.rank, 2u);
  EXPECT_TRUE(pr.exceptional.empty());

  SkewPencil scal = make_pencil(wedge2(2, 0, 1), wedge2(2, 0, 1, 2));
  EXPECT_EQ(generic_rank(scal).rank, 2u);
  EXPECT_EQ(rank(scal.at(Rational(-1))), 0u);
  EXPECT_TRUE(generic_rank(scal).exceptional.empty());

  SkewPencil zero = make_pencil(QMatrix(4, 4), QMatrix(4, 4));
  EXPECT_EQ(generic_rank(zero).rank, 0u);

  // lambda1 = lambda/2 makes the pencil (1 - t/2) lambda, zero at the probe t = 2.
  SkewPencil ex = make_pencil(wedge2(2, 0, 1), wedge2(2, 0, 1, Rational(1, 2)));
  RankProfile pe = generic_rank(ex);
  ASSERT_EQ(pe.exceptional.size(), 1u);
  EXPECT_EQ(pe.exceptional[0], Rational(2));
  EXPECT_EQ(probe_params(4), (std::vector<Rational>{0, 1, 2, 3, 4}));
  EXPECT_EQ(probe_params(2, {Rational(1)}), (std::vector<Rational>{0, 2, 3, 4}));
}

TEST(PrimaryAxis, Examples) {
  SkewPencil kron = make_pencil(wedge2(3, 0, 1), wedge2(3, 1, 2));
  QMatrix ax = primary_axis(kron);
  EXPECT_EQ(ax.cols(), 1u);
  EXPECT_TRUE(same_span(ax, brute_axis(kron, {0, 1, 2, 3, 4})));

  QMatrix w = wedge2(4, 0, 2) + wedge2(4, 1, 3);
  SkewPencil symp = make_pencil(w, w * Rational(3) + wedge2(4, 0, 1));
  EXPECT_EQ(primary_axis(symp).cols(), 4u);

  // Kronecker 3 on coordinates 0..2 plus a symplectic 2-block on 3..4.
  SkewPencil sum = make_pencil(wedge2(5, 0, 1) + wedge2(5, 3, 4), wedge2(5, 1, 2) + wedge2(5, 3, 4, 5));
  QMatrix a = primary_axis(sum);
  EXPECT_EQ(a.cols(), 3u);
  EXPECT_TRUE(same_span(a, brute_axis(sum, {0, 1, 2, 3, 4})));
  QMatrix expected(5, 3);
  expected(1, 0) = 1;  // the core of the Kronecker block
  expected(3, 1) = 1;
  expected(4, 2) = 1;
  EXPECT_TRUE(same_span(a, expected));

  SkewPencil nonmax = make_pencil(wedge2(4, 0, 1), wedge2(4, 0, 1) + wedge2(4, 2, 3));
  EXPECT_THROW(primary_axis(nonmax), PreconditionError);
}

TEST(Decompose, Examples) {
  SkewPencil scal = make_pencil(wedge2(2, 0, 1), wedge2(2, 0, 1, 2));
  PencilDecomposition d = decompose(scal);
  EXPECT_TRUE(d.kronecker_dims.empty());
  EXPECT_EQ(d.symplectic_dim, 2u);
  // K solves w1 = w(K., .) for the dual 2-forms, so K = I/2; its inverse is the
  // bivector ratio 2I.
  EXPECT_EQ(d.k_endomorphism, QMatrix::identity(2) * Rational(1, 2));
  EXPECT_EQ(d.symplectic_charpoly, poly({Rational(1, 4), -1, 1}));
  EXPECT_EQ(d.recursion_charpoly, poly({4, -4, 1}));

  SkewPencil one = make_pencil(QMatrix(1, 1), QMatrix(1, 1));
  PencilDecomposition d1 = decompose(one);
  EXPECT_EQ(d1.kronecker_dims, std::vector<int>{1});
  EXPECT_EQ(d1.symplectic_dim, 0u);

  SkewPencil kron = make_pencil(wedge2(3, 0, 1), wedge2(3, 1, 2));
  PencilDecomposition dk = decompose(kron);
  EXPECT_EQ(dk.kronecker_dims, std::vector<int>{3});
  EXPECT_EQ(dk.secondary_axis.cols(), 1u);
  EXPECT_EQ(dk.web_dim, 2u);

  QMatrix w = wedge2(4, 0, 2) + wedge2(4, 1, 3);
  PencilDecomposition same = decompose(make_pencil(w, w));
  EXPECT_EQ(same.k_endomorphism, QMatrix::identity(4));
  EXPECT_EQ(same.symplectic_charpoly, poly({1, -1}).pow(4));
}

TEST(Decompose, KroneckerDimsFromCodims) {
  EXPECT_EQ(kronecker_dims_from_codims(2, {2, 3, 3}), (std::vector<int>{1, 3}));
  EXPECT_EQ(kronecker_dims_from_codims(1, {1, 2, 3, 3}), (std::vector<int>{5}));
  EXPECT_EQ(kronecker_dims_from_codims(0, {0, 0}), (std::vector<int>{}));
  EXPECT_THROW(kronecker_dims_from_codims(2, {2, 3, 4}), DefectError);
}

TEST(Decompose, RecoversPlantedBlocks) {
  std::mt19937_64 rng(71);
  for (int it = 0; it < 60; ++it) {
    gen::PlantedPencil pp = gen::random_planted(rng, 9);
    PencilDecomposition d = decompose(pp.pencil);
    ASSERT_EQ(d.kronecker_dims, pp.kronecker_dims);
    ASSERT_EQ(d.symplectic_dim, pp.symplectic_dim);
    ASSERT_EQ(d.symplectic_charpoly, UniPoly::from_rationals(charpoly(pp.k)));
    ASSERT_EQ(algebraic_type(d.k_endomorphism), algebraic_type(pp.k));
    ASSERT_TRUE(same_span(d.primary_axis, pp.axis));
    ASSERT_TRUE(same_span(d.secondary_axis, pp.secondary));
  }
}

TEST(Decompose, SymbolicAgreesWithPointwise) {
  Chart c("S", {"s"});
  Scalar s = c.coordinate(0);
  SMatrix l(3, 3), l1(3, 3);
  l(0, 1) = Scalar(1);
  l(1, 0) = Scalar(-1);
  l1(1, 2) = s + Scalar(2);
  l1(2, 1) = -(s + Scalar(2));
  SymbolicDecomposition d = decompose(make_pencil(l, l1));
  EXPECT_EQ(d.kronecker_dims, std::vector<int>{3});
  PencilDecomposition dp = decompose(make_pencil(evaluate(l, {Rational(5)}), evaluate(l1, {Rational(5)})));
  EXPECT_EQ(dp.kronecker_dims, d.kronecker_dims);
}

TEST(AlgebraicType, Examples) {
  AlgebraicType id = algebraic_type(QMatrix::identity(2));
  EXPECT_EQ(id.charpoly, poly({1, -2, 1}));
  ASSERT_EQ(id.factors.size(), 1u);
  EXPECT_EQ(id.factors[0].factor, poly({-1, 1}));
  EXPECT_EQ(id.rank_fingerprint[0], (std::vector<std::size_t>{0, 0}));
  EXPECT_EQ(id.minimal_polynomial(), poly({-1, 1}));

  QMatrix nil(2, 2);
  nil(0, 1) = 1;
  AlgebraicType nt = algebraic_type(nil);
  EXPECT_EQ(nt.charpoly, poly({0, 0, 1}));
  EXPECT_EQ(nt.rank_fingerprint[0], (std::vector<std::size_t>{1, 0}));
  EXPECT_EQ(nt.minimal_polynomial(), poly({0, 0, 1}));
  EXPECT_NE(nt, algebraic_type(QMatrix(2, 2)));

  // Complex structure plus a nilpotent coupling: charpoly (t^2+1)^2, minimal (t^2+1)^2.
  QMatrix h(4, 4);
  h(1, 0) = 1;
  h(0, 1) = -1;
  h(3, 2) = 1;
  h(2, 3) = -1;
  h(0, 2) = 1;
  h(1, 3) = 1;
  AlgebraicType ht = algebraic_type(h);
  EXPECT_EQ(ht.charpoly, poly({1, 0, 1}).pow(2));
  EXPECT_EQ(ht.minimal_polynomial(), poly({1, 0, 1}).pow(2));
}

TEST(AlgebraicType, ShapeIgnoresEigenvalues) {
  QMatrix a = QMatrix::identity(2) * Rational(2);
  QMatrix b = QMatrix::identity(2) * Rational(5);
  EXPECT_NE(algebraic_type(a), algebraic_type(b));
  EXPECT_TRUE(same_shape(algebraic_type(a), algebraic_type(b)));
  QMatrix j = b;
  j(0, 1) = 1;
  EXPECT_FALSE(same_shape(algebraic_type(a), algebraic_type(j)));
  QMatrix d(2, 2);
  d(0, 0) = 2;
  d(1, 1) = 5;
  EXPECT_FALSE(same_shape(algebraic_type(a), algebraic_type(d)));
}

TEST(AlgebraicType, SimilarityInvariant) {
  std::mt19937_64 rng(73);
  for (int it = 0; it < 40; ++it) {
    std::size_t n = 1 + it % 5;
    QMatrix k = gen::rational_matrix(rng, n, n, 2);
    if (it % 3 == 0 && n > 1) {
      k = QMatrix::identity(n) * Rational(2);
      k(0, 1) = 1;
    }
    QMatrix q = gen::invertible_matrix(rng, n);
    ASSERT_EQ(algebraic_type(*inverse(q) * k * q), algebraic_type(k));
  }
}

TEST(Newton, Examples) {
  EXPECT_EQ(elementary_from_power_sums<Rational>({5, 13}), (std::vector<Rational>{5, 6}));
  EXPECT_EQ(charpoly_from_power_sums({Scalar(5), Scalar(13)}), poly({6, -5, 1}));
  EXPECT_EQ(elementary_from_power_sums<Rational>({0, 0, 0}), (std::vector<Rational>{0, 0, 0}));
  EXPECT_EQ(elementary_from_power_sums<Rational>({Rational(7, 3)}), (std::vector<Rational>{Rational(7, 3)}));
}

TEST(Newton, RoundTrip) {
  std::mt19937_64 rng(79);
  for (int it = 0; it < 60; ++it) {
    std::size_t s = 1 + it % 8;
    std::vector<Rational> p;
    for (std::size_t i = 0; i < s; ++i) p.push_back(gen::small_rational(rng, 9, 4));
    ASSERT_EQ(power_sums_from_elementary(elementary_from_power_sums(p)), p);
    ASSERT_EQ(elementary_from_power_sums(power_sums_from_elementary(p)), p);
  }
}

TEST(Newton, TracesGiveCharpoly) {
  std::mt19937_64 rng(83);
  for (int it = 0; it < 30; ++it) {
    std::size_t n = 1 + it % 6;
    QMatrix k = gen::rational_matrix(rng, n, n, 3);
    std::vector<Rational> tr = trace_powers(k, n);
    std::vector<Scalar> trs(tr.begin(), tr.end());
    ASSERT_EQ(charpoly_from_power_sums(trs), algebraic_type(k).charpoly);
    ASSERT_EQ(power_sums_from_charpoly(algebraic_type(k).charpoly), trs);
  }
}

TEST(Newton, JacobianIsVandermonde) {
  // d(p_1..p_s)/d(z_1..z_s) = s! prod_{j<k} (z_k - z_j).
  for (std::size_t s = 1; s <= 4; ++s) {
    Chart c = gen::chart(s, "z");
    SMatrix jac(s, s);
    Scalar vdm(1), fact(1);
    for (std::size_t k = 1; k <= s; ++k) {
      fact *= Scalar(static_cast<long>(k));
      for (std::size_t j = 0; j < s; ++j) jac(k - 1, j) = Scalar(static_cast<long>(k)) * c.coordinate(j).pow(static_cast<unsigned>(k - 1));
    }
    for (std::size_t j = 0; j < s; ++j)
      for (std::size_t k = j + 1; k < s; ++k) vdm *= c.coordinate(k) - c.coordinate(j);
    ASSERT_EQ(determinant(jac), fact * vdm);
  }
}

TEST(Classify, ConstantPencilIsRegular) {
  Chart c = gen::chart(4);
  Multivector l(c, 2), l1(c, 2);
  l.add({0, 2}, Scalar(1));
  l.add({1, 3}, Scalar(1));
  l1.add({0, 2}, Scalar(2));
  l1.add({1, 3}, Scalar(3));
  RegularityReport r = classify_point(l, l1, {1, 2, 3, 4});
  EXPECT_TRUE(r.regular);
  EXPECT_TRUE(r.necessary_condition);
  EXPECT_EQ(r.coefficient_differential_rank, std::optional<std::size_t>(0));
  EXPECT_EQ(r.center.symplectic_dim, 4u);
  EXPECT_EQ(r.cloud.size(), 8u);
}

TEST(Classify, VaryingEigenvalue) {
  // lambda1 = (2 + x1^2) lambda on a 2-block, plus a Kronecker 3-block.
  Chart c = gen::chart(5);
  Multivector l(c, 2), l1(c, 2);
  l.add({0, 1}, Scalar(1));
  l1.add({0, 1}, c.parse("2 + x1^2"));
  l.add({2, 3}, Scalar(1));
  l1.add({3, 4}, Scalar(1));
  RegularityReport r = classify_point(l, l1, {1, 1, 1, 1, 1});
  EXPECT_TRUE(r.regular);
  EXPECT_EQ(r.center.kronecker_dims, std::vector<int>{3});
  EXPECT_EQ(r.center.trace_differential_rank, std::optional<std::size_t>(1));
  // dg is a multiple of dx1 and d/dx1 lies in the primary axis.
  EXPECT_TRUE(r.necessary_condition);

  // Collision of the eigenvalue with a second block at x1 = 0 changes the type.
  Chart c4 = gen::chart(4);
  Multivector a(c4, 2), a1(c4, 2);
  a.add({0, 1}, Scalar(1));
  a.add({2, 3}, Scalar(1));
  a1.add({0, 1}, c4.parse("1 + x1"));
  a1.add({2, 3}, Scalar(1));
  RegularityReport at0 = classify_point(a, a1, {0, 1, 1, 1});
  EXPECT_FALSE(at0.type_constant);
  EXPECT_FALSE(at0.regular);
  RegularityReport away = classify_point(a, a1, {2, 1, 1, 1});
  EXPECT_TRUE(away.regular);
}

TEST(Classify, PoleIsReported) {
  Chart c = gen::chart(2);
  Multivector l(c, 2), l1(c, 2);
  l.add({0, 1}, c.parse("1/x1"));
  l1.add({0, 1}, Scalar(1));
  RegularityReport r = classify_point(l, l1, {0, 1});
  EXPECT_FALSE(r.center.evaluated);
  EXPECT_FALSE(r.regular);
}
