#include "bihamil/chart/calculus.hpp"

namespace bihamil {

KForm differential(const Chart& c, const Scalar& f) {
  KForm r(c, 1);
  if (f.is_constant()) return r;
  for (std::size_t i = 0; i < c.dim(); ++i)
    if (f.involves(i)) r.add({static_cast<int>(i)}, f.derivative(i));
  return r;
}

KForm exterior_derivative(const KForm& f) {
  KForm r(f.chart(), f.degree() + 1);
  const std::size_t n = f.chart().dim();
  for (const auto& [k, v] : f.components()) {
    if (v.is_constant()) continue;
    for (std::size_t l = 0; l < n; ++l) {
      if (!v.involves(l)) continue;
      MultiIndex idx;
      idx.reserve(k.size() + 1);
      idx.push_back(static_cast<int>(l));
      idx.insert(idx.end(), k.begin(), k.end());
      r.add(std::move(idx), v.derivative(l));
    }
  }
  return r;
}

KForm wedge(const KForm& a, const KForm& b) {
  require_same_chart(a.chart(), b.chart());
  KForm r(a.chart(), a.degree() + b.degree());
  for (const auto& [i, u] : a.components())
    for (const auto& [j, v] : b.components()) {
      MultiIndex idx = i;
      idx.insert(idx.end(), j.begin(), j.end());
      r.add(std::move(idx), u * v);
    }
  return r;
}

KForm wedge_all(const std::vector<KForm>& forms) {
  if (forms.empty()) throw PreconditionError("wedge_all of an empty list needs a chart");
  KForm acc = forms[0];
  for (std::size_t i = 1; i < forms.size(); ++i) acc = wedge(acc, forms[i]);
  return acc;
}

Multivector wedge(const Multivector& a, const Multivector& b) {
  require_same_chart(a.chart(), b.chart());
  Multivector r(a.chart(), a.degree() + b.degree());
  for (const auto& [i, u] : a.components())
    for (const auto& [j, v] : b.components()) {
      MultiIndex idx = i;
      idx.insert(idx.end(), j.begin(), j.end());
      r.add(std::move(idx), u * v);
    }
  return r;
}

Tensor1r wedge(const Tensor1r& t, const KForm& a) {
  require_same_chart(t.chart(), a.chart());
  Tensor1r r(t.chart(), t.r() + a.degree());
  for (const auto& [k, u] : t.components())
    for (const auto& [j, v] : a.components()) {
      MultiIndex idx = k.second;
      idx.insert(idx.end(), j.begin(), j.end());
      r.add(k.first, std::move(idx), u * v);
    }
  return r;
}

KForm interior(const VectorField& x, const KForm& f) {
  require_same_chart(x.chart(), f.chart());
  if (f.degree() == 0) return KForm(f.chart(), 0);
  KForm r(f.chart(), f.degree() - 1);
  for (const auto& [k, v] : f.components()) {
    for (std::size_t a = 0; a < k.size(); ++a) {
      Scalar xa = x.get(k[a]);
      if (xa.is_zero()) continue;
      MultiIndex rest;
      rest.reserve(k.size() - 1);
      for (std::size_t b = 0; b < k.size(); ++b)
        if (b != a) rest.push_back(k[b]);
      Scalar term = xa * v;
      r.add(std::move(rest), a % 2 == 0 ? term : -term);
    }
  }
  return r;
}

Scalar evaluate(const KForm& f, const std::vector<VectorField>& args) {
  if (static_cast<int>(args.size()) != f.degree()) throw PreconditionError("form arity mismatch");
  KForm cur = f;
  for (const auto& x : args) cur = interior(x, cur);
  return cur.get({});
}

VectorField lie_bracket(const VectorField& x, const VectorField& y) {
  require_same_chart(x.chart(), y.chart());
  VectorField r(x.chart());
  for (const auto& [i, v] : y.components()) r.add(i, x.apply(v));
  for (const auto& [i, v] : x.components()) r.add(i, -y.apply(v));
  return r;
}

Scalar lie_derivative(const VectorField& x, const Scalar& f) { return x.apply(f); }

KForm lie_derivative(const VectorField& x, const KForm& f) {
  KForm a = interior(x, exterior_derivative(f));
  if (f.degree() > 0) a += exterior_derivative(interior(x, f));
  return a;
}

VectorField lie_derivative(const VectorField& x, const VectorField& y) { return lie_bracket(x, y); }

namespace {

// dX^i/dx_l as a sparse table.
std::map<std::pair<int, int>, Scalar> jacobian(const VectorField& x) {
  std::map<std::pair<int, int>, Scalar> j;
  for (const auto& [i, v] : x.components()) {
    if (v.is_constant()) continue;
    for (std::size_t l = 0; l < x.chart().dim(); ++l)
      if (v.involves(l)) j.emplace(std::make_pair(i, static_cast<int>(l)), v.derivative(l));
  }
  return j;
}

}  // namespace

Multivector lie_derivative(const VectorField& x, const Multivector& p) {
  require_same_chart(x.chart(), p.chart());
  Multivector r(p.chart(), p.degree());
  for (const auto& [k, v] : p.components()) r.add(k, x.apply(v));
  auto jac = jacobian(x);
  // - sum_a P^{I[a -> l]} dX^{i_a}/dx_l
  for (const auto& [k, v] : p.components()) {
    for (std::size_t a = 0; a < k.size(); ++a) {
      int l = k[a];
      for (const auto& [il, dv] : jac) {
        if (il.second != l) continue;
        MultiIndex idx = k;
        idx[a] = il.first;
        r.add(std::move(idx), -(v * dv));
      }
    }
  }
  return r;
}

Tensor11 lie_derivative(const VectorField& x, const Tensor11& t) {
  require_same_chart(x.chart(), t.chart());
  Tensor11 r(t.chart());
  for (const auto& [k, v] : t.components()) r.add(k.first, k.second, x.apply(v));
  auto jac = jacobian(x);
  for (const auto& [k, v] : t.components()) {
    for (const auto& [il, dv] : jac) {
      // - T^l_j dX^i/dx_l
      if (il.second == k.first) r.add(il.first, k.second, -(v * dv));
      // + T^i_l dX^l/dx_j
      if (il.first == k.second) r.add(k.first, il.second, v * dv);
    }
  }
  return r;
}

Tensor1r lie_derivative(const VectorField& x, const Tensor1r& t) {
  require_same_chart(x.chart(), t.chart());
  Tensor1r r(t.chart(), t.r());
  for (const auto& [k, v] : t.components()) r.add(k.first, k.second, x.apply(v));
  auto jac = jacobian(x);
  for (const auto& [k, v] : t.components()) {
    for (const auto& [il, dv] : jac) {
      if (il.second == k.first) r.add(il.first, k.second, -(v * dv));
      // + sum_a T^i_{K[k_a -> l]} dX^l/dx_{k_a}: the term lands on the index
      // where slot a carries k_a = il.second and T carries l = il.first.
      for (std::size_t a = 0; a < k.second.size(); ++a) {
        if (k.second[a] != il.first) continue;
        MultiIndex idx = k.second;
        idx[a] = il.second;
        r.add(k.first, std::move(idx), v * dv);
      }
    }
  }
  return r;
}

KForm compose(const KForm& alpha, const Tensor11& h) {
  require_same_chart(alpha.chart(), h.chart());
  if (alpha.degree() != 1) throw PreconditionError("compose expects a 1-form");
  KForm r(alpha.chart(), 1);
  for (const auto& [k, v] : h.components()) {
    Scalar a = alpha.get({k.first});
    if (!a.is_zero()) r.add({k.second}, a * v);
  }
  return r;
}

Bilinear contract_first(const KForm& w, const Tensor11& h) {
  require_same_chart(w.chart(), h.chart());
  // B(X,Y) = w(hX, Y) = X^T h^T W Y
  return {w.chart(), h.matrix().transpose() * form2_matrix(w)};
}

Bilinear contract_second(const KForm& w, const Tensor11& h) {
  require_same_chart(w.chart(), h.chart());
  return {w.chart(), form2_matrix(w) * h.matrix()};
}

KForm contract_output(const KForm& alpha, const Tensor1r& t) {
  require_same_chart(alpha.chart(), t.chart());
  if (alpha.degree() != 1) throw PreconditionError("contract_output expects a 1-form");
  KForm r(t.chart(), t.r());
  for (const auto& [k, v] : t.components()) {
    Scalar a = alpha.get({k.first});
    if (!a.is_zero()) r.add(k.second, a * v);
  }
  return r;
}

Tensor12 nijenhuis_torsion(const Tensor11& g) {
  // N(d_j, .) = L_{G d_j} G - G o L_{d_j} G, read off on d_k for j < k.
  const Chart& c = g.chart();
  const std::size_t n = c.dim();
  Tensor12 out(c, 2);
  for (std::size_t j = 0; j < n; ++j) {
    VectorField dj = VectorField::coordinate(c, j);
    Tensor11 t = lie_derivative(g.apply(dj), g);
    Tensor11 dg(c);
    for (const auto& [k, v] : g.components())
      if (v.involves(j)) dg.add(k.first, k.second, v.derivative(j));
    t -= g * dg;
    for (const auto& [k, v] : t.components())
      if (static_cast<std::size_t>(k.second) > j) out.add(k.first, {static_cast<int>(j), k.second}, v);
  }
  return out;
}

Multivector schouten_jacobiator(const Multivector& p) {
  if (p.degree() != 2) throw PreconditionError("jacobiator expects a bivector");
  const Chart& c = p.chart();
  const int n = static_cast<int>(c.dim());
  // {{x_i,x_j},x_k} = sum_a P^{ak} d_a P^{ij}
  auto bracket2 = [&](int i, int j, int k) {
    Scalar pij = p.get({i, j});
    Scalar s;
    if (pij.is_constant()) return s;
    for (int a = 0; a < n; ++a) {
      if (!pij.involves(static_cast<std::size_t>(a))) continue;
      Scalar pak = p.get({a, k});
      if (!pak.is_zero()) s += pak * pij.derivative(static_cast<std::size_t>(a));
    }
    return s;
  };
  Multivector out(c, 3);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k) out.add({i, j, k}, bracket2(i, j, k) + bracket2(j, k, i) + bracket2(k, i, j));
  return out;
}

Multivector invert_two_form(const KForm& w) { return constrained_bivector(w, {}); }

Multivector constrained_bivector(const KForm& w, const std::vector<KForm>& thetas) {
  const Chart& c = w.chart();
  const std::size_t m = c.dim();
  const std::size_t r = thetas.size();
  SMatrix big(m + r, m + r);
  SMatrix wm = form2_matrix(w);
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b) big(a, b) = wm(a, b);
  for (std::size_t j = 0; j < r; ++j) {
    require_same_chart(c, thetas[j].chart());
    for (const auto& [k, v] : thetas[j].components()) {
      std::size_t a = static_cast<std::size_t>(k[0]);
      big(a, m + j) = v;
      big(m + j, a) = -v;
    }
  }
  auto inv = inverse(big);
  if (!inv) throw PreconditionError("2-form is degenerate on the constrained subspace");
  // p(df, .) = A df with A the top-left block, so P = A^T.
  Multivector out(c, 2);
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = a + 1; b < m; ++b) out.add({static_cast<int>(a), static_cast<int>(b)}, (*inv)(b, a));
  return out;
}

}  // namespace bihamil
