#include "bihamil/lift/lift.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "bihamil/errors.hpp"

namespace bihamil {

namespace {

std::string index_name(const MultiIndex& k) {
  std::string s;
  for (int i : k) s += std::to_string(i + 1);
  return s;
}

MultiIndex without(const MultiIndex& k, std::size_t a) {
  MultiIndex out;
  for (std::size_t i = 0; i < k.size(); ++i)
    if (i != a) out.push_back(k[i]);
  return out;
}

MultiIndex with_last(MultiIndex k, int l) {
  k.push_back(l);
  return k;
}

std::string describe_point(const Point& p) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < p.size(); ++i) os << (i ? "," : "") << p[i].get_str();
  os << ")";
  return os.str();
}

void require_base(const CotangentChart& cot, const Chart& c) {
  if (cot.base != c) throw PreconditionError("field is not on the base chart " + cot.base.name());
}

}  // namespace

CotangentChart exterior_chart(const Chart& base, int r, std::vector<std::string> fiber_names) {
  if (r < 1 || static_cast<std::size_t>(r) > base.dim()) throw PreconditionError("exterior degree out of range");
  CotangentChart cot;
  cot.base = base;
  cot.r = r;
  cot.fiber = increasing_indices(base.dim(), static_cast<std::size_t>(r));
  if (fiber_names.empty()) {
    for (const auto& k : cot.fiber) fiber_names.push_back(r == 1 ? "y" + index_name(k) : "z" + index_name(k));
  }
  if (fiber_names.size() != cot.fiber.size()) throw PreconditionError("fiber name count differs from fiber rank");
  std::vector<std::string> coords = base.coords();
  for (auto& n : fiber_names) {
    if (base.index_of(n)) throw PreconditionError("fiber coordinate " + n + " clashes with the base");
    coords.push_back(std::move(n));
  }
  std::string name = r == 1 ? "T*" + base.name() : "L" + std::to_string(r) + "T*" + base.name();
  cot.total = Chart(name, coords);
  cot.pullback = ChartMap::by_name(base, cot.total);
  cot.projection = ChartMap::by_name(cot.total, base);
  return cot;
}

CotangentChart cotangent_chart(const Chart& base, std::vector<std::string> fiber_names) {
  return exterior_chart(base, 1, std::move(fiber_names));
}

Liouville liouville(const CotangentChart& cot) {
  Liouville l{KForm(cot.total, cot.r), KForm()};
  for (std::size_t k = 0; k < cot.fiber.size(); ++k) l.r_form.add(cot.fiber[k], cot.total.coordinate(cot.fiber_index(k)));
  l.omega = exterior_derivative(l.r_form);
  return l;
}

Tensor1r pull_to_total(const CotangentChart& cot, const Tensor1r& h) {
  require_base(cot, h.chart());
  return transport(cot.pullback, h);
}

KForm pull_to_total(const CotangentChart& cot, const KForm& f) {
  require_base(cot, f.chart());
  return transport(cot.pullback, f);
}

Tensor1r prolong(const CotangentChart& cot, const Tensor1r& h) {
  require_base(cot, h.chart());
  if (cot.r != 1) throw PreconditionError("prolongation lives on the cotangent chart (r = 1)");
  const int n = static_cast<int>(cot.base.dim());
  const int r = h.r();
  const auto& pb = cot.pullback;
  Tensor1r out(cot.total, r);
  for (const auto& [key, v] : h.components()) {
    const auto& [j, k] = key;
    Scalar hv = pb.apply(v);
    out.add(j, k, hv);
    for (std::size_t a = 0; a < k.size(); ++a) {
      // -(-1)^a with a counted from 1
      Scalar term = a % 2 == 0 ? hv : -hv;
      MultiIndex slots{n + j};
      for (int i : without(k, a)) slots.push_back(i);
      out.add(n + k[a], slots, term);
    }
  }
  if (r + 1 <= n) {
    for (const auto& k : increasing_indices(static_cast<std::size_t>(n), static_cast<std::size_t>(r + 1))) {
      for (int j = 0; j < n; ++j) {
        Scalar yj = cot.total.coordinate(static_cast<std::size_t>(n + j));
        for (std::size_t a = 0; a < k.size(); ++a) {
          Scalar dh = h.get(j, without(k, a)).derivative(static_cast<std::size_t>(k[a]));
          if (dh.is_zero()) continue;
          Scalar c = -(yj * pb.apply(dh));
          for (std::size_t b = 0; b < k.size(); ++b) out.add(n + k[b], without(k, b), (a + b) % 2 == 0 ? c : -c);
        }
      }
    }
  }
  return out;
}

KForm prolonged_form(const CotangentChart& cot, const Tensor1r& h) {
  require_base(cot, h.chart());
  if (cot.r != 1) throw PreconditionError("phi_H pulls back to the cotangent chart (r = 1)");
  KForm pre(cot.total, h.r());
  for (std::size_t j = 0; j < cot.base.dim(); ++j)
    pre += pull_to_total(cot, h.output_component(static_cast<int>(j))) *
           cot.total.coordinate(cot.fiber_index(j));
  return exterior_derivative(pre);
}

ContractedForm contract_into(const KForm& w, const Tensor1r& t) {
  require_same_chart(w.chart(), t.chart());
  if (w.degree() != 2) throw PreconditionError("expected a 2-form");
  const int m = static_cast<int>(w.chart().dim());
  std::map<std::pair<MultiIndex, int>, Scalar> raw;
  for (const auto& [key, v] : t.components())
    for (int l = 0; l < m; ++l) {
      Scalar wl = w.get({key.first, l});
      if (wl.is_zero()) continue;
      Scalar& slot = raw[{key.second, l}];
      slot += v * wl;
    }
  ContractedForm out{KForm(w.chart(), t.r() + 1), true};
  for (const auto& [key, v] : raw)
    if (!v.is_zero() && key.second > key.first.back()) out.form.add(with_last(key.first, key.second), v);
  auto raw_at = [&](const MultiIndex& k, int l) {
    auto it = raw.find({k, l});
    return it == raw.end() ? Scalar() : it->second;
  };
  for (const auto& [key, v] : raw)
    if (v != out.form.get(with_last(key.first, key.second))) out.alternating = false;
  for (const auto& [s, v] : out.form.components())
    for (std::size_t p = 0; p < s.size(); ++p)
      if (raw_at(without(s, p), s[p]) != out.form.get(with_last(without(s, p), s[p]))) out.alternating = false;
  return out;
}

ProlongationCheck check_prolongation(const CotangentChart& cot, const Tensor1r& h, const Tensor1r& hstar) {
  require_same_chart(cot.total, hstar.chart());
  const int n = static_cast<int>(cot.base.dim());
  ProlongationCheck rep;
  const Chart& c = cot.total;

  Tensor1r base_part(c, hstar.r());
  for (const auto& [key, v] : hstar.components()) {
    if (key.first >= n) continue;
    bool horizontal_args = true;
    for (int i : key.second) horizontal_args = horizontal_args && i < n;
    if (!horizontal_args) {
      rep.projects = false;
      rep.witnesses.push_back("(a) horizontal output on a vertical argument: d/d" + c.coord(key.first));
      continue;
    }
    base_part.add(key.first, key.second, v);
  }
  if (base_part != pull_to_total(cot, h)) {
    rep.projects = false;
    rep.witnesses.push_back("(a) horizontal block differs from the base tensor");
  }

  VectorField xi(c);
  for (int j = 0; j < n; ++j) xi.add(n + j, c.coordinate(static_cast<std::size_t>(n + j)));
  if (!lie_derivative(xi, hstar).is_zero()) {
    rep.radial_invariant = false;
    rep.witnesses.push_back("(b) Lie derivative along the radial field is nonzero");
  }

  for (const auto& [key, v] : hstar.components()) {
    int vertical = 0;
    for (int i : key.second) vertical += i >= n ? 1 : 0;
    if (vertical >= 2) {
      rep.vertical_kills = false;
      rep.witnesses.push_back("(c) nonzero on two vertical arguments, output d/d" + c.coord(key.first));
    }
  }

  ContractedForm lam = contract_into(liouville(cot).omega, hstar);
  if (!lam.alternating) {
    rep.closed_form = false;
    rep.witnesses.push_back("(d) omega(H*(..), .) is not alternating");
  } else if (!exterior_derivative(lam.form).is_zero()) {
    rep.closed_form = false;
    rep.witnesses.push_back("(d) omega(H*(..), .) is not closed");
  }
  return rep;
}

TorsionCheck prolong_torsion_check(const CotangentChart& cot, const Tensor11& h) {
  Tensor1r hs = prolong(cot, Tensor1r::from_tensor11(h));
  TorsionCheck t;
  t.lifted_torsion = nijenhuis_torsion(hs.to_tensor11());
  t.prolonged = prolong(cot, nijenhuis_torsion(h));
  t.residual = t.lifted_torsion - t.prolonged;
  return t;
}

Tensor1r connect(const KForm& alpha, const KForm& beta, const Point& sample) {
  require_same_chart(alpha.chart(), beta.chart());
  const Chart& c = alpha.chart();
  const std::size_t m = c.dim();
  if (beta.degree() < 2) throw PreconditionError("connect needs an (r+1)-form with r >= 1");
  const int r = beta.degree() - 1;
  SMatrix a = form2_matrix(alpha);
  if (rank(evaluate(a, sample)) != m) throw PreconditionError("alpha is singular at " + describe_point(sample));
  auto slots = increasing_indices(m, static_cast<std::size_t>(r));
  SMatrix rhs(m, slots.size());
  for (std::size_t s = 0; s < slots.size(); ++s)
    for (std::size_t l = 0; l < m; ++l) rhs(l, s) = beta.get(with_last(slots[s], static_cast<int>(l)));
  auto sol = solve(a.transpose(), rhs);
  if (!sol) throw PreconditionError("alpha is degenerate");
  Tensor1r h(c, r);
  for (std::size_t s = 0; s < slots.size(); ++s)
    for (std::size_t i = 0; i < m; ++i) h.add(static_cast<int>(i), slots[s], (*sol)(i, s));
  return h;
}

std::vector<std::string> connect_symmetry_violations(const KForm& alpha, const Tensor1r& h) {
  require_same_chart(alpha.chart(), h.chart());
  const int m = static_cast<int>(alpha.chart().dim());
  const int r = h.r();
  std::vector<std::string> out;
  std::vector<int> v(static_cast<std::size_t>(r + 1), 0);
  for (;;) {
    MultiIndex first(v.begin(), v.begin() + r);
    MultiIndex second(v.begin(), v.begin() + r - 1);
    second.push_back(v[static_cast<std::size_t>(r)]);
    Scalar lhs, rhs;
    for (int i = 0; i < m; ++i) {
      lhs += h.get(i, first) * alpha.get({i, v[static_cast<std::size_t>(r)]});
      rhs += alpha.get({v[static_cast<std::size_t>(r - 1)], i}) * h.get(i, second);
    }
    if (lhs != rhs) out.push_back("slots " + index_name(MultiIndex(v.begin(), v.end())));
    std::size_t p = 0;
    while (p < v.size() && ++v[p] == m) v[p++] = 0;
    if (p == v.size()) break;
  }
  return out;
}

G0Result g0_generators(const CotangentChart& cot, const KForm& omega, const KForm& omega1, const Tensor11& h,
                       const std::vector<KForm>& alphas, const Point& sample) {
  require_same_chart(cot.total, omega.chart());
  require_same_chart(cot.total, omega1.chart());
  require_base(cot, h.chart());
  const std::size_t m = cot.total.dim();
  for (std::size_t j = 0; j < alphas.size(); ++j) {
    require_base(cot, alphas[j].chart());
    if (alphas[j].degree() != 1) throw PreconditionError("alpha_" + std::to_string(j + 1) + " is not a 1-form");
    if (!exterior_derivative(alphas[j]).is_zero())
      throw PreconditionError("alpha_" + std::to_string(j + 1) + " is not closed");
  }
  SMatrix w1 = form2_matrix(omega1);
  if (rank(evaluate(w1, sample)) != m) throw PreconditionError("omega1 is singular at " + describe_point(sample));
  SMatrix rhs(m, alphas.size());
  std::vector<KForm> pulled;
  for (std::size_t j = 0; j < alphas.size(); ++j) {
    pulled.push_back(pull_to_total(cot, alphas[j]));
    for (const auto& [k, v] : pulled.back().components()) rhs(static_cast<std::size_t>(k[0]), j) = v;
  }
  auto sol = solve(w1.transpose(), rhs);
  if (!sol) throw PreconditionError("omega1 is degenerate");

  G0Result res;
  res.g0.chart = cot.total;
  res.g0.rank = static_cast<int>(alphas.size());
  for (std::size_t j = 0; j < alphas.size(); ++j) res.g0.span.push_back(VectorField::from_components(cot.total, sol->column(j)));

  res.omega1_orthogonal = true;
  for (std::size_t j = 0; j < alphas.size(); ++j)
    if (interior(res.g0.span[j], omega1) != pulled[j]) res.omega1_orthogonal = false;

  auto hinv = inverse(h.matrix());
  if (hinv) {
    Tensor11 hi = Tensor11::from_matrix(cot.base, *hinv);
    std::vector<KForm> ann;
    for (const auto& a : alphas) ann.push_back(pull_to_total(cot, compose(a, hi)));
    KForm vol = wedge_all(ann);
    res.omega_orthogonal = !vol.is_zero();
    for (const auto& y : res.g0.span)
      if (!wedge(interior(y, omega), vol).is_zero()) res.omega_orthogonal = false;
  }
  return res;
}

KForm compat_criterion(const KForm& omega, const Tensor11& h, const std::vector<KForm>& alphas) {
  require_same_chart(omega.chart(), h.chart());
  Bilinear b = contract_first(omega, h * h);
  if (!b.is_skew()) throw PreconditionError("omega(H^2 ., .) is not skew-symmetric");
  for (const auto& a : alphas) require_same_chart(omega.chart(), a.chart());
  return wedge(wedge_all(alphas), exterior_derivative(b.to_form()));
}

Transversal make_transversal(const Chart& total, const std::vector<std::string>& zero_coords) {
  Transversal tr;
  tr.zero_coords = zero_coords;
  std::vector<std::string> keep;
  for (const auto& n : zero_coords) total.require_index(n);
  for (const auto& n : total.coords())
    if (std::find(zero_coords.begin(), zero_coords.end(), n) == zero_coords.end()) keep.push_back(n);
  tr.chart = Chart(total.name() + "/P", keep);
  return tr;
}

BihamiltonianPair restrict_to_transversal(const CotangentChart& cot, const KForm& omega, const KForm& omega1,
                                          const Distribution& g0, const std::vector<KForm>& alphas,
                                          const Transversal& tr, const std::vector<Point>& samples) {
  const Chart& total = cot.total;
  const std::size_t m = total.dim();
  ChartMap down = ChartMap::by_name(total, tr.chart);
  ChartMap up = ChartMap::by_name(tr.chart, total);
  if (samples.size() < 3) throw PreconditionError("transversality needs at least 3 sample points");
  for (const auto& q : samples) {
    if (q.size() != tr.chart.dim()) throw PreconditionError("sample point has the wrong dimension");
    Point p(m, Rational(0));
    for (std::size_t i = 0; i < q.size(); ++i) p[static_cast<std::size_t>(up.index[i])] = q[i];
    QMatrix frame(m, g0.span.size() + tr.chart.dim());
    for (std::size_t j = 0; j < g0.span.size(); ++j) {
      auto y = g0.span[j].at(p);
      for (std::size_t i = 0; i < m; ++i) frame(i, j) = y[i];
    }
    for (std::size_t i = 0; i < tr.chart.dim(); ++i)
      frame(static_cast<std::size_t>(up.index[i]), g0.span.size() + i) = 1;
    if (rank(frame) != m) throw PreconditionError("transversal is not transverse to G0 at " + describe_point(q));
  }
  std::vector<KForm> theta, theta1;
  for (const auto& y : g0.span) theta.push_back(transport(down, interior(y, omega)));
  for (const auto& a : alphas) theta1.push_back(transport(down, pull_to_total(cot, a)));
  BihamiltonianPair pair;
  pair.lambda = constrained_bivector(transport(down, omega), theta);
  pair.lambda1 = constrained_bivector(transport(down, omega1), theta1);
  return pair;
}

LiftResult lift(const Chart& base, const Tensor11& h, const std::vector<KForm>& alphas,
                const std::vector<std::string>& zero_coords, std::vector<std::string> fiber_names,
                std::size_t samples) {
  LiftResult res;
  res.cot = cotangent_chart(base, std::move(fiber_names));
  res.h = h;
  res.alphas = alphas;
  res.omega = liouville(res.cot).omega;
  Tensor1r h1 = Tensor1r::from_tensor11(h);
  res.hstar = prolong(res.cot, h1);
  res.omega1 = prolonged_form(res.cot, h1);
  ContractedForm lam = contract_into(res.omega, res.hstar);
  if (!lam.alternating || lam.form != res.omega1) throw DefectError("omega(H*., .) differs from phi_H^* Omega");
  Point sample = sample_points(res.cot.total.dim(), 1, 17)[0];
  res.g0 = g0_generators(res.cot, res.omega, res.omega1, h, alphas, sample).g0;
  res.transversal = make_transversal(res.cot.total, zero_coords);
  res.pair = restrict_to_transversal(res.cot, res.omega, res.omega1, res.g0, alphas, res.transversal,
                                     sample_points(res.transversal.chart.dim(), samples, 23));
  return res;
}

}  // namespace bihamil
