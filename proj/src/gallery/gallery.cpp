#include "bihamil/gallery/gallery.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "bihamil/chart/render.hpp"
#include "bihamil/errors.hpp"
#include "bihamil/pencil/classify.hpp"
#include "bihamil/pencil/pencil.hpp"

namespace bihamil {

namespace {

using Params = std::map<std::string, std::string>;

std::vector<std::string> numbered(const std::string& stem, std::size_t n) {
  std::vector<std::string> v;
  for (std::size_t i = 1; i <= n; ++i) v.push_back(stem + std::to_string(i));
  return v;
}

long parse_count(const Params& p, const std::string& key, long lo, long hi) {
  Rational q = parse_rational(p.at(key));
  if (q.get_den() != 1 || q < lo || q > hi)
    throw PreconditionError(key + " must be an integer in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
  return q.get_num().get_si();
}

Params resolve(const std::string& name, const Params& defaults, const Params& overrides,
               const std::function<bool(const std::string&)>& extra_key = {}) {
  Params out = defaults;
  for (const auto& [k, v] : overrides) {
    if (!defaults.count(k) && !(extra_key && extra_key(k)))
      throw PreconditionError("unknown parameter '" + k + "' for fixture " + name);
    out[k] = v;
  }
  return out;
}

void add(Tensor11& t, const std::string& out, const std::string& in, const Scalar& v) {
  const Chart& c = t.chart();
  t.add(static_cast<int>(c.require_index(out)), static_cast<int>(c.require_index(in)), v);
}

KForm dx(const Chart& c, const std::string& name) {
  return KForm::basis(c, {static_cast<int>(c.require_index(name))});
}

Scalar coord(const Chart& c, const std::string& name) { return c.coordinate(c.require_index(name)); }

VectorField partial(const Chart& c, const std::string& name, const Scalar& s = Scalar(1)) {
  return VectorField::coordinate(c, c.require_index(name), s);
}

void finish_lift(Fixture& f) {
  f.lift = lift(f.base, f.h, f.alphas, f.zero_coords, f.fiber_names);
}

// ------------------------------------------------------------------ ex1

Params ex1_defaults() { return {{"n", "2"}}; }

Scalar ex1_htilde(const Fixture& f, const Point& base_point) {
  const std::size_t n = f.base.dim();
  std::vector<Rational> h;
  for (std::size_t j = 0; j < n; ++j) h.push_back(f.h.get(static_cast<int>(j), static_cast<int>(j)).evaluate(base_point));
  Rational prod = 1;
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = j + 1; k < n; ++k) prod *= h[j] - h[k];
  return Scalar(prod);
}

Fixture build_ex1(const Params& over) {
  Fixture f;
  f.name = "ex1";
  f.params = resolve(f.name, ex1_defaults(), over);
  const long n = parse_count(f.params, "n", 2, 4);
  f.params["n"] = std::to_string(n);
  f.base = Chart("R" + std::to_string(n), numbered("x", static_cast<std::size_t>(n)));
  f.h = Tensor11(f.base);
  KForm alpha(f.base, 1);
  for (long j = 0; j < n; ++j) {
    // h_j = 1 + (j - 1) x_j^2 never vanishes; the default is h = (1, 1 + x2^2).
    Scalar xj = f.base.coordinate(static_cast<std::size_t>(j));
    f.h.add(static_cast<int>(j), static_cast<int>(j), Scalar(1) + Scalar(j) * xj * xj);
    alpha += KForm::basis(f.base, {static_cast<int>(j)});
  }
  f.alphas = {alpha};
  f.fiber_names = numbered("y", static_cast<std::size_t>(n));
  f.zero_coords = {"y" + std::to_string(n)};
  finish_lift(f);

  f.flag.chart = f.base;
  f.flag.alphas = f.alphas;
  f.flag.g = f.h;
  f.flag.omega = KForm(f.base, 2);
  f.flag.omega1 = KForm(f.base, 2);
  f.flag.samples = sample_points(f.base.dim(), 4, 31);

  const std::size_t m = f.lift.transversal.chart.dim();
  for (const Point& s : sample_points(m, 3, 41)) {
    Point z = s;
    z[1] = 0;
    f.probes.push_back({f.zero_coords, s});
    f.probes.push_back({f.zero_coords, z});
  }
  Point a(m, Rational(1)), b(m, Rational(1));
  a[0] = a[1] = 0;
  b[0] = 0;
  f.probes.push_back({f.zero_coords, a});
  f.probes.push_back({f.zero_coords, b});

  f.expected = {
      {"prolongation", "the lift of H satisfies projection, radial invariance, verticality and closedness",
       "check_prolongation"},
      {"compatibility", "alpha ^ d omega_2 vanishes", "compat_criterion"},
      {"g0", "G0 is vertical and both orthogonality descriptions agree", "g0_generators"},
      {"jacobiator", "Lambda, Lambda_1 and their sum are Poisson", "schouten_jacobiator"},
      {"pencil", "positive symplectic factor exactly where htilde vanishes", "decompose"},
      {"irregular", "points of the exceptional locus are not regular", "classify_point"},
      {"flag", "the base flag passes every condition", "check_flag"},
      {"trace_relation", "trace relation residuals vanish for k <= 4", "trace_relation"},
  };
  return f;
}

// ------------------------------------------------------------------ ex2

Params ex2_defaults() { return {{"n", "2"}, {"a1", "1"}, {"a2", "2"}}; }

Fixture build_ex2(const Params& over) {
  Fixture f;
  f.name = "ex2";
  auto is_exponent = [](const std::string& k) {
    return k.size() > 1 && k[0] == 'a' && std::all_of(k.begin() + 1, k.end(), [](char c) { return c >= '0' && c <= '9'; });
  };
  Params p = resolve(f.name, ex2_defaults(), over, is_exponent);
  const long n = parse_count(p, "n", 2, 4);
  f.params["n"] = std::to_string(n);
  for (const auto& [k, v] : over)
    if (k != "n" && std::stol(k.substr(1)) > n)
      throw PreconditionError("parameter " + k + " exceeds n = " + std::to_string(n));
  f.base = Chart("R" + std::to_string(n), numbered("x", static_cast<std::size_t>(n)));
  f.h = Tensor11(f.base);
  KForm alpha(f.base, 1);
  for (long j = 1; j <= n; ++j) {
    const std::string key = "a" + std::to_string(j);
    if (!p.count(key)) p[key] = std::to_string(j);
    Rational q = parse_rational(p.at(key));
    if (q.get_den() != 1 || q < 1 || q > 6) throw PreconditionError(key + " must be a positive natural number (at most 6)");
    f.params[key] = to_string(q);
    Scalar xj = f.base.coordinate(static_cast<std::size_t>(j - 1));
    f.h.add(static_cast<int>(j - 1), static_cast<int>(j - 1), Scalar(j));
    alpha += KForm::basis(f.base, {static_cast<int>(j - 1)}, xj.pow(static_cast<unsigned>(q.get_num().get_si())));
  }
  f.alphas = {alpha};
  f.fiber_names = numbered("y", static_cast<std::size_t>(n));
  f.zero_coords = {"y" + std::to_string(n)};
  finish_lift(f);

  f.flag.chart = f.base;
  f.flag.alphas = f.alphas;
  f.flag.g = f.h;
  f.flag.omega = KForm(f.base, 2);
  f.flag.omega1 = KForm(f.base, 2);
  f.flag.samples = sample_points(f.base.dim(), 4, 31);

  // The transversal y_k = 0 needs x_k != 0; on x_k = 0 use the last nonzero x_j.
  const std::size_t nn = static_cast<std::size_t>(n);
  const std::vector<Point> samples = sample_points(2 * nn, 3, 43);
  for (std::size_t s = 0; s < samples.size(); ++s) {
    for (std::size_t zero = s == 0 ? 0 : nn; zero <= nn; ++zero) {
      Point full = samples[s];
      if (zero < nn) full[zero] = 0;
      std::size_t keep = nn - 1;
      if (zero == keep) --keep;
      Probe pr;
      pr.zero_coords = {"y" + std::to_string(keep + 1)};
      for (std::size_t i = 0; i < 2 * nn; ++i)
        if (i != nn + keep) pr.point.push_back(full[i]);
      f.probes.push_back(std::move(pr));
    }
  }

  f.expected = {
      {"prolongation", "the lift of H satisfies projection, radial invariance, verticality and closedness",
       "check_prolongation"},
      {"compatibility", "alpha ^ d omega_2 vanishes", "compat_criterion"},
      {"g0", "G0 is vertical and both orthogonality descriptions agree", "g0_generators"},
      {"jacobiator", "Lambda, Lambda_1 and their sum are Poisson", "schouten_jacobiator"},
      {"pencil", "nontrivial symplectic factor exactly where x_1 ... x_n vanishes", "decompose"},
      {"irregular", "points of the exceptional locus are not regular", "classify_point"},
      {"flag", "the base flag passes every condition", "check_flag"},
      {"trace_relation", "trace relation residuals vanish for k <= 4", "trace_relation"},
  };
  return f;
}

// ------------------------------------------------------------------ sec8

Params sec8_defaults() { return {{"a1", "1"}, {"a2", "2"}, {"a3", "3"}, {"g1", "x2"}, {"g2", "x3"}}; }

struct Sec8 {
  std::vector<Rational> a;
  Scalar g1, g2;  // on the base chart, x-dependent only
};

Sec8 sec8_values(const Fixture& f) {
  Sec8 v;
  for (const char* k : {"a1", "a2", "a3"}) v.a.push_back(parse_rational(f.params.at(k)));
  v.g1 = f.base.parse(f.params.at("g1"));
  v.g2 = f.base.parse(f.params.at("g2"));
  return v;
}

// S on (x, y); the y-block in real notation of iI + d/dz (x) du plus the u*f coupling.
Tensor11 sec8_s(const Chart& c, const Sec8& v) {
  Tensor11 s(c);
  for (int j = 0; j < 3; ++j) add(s, "x" + std::to_string(j + 1), "x" + std::to_string(j + 1), Scalar(v.a[j]));
  for (int j = 1; j <= 2; ++j) {
    add(s, "y" + std::to_string(2 * j), "y" + std::to_string(2 * j - 1), 1);
    add(s, "y" + std::to_string(2 * j - 1), "y" + std::to_string(2 * j), -1);
  }
  add(s, "y1", "y3", 1);
  add(s, "y2", "y4", 1);
  Scalar y3 = coord(c, "y3"), y4 = coord(c, "y4");
  Scalar g1 = transport(ChartMap::by_name(Chart("R7", {"x1", "x2", "x3", "y1", "y2", "y3", "y4"}), c), v.g1);
  Scalar g2 = transport(ChartMap::by_name(Chart("R7", {"x1", "x2", "x3", "y1", "y2", "y3", "y4"}), c), v.g2);
  add(s, "y1", "x1", y3 * g1 - y4 * g2);
  add(s, "y2", "x1", y3 * g2 + y4 * g1);
  return s;
}

// The fiber part of the displayed S* (or of G on the x-tilde-free chart).
void add_sec8_fiber(Tensor11& t, const Sec8& v, bool with_xt) {
  const Chart& c = t.chart();
  if (with_xt)
    for (int j = 0; j < 3; ++j) add(t, "xt" + std::to_string(j + 1), "xt" + std::to_string(j + 1), Scalar(v.a[j]));
  for (int j = 1; j <= 2; ++j) {
    add(t, "yt" + std::to_string(2 * j - 1), "yt" + std::to_string(2 * j), 1);
    add(t, "yt" + std::to_string(2 * j), "yt" + std::to_string(2 * j - 1), -1);
  }
  add(t, "yt3", "yt1", 1);
  add(t, "yt4", "yt2", 1);
  Chart r7("R7", {"x1", "x2", "x3", "y1", "y2", "y3", "y4"});
  Scalar g1 = transport(ChartMap::by_name(r7, c), v.g1), g2 = transport(ChartMap::by_name(r7, c), v.g2);
  Scalar t1 = coord(c, "yt1"), t2 = coord(c, "yt2");
  add(t, "yt3", "x1", -(t1 * g1 + t2 * g2));
  add(t, "yt4", "x1", t1 * g2 - t2 * g1);
}

Fixture build_sec8(const Params& over) {
  Fixture f;
  f.name = "sec8";
  Params p = resolve(f.name, sec8_defaults(), over);
  f.base = Chart("R7", {"x1", "x2", "x3", "y1", "y2", "y3", "y4"});
  std::vector<Rational> a;
  for (const char* k : {"a1", "a2", "a3"}) {
    Rational q = parse_rational(p.at(k));
    if (q == 0) throw PreconditionError(std::string(k) + " must be nonzero");
    a.push_back(q);
    f.params[k] = to_string(q);
  }
  if (a[0] == a[1] || a[0] == a[2] || a[1] == a[2]) throw PreconditionError("a1, a2, a3 must be pairwise distinct");
  for (const char* k : {"g1", "g2"}) {
    Scalar g = f.base.parse(p.at(k));
    for (std::size_t i = 3; i < 7; ++i)
      if (g.involves(i)) throw PreconditionError(std::string(k) + " may depend on x1, x2, x3 only");
    if (!g.is_polynomial()) throw PreconditionError(std::string(k) + " must be a polynomial");
    f.params[k] = f.base.render(g);
  }
  Sec8 v = sec8_values(f);
  f.h = sec8_s(f.base, v);
  f.alphas = {dx(f.base, "x1") - dx(f.base, "x2"), coord(f.base, "x2") * dx(f.base, "x2") - dx(f.base, "x3")};
  f.fiber_names = {"xt1", "xt2", "xt3", "yt1", "yt2", "yt3", "yt4"};
  f.zero_coords = {"xt2", "xt3"};
  finish_lift(f);

  // Flag on the x-tilde-free submanifold.
  const Chart& total = f.lift.cot.total;
  Chart pp("P'", {"x1", "x2", "x3", "y1", "y2", "y3", "y4", "yt1", "yt2", "yt3", "yt4"});
  ChartMap down = ChartMap::by_name(total, pp);
  f.flag.chart = pp;
  for (const auto& al : f.alphas) f.flag.alphas.push_back(transport(down, pull_to_total(f.lift.cot, al)));
  f.flag.g = transport(down, f.lift.hstar.to_tensor11());
  f.flag.omega = transport(down, f.lift.omega);
  f.flag.omega1 = transport(down, f.lift.omega1);
  f.flag.samples = sample_points(pp.dim(), 3, 47);

  const std::size_t m = f.lift.transversal.chart.dim();
  f.probes.push_back({f.zero_coords, Point(m, Rational(1, 2))});
  for (const Point& s : sample_points(m, 4, 53)) f.probes.push_back({f.zero_coords, s});

  f.expected = {
      {"prolongation", "the lift of S satisfies projection, radial invariance, verticality and closedness",
       "check_prolongation"},
      {"lift_display", "S* agrees with the displayed formula up to d/dxt_j (x) beta_j terms", "prolong"},
      {"omega_display", "omega = sum dxt^dx + sum dyt^dy and omega_1 = omega(S*., .)", "liouville"},
      {"compatibility", "alpha_1 ^ alpha_2 ^ d omega_2 vanishes", "compat_criterion"},
      {"torsion_wedge", "N_S ^ alpha_1 ^ alpha_2 = 0", "nijenhuis_torsion"},
      {"alpha_closed", "alpha_j and alpha_j o J are closed", "exterior_derivative"},
      {"alpha_volume", "dx1 ^ alpha_1 ^ alpha_2 = dx1 ^ dx2 ^ dx3", "wedge"},
      {"g0_hamiltonians", "omega-hamiltonians of alpha_j o J^-1 are the listed fields and span G0",
       "g0_generators"},
      {"jacobiator", "Lambda, Lambda_1 and their sum are Poisson", "schouten_jacobiator"},
      {"pencil", "rank 10, Kronecker {1,3}, symplectic 8 with charpoly (t^2+1)^4, axes dx=0 and d/dxt1",
       "decompose"},
      {"pencil_constant", "the pencil classification does not depend on the point", "decompose"},
      {"regular", "the first probe is a regular point", "classify_point"},
      {"flag_axis", "the flag axis is dx1 = dx2 = dx3 = 0, of dimension 8", "axis"},
      {"flag_display", "S* projects to the displayed G", "transport"},
      {"flag", "the flag passes every condition", "check_flag"},
      {"trace_relation", "trace relation residuals vanish for k <= 4", "trace_relation"},
      {"normal_form", "G is not in normal form: the coupling G[y1,x1] survives", "normal_form_check"},
      {"bracket_x", "[JX, -X] = (a3 - a2) d/dx3 and JX, -X, [JX, -X] are independent", "lie_bracket"},
      {"bracket_y", "[Y1, Y2] = -4 d/dy3 and Y1, Y2, [Y1, Y2] are independent", "lie_bracket"},
      {"charpoly", "charpoly(S) = (t - a1)(t - a2)(t - a3)(t^2 + 1)^2", "charpoly"},
  };
  return f;
}

// ------------------------------------------------------------------ verify

struct Ctx {
  const Fixture& f;
  std::vector<Probe> probes;
  std::map<std::vector<std::string>, BihamiltonianPair> pairs;
  VerifyReport rep;
  const ExpectedClaim* cur = nullptr;

  void claim(bool pass, const std::string& value, const std::string& suffix = "") {
    rep.claims.push_back({cur->name + suffix, cur->anchor, cur->op, pass, value});
  }

  const BihamiltonianPair& pair(const std::vector<std::string>& zc) {
    if (zc == f.zero_coords) return f.lift.pair;
    auto it = pairs.find(zc);
    if (it != pairs.end()) return it->second;
    Transversal tr = make_transversal(f.lift.cot.total, zc);
    BihamiltonianPair bp = restrict_to_transversal(f.lift.cot, f.lift.omega, f.lift.omega1, f.lift.g0, f.alphas,
                                                   tr, sample_points(tr.chart.dim(), 3, 23));
    return pairs.emplace(zc, std::move(bp)).first->second;
  }
};

std::vector<KForm> pulled_alphas(const Fixture& f) {
  std::vector<KForm> out;
  for (const auto& a : f.alphas) out.push_back(pull_to_total(f.lift.cot, a));
  return out;
}

std::string kron_text(const std::vector<int>& k) {
  std::string s = "[";
  for (std::size_t i = 0; i < k.size(); ++i) s += (i ? "," : "") + std::to_string(k[i]);
  return s + "]";
}

struct PointPencil {
  bool ok = false;
  std::string problem;
  PencilDecomposition d;
  std::string text;
};

PointPencil pencil_at(const BihamiltonianPair& bp, const Point& p) {
  PointPencil r;
  try {
    r.d = decompose(make_pencil(bivector_at(bp.lambda, p), bivector_at(bp.lambda1, p)));
    r.ok = true;
    r.text = "rank=" + std::to_string(r.d.profile.rank) + " corank=" + std::to_string(r.d.corank) +
             " kronecker=" + kron_text(r.d.kronecker_dims) + " symplectic=" + std::to_string(r.d.symplectic_dim) +
             " charpoly=" + render(r.d.symplectic_charpoly, {});
  } catch (const PoleError& e) {
    r.problem = std::string("pole: ") + e.what();
    r.text = r.problem;
  } catch (const PreconditionError& e) {
    r.problem = e.what();
    r.text = r.problem;
  }
  return r;
}

Point base_part(const Fixture& f, const Probe& pr) {
  // Base coordinates come first on every transversal chart.
  return Point(pr.point.begin(), pr.point.begin() + static_cast<long>(f.base.dim()));
}

void common_claims(Ctx& c, const std::string& name) {
  const Fixture& f = c.f;
  if (name == "prolongation") {
    ProlongationCheck pc = check_prolongation(f.lift.cot, Tensor1r::from_tensor11(f.h), f.lift.hstar);
    std::string w = pc.ok() ? "ok" : "";
    for (const auto& s : pc.witnesses) w += (w.empty() ? "" : "; ") + s;
    c.claim(pc.ok(), w);
  } else if (name == "compatibility") {
    KForm r = compat_criterion(f.lift.omega, f.lift.hstar.to_tensor11(), pulled_alphas(f));
    c.claim(r.is_zero(), render(r));
  } else if (name == "jacobiator") {
    const BihamiltonianPair& bp = f.lift.pair;
    Multivector j0 = schouten_jacobiator(bp.lambda);
    Multivector j1 = schouten_jacobiator(bp.lambda1);
    Multivector js = schouten_jacobiator(bp.lambda + bp.lambda1);
    c.claim(j0.is_zero(), render(j0), ":lambda");
    c.claim(j1.is_zero(), render(j1), ":lambda1");
    c.claim(js.is_zero(), render(js), ":sum");
  } else if (name == "flag") {
    FlagReport fr = check_flag(f.flag, f.flag_functions);
    std::string v = "axis_dim=" + std::to_string(fr.axis_dim) + " weak=" + (fr.weak_flag() ? "1" : "0") +
                    " flag=" + (fr.flag() ? "1" : "0") + " condition3=" + std::to_string(fr.condition3_coverage()) +
                    "/" + std::to_string(fr.condition3.size());
    for (const auto& w : fr.witnesses) v += "; " + w;
    c.claim(fr.ok(), v);
  } else if (name == "trace_relation") {
    TraceRelation tr = trace_relation(f.flag, 4);
    std::string v = "axis_dim=" + std::to_string(tr.axis_dim) + " g=(";
    for (std::size_t k = 0; k < tr.g.size(); ++k) v += (k ? ", " : "") + f.flag.chart.render(tr.g[k]);
    v += ")";
    for (std::size_t k = 0; k < tr.residuals.size(); ++k)
      if (!tr.residuals[k].is_zero()) v += "; k=" + std::to_string(k + 1) + ": " + render(tr.residuals[k]);
    c.claim(tr.zero(), v);
  } else {
    throw DefectError("no check for claim " + name);
  }
}

void g0_claim(Ctx& c) {
  const Fixture& f = c.f;
  G0Result g = g0_generators(f.lift.cot, f.lift.omega, f.lift.omega1, f.h, f.alphas,
                             sample_points(f.lift.cot.total.dim(), 1, 17)[0]);
  bool vertical = true;
  for (const auto& y : g.g0.span)
    for (const auto& [i, v] : y.components())
      if (static_cast<std::size_t>(i) < f.base.dim()) vertical = false;
  std::string v = std::string("vertical=") + (vertical ? "1" : "0") + " omega_orthogonal=" +
                  (g.omega_orthogonal ? "1" : "0") + " omega1_orthogonal=" + (g.omega1_orthogonal ? "1" : "0");
  for (const auto& y : g.g0.span) v += "; " + render(y);
  c.claim(vertical && g.omega_orthogonal && g.omega1_orthogonal, v);
}

// ex1 / ex2: pointwise dichotomy across the named function's zero set.
void dichotomy_claims(Ctx& c, const std::string& name) {
  const Fixture& f = c.f;
  auto exceptional_value = [&](const Probe& pr) {
    Point bp = base_part(f, pr);
    if (f.name == "ex1") return ex1_htilde(f, bp).constant_value();
    Rational prod = 1;
    for (const auto& q : bp) prod *= q;
    return prod;
  };
  if (name == "pencil") {
    for (const Probe& pr : c.probes) {
      PointPencil pp = pencil_at(c.pair(pr.zero_coords), pr.point);
      const bool exceptional = exceptional_value(pr) == 0;
      bool pass = pp.ok && (pp.d.symplectic_dim > 0) == exceptional;
      if (f.name == "ex1" && f.base.dim() == 2) pass = pass && pp.d.symplectic_dim == (exceptional ? 2u : 0u);
      std::string where = "@" + render(pr.point);
      if (pr.zero_coords != f.zero_coords) where += "[" + pr.zero_coords[0] + "=0]";
      c.claim(pass, std::string(f.name == "ex1" ? "htilde" : "h") + (exceptional ? "=0 " : "!=0 ") + pp.text,
              where);
    }
  } else if (name == "irregular") {
    auto it = std::find_if(c.probes.begin(), c.probes.end(),
                           [&](const Probe& pr) { return exceptional_value(pr) == 0; });
    if (it == c.probes.end()) {
      c.claim(false, "no exceptional probe");
      return;
    }
    const BihamiltonianPair& bp = c.pair(it->zero_coords);
    ClassifyConfig cfg;
    cfg.trace_differentials_on_cloud = false;
    RegularityReport r = classify_point(bp.lambda, bp.lambda1, it->point, cfg);
    std::string v = "regular=" + std::string(r.regular ? "1" : "0") + " symplectic_dim_constant=" +
                    (r.symplectic_dim_constant ? "1" : "0") + " center_symplectic=" +
                    std::to_string(r.center.symplectic_dim);
    c.claim(!r.regular && !r.symplectic_dim_constant, v, "@" + render(it->point));
  } else if (name == "g0") {
    g0_claim(c);
  } else {
    common_claims(c, name);
  }
}

Tensor11 sec8_lift_display(const Fixture& f, const Sec8& v) {
  const Chart& total = f.lift.cot.total;
  Tensor11 t = transport(ChartMap::by_name(f.base, total), sec8_s(f.base, v));
  add_sec8_fiber(t, v, true);
  return t;
}

Tensor11 sec8_g_display(const Fixture& f, const Sec8& v) {
  Tensor11 t = transport(ChartMap::by_name(f.base, f.flag.chart), sec8_s(f.base, v));
  add_sec8_fiber(t, v, false);
  return t;
}

QMatrix span_columns(const std::vector<VectorField>& fields, std::size_t dim, const Point& p) {
  QMatrix m(dim, fields.size());
  for (std::size_t j = 0; j < fields.size(); ++j) {
    std::vector<Rational> v = fields[j].at(p);
    for (std::size_t i = 0; i < dim; ++i) m(i, j) = v[i];
  }
  return m;
}

void sec8_claims(Ctx& c, const std::string& name) {
  const Fixture& f = c.f;
  const Sec8 v = sec8_values(f);
  const Chart& total = f.lift.cot.total;
  if (name == "lift_display") {
    Tensor11 d = f.lift.hstar.to_tensor11() - sec8_lift_display(f, v);
    std::set<std::string> outs{"xt1", "xt2", "xt3"};
    std::set<std::string> ins{"x1", "x2", "x3", "y3", "y4", "yt1", "yt2"};
    bool pass = true;
    for (const auto& [k, s] : d.components())
      if (!outs.count(total.coord(static_cast<std::size_t>(k.first))) ||
          !ins.count(total.coord(static_cast<std::size_t>(k.second))))
        pass = false;
    c.claim(pass, "beta terms: " + render(d));
  } else if (name == "omega_display") {
    KForm w(total, 2);
    for (const std::string x : {"x1", "x2", "x3", "y1", "y2", "y3", "y4"})
      w += wedge(dx(total, x.substr(0, 1) + "t" + x.substr(1)), dx(total, x));
    Bilinear b = contract_first(f.lift.omega, f.lift.hstar.to_tensor11());
    bool w1 = b.is_skew() && b.to_form() == f.lift.omega1;
    c.claim(w == f.lift.omega && w1, "omega=" + render(f.lift.omega) + std::string("; omega1=omega(S*.,.): ") +
                                         (w1 ? "1" : "0"));
  } else if (name == "torsion_wedge") {
    Tensor1r r = wedge(nijenhuis_torsion(f.h), wedge_all(f.alphas));
    c.claim(r.is_zero(), render(r));
  } else if (name == "alpha_closed") {
    Tensor11 j(f.base);
    for (int i = 0; i < 3; ++i) j.add(i, i, Scalar(v.a[static_cast<std::size_t>(i)]));
    std::string val;
    bool pass = true;
    for (std::size_t i = 0; i < f.alphas.size(); ++i) {
      KForm d0 = exterior_derivative(f.alphas[i]);
      KForm d1 = exterior_derivative(compose(f.alphas[i], j));
      pass = pass && d0.is_zero() && d1.is_zero();
      val += (i ? "; " : "") + std::string("d alpha_") + std::to_string(i + 1) + "=" + render(d0) + ", d(alpha_" +
             std::to_string(i + 1) + " o J)=" + render(d1);
    }
    c.claim(pass, val);
  } else if (name == "alpha_volume") {
    KForm w = wedge(dx(f.base, "x1"), wedge_all(f.alphas));
    c.claim(w == KForm::basis(f.base, {0, 1, 2}), render(w));
  } else if (name == "g0_hamiltonians") {
    // i_X omega = -beta with omega constant: X = W^{-1} beta.
    QMatrix w = evaluate(form2_matrix(f.lift.omega), Point(total.dim(), Rational(0)));
    SMatrix wi = to_scalar(*inverse(w));
    std::vector<VectorField> ham;
    for (std::size_t i = 0; i < f.alphas.size(); ++i) {
      KForm beta(f.base, 1);
      for (std::size_t k = 0; k < 3; ++k)
        beta.add({static_cast<int>(k)}, f.alphas[i].get({static_cast<int>(k)}) / Scalar(v.a[k]));
      KForm pb = pull_to_total(f.lift.cot, beta);
      SMatrix col(total.dim(), 1);
      for (std::size_t k = 0; k < total.dim(); ++k) col(k, 0) = pb.get({static_cast<int>(k)});
      SMatrix x = wi * col;
      std::vector<Scalar> comps;
      for (std::size_t k = 0; k < total.dim(); ++k) comps.push_back(x(k, 0));
      ham.push_back(VectorField::from_components(total, comps));
    }
    Scalar x2 = coord(total, "x2");
    Scalar ia1 = Scalar(1 / v.a[0]), ia2 = Scalar(1 / v.a[1]), ia3 = Scalar(1 / v.a[2]);
    VectorField e1 = partial(total, "xt1", -ia1) + partial(total, "xt2", ia2);
    VectorField e2 = partial(total, "xt2", -ia2 * x2) + partial(total, "xt3", ia3);
    bool listed = ham.size() == 2 && ham[0] == e1 && ham[1] == e2;
    G0Result g = g0_generators(f.lift.cot, f.lift.omega, f.lift.omega1, f.h, f.alphas,
                               sample_points(total.dim(), 1, 17)[0]);
    SMatrix hm(total.dim(), 2), gm = g.g0.span_matrix();
    for (std::size_t k = 0; k < total.dim(); ++k) {
      hm(k, 0) = e1.get(static_cast<int>(k));
      hm(k, 1) = e2.get(static_cast<int>(k));
    }
    bool spans = same_span(hm, gm);
    c.claim(listed && spans && g.omega_orthogonal && g.omega1_orthogonal,
            render(ham[0]) + "; " + render(ham[1]) + "; same span as G0: " + (spans ? "1" : "0"));
  } else if (name == "pencil") {
    for (const Probe& pr : c.probes) {
      PointPencil pp = pencil_at(c.pair(pr.zero_coords), pr.point);
      bool pass = false;
      if (pp.ok) {
        const Chart& m = c.f.lift.transversal.chart;
        QMatrix prim(m.dim(), 0), sec(m.dim(), 1);
        for (std::size_t i = 0; i < m.dim(); ++i)
          if (m.coord(i) != "x1" && m.coord(i) != "x2" && m.coord(i) != "x3") {
            QMatrix e(m.dim(), 1);
            e(i, 0) = 1;
            prim = hstack(prim, e);
          }
        sec(m.require_index("xt1"), 0) = 1;
        UniPoly expect = UniPoly::from_rationals({1, 0, 4, 0, 6, 0, 4, 0, 1});
        bool axes = same_span(pp.d.primary_axis, prim) && same_span(pp.d.secondary_axis, sec);
        pass = pp.d.profile.rank == 10 && pp.d.corank == 2 && pp.d.kronecker_dims == std::vector<int>{1, 3} &&
               pp.d.symplectic_dim == 8 && pp.d.symplectic_charpoly == expect && axes;
        pp.text += std::string(" axes=") + (axes ? "ok" : "differ");
      }
      c.claim(pass, pp.text, "@" + render(pr.point));
    }
  } else if (name == "pencil_constant") {
    std::set<std::string> seen;
    for (const Probe& pr : c.probes) seen.insert(pencil_at(c.pair(pr.zero_coords), pr.point).text);
    std::string val = std::to_string(seen.size()) + " distinct classification(s) over " +
                      std::to_string(c.probes.size()) + " points";
    c.claim(seen.size() == 1, val);
  } else if (name == "regular") {
    const Probe& pr = c.probes.front();
    ClassifyConfig cfg;
    cfg.trace_differentials_on_cloud = false;
    RegularityReport r = classify_point(f.lift.pair.lambda, f.lift.pair.lambda1, pr.point, cfg);
    c.claim(r.regular, std::string("regular=") + (r.regular ? "1" : "0") + " type_constant=" +
                           (r.type_constant ? "1" : "0"),
            "@" + render(pr.point));
  } else if (name == "flag_axis") {
    AxisResult ar = axis(f.flag);
    bool pass = ar.constant && ar.axis && ar.axis->rank == 8;
    std::string val = "dims=";
    for (std::size_t i = 0; i < ar.dims.size(); ++i) val += (i ? "," : "") + std::to_string(ar.dims[i]);
    if (pass) {
      std::vector<VectorField> expect;
      for (std::size_t i = 3; i < f.flag.chart.dim(); ++i) expect.push_back(VectorField::coordinate(f.flag.chart, i));
      for (const Point& p : f.flag.samples) {
        QMatrix got = span_columns(ar.axis->span, f.flag.chart.dim(), p);
        if (!same_span(got, span_columns(expect, f.flag.chart.dim(), p))) pass = false;
      }
    }
    c.claim(pass, val + (ar.note.empty() ? "" : "; " + ar.note));
  } else if (name == "flag_display") {
    Tensor11 d = f.flag.g - sec8_g_display(f, v);
    c.claim(d.is_zero(), render(d));
  } else if (name == "normal_form") {
    std::vector<std::string> xs{"x1", "x2", "x3"};
    std::vector<std::string> zs{"y1", "y2", "y3", "y4", "yt1", "yt2", "yt3", "yt4"};
    NormalFormReport nf = normal_form_check(f.flag.g, f.flag.omega, f.flag.omega1, xs, zs);
    bool coupling = std::any_of(nf.witnesses.begin(), nf.witnesses.end(),
                                [](const std::string& w) { return w.find("G[y1,x1]") != std::string::npos; });
    std::string val = std::string("ok=") + (nf.ok() ? "1" : "0");
    for (const auto& w : nf.witnesses) val += "; " + w;
    c.claim(!nf.ok() && !nf.block_diagonal && coupling, val);
  } else if (name == "bracket_x") {
    Chart r3("R3x", {"x1", "x2", "x3"});
    Scalar x2 = r3.coordinate(1);
    VectorField x = partial(r3, "x1") + partial(r3, "x2") + partial(r3, "x3", x2);
    VectorField jx = partial(r3, "x1", Scalar(v.a[0])) + partial(r3, "x2", Scalar(v.a[1])) +
                     partial(r3, "x3", Scalar(v.a[2]) * x2);
    VectorField xt = lie_bracket(jx, -x);
    VectorField expect = partial(r3, "x3", Scalar(v.a[2] - v.a[1]));
    SMatrix m(3, 3);
    for (std::size_t i = 0; i < 3; ++i) {
      m(i, 0) = jx.get(static_cast<int>(i));
      m(i, 1) = -x.get(static_cast<int>(i));
      m(i, 2) = xt.get(static_cast<int>(i));
    }
    Scalar det = determinant(m);
    c.claim(xt == expect && det.is_constant() && !det.is_zero(), render(xt) + "; det=" + r3.render(det));
  } else if (name == "bracket_y") {
    Chart r3("R3y", {"y1", "y2", "y3"});
    VectorField y1 = partial(r3, "y1", -1) + partial(r3, "y3", Scalar(-2) * r3.coordinate(1));
    VectorField y2 = partial(r3, "y2", -1) + partial(r3, "y3", Scalar(2) * r3.coordinate(0));
    VectorField yt = lie_bracket(y1, y2);
    SMatrix m(3, 3);
    for (std::size_t i = 0; i < 3; ++i) {
      m(i, 0) = y1.get(static_cast<int>(i));
      m(i, 1) = y2.get(static_cast<int>(i));
      m(i, 2) = yt.get(static_cast<int>(i));
    }
    Scalar det = determinant(m);
    c.claim(yt == partial(r3, "y3", -4) && det.is_constant() && !det.is_zero(),
            render(yt) + "; det=" + r3.render(det));
  } else if (name == "charpoly") {
    UniPoly cp = charpoly(f.h);
    UniPoly expect = UniPoly::linear_root(Scalar(v.a[0])) * UniPoly::linear_root(Scalar(v.a[1])) *
                     UniPoly::linear_root(Scalar(v.a[2])) * UniPoly::from_rationals({1, 0, 1}).pow(2);
    c.claim(cp == expect, render(cp, f.base.coords()));
  } else {
    common_claims(c, name);
  }
}

}  // namespace

std::vector<std::string> fixture_names() { return {"ex1", "ex2", "sec8"}; }

std::map<std::string, std::string> default_params(const std::string& name) {
  if (name == "ex1") return ex1_defaults();
  if (name == "ex2") return ex2_defaults();
  if (name == "sec8") return sec8_defaults();
  throw PreconditionError("unknown fixture '" + name + "'");
}

Fixture build(const std::string& name, const std::map<std::string, std::string>& params) {
  if (name == "ex1") return build_ex1(params);
  if (name == "ex2") return build_ex2(params);
  if (name == "sec8") return build_sec8(params);
  throw PreconditionError("unknown fixture '" + name + "'");
}

bool VerifyReport::all_pass() const {
  return std::all_of(claims.begin(), claims.end(), [](const ClaimResult& c) { return c.pass; });
}

VerifyReport verify(const Fixture& f, const std::vector<Point>& extra_points) {
  Ctx c{f, f.probes, {}, {}, nullptr};
  c.rep.fixture = f.name;
  const std::size_t m = f.lift.transversal.chart.dim();
  for (const Point& p : extra_points) {
    if (p.size() != m)
      throw PreconditionError("point has " + std::to_string(p.size()) + " coordinates; the transversal chart has " +
                              std::to_string(m));
    c.probes.push_back({f.zero_coords, p});
  }
  for (const auto& e : f.expected) {
    c.cur = &e;
    if (f.name == "sec8")
      sec8_claims(c, e.name);
    else
      dichotomy_claims(c, e.name);
  }
  return c.rep;
}

std::vector<FlagPerturbation> flag_perturbations(const Fixture& f) {
  std::vector<FlagPerturbation> out;
  const Chart& c = f.flag.chart;
  auto with = [&](const std::string& label, const std::function<void(FlagData&)>& edit) {
    FlagData d = f.flag;
    edit(d);
    out.push_back({label, std::move(d)});
  };
  with("alpha_1 += x1 dx2", [&](FlagData& d) { d.alphas[0] += coord(c, "x1") * dx(c, "x2"); });
  if (f.name == "ex1" || f.name == "ex2") {
    // Make H scalar at every point, so the line F becomes invariant.
    const Scalar h0 = f.h.get(0, 0), h1 = f.h.get(1, 1);
    with("G += (h2 - h1) d/dx1 (x) dx1", [&](FlagData& d) { d.g.add(0, 0, h1 - h0); });
    if (c.dim() >= 3)
      with("G += x3 d/dx1 (x) dx2", [&](FlagData& d) { add(d.g, "x1", "x2", coord(c, "x3")); });
  } else {
    with("G += x1 d/dy1 (x) dy2", [&](FlagData& d) { add(d.g, "y1", "y2", coord(c, "x1")); });
    with("G += yt1 d/dx1 (x) dx1", [&](FlagData& d) { add(d.g, "x1", "x1", coord(c, "yt1")); });
    with("G += y3 d/dy1 (x) dy1", [&](FlagData& d) { add(d.g, "y1", "y1", coord(c, "y3")); });
    with("alpha_1 += x3 dx1", [&](FlagData& d) { d.alphas[0] += coord(c, "x3") * dx(c, "x1"); });
    with("omega += y3 dy1^dy2", [&](FlagData& d) { d.omega += coord(c, "y3") * wedge(dx(c, "y1"), dx(c, "y2")); });
    with("omega += x1 dy1^dy2", [&](FlagData& d) { d.omega += coord(c, "x1") * wedge(dx(c, "y1"), dx(c, "y2")); });
    with("omega1 += y1 dy1^dy2",
         [&](FlagData& d) { d.omega1 += coord(c, "y1") * wedge(dx(c, "y1"), dx(c, "y2")); });
  }
  return out;
}

bool flag_detects(const FlagReport& rep) { return !rep.ok() || !rep.witnesses.empty(); }

}  // namespace bihamil
