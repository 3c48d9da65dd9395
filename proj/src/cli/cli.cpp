#include "bihamil/cli/cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <map>
#include <json.hpp>
#include <optional>
#include <sstream>

#include "bihamil/chart/render.hpp"
#include "bihamil/cli/manifest.hpp"
#include "bihamil/errors.hpp"
#include "bihamil/flags/flags.hpp"
#include "bihamil/gallery/gallery.hpp"
#include "bihamil/lift/lift.hpp"
#include "bihamil/pencil/classify.hpp"

namespace bihamil {

using json = nlohmann::ordered_json;

namespace {

struct Check {
  std::string name, anchor, value;
  bool pass = false;
};

struct Value {
  std::string name, value;
};

struct Report {
  std::string command;
  std::vector<Check> checks;
  std::vector<Value> values;
  std::optional<std::string> manifest;  // canonical JSON text
  std::string error_kind, error_message;
  std::optional<std::size_t> error_position;

  void check(std::string name, std::string anchor, bool pass, std::string value) {
    checks.push_back({std::move(name), std::move(anchor), std::move(value), pass});
  }
  void value(std::string name, std::string v) { values.push_back({std::move(name), std::move(v)}); }

  std::string status() const {
    if (!error_kind.empty()) return error_kind;
    for (const auto& c : checks)
      if (!c.pass) return "fail";
    return "pass";
  }
};

std::string emit(const Report& r, bool structured) {
  if (structured) {
    json doc;
    doc["schema"] = kReportSchema;
    doc["command"] = r.command;
    doc["status"] = r.status();
    json checks = json::array();
    for (const auto& c : r.checks)
      checks.push_back({{"name", c.name}, {"anchor", c.anchor}, {"value", c.value}, {"pass", c.pass}});
    doc["checks"] = checks;
    json values = json::array();
    for (const auto& v : r.values) values.push_back({{"name", v.name}, {"value", v.value}});
    doc["values"] = values;
    if (!r.error_kind.empty()) {
      json e{{"kind", r.error_kind}, {"message", r.error_message}};
      if (r.error_position) e["position"] = *r.error_position;
      doc["error"] = e;
    }
    if (r.manifest) doc["manifest"] = json::parse(*r.manifest);
    return doc.dump(2) + "\n";
  }
  std::ostringstream o;
  o << "schema: " << kReportSchema << "\n";
  o << "command: " << r.command << "\n";
  o << "status: " << r.status() << "\n";
  if (!r.error_kind.empty()) {
    o << "error: " << r.error_message << "\n";
  }
  for (const auto& c : r.checks)
    o << (c.pass ? "[pass] " : "[FAIL] ") << c.name << ": " << c.value << "\n       " << c.anchor << "\n";
  for (const auto& v : r.values) o << "value " << v.name << ": " << v.value << "\n";
  return o.str();
}

struct Options {
  std::string manifest_path;
  std::vector<std::string> points;
  std::size_t probes = 3;
  std::size_t seed = 0;
  std::string format = "text";
  std::string h = "H", alphas, g = "G", omega = "omega", omega1 = "omega1";
  std::string lambda = "lambda", lambda1 = "lambda1";
  std::string axis, functions, phi1 = "phi1", phi2 = "phi2";
  std::string zero, fiber;
  std::size_t kmax = 4;
  std::string fixture;
  std::vector<std::string> params;
};

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ',') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else if (c != ' ') {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

struct Inputs {
  Manifest manifest;
  bool has_manifest = false;
  std::optional<Fixture> fixture;
};

Inputs load(const Options& o, Report& rep) {
  Inputs in;
  if (o.manifest_path.empty()) return in;
  std::ifstream f(o.manifest_path, std::ios::binary);
  if (!f) throw ParseError("cannot read manifest '" + o.manifest_path + "'");
  std::stringstream ss;
  ss << f.rdbuf();
  in.manifest = parse_manifest(ss.str());
  in.has_manifest = true;
  rep.manifest = canonical_manifest(in.manifest);
  if (in.manifest.fixture) in.fixture = build(in.manifest.fixture->name, in.manifest.fixture->params);
  return in;
}

template <class T>
const T& object(const Inputs& in, const std::string& name, const char* kind) {
  if (!in.has_manifest) throw ParseError("this command needs --manifest");
  const ManifestObject* m = in.manifest.find(name);
  if (!m) throw ParseError("manifest has no object '" + name + "'");
  const T* v = std::get_if<T>(&m->value);
  if (!v) throw ParseError("object '" + name + "' must be a " + kind + ", not " + m->kind);
  return *v;
}

bool has_object(const Inputs& in, const std::string& name) {
  return in.has_manifest && in.manifest.find(name) != nullptr;
}

// Explicit list, else "alpha", else alpha1, alpha2, ...
std::vector<KForm> alpha_objects(const Inputs& in, const std::string& option) {
  std::vector<std::string> names = split_list(option);
  if (names.empty()) {
    if (has_object(in, "alpha")) {
      names = {"alpha"};
    } else {
      for (int i = 1; has_object(in, "alpha" + std::to_string(i)); ++i) names.push_back("alpha" + std::to_string(i));
    }
  }
  std::vector<KForm> out;
  for (const auto& n : names) {
    const KForm& a = object<KForm>(in, n, "one_form");
    if (a.degree() != 1) throw ParseError("object '" + n + "' must be a one_form");
    out.push_back(a);
  }
  return out;
}

std::vector<Point> points(const Options& o, const Inputs& in, std::size_t dim) {
  std::vector<Point> pts;
  for (const auto& s : o.points) pts.push_back(parse_point(s));
  if (pts.empty() && in.has_manifest) pts = in.manifest.points;
  if (pts.empty()) pts = sample_points(dim, o.probes, o.seed);
  for (const auto& p : pts)
    if (p.size() != dim)
      throw PreconditionError("point " + render(p) + " has " + std::to_string(p.size()) + " coordinates, expected " +
                              std::to_string(dim));
  return pts;
}

std::string render_coords(const Chart& c) {
  std::string s = c.name() + "(";
  for (std::size_t i = 0; i < c.dim(); ++i) s += (i ? "," : "") + c.coord(i);
  return s + ")";
}

std::string at(const Point& p) { return "@" + render(p); }

std::string kron_text(const std::vector<int>& k) {
  std::string s = "[";
  for (std::size_t i = 0; i < k.size(); ++i) s += (i ? "," : "") + std::to_string(k[i]);
  return s + "]";
}

// ---------------------------------------------------------------- commands

void cmd_check_compat(const Options& o, const Inputs& in, Report& rep) {
  CotangentChart cot;
  std::vector<KForm> alphas;
  Tensor1r hstar;
  if (in.fixture) {
    cot = in.fixture->lift.cot;
    alphas = in.fixture->alphas;
    hstar = in.fixture->lift.hstar;
  } else {
    const Tensor11& h = object<Tensor11>(in, o.h, "tensor11");
    alphas = alpha_objects(in, o.alphas);
    for (const auto& a : alphas) require_same_chart(a.chart(), h.chart());
    cot = cotangent_chart(h.chart(), split_list(o.fiber));
    hstar = prolong(cot, Tensor1r::from_tensor11(h));
  }
  std::vector<KForm> pulled;
  for (const auto& a : alphas) pulled.push_back(pull_to_total(cot, a));
  KForm res = compat_criterion(liouville(cot).omega, hstar.to_tensor11(), pulled);
  rep.check("compat_residual", "the pair is compatible iff alpha_1 ^ ... ^ alpha_r ^ d omega_2 = 0", res.is_zero(),
            render(res));
  rep.value("hstar", render(hstar));
}

void cmd_nijenhuis(const Options& o, const Inputs& in, Report& rep) {
  Tensor11 g;
  std::vector<KForm> alphas;
  if (in.fixture) {
    g = in.fixture->h;
    alphas = in.fixture->alphas;
  } else {
    g = object<Tensor11>(in, has_object(in, o.g) || o.g != "G" ? o.g : o.h, "tensor11");
    if (!o.alphas.empty()) alphas = alpha_objects(in, o.alphas);
  }
  Tensor12 n = nijenhuis_torsion(g);
  if (alphas.empty()) {
    rep.check("torsion", "N_G vanishes", n.is_zero(), render(n));
  } else {
    Tensor1r w = wedge(n, wedge_all(alphas));
    rep.check("torsion_wedge", "N_G ^ alpha_1 ^ ... ^ alpha_r vanishes", w.is_zero(), render(w));
    rep.value("torsion", render(n));
  }
}

std::pair<Multivector, std::optional<Multivector>> pencil_pair(const Options& o, const Inputs& in, bool need_second) {
  if (in.fixture) return {in.fixture->lift.pair.lambda, in.fixture->lift.pair.lambda1};
  const Multivector& l = object<Multivector>(in, o.lambda, "bivector");
  if (l.degree() != 2) throw ParseError("object '" + o.lambda + "' must be a bivector");
  if (!need_second && !has_object(in, o.lambda1)) return {l, std::nullopt};
  const Multivector& l1 = object<Multivector>(in, o.lambda1, "bivector");
  require_same_chart(l.chart(), l1.chart());
  return {l, l1};
}

void cmd_schouten(const Options& o, const Inputs& in, Report& rep) {
  auto [l, l1] = pencil_pair(o, in, false);
  Multivector j = schouten_jacobiator(l);
  rep.check("jacobiator:lambda", "the bracket of Lambda satisfies the Jacobi identity", j.is_zero(), render(j));
  if (l1) {
    Multivector j1 = schouten_jacobiator(*l1), js = schouten_jacobiator(l + *l1);
    rep.check("jacobiator:lambda1", "the bracket of Lambda_1 satisfies the Jacobi identity", j1.is_zero(), render(j1));
    rep.check("jacobiator:sum", "Lambda + Lambda_1 is Poisson (compatibility)", js.is_zero(), render(js));
  }
}

void cmd_decompose(const Options& o, const Inputs& in, Report& rep) {
  auto [l, l1] = pencil_pair(o, in, true);
  for (const Point& p : points(o, in, l.chart().dim())) {
    PencilDecomposition d;
    try {
      d = decompose(make_pencil(bivector_at(l, p), bivector_at(*l1, p)));
    } catch (const PoleError& e) {
      rep.check("evaluated" + at(p), "the pencil is defined at the point", false, e.what());
      continue;
    }
    rep.check("evaluated" + at(p), "the pencil is defined and maximal at the point", true, "ok");
    rep.value("generic_rank" + at(p), std::to_string(d.profile.rank));
    rep.value("corank" + at(p), std::to_string(d.corank));
    rep.value("kronecker_dims" + at(p), kron_text(d.kronecker_dims));
    rep.value("symplectic_dim" + at(p), std::to_string(d.symplectic_dim));
    rep.value("symplectic_charpoly" + at(p), render(d.symplectic_charpoly, {}));
    rep.value("recursion_charpoly" + at(p), render(d.recursion_charpoly, {}));
    rep.value("primary_axis" + at(p), render(d.primary_axis));
    rep.value("secondary_axis" + at(p), render(d.secondary_axis));
  }
}

void cmd_classify(const Options& o, const Inputs& in, Report& rep) {
  auto [l, l1] = pencil_pair(o, in, true);
  for (const Point& p : points(o, in, l.chart().dim())) {
    RegularityReport r = classify_point(l, *l1, p);
    std::string v = std::string("rank_constant=") + (r.rank_constant ? "1" : "0") +
                    " symplectic_dim_constant=" + (r.symplectic_dim_constant ? "1" : "0") +
                    " type_constant=" + (r.type_constant ? "1" : "0") +
                    " trace_rank_constant=" + (r.trace_rank_constant ? "1" : "0");
    if (!r.center.evaluated) v += " problem=" + r.center.problem;
    rep.check("regular" + at(p), "rank, symplectic dimension and algebraic type are constant on the probe cloud",
              r.regular, v);
    std::string nv = "coefficient_rank=" +
                     (r.coefficient_differential_rank ? std::to_string(*r.coefficient_differential_rank) : "-") +
                     " restricted_rank=" +
                     (r.restricted_differential_rank ? std::to_string(*r.restricted_differential_rank) : "-");
    rep.check("necessary_condition" + at(p),
              "charpoly coefficients and traces have equal differential rank along the axis", r.necessary_condition,
              nv);
    rep.value("symplectic_dim" + at(p), std::to_string(r.center.symplectic_dim));
    rep.value("kronecker_dims" + at(p), kron_text(r.center.kronecker_dims));
    if (r.center.type) rep.value("charpoly" + at(p), render(r.center.type->charpoly, {}));
  }
}

void report_lift(const LiftResult& l, Report& rep) {
  ProlongationCheck pc = check_prolongation(l.cot, Tensor1r::from_tensor11(l.h), l.hstar);
  std::string w = pc.ok() ? "ok" : "";
  for (const auto& s : pc.witnesses) w += (w.empty() ? "" : "; ") + s;
  rep.check("prolongation", "H* projects, is radial invariant, kills vertical forms and its form is closed", pc.ok(),
            w);
  std::vector<KForm> pulled;
  for (const auto& a : l.alphas) pulled.push_back(pull_to_total(l.cot, a));
  KForm res = compat_criterion(l.omega, l.hstar.to_tensor11(), pulled);
  rep.check("compat_residual", "alpha_1 ^ ... ^ alpha_r ^ d omega_2 = 0", res.is_zero(), render(res));
  Multivector j0 = schouten_jacobiator(l.pair.lambda), j1 = schouten_jacobiator(l.pair.lambda1),
              js = schouten_jacobiator(l.pair.lambda + l.pair.lambda1);
  rep.check("jacobiator:lambda", "Lambda is Poisson", j0.is_zero(), render(j0));
  rep.check("jacobiator:lambda1", "Lambda_1 is Poisson", j1.is_zero(), render(j1));
  rep.check("jacobiator:sum", "Lambda + Lambda_1 is Poisson", js.is_zero(), render(js));
  rep.value("total_chart", render_coords(l.cot.total));
  rep.value("hstar", render(l.hstar));
  rep.value("omega", render(l.omega));
  rep.value("omega1", render(l.omega1));
  for (std::size_t i = 0; i < l.g0.span.size(); ++i) rep.value("g0[" + std::to_string(i) + "]", render(l.g0.span[i]));
  rep.value("transversal_chart", render_coords(l.transversal.chart));
  rep.value("lambda", render(l.pair.lambda));
  rep.value("lambda1", render(l.pair.lambda1));
}

void cmd_lift(const Options& o, const Inputs& in, Report& rep) {
  if (in.fixture) {
    report_lift(in.fixture->lift, rep);
    return;
  }
  const Tensor11& h = object<Tensor11>(in, o.h, "tensor11");
  std::vector<KForm> alphas = alpha_objects(in, o.alphas);
  std::vector<std::string> zero = split_list(o.zero);
  if (zero.empty()) throw PreconditionError("lift needs --zero with the transversal's vanishing coordinates");
  report_lift(lift(h.chart(), h, alphas, zero, split_list(o.fiber)), rep);
}

void cmd_flag_check(const Options& o, const Inputs& in, Report& rep) {
  FlagData fd;
  std::vector<Scalar> functions;
  if (in.fixture) {
    fd = in.fixture->flag;
    functions = in.fixture->flag_functions;
  } else {
    fd.g = object<Tensor11>(in, o.g, "tensor11");
    fd.chart = fd.g.chart();
    fd.alphas = alpha_objects(in, o.alphas);
    fd.omega = object<KForm>(in, o.omega, "k_form");
    fd.omega1 = object<KForm>(in, o.omega1, "k_form");
    if (!o.axis.empty()) fd.axis = object<Distribution>(in, o.axis, "distribution");
    for (const auto& n : split_list(o.functions)) functions.push_back(object<Scalar>(in, n, "scalar"));
    fd.samples = points(o, in, fd.chart.dim());
  }
  if (!o.points.empty()) fd.samples = points(o, in, fd.chart.dim());
  FlagReport r = check_flag(fd, functions);
  for (std::size_t j = 0; j < r.alpha_closed.size(); ++j)
    rep.check("alpha_closed[" + std::to_string(j + 1) + "]", "d alpha_j = 0", r.alpha_closed[j].is_zero(),
              render(r.alpha_closed[j]));
  rep.check("alphas_independent", "alpha_1 ^ ... ^ alpha_r has no zero at the samples", r.alphas_independent,
            r.alphas_independent ? "ok" : "vanishes at a sample");
  for (std::size_t j = 0; j < r.condition1.size(); ++j)
    rep.check("condition1[" + std::to_string(j + 1) + "]", "d(alpha_j o G) ^ alpha_1 ^ ... ^ alpha_r = 0",
              r.condition1[j].is_zero(), render(r.condition1[j]));
  rep.check("condition2", "N_G ^ alpha_1 ^ ... ^ alpha_r = 0", r.condition2.is_zero(), render(r.condition2));
  std::string dims;
  for (std::size_t i = 0; i < r.axis.dims.size(); ++i) dims += (i ? "," : "") + std::to_string(r.axis.dims[i]);
  rep.check("axis_constant", "the axis has constant dimension", r.axis.constant,
            "dims=" + dims + (r.axis.note.empty() ? "" : "; " + r.axis.note));
  if (fd.axis)
    rep.check("axis_supplied", "the supplied axis equals the computed one", r.axis_matches_supplied,
              r.axis_matches_supplied ? "ok" : "differs");
  rep.check("omega_nondegenerate", "omega is symplectic on the axis", r.omega_nondegenerate,
            "axis_dim=" + std::to_string(r.axis_dim));
  rep.check("d_omega", "d omega vanishes on the axis", r.d_omega_on_axis.is_zero(), render(r.d_omega_on_axis));
  rep.check("d_omega1", "d omega_1 vanishes on the axis", r.d_omega1_on_axis.is_zero(), render(r.d_omega1_on_axis));
  rep.check("relation", "omega_1 = omega(G., .) on the axis", r.relation_on_axis.is_zero(),
            r.relation_on_axis.is_zero() ? "0" : "nonzero entries in A^T(W_1 - G^T W)A");
  for (const auto& fc : r.condition3) {
    std::string label = fc.label + "=" + fd.chart.render(fc.f);
    if (!fc.applicable) {
      rep.value("condition3_inapplicable:" + label, render(fc.precondition));
      continue;
    }
    rep.check("condition3:" + label, "L_{X_f} G ^ alpha_1 ^ ... ^ alpha_r = 0 along the axis", fc.pass(),
              fc.evaluated ? render(fc.residual) : "no hamiltonian along the axis");
  }
  rep.value("condition3_coverage", std::to_string(r.condition3_coverage()) + "/" + std::to_string(r.condition3.size()));
  for (const auto& w : r.witnesses) rep.value("witness", w);
  if (r.axis.constant && r.axis.axis) {
    try {
      TraceRelation tr = trace_relation(fd, o.kmax);
      std::string v;
      for (std::size_t k = 0; k < tr.residuals.size(); ++k)
        v += (k ? "; " : "") + std::string("k=") + std::to_string(k + 1) + ": " + render(tr.residuals[k]);
      rep.check("trace_relation", "k dg_{k+1} = (k+1) dg_k o G on F", tr.zero(), v);
      for (std::size_t k = 0; k < tr.g.size(); ++k) rep.value("g" + std::to_string(k), fd.chart.render(tr.g[k]));
    } catch (const DefectError& e) {
      rep.check("trace_relation", "G preserves the axis", false, e.what());
    }
  }
}

void cmd_split(const Options& o, const Inputs& in, Report& rep) {
  const Tensor11& g = object<Tensor11>(in, o.g, "tensor11");
  const UniPoly& p1 = object<UniPoly>(in, o.phi1, "unipoly");
  const UniPoly& p2 = object<UniPoly>(in, o.phi2, "unipoly");
  SplitReport s = split_by_charpoly(g, p1, p2, points(o, in, g.chart().dim()));
  std::string d1, d2;
  for (std::size_t i = 0; i < s.dim1.size(); ++i) {
    d1 += (i ? "," : "") + std::to_string(s.dim1[i]);
    d2 += (i ? "," : "") + std::to_string(s.dim2[i]);
  }
  rep.check("direct_sum", "TM = Im H1 + Im H2 with dimensions adding up", s.direct_sum, "dims1=" + d1 + " dims2=" + d2);
  rep.check("involutive1", "Im H1 is a foliation", s.involutive1, s.mode);
  rep.check("involutive2", "Im H2 is a foliation", s.involutive2, s.mode);
  rep.check("annihilates1", "phi1(G) vanishes on Im H1", s.annihilates1, s.annihilates1 ? "0" : "nonzero");
  rep.check("annihilates2", "phi2(G) vanishes on Im H2", s.annihilates2, s.annihilates2 ? "0" : "nonzero");
  rep.value("h1", render(s.h1));
  rep.value("h2", render(s.h2));
  for (std::size_t i = 0; i < s.image1.span.size(); ++i) rep.value("image1[" + std::to_string(i) + "]", render(s.image1.span[i]));
  for (std::size_t i = 0; i < s.image2.span.size(); ++i) rep.value("image2[" + std::to_string(i) + "]", render(s.image2.span[i]));
  for (const auto& w : s.witnesses) rep.value("witness", w);
}

std::map<std::string, std::string> params_of(const Options& o) {
  std::map<std::string, std::string> p;
  for (const auto& kv : o.params) {
    auto eq = kv.find('=');
    if (eq == std::string::npos || eq == 0) throw ParseError("--param expects key=value, got '" + kv + "'");
    p[kv.substr(0, eq)] = kv.substr(eq + 1);
  }
  return p;
}

void cmd_gallery_list(Report& rep) {
  for (const auto& n : fixture_names()) {
    std::string v;
    for (const auto& [k, d] : default_params(n)) v += (v.empty() ? "" : " ") + k + "=" + d;
    rep.value(n, v);
  }
}

void cmd_gallery_build(const Options& o, Report& rep) {
  Fixture f = build(o.fixture, params_of(o));
  for (const auto& [k, v] : f.params) rep.value("param:" + k, v);
  rep.value("base_chart", render_coords(f.base));
  rep.value("h", render(f.h));
  for (std::size_t i = 0; i < f.alphas.size(); ++i) rep.value("alpha" + std::to_string(i + 1), render(f.alphas[i]));
  rep.value("total_chart", render_coords(f.lift.cot.total));
  rep.value("hstar", render(f.lift.hstar));
  rep.value("transversal_chart", render_coords(f.lift.transversal.chart));
  rep.value("flag_chart", render_coords(f.flag.chart));
  rep.value("flag_g", render(f.flag.g));
  for (const auto& pr : f.probes) {
    std::string z;
    for (const auto& c : pr.zero_coords) z += (z.empty() ? "" : ",") + c;
    rep.value("probe[" + z + "=0]", render(pr.point));
  }
  for (const auto& e : f.expected) rep.value("claim:" + e.name, e.op + ": " + e.anchor);
}

void cmd_gallery_verify(const Options& o, Report& rep) {
  Fixture f = build(o.fixture, params_of(o));
  std::vector<Point> extra;
  for (const auto& s : o.points) extra.push_back(parse_point(s));
  VerifyReport v = verify(f, extra);
  for (const auto& c : v.claims) rep.check(c.name, c.anchor + " [" + c.op + "]", c.pass, c.value);
}

void add_common(CLI::App* sub, Options& o) {
  sub->add_option("--manifest", o.manifest_path, "Manifest document (JSON)");
  sub->add_option("--point", o.points, "Point as comma-separated rationals (repeatable)");
  sub->add_option("--probes", o.probes, "Number of generated sample points when none are given");
  sub->add_option("--seed", o.seed, "Salt for generated sample points");
  sub->add_option("--format", o.format, "Report format")->check(CLI::IsMember({"text", "structured"}));
}

bool wants_structured(const std::vector<std::string>& args) {
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--format=structured") return true;
    if (args[i] == "--format" && i + 1 < args.size() && args[i + 1] == "structured") return true;
  }
  return false;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Exact checks for bihamiltonian structures, Veronese flags and pencils", "bihamil"};
  app.set_help_flag("--help", "Print help and exit");  // -h would clash with --h
  app.require_subcommand(1);
  auto* compat = app.add_subcommand("check-compat", "Compatibility residual of the lift of (H, alpha)");
  auto* nij = app.add_subcommand("nijenhuis", "Nijenhuis torsion, optionally wedged with the alphas");
  auto* sch = app.add_subcommand("schouten", "Schouten Jacobiators of Lambda, Lambda_1 and their sum");
  auto* dec = app.add_subcommand("decompose", "Pointwise pencil decomposition");
  auto* cls = app.add_subcommand("classify", "Regular-point test and the necessary condition");
  auto* lf = app.add_subcommand("lift", "Cotangent lift, G0 and the transversal restriction");
  auto* fc = app.add_subcommand("flag-check", "Weak flag and flag conditions, trace relation");
  auto* sp = app.add_subcommand("split", "Splitting by coprime factors of the characteristic polynomial");
  auto* gal = app.add_subcommand("gallery", "Built-in fixtures");
  gal->require_subcommand(1);
  auto* gl = gal->add_subcommand("list", "List fixtures and default parameters");
  auto* gb = gal->add_subcommand("build", "Build a fixture and print its data");
  auto* gv = gal->add_subcommand("verify", "Verify a fixture's claims");
  for (auto* s : {compat, nij, sch, dec, cls, lf, fc, sp, gal, gl, gb, gv}) s->set_help_flag("--help", "Print help and exit");
  for (auto* s : {compat, nij, sch, dec, cls, lf, fc, sp, gl, gb, gv}) add_common(s, o);
  for (auto* s : {compat, nij, lf}) s->add_option("--h", o.h, "Tensor11 object (default H)");
  for (auto* s : {compat, nij, lf, fc}) s->add_option("--alphas", o.alphas, "Comma-separated one_form objects");
  for (auto* s : {nij, fc, sp}) s->add_option("--g", o.g, "Tensor11 object (default G)");
  for (auto* s : {sch, dec, cls}) {
    s->add_option("--lambda", o.lambda, "Bivector object (default lambda)");
    s->add_option("--lambda1", o.lambda1, "Bivector object (default lambda1)");
  }
  for (auto* s : {compat, lf}) s->add_option("--fiber", o.fiber, "Comma-separated fiber coordinate names");
  lf->add_option("--zero", o.zero, "Comma-separated coordinates vanishing on the transversal");
  fc->add_option("--omega", o.omega, "2-form object (default omega)");
  fc->add_option("--omega1", o.omega1, "2-form object (default omega1)");
  fc->add_option("--axis", o.axis, "Distribution object supplying the axis");
  fc->add_option("--functions", o.functions, "Comma-separated scalar objects for condition 3");
  fc->add_option("--kmax", o.kmax, "Largest k in the trace relation");
  sp->add_option("--phi1", o.phi1, "Unipoly object (default phi1)");
  sp->add_option("--phi2", o.phi2, "Unipoly object (default phi2)");
  for (auto* s : {gb, gv}) {
    s->add_option("name", o.fixture, "Fixture name")->required();
    s->add_option("--param", o.params, "Parameter override key=value (repeatable)");
  }

  Report rep;
  const bool structured_hint = wants_structured(args);
  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return 0;
    }
    rep.command = args.empty() ? "" : args[0];
    rep.error_kind = "parse-error";
    rep.error_message = e.what();
    out << emit(rep, structured_hint);
    err << "bihamil: " << e.what() << "\n";
    return 2;
  }

  CLI::App* chosen = nullptr;
  for (auto* s : {compat, nij, sch, dec, cls, lf, fc, sp, gl, gb, gv})
    if (s->parsed()) chosen = s;
  rep.command = (chosen == gl || chosen == gb || chosen == gv ? "gallery " : "") + chosen->get_name();
  int code = 0;
  try {
    Inputs in = load(o, rep);
    if (chosen == compat) cmd_check_compat(o, in, rep);
    else if (chosen == nij) cmd_nijenhuis(o, in, rep);
    else if (chosen == sch) cmd_schouten(o, in, rep);
    else if (chosen == dec) cmd_decompose(o, in, rep);
    else if (chosen == cls) cmd_classify(o, in, rep);
    else if (chosen == lf) cmd_lift(o, in, rep);
    else if (chosen == fc) cmd_flag_check(o, in, rep);
    else if (chosen == sp) cmd_split(o, in, rep);
    else if (chosen == gl) cmd_gallery_list(rep);
    else if (chosen == gb) cmd_gallery_build(o, rep);
    else cmd_gallery_verify(o, rep);
    code = rep.status() == "pass" ? 0 : 1;
  } catch (const ParseError& e) {
    rep.error_kind = "parse-error";
    rep.error_message = e.what();
    if (e.position() != ParseError::npos) rep.error_position = e.position();
    code = 2;
  } catch (const PreconditionError& e) {
    rep.error_kind = "precondition-error";
    rep.error_message = e.what();
    code = 3;
  } catch (const PoleError& e) {
    rep.error_kind = "precondition-error";
    rep.error_message = std::string("pole: ") + e.what();
    code = 3;
  } catch (const DefectError& e) {
    rep.error_kind = "defect";
    rep.error_message = e.what();
    code = 4;
  }
  if (code >= 2) {
    rep.checks.clear();
    rep.values.clear();
    err << "bihamil: " << rep.error_message << "\n";
  }
  out << emit(rep, o.format == "structured");
  return code;
}

}  // namespace bihamil
