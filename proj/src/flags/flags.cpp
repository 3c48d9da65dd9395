#include "bihamil/flags/flags.hpp"

#include <algorithm>
#include <sstream>

namespace bihamil {
namespace {

std::string describe_point(const Point& p) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < p.size(); ++i) os << (i ? "," : "") << p[i].get_str();
  os << ')';
  return os.str();
}

KForm alpha_all(const FlagData& fd) {
  if (fd.alphas.empty()) return KForm::scalar(fd.chart, Scalar(1));
  return wedge_all(fd.alphas);
}

SMatrix alpha_matrix(const FlagData& fd) {
  const std::size_t m = fd.chart.dim();
  SMatrix a(fd.alphas.size(), m);
  for (std::size_t j = 0; j < fd.alphas.size(); ++j) {
    if (fd.alphas[j].degree() != 1) throw PreconditionError("flag: annihilators must be 1-forms");
    require_same_chart(fd.alphas[j].chart(), fd.chart);
    for (std::size_t i = 0; i < m; ++i) a(j, i) = fd.alphas[j].get({static_cast<int>(i)});
  }
  return a;
}

std::vector<VectorField> columns_as_fields(const Chart& c, const SMatrix& m) {
  std::vector<VectorField> out;
  for (std::size_t k = 0; k < m.cols(); ++k) {
    std::vector<Scalar> col(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i) col[i] = m(i, k);
    out.push_back(VectorField::from_components(c, col));
  }
  return out;
}

SMatrix fields_as_columns(const Chart& c, const std::vector<VectorField>& vs) {
  SMatrix m(c.dim(), vs.size());
  for (std::size_t k = 0; k < vs.size(); ++k)
    for (const auto& [i, v] : vs[k].components()) m(i, k) = v;
  return m;
}

// Rows span the annihilator of the column space of v.
template <class T>
Matrix<T> left_annihilator(const Matrix<T>& v) {
  return nullspace(v.transpose()).transpose();
}

// Largest subspace of span(f) mapped into itself by g.
template <class T>
Matrix<T> invariant_core(const Matrix<T>& g, Matrix<T> v) {
  v = column_basis(v);
  while (v.cols() > 0) {
    Matrix<T> n = left_annihilator(v);
    if (n.rows() == 0) break;
    Matrix<T> keep = nullspace(n * g * v);
    if (keep.cols() == v.cols()) break;
    v = column_basis(v * keep);
  }
  return v;
}

std::optional<Rational> try_det(const SMatrix& m, const Point& p) {
  try {
    return determinant(evaluate(m, p));
  } catch (const PoleError&) {
    return std::nullopt;
  }
}

std::optional<QMatrix> try_eval(const SMatrix& m, const Point& p) {
  try {
    return evaluate(m, p);
  } catch (const PoleError&) {
    return std::nullopt;
  }
}

KForm one_form_from_row(const Chart& c, const SMatrix& m, std::size_t row) {
  KForm f(c, 1);
  for (std::size_t i = 0; i < m.cols(); ++i) f.add({static_cast<int>(i)}, m(row, i));
  return f;
}

const Distribution* axis_frame(const FlagData& fd, const AxisResult& ar) {
  if (fd.axis) return &*fd.axis;
  if (ar.axis) return &*ar.axis;
  return nullptr;
}

// Annihilating 1-forms of a frame, wedged; the constant 1 for the full tangent space.
KForm annihilator_wedge(const Chart& c, const SMatrix& frame) {
  SMatrix n = left_annihilator(frame);
  KForm acc = KForm::scalar(c, Scalar(1));
  for (std::size_t r = 0; r < n.rows(); ++r) acc = wedge(acc, one_form_from_row(c, n, r));
  return acc;
}

}  // namespace

Distribution foliation(const FlagData& fd) {
  SMatrix a = alpha_matrix(fd);
  SMatrix k = fd.alphas.empty() ? SMatrix::identity(fd.chart.dim()) : nullspace(a);
  Distribution d;
  d.chart = fd.chart;
  d.span = columns_as_fields(fd.chart, k);
  d.annihilators = fd.alphas;
  d.rank = static_cast<int>(k.cols());
  return d;
}

AxisResult axis(const FlagData& fd) {
  require_same_chart(fd.g.chart(), fd.chart);
  if (fd.samples.empty()) throw PreconditionError("axis: no sample points");
  const std::size_t m = fd.chart.dim();
  SMatrix a = alpha_matrix(fd);
  SMatrix g = fd.g.matrix();
  AxisResult out;
  for (const Point& p : fd.samples) {
    QMatrix aq = evaluate(a, p);
    QMatrix f = fd.alphas.empty() ? QMatrix::identity(m) : nullspace(aq);
    QMatrix gq = evaluate(g, p);

    std::vector<Rational> probes;
    QMatrix cut = f;
    for (long t = 1; probes.size() < m; ++t) {
      QMatrix shifted = gq + QMatrix::identity(m) * Rational(t);
      QMatrix image = shifted * f;
      if (rank(image) < f.cols()) continue;
      probes.push_back(Rational(t));
      cut = intersect(cut, image);
    }
    QMatrix core = invariant_core(gq, f);
    if (!same_span(cut, core) || rank(cut) != core.cols())
      throw DefectError("axis: probe intersection and invariant iteration disagree at " + describe_point(p));
    out.dims.push_back(core.cols());
    out.pointwise.push_back(core);
    out.probes.push_back(std::move(probes));
  }
  out.constant = std::all_of(out.dims.begin(), out.dims.end(), [&](std::size_t d) { return d == out.dims[0]; });
  if (!out.constant) {
    out.note = "axis dimension varies across samples";
    return out;
  }

  SMatrix f = fd.alphas.empty() ? SMatrix::identity(m) : nullspace(a);
  SMatrix core = invariant_core(g, f);
  for (std::size_t s = 0; s < fd.samples.size(); ++s) {
    std::optional<QMatrix> q = try_eval(core, fd.samples[s]);
    if (!q || q->cols() != out.dims[s] || !same_span(*q, out.pointwise[s])) {
      out.note = "symbolic axis frame does not match the sample " + describe_point(fd.samples[s]);
      return out;
    }
  }
  Distribution d;
  d.chart = fd.chart;
  d.span = columns_as_fields(fd.chart, core);
  SMatrix ann = left_annihilator(core);
  for (std::size_t r = 0; r < ann.rows(); ++r) d.annihilators.push_back(one_form_from_row(fd.chart, ann, r));
  d.rank = static_cast<int>(core.cols());
  out.axis = std::move(d);
  return out;
}

bool FlagReport::weak_flag() const {
  for (const auto& c : alpha_closed)
    if (!c.is_zero()) return false;
  for (const auto& c : condition1)
    if (!c.is_zero()) return false;
  return alphas_independent && condition2.is_zero() && axis.constant && axis_matches_supplied;
}

bool FlagReport::flag() const {
  return weak_flag() && omega_nondegenerate && d_omega_on_axis.is_zero() && d_omega1_on_axis.is_zero() &&
         relation_on_axis.is_zero();
}

bool FlagReport::condition3_pass() const {
  return std::all_of(condition3.begin(), condition3.end(),
                     [](const FunctionCheck& c) { return !c.applicable || c.pass(); });
}

std::size_t FlagReport::condition3_coverage() const {
  return static_cast<std::size_t>(
      std::count_if(condition3.begin(), condition3.end(), [](const FunctionCheck& c) { return c.applicable; }));
}

FlagReport check_flag(const FlagData& fd, const std::vector<Scalar>& test_functions) {
  const Chart& c = fd.chart;
  const std::size_t m = c.dim();
  FlagReport rep;
  if (fd.omega.degree() != 2 || fd.omega1.degree() != 2)
    throw PreconditionError("check_flag: omega and omega1 must be 2-forms");
  require_same_chart(fd.omega.chart(), c);
  require_same_chart(fd.omega1.chart(), c);
  KForm all = alpha_all(fd);
  SMatrix a = alpha_matrix(fd);

  for (const auto& al : fd.alphas) rep.alpha_closed.push_back(exterior_derivative(al));
  rep.alphas_independent = true;
  for (const Point& p : fd.samples)
    if (rank(evaluate(a, p)) != fd.alphas.size()) {
      rep.alphas_independent = false;
      rep.witnesses.push_back("annihilators dependent at " + describe_point(p));
    }

  for (const auto& al : fd.alphas) rep.condition1.push_back(wedge(exterior_derivative(compose(al, fd.g)), all));
  rep.condition2 = wedge(nijenhuis_torsion(fd.g), all);

  rep.axis = axis(fd);
  if (!rep.axis.note.empty()) rep.witnesses.push_back(rep.axis.note);
  if (fd.axis) {
    SMatrix sup = fields_as_columns(c, fd.axis->span);
    for (std::size_t s = 0; s < fd.samples.size(); ++s) {
      std::optional<QMatrix> q = try_eval(sup, fd.samples[s]);
      if (!q || !same_span(*q, rep.axis.pointwise[s]) || rank(*q) != rep.axis.dims[s]) {
        rep.axis_matches_supplied = false;
        rep.witnesses.push_back("supplied axis differs from computed axis at " + describe_point(fd.samples[s]));
      }
    }
  }

  const Distribution* ax = axis_frame(fd, rep.axis);
  if (!ax) {
    rep.witnesses.push_back("no axis frame; symplectic conditions not evaluated");
    rep.d_omega_on_axis = KForm(c, 3);
    rep.d_omega1_on_axis = KForm(c, 3);
    return rep;
  }
  SMatrix frame = fields_as_columns(c, ax->span);
  rep.axis_dim = frame.cols();
  SMatrix w = form2_matrix(fd.omega);
  SMatrix w1 = form2_matrix(fd.omega1);
  SMatrix wa = frame.transpose() * w * frame;
  rep.omega_nondegenerate = true;
  for (const Point& p : fd.samples) {
    std::optional<Rational> det = try_det(wa, p);
    if (!det || *det == 0) {
      rep.omega_nondegenerate = false;
      rep.witnesses.push_back("omega degenerate on the axis at " + describe_point(p));
    }
  }
  KForm beta = annihilator_wedge(c, frame);
  rep.d_omega_on_axis = wedge(exterior_derivative(fd.omega), beta);
  rep.d_omega1_on_axis = wedge(exterior_derivative(fd.omega1), beta);
  SMatrix gm = fd.g.matrix();
  rep.relation_on_axis = frame.transpose() * (w1 - gm.transpose() * w) * frame;

  std::vector<std::pair<std::string, Scalar>> fs;
  for (std::size_t i = 0; i < test_functions.size(); ++i) fs.emplace_back("f" + std::to_string(i + 1), test_functions[i]);
  const std::size_t supplied = fs.size();
  for (std::size_t i = 0; i < m; ++i) fs.emplace_back(c.coord(i), c.coordinate(i));

  for (std::size_t k = 0; k < fs.size(); ++k) {
    FunctionCheck fc;
    fc.label = fs[k].first;
    fc.f = fs[k].second;
    fc.generated = k >= supplied;
    KForm df = differential(c, fc.f);
    fc.precondition = wedge(exterior_derivative(compose(df, fd.g)), all);
    fc.applicable = fc.precondition.is_zero();
    fc.hamiltonian = VectorField(c);
    fc.residual = Tensor1r(c, 1 + static_cast<int>(fd.alphas.size()));
    if (!fc.applicable) {
      rep.condition3.push_back(std::move(fc));
      continue;
    }
    SMatrix b(frame.cols(), 1);
    for (std::size_t j = 0; j < frame.cols(); ++j) b(j, 0) = -evaluate(df, {ax->span[j]});
    std::optional<SMatrix> coef = solve(wa.transpose(), b);
    fc.evaluated = coef.has_value();
    if (!fc.evaluated) {
      rep.witnesses.push_back("no hamiltonian along the axis for " + fc.label);
    } else {
      for (std::size_t j = 0; j < frame.cols(); ++j) fc.hamiltonian += ax->span[j] * (*coef)(j, 0);
      fc.residual = wedge(Tensor1r::from_tensor11(lie_derivative(fc.hamiltonian, fd.g)), all);
    }
    rep.condition3.push_back(std::move(fc));
  }
  return rep;
}

bool TraceRelation::zero() const {
  return std::all_of(residuals.begin(), residuals.end(), [](const KForm& r) { return r.is_zero(); });
}

TraceRelation trace_relation(const FlagData& fd, std::size_t k_max) {
  const Chart& c = fd.chart;
  AxisResult ar;
  if (!fd.axis) ar = axis(fd);
  const Distribution* ax = axis_frame(fd, ar);
  if (!ax) throw PreconditionError("trace_relation: no axis presentation (" + ar.note + ")");
  SMatrix frame = fields_as_columns(c, ax->span);
  std::optional<SMatrix> mm = solve(frame, fd.g.matrix() * frame);
  if (!mm) throw DefectError("trace_relation: G does not preserve the axis");
  TraceRelation tr;
  tr.axis_dim = frame.cols();
  SMatrix pw = SMatrix::identity(frame.cols());
  for (std::size_t k = 0; k <= k_max + 1; ++k) {
    tr.g.push_back(k == 0 ? Scalar(static_cast<long>(frame.cols())) : trace(pw));
    pw = pw * *mm;
  }
  KForm all = alpha_all(fd);
  for (std::size_t k = 1; k <= k_max; ++k) {
    KForm lhs = differential(c, tr.g[k + 1]) * Scalar(static_cast<long>(k));
    KForm rhs = compose(differential(c, tr.g[k]), fd.g) * Scalar(static_cast<long>(k + 1));
    tr.residuals.push_back(wedge(lhs - rhs, all));
  }
  tr.g.pop_back();
  return tr;
}

UniPoly charpoly(const Tensor11& g) { return UniPoly(charpoly(g.matrix())); }

namespace {

// Membership of every pairwise bracket of the frame columns in their span.
bool brackets_close(const Chart& c, const SMatrix& frame, const std::vector<Point>& samples, bool symbolic,
                    std::vector<std::string>& witnesses, const std::string& label) {
  std::vector<VectorField> vs = columns_as_fields(c, frame);
  std::vector<VectorField> br;
  for (std::size_t i = 0; i < vs.size(); ++i)
    for (std::size_t j = i + 1; j < vs.size(); ++j) br.push_back(lie_bracket(vs[i], vs[j]));
  if (br.empty()) return true;
  SMatrix bm = fields_as_columns(c, br);
  if (symbolic) {
    if (contained_in(bm, frame)) return true;
    witnesses.push_back(label + ": bracket leaves the image");
    return false;
  }
  bool ok = true;
  for (const Point& p : samples) {
    std::optional<QMatrix> f = try_eval(frame, p);
    std::optional<QMatrix> b = try_eval(bm, p);
    if (!f || !b || !contained_in(*b, *f)) {
      ok = false;
      witnesses.push_back(label + ": bracket leaves the image at " + describe_point(p));
    }
  }
  return ok;
}

}  // namespace

SplitReport split_by_charpoly(const Tensor11& g, const UniPoly& phi1, const UniPoly& phi2,
                              const std::vector<Point>& samples) {
  const Chart& c = g.chart();
  const std::size_t n = c.dim();
  if (samples.empty()) throw PreconditionError("split: no sample points");
  if (!nijenhuis_torsion(g).is_zero()) throw PreconditionError("split: N_G is not zero");
  if (phi1 * phi2 != charpoly(g)) throw PreconditionError("split: phi1 phi2 differs from the characteristic polynomial");
  Scalar res = resultant(phi1, phi2);
  for (const Point& p : samples)
    if (res.has_pole_at(p) || res.evaluate(p) == 0)
      throw PreconditionError("split: factors share a root at " + describe_point(p));

  SMatrix gm = g.matrix();
  SMatrix h1 = unipoly_eval_endo(phi2, gm);
  SMatrix h2 = unipoly_eval_endo(phi1, gm);
  SplitReport rep;
  rep.h1 = Tensor11::from_matrix(c, h1);
  rep.h2 = Tensor11::from_matrix(c, h2);

  rep.direct_sum = true;
  for (const Point& p : samples) {
    QMatrix a = evaluate(h1, p), b = evaluate(h2, p);
    std::size_t r1 = rank(a), r2 = rank(b);
    rep.dim1.push_back(r1);
    rep.dim2.push_back(r2);
    if (r1 + r2 != n || rank(hstack(a, b)) != n) {
      rep.direct_sum = false;
      rep.witnesses.push_back("images not complementary at " + describe_point(p));
    }
  }

  SMatrix f1 = column_basis(h1), f2 = column_basis(h2);
  bool symbolic = true;
  for (std::size_t s = 0; s < samples.size(); ++s) {
    std::optional<QMatrix> a = try_eval(f1, samples[s]), b = try_eval(f2, samples[s]);
    if (!a || !b || rank(*a) != rep.dim1[s] || rank(*b) != rep.dim2[s]) symbolic = false;
  }
  rep.mode = symbolic ? "symbolic" : "sampled";
  auto to_dist = [&](const SMatrix& f) {
    Distribution d;
    d.chart = c;
    d.span = columns_as_fields(c, f);
    d.rank = static_cast<int>(f.cols());
    return d;
  };
  rep.image1 = to_dist(f1);
  rep.image2 = to_dist(f2);
  rep.involutive1 = brackets_close(c, f1, samples, symbolic, rep.witnesses, "Im H1");
  rep.involutive2 = brackets_close(c, f2, samples, symbolic, rep.witnesses, "Im H2");

  rep.annihilates1 = (h2 * h1).is_zero();
  rep.annihilates2 = (h1 * h2).is_zero();
  if (!rep.annihilates1) rep.witnesses.push_back("phi1(G) does not vanish on Im H1");
  if (!rep.annihilates2) rep.witnesses.push_back("phi2(G) does not vanish on Im H2");
  return rep;
}

NormalFormReport normal_form_check(const Tensor11& g, const KForm& omega, const KForm& omega1,
                                   const std::vector<std::string>& x_coords, const std::vector<std::string>& z_coords,
                                   bool strict) {
  const Chart& c = g.chart();
  std::vector<int> side(c.dim(), -1);  // 0 = x, 1 = z
  for (const auto& name : x_coords) side[c.require_index(name)] = 0;
  for (const auto& name : z_coords) {
    std::size_t i = c.require_index(name);
    if (side[i] == 0) throw PreconditionError("normal_form_check: " + name + " listed as both x and z");
    side[i] = 1;
  }
  for (std::size_t i = 0; i < c.dim(); ++i)
    if (side[i] < 0) throw PreconditionError("normal_form_check: coordinate " + c.coord(i) + " not in the partition");

  NormalFormReport rep;
  auto depends_on_x = [&](const Scalar& s) {
    for (std::size_t i = 0; i < c.dim(); ++i)
      if (side[i] == 0 && s.involves(i)) return true;
    return false;
  };
  auto entry = [&](int out, int in, const Scalar& v) {
    return "G[" + c.coord(out) + "," + c.coord(in) + "] = " + c.render(v);
  };
  for (const auto& [key, v] : g.components()) {
    auto [out, in] = key;
    if (side[out] != side[in]) {
      rep.block_diagonal = false;
      rep.witnesses.push_back("coupling " + entry(out, in, v));
    } else if (side[out] == 0) {
      if (out != in || !v.is_constant()) {
        rep.x_constant_diagonal = false;
        rep.witnesses.push_back("x-block " + entry(out, in, v));
      }
    } else {
      if (depends_on_x(v)) {
        rep.z_independent_of_x = false;
        rep.witnesses.push_back("z-block depends on x: " + entry(out, in, v));
      }
      if (strict && !v.is_constant()) {
        rep.z_constant = false;
        rep.witnesses.push_back("z-block not constant: " + entry(out, in, v));
      }
    }
  }
  auto scan_form = [&](const KForm& w, const std::string& name) {
    require_same_chart(w.chart(), c);
    for (const auto& [idx, v] : w.components())
      if (depends_on_x(v)) {
        rep.z_independent_of_x = false;
        std::string where;
        for (int i : idx) where += (where.empty() ? "" : ",") + c.coord(i);
        rep.witnesses.push_back(name + "[" + where + "] depends on x: " + c.render(v));
      }
  };
  scan_form(omega, "omega");
  scan_form(omega1, "omega1");
  return rep;
}

}  // namespace bihamil
