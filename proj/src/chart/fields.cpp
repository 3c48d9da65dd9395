#include "bihamil/chart/fields.hpp"

#include <random>

namespace bihamil {

namespace {

void check_index(const Chart& c, int i) {
  if (i < 0 || static_cast<std::size_t>(i) >= c.dim()) throw PreconditionError("index outside chart");
}

}  // namespace

// ---- VectorField ----

VectorField VectorField::coordinate(Chart chart, std::size_t i, const Scalar& s) {
  VectorField v(std::move(chart));
  v.add(static_cast<int>(i), s);
  return v;
}

VectorField VectorField::from_components(Chart chart, const std::vector<Scalar>& comps) {
  if (comps.size() != chart.dim()) throw PreconditionError("component count differs from chart dimension");
  VectorField v(std::move(chart));
  for (std::size_t i = 0; i < comps.size(); ++i) v.add(static_cast<int>(i), comps[i]);
  return v;
}

Scalar VectorField::get(int i) const {
  auto it = c_.find(i);
  return it == c_.end() ? Scalar() : it->second;
}

void VectorField::add(int i, const Scalar& v) {
  check_index(chart_, i);
  if (v.is_zero()) return;
  auto [it, inserted] = c_.try_emplace(i, Scalar());
  it->second += v;
  if (it->second.is_zero()) c_.erase(it);
}

void VectorField::set(int i, const Scalar& v) {
  check_index(chart_, i);
  c_.erase(i);
  add(i, v);
}

std::vector<Scalar> VectorField::dense() const {
  std::vector<Scalar> d(chart_.dim());
  for (const auto& [i, v] : c_) d[static_cast<std::size_t>(i)] = v;
  return d;
}

std::vector<Rational> VectorField::at(const Point& p) const {
  std::vector<Rational> d(chart_.dim(), Rational(0));
  for (const auto& [i, v] : c_) d[static_cast<std::size_t>(i)] = v.evaluate(p);
  return d;
}

Scalar VectorField::apply(const Scalar& f) const {
  Scalar s;
  if (f.is_constant()) return s;
  for (const auto& [i, v] : c_) {
    if (!f.involves(static_cast<std::size_t>(i))) continue;
    s += v * f.derivative(static_cast<std::size_t>(i));
  }
  return s;
}

VectorField VectorField::operator-() const {
  VectorField r(*this);
  for (auto& [i, v] : r.c_) v = -v;
  return r;
}

VectorField& VectorField::operator+=(const VectorField& o) {
  require_same_chart(chart_, o.chart_);
  for (const auto& [i, v] : o.c_) add(i, v);
  return *this;
}

VectorField& VectorField::operator*=(const Scalar& s) {
  if (s.is_zero()) {
    c_.clear();
    return *this;
  }
  for (auto& [i, v] : c_) v *= s;
  return *this;
}

// ---- Tensor11 ----

Tensor11 Tensor11::identity(Chart chart) {
  Tensor11 t(chart);
  for (std::size_t i = 0; i < chart.dim(); ++i) t.add(static_cast<int>(i), static_cast<int>(i), Scalar(1));
  return t;
}

Tensor11 Tensor11::from_matrix(Chart chart, const SMatrix& m) {
  if (m.rows() != chart.dim() || m.cols() != chart.dim()) throw PreconditionError("matrix shape differs from chart");
  Tensor11 t(std::move(chart));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) t.add(static_cast<int>(i), static_cast<int>(j), m(i, j));
  return t;
}

Scalar Tensor11::get(int out, int in) const {
  auto it = c_.find({out, in});
  return it == c_.end() ? Scalar() : it->second;
}

void Tensor11::add(int out, int in, const Scalar& v) {
  check_index(chart_, out);
  check_index(chart_, in);
  if (v.is_zero()) return;
  auto [it, inserted] = c_.try_emplace({out, in}, Scalar());
  it->second += v;
  if (it->second.is_zero()) c_.erase(it);
}

void Tensor11::set(int out, int in, const Scalar& v) {
  c_.erase({out, in});
  add(out, in, v);
}

SMatrix Tensor11::matrix() const {
  SMatrix m(chart_.dim(), chart_.dim());
  for (const auto& [k, v] : c_) m(static_cast<std::size_t>(k.first), static_cast<std::size_t>(k.second)) = v;
  return m;
}

QMatrix Tensor11::at(const Point& p) const {
  QMatrix m(chart_.dim(), chart_.dim());
  for (const auto& [k, v] : c_) m(static_cast<std::size_t>(k.first), static_cast<std::size_t>(k.second)) = v.evaluate(p);
  return m;
}

VectorField Tensor11::apply(const VectorField& x) const {
  require_same_chart(chart_, x.chart());
  VectorField r(chart_);
  for (const auto& [k, v] : c_) {
    Scalar xi = x.get(k.second);
    if (!xi.is_zero()) r.add(k.first, v * xi);
  }
  return r;
}

Tensor11 Tensor11::operator-() const {
  Tensor11 r(*this);
  for (auto& [k, v] : r.c_) v = -v;
  return r;
}

Tensor11& Tensor11::operator+=(const Tensor11& o) {
  require_same_chart(chart_, o.chart_);
  for (const auto& [k, v] : o.c_) add(k.first, k.second, v);
  return *this;
}

Tensor11& Tensor11::operator*=(const Scalar& s) {
  if (s.is_zero()) {
    c_.clear();
    return *this;
  }
  for (auto& [k, v] : c_) v *= s;
  return *this;
}

Tensor11 operator*(const Tensor11& a, const Tensor11& b) {
  require_same_chart(a.chart_, b.chart_);
  Tensor11 r(a.chart_);
  std::map<int, std::vector<std::pair<int, const Scalar*>>> b_by_out;
  for (const auto& [k, v] : b.c_) b_by_out[k.first].push_back({k.second, &v});
  for (const auto& [k, v] : a.c_) {
    auto it = b_by_out.find(k.second);
    if (it == b_by_out.end()) continue;
    for (const auto& [in, w] : it->second) r.add(k.first, in, v * *w);
  }
  return r;
}

// ---- Tensor1r ----

Tensor1r Tensor1r::from_tensor11(const Tensor11& t) {
  Tensor1r r(t.chart(), 1);
  for (const auto& [k, v] : t.components()) r.add(k.first, {k.second}, v);
  return r;
}

Scalar Tensor1r::get(int out, MultiIndex k) const {
  int s = sort_with_sign(k);
  if (s == 0) return Scalar();
  auto it = c_.find({out, k});
  if (it == c_.end()) return Scalar();
  return s > 0 ? it->second : -it->second;
}

void Tensor1r::add(int out, MultiIndex k, const Scalar& v) {
  check_index(chart_, out);
  if (static_cast<int>(k.size()) != r_) throw PreconditionError("form-slot count differs from r");
  for (int i : k) check_index(chart_, i);
  if (v.is_zero()) return;
  int s = sort_with_sign(k);
  if (s == 0) return;
  auto [it, inserted] = c_.try_emplace({out, k}, Scalar());
  if (s > 0)
    it->second += v;
  else
    it->second -= v;
  if (it->second.is_zero()) c_.erase(it);
}

Tensor11 Tensor1r::to_tensor11() const {
  if (r_ != 1) throw PreconditionError("to_tensor11 needs r == 1");
  Tensor11 t(chart_);
  for (const auto& [k, v] : c_) t.add(k.first, k.second[0], v);
  return t;
}

KForm Tensor1r::output_component(int out) const {
  KForm f(chart_, r_);
  for (const auto& [k, v] : c_)
    if (k.first == out) f.add(k.second, v);
  return f;
}

VectorField Tensor1r::evaluate(const std::vector<VectorField>& args) const {
  if (static_cast<int>(args.size()) != r_) throw PreconditionError("argument count differs from r");
  VectorField out(chart_);
  for (const auto& [k, v] : c_) {
    // det of the r x r minor of argument components at rows k.
    SMatrix m(static_cast<std::size_t>(r_), static_cast<std::size_t>(r_));
    bool any_zero_col = false;
    for (int b = 0; b < r_; ++b) {
      bool nz = false;
      for (int a = 0; a < r_; ++a) {
        m(static_cast<std::size_t>(a), static_cast<std::size_t>(b)) = args[static_cast<std::size_t>(b)].get(k.second[static_cast<std::size_t>(a)]);
        nz = nz || !m(static_cast<std::size_t>(a), static_cast<std::size_t>(b)).is_zero();
      }
      any_zero_col = any_zero_col || !nz;
    }
    if (any_zero_col) continue;
    out.add(k.first, v * determinant(m));
  }
  return out;
}

Tensor1r Tensor1r::operator-() const {
  Tensor1r r(*this);
  for (auto& [k, v] : r.c_) v = -v;
  return r;
}

Tensor1r& Tensor1r::operator+=(const Tensor1r& o) {
  require_same_chart(chart_, o.chart_);
  if (r_ != o.r_) throw PreconditionError("r mismatch");
  for (const auto& [k, v] : o.c_) add(k.first, k.second, v);
  return *this;
}

Tensor1r& Tensor1r::operator*=(const Scalar& s) {
  if (s.is_zero()) {
    c_.clear();
    return *this;
  }
  for (auto& [k, v] : c_) v *= s;
  return *this;
}

// ---- Bilinear / Distribution ----

KForm Bilinear::to_form() const {
  if (!is_skew()) throw PreconditionError("bilinear form is not skew-symmetric");
  return form2_from_matrix(chart, m);
}

SMatrix Distribution::span_matrix() const {
  SMatrix m(chart.dim(), span.size());
  for (std::size_t j = 0; j < span.size(); ++j)
    for (const auto& [i, v] : span[j].components()) m(static_cast<std::size_t>(i), j) = v;
  return m;
}

SMatrix Distribution::annihilator_matrix() const {
  SMatrix m(annihilators.size(), chart.dim());
  for (std::size_t j = 0; j < annihilators.size(); ++j) {
    if (annihilators[j].degree() != 1) throw PreconditionError("annihilators must be 1-forms");
    for (const auto& [k, v] : annihilators[j].components()) m(j, static_cast<std::size_t>(k[0])) = v;
  }
  return m;
}

DistributionCheck validate(const Distribution& d, const std::vector<Point>& samples) {
  DistributionCheck out;
  auto fail = [&](std::string msg) {
    out.ok = false;
    out.problems.push_back(std::move(msg));
  };
  if (!d.span.empty() && !d.annihilators.empty()) {
    SMatrix pairing = d.annihilator_matrix() * d.span_matrix();
    if (!pairing.is_zero()) fail("a spanning field does not annihilate an annihilating form");
  }
  for (std::size_t s = 0; s < samples.size(); ++s) {
    try {
      if (!d.span.empty() || d.annihilators.empty()) {
        std::size_t r = rank(evaluate(d.span_matrix(), samples[s]));
        if (static_cast<int>(r) != d.rank) fail("span rank " + std::to_string(r) + " at sample " + std::to_string(s));
      }
      if (!d.annihilators.empty()) {
        std::size_t r = d.chart.dim() - rank(evaluate(d.annihilator_matrix(), samples[s]));
        if (static_cast<int>(r) != d.rank)
          fail("annihilator corank " + std::to_string(r) + " at sample " + std::to_string(s));
      }
    } catch (const PoleError&) {
      fail("pole at sample " + std::to_string(s));
    }
  }
  return out;
}

std::vector<Point> sample_points(std::size_t dim, std::size_t count, std::size_t salt) {
  // Raw engine output keeps the sequence identical across standard libraries.
  std::mt19937_64 rng(0x5eed0000ULL + salt);
  std::vector<Point> pts;
  for (std::size_t k = 0; k < count; ++k) {
    Point p;
    for (std::size_t j = 0; j < dim; ++j) {
      long num = static_cast<long>(rng() % 29) + 2;
      long den = static_cast<long>(rng() % 11) + 3;
      Rational q(num, den);
      q.canonicalize();
      p.push_back(q);
    }
    pts.push_back(std::move(p));
  }
  return pts;
}

QMatrix form2_at(const KForm& w, const Point& p) { return evaluate(form2_matrix(w), p); }

QMatrix bivector_at(const Multivector& b, const Point& p) { return evaluate(bivector_matrix(b), p); }

SMatrix form2_matrix(const KForm& w) {
  if (w.degree() != 2) throw PreconditionError("expected a 2-form");
  SMatrix m(w.chart().dim(), w.chart().dim());
  for (const auto& [k, v] : w.components()) {
    m(static_cast<std::size_t>(k[0]), static_cast<std::size_t>(k[1])) = v;
    m(static_cast<std::size_t>(k[1]), static_cast<std::size_t>(k[0])) = -v;
  }
  return m;
}

SMatrix bivector_matrix(const Multivector& b) {
  if (b.degree() != 2) throw PreconditionError("expected a bivector");
  SMatrix m(b.chart().dim(), b.chart().dim());
  for (const auto& [k, v] : b.components()) {
    m(static_cast<std::size_t>(k[0]), static_cast<std::size_t>(k[1])) = v;
    m(static_cast<std::size_t>(k[1]), static_cast<std::size_t>(k[0])) = -v;
  }
  return m;
}

KForm form2_from_matrix(const Chart& c, const SMatrix& m) {
  if (!m.is_skew()) throw PreconditionError("matrix is not skew-symmetric");
  KForm f(c, 2);
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = i + 1; j < m.cols(); ++j) f.add({static_cast<int>(i), static_cast<int>(j)}, m(i, j));
  return f;
}

Multivector bivector_from_matrix(const Chart& c, const SMatrix& m) {
  if (!m.is_skew()) throw PreconditionError("matrix is not skew-symmetric");
  Multivector f(c, 2);
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = i + 1; j < m.cols(); ++j) f.add({static_cast<int>(i), static_cast<int>(j)}, m(i, j));
  return f;
}

// ---- transport ----

namespace {

bool map_index(const ChartMap& m, const MultiIndex& k, MultiIndex& out) {
  out.clear();
  for (int i : k) {
    int j = m.index[static_cast<std::size_t>(i)];
    if (j < 0) return false;
    out.push_back(j);
  }
  return true;
}

}  // namespace

Scalar transport(const ChartMap& m, const Scalar& s) { return m.apply(s); }

KForm transport(const ChartMap& m, const KForm& f) {
  require_same_chart(m.from, f.chart());
  KForm r(m.to, f.degree());
  MultiIndex k2;
  for (const auto& [k, v] : f.components())
    if (map_index(m, k, k2)) r.add(k2, m.apply(v));
  return r;
}

Multivector transport(const ChartMap& m, const Multivector& f) {
  require_same_chart(m.from, f.chart());
  Multivector r(m.to, f.degree());
  MultiIndex k2;
  for (const auto& [k, v] : f.components())
    if (map_index(m, k, k2)) r.add(k2, m.apply(v));
  return r;
}

VectorField transport(const ChartMap& m, const VectorField& v) {
  require_same_chart(m.from, v.chart());
  VectorField r(m.to);
  for (const auto& [i, s] : v.components()) {
    int j = m.index[static_cast<std::size_t>(i)];
    if (j >= 0) r.add(j, m.apply(s));
  }
  return r;
}

Tensor11 transport(const ChartMap& m, const Tensor11& t) {
  require_same_chart(m.from, t.chart());
  Tensor11 r(m.to);
  for (const auto& [k, s] : t.components()) {
    int a = m.index[static_cast<std::size_t>(k.first)];
    int b = m.index[static_cast<std::size_t>(k.second)];
    if (a >= 0 && b >= 0) r.add(a, b, m.apply(s));
  }
  return r;
}

Tensor1r transport(const ChartMap& m, const Tensor1r& t) {
  require_same_chart(m.from, t.chart());
  Tensor1r r(m.to, t.r());
  MultiIndex k2;
  for (const auto& [k, s] : t.components()) {
    int a = m.index[static_cast<std::size_t>(k.first)];
    if (a >= 0 && map_index(m, k.second, k2)) r.add(a, k2, m.apply(s));
  }
  return r;
}

}  // namespace bihamil
