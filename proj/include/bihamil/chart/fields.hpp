#pragma once

#include <map>
#include <utility>
#include <vector>

#include "bihamil/chart/chart.hpp"
#include "bihamil/errors.hpp"
#include "bihamil/ring/matrix.hpp"

namespace bihamil {

struct FormTag {};
struct VectorTag {};

// Totally antisymmetric field stored on strictly increasing multi-indices:
// differential forms (FormTag) and multivectors (VectorTag).
template <class Tag>
class Alternating {
 public:
  Alternating() = default;
  Alternating(Chart chart, int degree) : chart_(std::move(chart)), degree_(degree) {
    if (degree < 0) throw PreconditionError("negative degree");
  }
  static Alternating scalar(Chart chart, const Scalar& s) {
    Alternating a(std::move(chart), 0);
    a.add({}, s);
    return a;
  }
  // Elementary field e_{i1} ^ ... ^ e_{ik} scaled by s (indices in any order).
  static Alternating basis(Chart chart, MultiIndex idx, const Scalar& s = Scalar(1)) {
    Alternating a(std::move(chart), static_cast<int>(idx.size()));
    a.add(std::move(idx), s);
    return a;
  }

  const Chart& chart() const { return chart_; }
  int degree() const { return degree_; }
  const std::map<MultiIndex, Scalar>& components() const { return c_; }
  bool is_zero() const { return c_.empty(); }

  // Component with sign for any index order (0 on repeats).
  Scalar get(MultiIndex idx) const {
    int s = sort_with_sign(idx);
    if (s == 0) return Scalar();
    auto it = c_.find(idx);
    if (it == c_.end()) return Scalar();
    return s > 0 ? it->second : -it->second;
  }
  void add(MultiIndex idx, const Scalar& v) {
    if (static_cast<int>(idx.size()) != degree_) throw PreconditionError("multi-index length differs from degree");
    for (int i : idx)
      if (i < 0 || static_cast<std::size_t>(i) >= chart_.dim()) throw PreconditionError("index outside chart");
    if (v.is_zero()) return;
    int s = sort_with_sign(idx);
    if (s == 0) return;
    auto [it, inserted] = c_.try_emplace(idx, Scalar());
    if (s > 0)
      it->second += v;
    else
      it->second -= v;
    if (it->second.is_zero()) c_.erase(it);
  }
  void set(MultiIndex idx, const Scalar& v) {
    int s = sort_with_sign(idx);
    if (s == 0) {
      if (!v.is_zero()) throw PreconditionError("nonzero value on a repeated index");
      return;
    }
    c_.erase(idx);
    add(idx, s > 0 ? v : -v);
  }

  Alternating operator-() const {
    Alternating r(*this);
    for (auto& [k, v] : r.c_) v = -v;
    return r;
  }
  Alternating& operator+=(const Alternating& o) {
    check(o);
    for (const auto& [k, v] : o.c_) add(k, v);
    return *this;
  }
  Alternating& operator-=(const Alternating& o) { return *this += -o; }
  Alternating& operator*=(const Scalar& s) {
    if (s.is_zero()) {
      c_.clear();
      return *this;
    }
    for (auto& [k, v] : c_) v *= s;
    return *this;
  }
  friend Alternating operator+(Alternating a, const Alternating& b) { return a += b; }
  friend Alternating operator-(Alternating a, const Alternating& b) { return a -= b; }
  friend Alternating operator*(Alternating a, const Scalar& s) { return a *= s; }
  friend Alternating operator*(const Scalar& s, Alternating a) { return a *= s; }
  friend bool operator==(const Alternating& a, const Alternating& b) {
    return a.chart_ == b.chart_ && a.degree_ == b.degree_ && a.c_ == b.c_;
  }
  friend bool operator!=(const Alternating& a, const Alternating& b) { return !(a == b); }

  template <class F>
  Alternating transform(F f) const {
    Alternating r(chart_, degree_);
    for (const auto& [k, v] : c_) r.add(k, f(v));
    return r;
  }

 private:
  void check(const Alternating& o) const {
    require_same_chart(chart_, o.chart_);
    if (degree_ != o.degree_) throw PreconditionError("degree mismatch");
  }
  Chart chart_;
  int degree_ = 0;
  std::map<MultiIndex, Scalar> c_;
};

using KForm = Alternating<FormTag>;
using Multivector = Alternating<VectorTag>;

class VectorField {
 public:
  VectorField() = default;
  explicit VectorField(Chart chart) : chart_(std::move(chart)) {}
  static VectorField coordinate(Chart chart, std::size_t i, const Scalar& s = Scalar(1));
  static VectorField from_components(Chart chart, const std::vector<Scalar>& comps);

  const Chart& chart() const { return chart_; }
  const std::map<int, Scalar>& components() const { return c_; }
  bool is_zero() const { return c_.empty(); }
  Scalar get(int i) const;
  void add(int i, const Scalar& v);
  void set(int i, const Scalar& v);
  std::vector<Scalar> dense() const;
  std::vector<Rational> at(const Point& p) const;
  // Derivation X(f).
  Scalar apply(const Scalar& f) const;

  VectorField operator-() const;
  VectorField& operator+=(const VectorField& o);
  VectorField& operator-=(const VectorField& o) { return *this += -o; }
  VectorField& operator*=(const Scalar& s);
  friend VectorField operator+(VectorField a, const VectorField& b) { return a += b; }
  friend VectorField operator-(VectorField a, const VectorField& b) { return a -= b; }
  friend VectorField operator*(VectorField a, const Scalar& s) { return a *= s; }
  friend VectorField operator*(const Scalar& s, VectorField a) { return a *= s; }
  friend bool operator==(const VectorField& a, const VectorField& b) {
    return a.chart_ == b.chart_ && a.c_ == b.c_;
  }
  friend bool operator!=(const VectorField& a, const VectorField& b) { return !(a == b); }

 private:
  Chart chart_;
  std::map<int, Scalar> c_;
};

// (1,1)-tensor sum of T^i_j d/dx_i (x) dx_j, keyed (out i, in j).
class Tensor11 {
 public:
  Tensor11() = default;
  explicit Tensor11(Chart chart) : chart_(std::move(chart)) {}
  static Tensor11 identity(Chart chart);
  static Tensor11 from_matrix(Chart chart, const SMatrix& m);

  const Chart& chart() const { return chart_; }
  const std::map<std::pair<int, int>, Scalar>& components() const { return c_; }
  bool is_zero() const { return c_.empty(); }
  Scalar get(int out, int in) const;
  void add(int out, int in, const Scalar& v);
  void set(int out, int in, const Scalar& v);
  SMatrix matrix() const;  // row = out, column = in
  QMatrix at(const Point& p) const;
  VectorField apply(const VectorField& x) const;

  Tensor11 operator-() const;
  Tensor11& operator+=(const Tensor11& o);
  Tensor11& operator-=(const Tensor11& o) { return *this += -o; }
  Tensor11& operator*=(const Scalar& s);
  friend Tensor11 operator+(Tensor11 a, const Tensor11& b) { return a += b; }
  friend Tensor11 operator-(Tensor11 a, const Tensor11& b) { return a -= b; }
  friend Tensor11 operator*(Tensor11 a, const Scalar& s) { return a *= s; }
  friend Tensor11 operator*(const Scalar& s, Tensor11 a) { return a *= s; }
  // Composition (a*b)(X) = a(b(X)).
  friend Tensor11 operator*(const Tensor11& a, const Tensor11& b);
  friend bool operator==(const Tensor11& a, const Tensor11& b) { return a.chart_ == b.chart_ && a.c_ == b.c_; }
  friend bool operator!=(const Tensor11& a, const Tensor11& b) { return !(a == b); }

 private:
  Chart chart_;
  std::map<std::pair<int, int>, Scalar> c_;
};

// (1,r)-tensor antisymmetric in its r form slots: T^i_K with K increasing and
// T^i_K = T(d/dx_k1, ..., d/dx_kr)^i.
class Tensor1r {
 public:
  Tensor1r() = default;
  Tensor1r(Chart chart, int r) : chart_(std::move(chart)), r_(r) {
    if (r < 1) throw PreconditionError("Tensor1r needs r >= 1");
  }
  static Tensor1r from_tensor11(const Tensor11& t);

  const Chart& chart() const { return chart_; }
  int r() const { return r_; }
  const std::map<std::pair<int, MultiIndex>, Scalar>& components() const { return c_; }
  bool is_zero() const { return c_.empty(); }
  Scalar get(int out, MultiIndex k) const;  // any order, signed
  void add(int out, MultiIndex k, const Scalar& v);
  Tensor11 to_tensor11() const;  // r == 1
  // T(X1, ..., Xr) for general vector fields.
  VectorField evaluate(const std::vector<VectorField>& args) const;
  // Vector-valued k-form components as a list of forms, one per output coordinate.
  KForm output_component(int out) const;

  Tensor1r operator-() const;
  Tensor1r& operator+=(const Tensor1r& o);
  Tensor1r& operator-=(const Tensor1r& o) { return *this += -o; }
  Tensor1r& operator*=(const Scalar& s);
  friend Tensor1r operator+(Tensor1r a, const Tensor1r& b) { return a += b; }
  friend Tensor1r operator-(Tensor1r a, const Tensor1r& b) { return a -= b; }
  friend Tensor1r operator*(Tensor1r a, const Scalar& s) { return a *= s; }
  friend bool operator==(const Tensor1r& a, const Tensor1r& b) {
    return a.chart_ == b.chart_ && a.r_ == b.r_ && a.c_ == b.c_;
  }
  friend bool operator!=(const Tensor1r& a, const Tensor1r& b) { return !(a == b); }

 private:
  Chart chart_;
  int r_ = 1;
  std::map<std::pair<int, MultiIndex>, Scalar> c_;
};

using Tensor12 = Tensor1r;

// Covariant 2-tensor B(X, Y) = X^T M Y, not necessarily skew.
struct Bilinear {
  Chart chart;
  SMatrix m;
  bool is_skew() const { return m.is_skew(); }
  bool is_symmetric() const { return m == m.transpose(); }
  KForm to_form() const;  // requires is_skew()
};

// Sub-bundle presented by spanning fields and/or annihilating 1-forms.
struct Distribution {
  Chart chart;
  std::vector<VectorField> span;
  std::vector<KForm> annihilators;
  int rank = 0;

  SMatrix span_matrix() const;         // dim x |span|
  SMatrix annihilator_matrix() const;  // |annihilators| x dim
};

struct DistributionCheck {
  bool ok = true;
  std::vector<std::string> problems;
};
DistributionCheck validate(const Distribution& d, const std::vector<Point>& samples);

// Deterministic rational sample points in general position for `dim` coordinates.
std::vector<Point> sample_points(std::size_t dim, std::size_t count, std::size_t salt = 0);

// Pointwise evaluations.
QMatrix form2_at(const KForm& w, const Point& p);        // W_ab = w(d_a, d_b)
QMatrix bivector_at(const Multivector& b, const Point& p);  // P_ab = b(dx_a, dx_b)
SMatrix form2_matrix(const KForm& w);
SMatrix bivector_matrix(const Multivector& b);
KForm form2_from_matrix(const Chart& c, const SMatrix& m);          // m skew
Multivector bivector_from_matrix(const Chart& c, const SMatrix& m);  // m skew

// Transport fields along a chart map (coordinate renaming, embedding, or
// restriction to a coordinate subspace where dropped coordinates are zero and
// their differentials/directions discarded).
Scalar transport(const ChartMap& m, const Scalar& s);
KForm transport(const ChartMap& m, const KForm& f);
Multivector transport(const ChartMap& m, const Multivector& f);
VectorField transport(const ChartMap& m, const VectorField& v);
Tensor11 transport(const ChartMap& m, const Tensor11& t);
Tensor1r transport(const ChartMap& m, const Tensor1r& t);

}  // namespace bihamil
