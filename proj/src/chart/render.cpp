#include "bihamil/chart/render.hpp"

#include <sstream>

#include "bihamil/ring/polynomial.hpp"

namespace bihamil {

namespace {

std::string form_basis(const Chart& c, const MultiIndex& k) {
  std::string s;
  for (std::size_t i = 0; i < k.size(); ++i) s += (i ? "^d" : "d") + c.coord(static_cast<std::size_t>(k[i]));
  return s;
}

std::string vector_basis(const Chart& c, const MultiIndex& k) {
  std::string s;
  for (std::size_t i = 0; i < k.size(); ++i) s += (i ? "^d/d" : "d/d") + c.coord(static_cast<std::size_t>(k[i]));
  return s;
}

std::string term(const Chart& c, const Scalar& v, const std::string& basis) {
  std::string coeff = "(" + c.render(v) + ")";
  return basis.empty() ? coeff : coeff + "*" + basis;
}

std::string join(const std::vector<std::string>& terms) {
  if (terms.empty()) return "0";
  std::string s;
  for (std::size_t i = 0; i < terms.size(); ++i) s += (i ? " + " : "") + terms[i];
  return s;
}

}  // namespace

std::string render(const KForm& f) {
  std::vector<std::string> terms;
  for (const auto& [k, v] : f.components()) terms.push_back(term(f.chart(), v, form_basis(f.chart(), k)));
  return join(terms);
}

std::string render(const Multivector& p) {
  std::vector<std::string> terms;
  for (const auto& [k, v] : p.components()) terms.push_back(term(p.chart(), v, vector_basis(p.chart(), k)));
  return join(terms);
}

std::string render(const VectorField& x) {
  std::vector<std::string> terms;
  for (const auto& [i, v] : x.components()) terms.push_back(term(x.chart(), v, vector_basis(x.chart(), {i})));
  return join(terms);
}

std::string render(const Tensor11& t) {
  std::vector<std::string> terms;
  for (const auto& [k, v] : t.components())
    terms.push_back(
        term(t.chart(), v, vector_basis(t.chart(), {k.first}) + "(x)" + form_basis(t.chart(), {k.second})));
  return join(terms);
}

std::string render(const Tensor1r& t) {
  std::vector<std::string> terms;
  for (const auto& [k, v] : t.components())
    terms.push_back(
        term(t.chart(), v, vector_basis(t.chart(), {k.first}) + "(x)" + form_basis(t.chart(), k.second)));
  return join(terms);
}

std::string render(const QMatrix& m) {
  std::string s = "[";
  for (std::size_t i = 0; i < m.rows(); ++i) {
    s += i ? ", [" : "[";
    for (std::size_t j = 0; j < m.cols(); ++j) s += (j ? ", " : "") + to_string(m(i, j));
    s += "]";
  }
  return s + "]";
}

std::string render(const Point& p) {
  std::string s;
  for (std::size_t i = 0; i < p.size(); ++i) s += (i ? "," : "") + to_string(p[i]);
  return s;
}

}  // namespace bihamil
