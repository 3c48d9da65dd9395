#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "bihamil/chart/render.hpp"
#include "bihamil/cli/cli.hpp"
#include "bihamil/errors.hpp"
#include "bihamil/gallery/gallery.hpp"
#include "bihamil/pencil/pencil.hpp"
#include "bihamil/ring/parse.hpp"

namespace py = pybind11;
using namespace bihamil;

namespace {

QMatrix rational_matrix(const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::vector<Rational>> q;
  for (const auto& r : rows) {
    std::vector<Rational> row;
    for (const auto& s : r) row.push_back(parse_rational(s));
    q.push_back(row);
  }
  return QMatrix::from_rows(q);
}

Point point_of(const std::vector<std::string>& p) {
  Point out;
  for (const auto& s : p) out.push_back(parse_rational(s));
  return out;
}

py::dict decomposition(const std::vector<std::vector<std::string>>& lambda,
                       const std::vector<std::vector<std::string>>& lambda1) {
  PencilDecomposition d = decompose(make_pencil(rational_matrix(lambda), rational_matrix(lambda1)));
  py::dict out;
  out["generic_rank"] = d.profile.rank;
  out["corank"] = d.corank;
  out["kronecker_dims"] = d.kronecker_dims;
  out["symplectic_dim"] = d.symplectic_dim;
  out["symplectic_charpoly"] = render(d.symplectic_charpoly, {});
  out["recursion_charpoly"] = render(d.recursion_charpoly, {});
  out["primary_axis"] = render(d.primary_axis);
  return out;
}

py::dict verify_fixture(const std::string& name, const std::map<std::string, std::string>& params,
                        const std::vector<std::vector<std::string>>& points) {
  std::vector<Point> extra;
  for (const auto& p : points) extra.push_back(point_of(p));
  VerifyReport r = verify(build(name, params), extra);
  py::list claims;
  for (const auto& c : r.claims) {
    py::dict d;
    d["name"] = c.name;
    d["anchor"] = c.anchor;
    d["op"] = c.op;
    d["pass"] = c.pass;
    d["value"] = c.value;
    claims.append(d);
  }
  py::dict out;
  out["fixture"] = r.fixture;
  out["all_pass"] = r.all_pass();
  out["claims"] = claims;
  return out;
}

}  // namespace

PYBIND11_MODULE(_bihamil, m) {
  m.doc() = "Exact bihamiltonian structure checks";

  // Module-lifetime handles; the types are owned by the module object.
  static py::handle parse_error = py::exception<ParseError>(m, "ParseError", PyExc_ValueError).release();
  static py::handle precondition_error =
      py::exception<PreconditionError>(m, "PreconditionError", PyExc_ValueError).release();
  static py::handle pole_error = py::exception<PoleError>(m, "PoleError", PyExc_ArithmeticError).release();
  static py::handle defect_error = py::exception<DefectError>(m, "DefectError", PyExc_RuntimeError).release();
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const ParseError& e) {
      py::object exc = parse_error(e.what());
      exc.attr("position") = e.position() == ParseError::npos ? py::none() : py::cast(e.position());
      py::set_error(parse_error, exc);
    } catch (const PreconditionError& e) {
      py::set_error(precondition_error, e.what());
    } catch (const PoleError& e) {
      py::set_error(pole_error, e.what());
    } catch (const DefectError& e) {
      py::set_error(defect_error, e.what());
    }
  });

  m.def(
      "run",
      [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        int code = run(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "Run a CLI command in-process; returns (exit_code, stdout, stderr).");
  m.def(
      "simplify",
      [](const std::string& text, const std::vector<std::string>& coords) {
        return Chart("M", coords).render(parse_scalar(text, coords));
      },
      py::arg("text"), py::arg("coords"), "Canonical form of a rational function in the given coordinates.");
  m.def("fixture_names", &fixture_names);
  m.def("default_params", &default_params, py::arg("name"));
  m.def("verify", &verify_fixture, py::arg("name"), py::arg("params") = std::map<std::string, std::string>{},
        py::arg("points") = std::vector<std::vector<std::string>>{},
        "Verify a gallery fixture's claims; points are extra transversal points as rational strings.");
  m.def("decompose", &decomposition, py::arg("lambda_"), py::arg("lambda1"),
        "Pointwise decomposition of the pencil of two skew rational matrices (entries as strings).");
  m.attr("REPORT_SCHEMA") = kReportSchema;
}
