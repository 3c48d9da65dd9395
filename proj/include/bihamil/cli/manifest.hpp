#pragma once

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "bihamil/chart/fields.hpp"
#include "bihamil/ring/unipoly.hpp"

namespace bihamil {

// Manifest document (UTF-8 JSON):
//   { "chart": {"name": "N", "coords": ["x1", "x2"]},
//     "objects": { "<name>": {"kind": "...", ...}, ... },
//     "points": [["1/2", "1"], ...],
//     "fixture": {"name": "ex1", "params": {"n": "2"}} }
// Component keys list coordinates: "x1" (one_form, vector_field), "x1,x2"
// (k_form, bivector), "x1;x2" (tensor11, output;input), "x1;x2,x3" (tensor1r).
// Values are expression strings or integers.
using ObjectValue = std::variant<Scalar, KForm, VectorField, Multivector, Tensor11, Tensor1r, Distribution, UniPoly>;

struct ManifestObject {
  std::string name;
  std::string kind;  // scalar, one_form, k_form, vector_field, bivector, tensor11, tensor1r, distribution, unipoly
  int degree = 0;    // k for k_form, r for tensor1r
  ObjectValue value;
};

struct FixtureRef {
  std::string name;
  std::map<std::string, std::string> params;
};

struct Manifest {
  std::optional<Chart> chart;
  std::vector<ManifestObject> objects;  // document order
  std::vector<Point> points;
  std::optional<FixtureRef> fixture;

  const ManifestObject* find(const std::string& name) const;
};

// Throws ParseError naming the offending field; expression errors carry the
// character offset within the expression. A report document is accepted too:
// its "manifest" member is parsed.
Manifest parse_manifest(const std::string& text);

// Canonical JSON text of the manifest; parse_manifest(canonical) is identical.
std::string canonical_manifest(const Manifest& m);

// "1/2,1,-3" -> point. Throws ParseError.
Point parse_point(const std::string& text);

}  // namespace bihamil
