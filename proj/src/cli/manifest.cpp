#include "bihamil/cli/manifest.hpp"

#include <set>

#include <json.hpp>

#include "bihamil/chart/render.hpp"
#include "bihamil/errors.hpp"
#include "bihamil/ring/parse.hpp"

namespace bihamil {

using json = nlohmann::ordered_json;

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw ParseError(where + ": " + what);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else if (c != ' ') {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

std::string text_of(const json& v, const std::string& where) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return v.dump();
  fail(where, "expected an expression string or an integer");
}

Scalar expression(const Chart& c, const json& v, const std::string& where) {
  std::string text = text_of(v, where);
  try {
    return parse_scalar(text, c.coords());
  } catch (const ParseError& e) {
    if (e.position() == ParseError::npos) fail(where, e.detail());
    throw ParseError(where + ": " + e.detail() + " in \"" + text + "\"", e.position());
  }
}

int coordinate_index(const Chart& c, const std::string& name, const std::string& where) {
  auto i = c.index_of(name);
  if (!i) fail(where, "undeclared coordinate '" + name + "'");
  return static_cast<int>(*i);
}

MultiIndex index_list(const Chart& c, const std::string& key, std::size_t expect, const std::string& where) {
  MultiIndex idx;
  if (!key.empty())
    for (const auto& n : split(key, ',')) idx.push_back(coordinate_index(c, n, where));
  if (idx.size() != expect)
    fail(where, "key '" + key + "' has " + std::to_string(idx.size()) + " indices, expected " + std::to_string(expect));
  MultiIndex sorted = idx;
  if (sort_with_sign(sorted) == 0) fail(where, "repeated coordinate in key '" + key + "'");
  return idx;
}

const json& member(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object() || !obj.contains(key)) fail(where, std::string("missing \"") + key + "\"");
  return obj.at(key);
}

template <class Tag>
Alternating<Tag> alternating(const Chart& c, const json& comps, int degree, const std::string& where) {
  Alternating<Tag> a(c, degree);
  std::set<MultiIndex> seen;
  for (const auto& [key, v] : comps.items()) {
    std::string w = where + ".components[" + key + "]";
    MultiIndex idx = index_list(c, key, static_cast<std::size_t>(degree), w);
    MultiIndex sorted = idx;
    sort_with_sign(sorted);
    if (!seen.insert(sorted).second) fail(w, "component given twice");
    a.add(idx, expression(c, v, w));
  }
  return a;
}

VectorField vector_field(const Chart& c, const json& comps, const std::string& where) {
  VectorField x(c);
  for (const auto& [key, v] : comps.items()) {
    std::string w = where + "[" + key + "]";
    MultiIndex idx = index_list(c, key, 1, w);
    if (!x.get(idx[0]).is_zero()) fail(w, "component given twice");
    x.add(idx[0], expression(c, v, w));
  }
  return x;
}

std::pair<int, MultiIndex> tensor_key(const Chart& c, const std::string& key, std::size_t r, const std::string& where) {
  auto parts = split(key, ';');
  if (parts.size() != 2) fail(where, "key '" + key + "' must read output;inputs");
  int out = coordinate_index(c, parts[0], where);
  return {out, index_list(c, parts[1], r, where)};
}

ManifestObject parse_object(const Chart* chart, const std::string& name, const json& o) {
  const std::string where = "objects." + name;
  if (!is_identifier(name)) fail(where, "object names must be identifiers");
  ManifestObject m;
  m.name = name;
  m.kind = member(o, "kind", where).is_string() ? o.at("kind").get<std::string>() : "";
  if (m.kind == "unipoly") {
    if (!chart) fail(where, "no chart declared");
    const json& cs = member(o, "coefficients", where);
    if (!cs.is_array() || cs.empty()) fail(where + ".coefficients", "expected a nonempty array");
    std::vector<Scalar> coeffs;
    for (std::size_t i = 0; i < cs.size(); ++i)
      coeffs.push_back(expression(*chart, cs[i], where + ".coefficients[" + std::to_string(i) + "]"));
    m.value = UniPoly(coeffs);
    return m;
  }
  if (!chart) fail(where, "no chart declared");
  const Chart& c = *chart;
  auto comps = [&]() -> const json& {
    const json& cs = member(o, "components", where);
    if (!cs.is_object()) fail(where + ".components", "expected an object");
    return cs;
  };
  if (m.kind == "scalar") {
    m.value = expression(c, member(o, "value", where), where + ".value");
  } else if (m.kind == "one_form") {
    m.degree = 1;
    m.value = alternating<FormTag>(c, comps(), 1, where);
  } else if (m.kind == "k_form" || m.kind == "bivector") {
    if (m.kind == "k_form") {
      const json& d = member(o, "degree", where);
      if (!d.is_number_integer() || d.get<int>() < 0 || d.get<int>() > static_cast<int>(c.dim()))
        fail(where + ".degree", "expected an integer between 0 and the chart dimension");
      m.degree = d.get<int>();
      m.value = alternating<FormTag>(c, comps(), m.degree, where);
    } else {
      m.degree = 2;
      m.value = alternating<VectorTag>(c, comps(), 2, where);
    }
  } else if (m.kind == "vector_field") {
    m.value = vector_field(c, comps(), where + ".components");
  } else if (m.kind == "tensor11") {
    Tensor11 t(c);
    std::set<std::pair<int, int>> seen;
    for (const auto& [key, v] : comps().items()) {
      std::string w = where + ".components[" + key + "]";
      auto [out, in] = tensor_key(c, key, 1, w);
      if (!seen.insert({out, in[0]}).second) fail(w, "component given twice");
      t.add(out, in[0], expression(c, v, w));
    }
    m.value = t;
  } else if (m.kind == "tensor1r") {
    const json& r = member(o, "r", where);
    if (!r.is_number_integer() || r.get<int>() < 1 || r.get<int>() > static_cast<int>(c.dim()))
      fail(where + ".r", "expected an integer between 1 and the chart dimension");
    m.degree = r.get<int>();
    Tensor1r t(c, m.degree);
    std::set<std::pair<int, MultiIndex>> seen;
    for (const auto& [key, v] : comps().items()) {
      std::string w = where + ".components[" + key + "]";
      auto [out, in] = tensor_key(c, key, static_cast<std::size_t>(m.degree), w);
      MultiIndex sorted = in;
      sort_with_sign(sorted);
      if (!seen.insert({out, sorted}).second) fail(w, "component given twice");
      t.add(out, in, expression(c, v, w));
    }
    m.value = t;
  } else if (m.kind == "distribution") {
    Distribution d;
    d.chart = c;
    if (o.contains("span")) {
      const json& s = o.at("span");
      if (!s.is_array()) fail(where + ".span", "expected an array");
      for (std::size_t i = 0; i < s.size(); ++i) {
        std::string w = where + ".span[" + std::to_string(i) + "]";
        if (!s[i].is_object()) fail(w, "expected an object of components");
        d.span.push_back(vector_field(c, s[i], w));
      }
    }
    if (o.contains("annihilators")) {
      const json& a = o.at("annihilators");
      if (!a.is_array()) fail(where + ".annihilators", "expected an array");
      for (std::size_t i = 0; i < a.size(); ++i) {
        std::string w = where + ".annihilators[" + std::to_string(i) + "]";
        if (!a[i].is_object()) fail(w, "expected an object of components");
        d.annihilators.push_back(alternating<FormTag>(c, a[i], 1, w));
      }
    }
    if (d.span.empty() && d.annihilators.empty()) fail(where, "a distribution needs span or annihilators");
    d.rank = d.span.empty() ? static_cast<int>(c.dim() - d.annihilators.size()) : static_cast<int>(d.span.size());
    m.value = d;
  } else {
    fail(where + ".kind", "unknown kind '" + m.kind + "'");
  }
  return m;
}

Point point_from_json(const json& p, const std::string& where) {
  if (!p.is_array()) fail(where, "expected an array of rationals");
  Point out;
  for (std::size_t i = 0; i < p.size(); ++i) {
    std::string t = text_of(p[i], where + "[" + std::to_string(i) + "]");
    try {
      out.push_back(parse_rational(t));
    } catch (const ParseError& e) {
      fail(where + "[" + std::to_string(i) + "]", e.detail());
    }
  }
  return out;
}

// ---------------------------------------------------------------- output

std::string key_of(const Chart& c, const MultiIndex& k) {
  std::string s;
  for (std::size_t i = 0; i < k.size(); ++i) s += (i ? "," : "") + c.coord(static_cast<std::size_t>(k[i]));
  return s;
}

template <class Tag>
json alternating_json(const Alternating<Tag>& a) {
  json o = json::object();
  for (const auto& [k, v] : a.components()) o[key_of(a.chart(), k)] = a.chart().render(v);
  return o;
}

json vector_json(const VectorField& x) {
  json o = json::object();
  for (const auto& [i, v] : x.components()) o[x.chart().coord(static_cast<std::size_t>(i))] = x.chart().render(v);
  return o;
}

json object_json(const Chart& c, const ManifestObject& m) {
  json o;
  o["kind"] = m.kind;
  std::visit(
      [&](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Scalar>) {
          o["value"] = c.render(v);
        } else if constexpr (std::is_same_v<T, KForm>) {
          if (m.kind == "k_form") o["degree"] = m.degree;
          o["components"] = alternating_json(v);
        } else if constexpr (std::is_same_v<T, Multivector>) {
          o["components"] = alternating_json(v);
        } else if constexpr (std::is_same_v<T, VectorField>) {
          o["components"] = vector_json(v);
        } else if constexpr (std::is_same_v<T, Tensor11>) {
          json cs = json::object();
          for (const auto& [k, s] : v.components())
            cs[c.coord(static_cast<std::size_t>(k.first)) + ";" + c.coord(static_cast<std::size_t>(k.second))] =
                c.render(s);
          o["components"] = cs;
        } else if constexpr (std::is_same_v<T, Tensor1r>) {
          o["r"] = m.degree;
          json cs = json::object();
          for (const auto& [k, s] : v.components())
            cs[c.coord(static_cast<std::size_t>(k.first)) + ";" + key_of(c, k.second)] = c.render(s);
          o["components"] = cs;
        } else if constexpr (std::is_same_v<T, Distribution>) {
          if (!v.span.empty()) {
            json s = json::array();
            for (const auto& x : v.span) s.push_back(vector_json(x));
            o["span"] = s;
          }
          if (!v.annihilators.empty()) {
            json a = json::array();
            for (const auto& f : v.annihilators) a.push_back(alternating_json(f));
            o["annihilators"] = a;
          }
        } else {
          json cs = json::array();
          for (const auto& s : v.coeffs()) cs.push_back(c.render(s));
          o["coefficients"] = cs;
        }
      },
      m.value);
  return o;
}

}  // namespace

const ManifestObject* Manifest::find(const std::string& name) const {
  for (const auto& o : objects)
    if (o.name == name) return &o;
  return nullptr;
}

Manifest parse_manifest(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("manifest is not valid JSON: ") + e.what(), e.byte == 0 ? 0 : e.byte - 1);
  }
  if (doc.is_object() && doc.contains("schema") && doc.at("schema").is_string() &&
      doc.at("schema").get<std::string>().rfind("bihamil-report/", 0) == 0) {
    if (!doc.contains("manifest")) fail("report", "no manifest section to re-run");
    doc = doc.at("manifest");
  }
  if (!doc.is_object()) fail("manifest", "expected an object");
  for (const auto& [k, v] : doc.items())
    if (k != "chart" && k != "objects" && k != "points" && k != "fixture") fail("manifest", "unknown member \"" + k + "\"");

  Manifest m;
  if (doc.contains("chart")) {
    const json& c = doc.at("chart");
    std::string name = "N";
    if (c.is_object() && c.contains("name")) {
      if (!c.at("name").is_string()) fail("chart.name", "expected a string");
      name = c.at("name").get<std::string>();
    }
    const json& coords = member(c, "coords", "chart");
    if (!coords.is_array() || coords.empty()) fail("chart.coords", "expected a nonempty array of names");
    std::vector<std::string> names;
    for (std::size_t i = 0; i < coords.size(); ++i) {
      std::string w = "chart.coords[" + std::to_string(i) + "]";
      if (!coords[i].is_string() || !is_identifier(coords[i].get<std::string>())) fail(w, "expected an identifier");
      names.push_back(coords[i].get<std::string>());
      for (std::size_t j = 0; j + 1 < names.size(); ++j)
        if (names[j] == names.back()) fail(w, "duplicate coordinate '" + names.back() + "'");
    }
    m.chart = Chart(name, names);
  }
  if (doc.contains("objects")) {
    const json& objs = doc.at("objects");
    if (!objs.is_object()) fail("objects", "expected an object");
    for (const auto& [name, o] : objs.items()) m.objects.push_back(parse_object(m.chart ? &*m.chart : nullptr, name, o));
  }
  if (doc.contains("points")) {
    const json& pts = doc.at("points");
    if (!pts.is_array()) fail("points", "expected an array");
    for (std::size_t i = 0; i < pts.size(); ++i) {
      m.points.push_back(point_from_json(pts[i], "points[" + std::to_string(i) + "]"));
      if (m.chart && m.points.back().size() != m.chart->dim())
        fail("points[" + std::to_string(i) + "]", "point arity differs from the chart dimension");
    }
  }
  if (doc.contains("fixture")) {
    const json& f = doc.at("fixture");
    FixtureRef r;
    const json& n = member(f, "name", "fixture");
    if (!n.is_string()) fail("fixture.name", "expected a string");
    r.name = n.get<std::string>();
    if (f.contains("params")) {
      const json& p = f.at("params");
      if (!p.is_object()) fail("fixture.params", "expected an object");
      for (const auto& [k, v] : p.items()) r.params[k] = text_of(v, "fixture.params." + k);
    }
    m.fixture = r;
  }
  return m;
}

std::string canonical_manifest(const Manifest& m) {
  json doc = json::object();
  if (m.chart) doc["chart"] = json{{"name", m.chart->name()}, {"coords", m.chart->coords()}};
  if (!m.objects.empty()) {
    json objs = json::object();
    for (const auto& o : m.objects) objs[o.name] = object_json(*m.chart, o);
    doc["objects"] = objs;
  }
  if (!m.points.empty()) {
    json pts = json::array();
    for (const auto& p : m.points) {
      json a = json::array();
      for (const auto& q : p) a.push_back(to_string(q));
      pts.push_back(a);
    }
    doc["points"] = pts;
  }
  if (m.fixture) {
    json f{{"name", m.fixture->name}};
    if (!m.fixture->params.empty()) f["params"] = m.fixture->params;
    doc["fixture"] = f;
  }
  return doc.dump();
}

Point parse_point(const std::string& text) {
  Point p;
  for (const auto& part : split(text, ',')) {
    try {
      p.push_back(parse_rational(part));
    } catch (const ParseError& e) {
      throw ParseError("--point '" + text + "': " + e.detail());
    }
  }
  return p;
}

}  // namespace bihamil
