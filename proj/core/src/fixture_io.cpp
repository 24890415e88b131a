// SPDX-License-Identifier: Apache-2.0
#include "algc/fixture_io.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace algc {

namespace {

using nlohmann::json;

[[noreturn]] void bad(const std::string& what) { throw SchemaError(what); }

const json& need(const json& doc, const char* key) {
  auto it = doc.find(key);
  if (it == doc.end()) bad(std::string("missing required key '") + key + "'");
  return *it;
}

int need_int(const json& doc, const char* key) {
  const json& v = need(doc, key);
  if (!v.is_number_integer()) bad(std::string("'") + key + "' must be an integer");
  return v.get<int>();
}

std::vector<std::string> need_names(const json& doc, const char* key, std::size_t count) {
  const json& v = need(doc, key);
  if (!v.is_array() || v.size() != count)
    bad(std::string("'") + key + "' must be an array of " + std::to_string(count) + " names");
  std::vector<std::string> out;
  for (const auto& e : v) {
    if (!e.is_string()) bad(std::string("'") + key + "' entries must be strings");
    out.push_back(e.get<std::string>());
  }
  return out;
}

std::vector<double> need_name_reals(const json& v, const char* key, std::size_t count) {
  if (!v.is_array() || v.size() != count)
    bad(std::string("'") + key + "' must be an array of " + std::to_string(count) + " numbers");
  std::vector<double> out;
  for (const auto& e : v) {
    if (!e.is_number()) bad(std::string("'") + key + "' entries must be numbers");
    out.push_back(e.get<double>());
  }
  return out;
}

ScalarField parse_expr(const json& v, const std::vector<std::string>& coords,
                       const std::string& where) {
  if (!v.is_string()) bad(where + " must be an expression string");
  return parse(v.get<std::string>(), coords);
}

/// Dense rows × cols array of expression strings.
std::vector<ScalarField> parse_matrix(const json& v, int rows, int cols,
                                      const std::vector<std::string>& coords,
                                      const std::string& where) {
  if (!v.is_array() || static_cast<int>(v.size()) != rows)
    bad(where + " must be a " + std::to_string(rows) + "-row array");
  std::vector<ScalarField> out;
  out.reserve(static_cast<std::size_t>(rows) * cols);
  for (int a = 0; a < rows; ++a) {
    const json& row = v[a];
    if (!row.is_array() || static_cast<int>(row.size()) != cols)
      bad(where + " rows must have " + std::to_string(cols) + " entries");
    for (int i = 0; i < cols; ++i)
      out.push_back(parse_expr(row[i], coords, where + " entry"));
  }
  return out;
}

std::vector<ScalarField> parse_structure(const json& v, int r,
                                         const std::vector<std::string>& coords) {
  std::vector<ScalarField> c(static_cast<std::size_t>(r) * r * r,
                             ScalarField::constant(0.0));
  if (v.is_array() && (v.empty() || v[0].is_object())) {
    // sparse form with skew completion
    std::set<std::array<int, 3>> seen;
    for (const auto& entry : v) {
      const int k = need_int(entry, "k"), i = need_int(entry, "i"), j = need_int(entry, "j");
      if (k < 0 || i < 0 || j < 0 || k >= r || i >= r || j >= r)
        bad("structure entry index out of range");
      if (i == j) bad("structure entry with i == j (diagonal must vanish)");
      if (!seen.insert({k, std::min(i, j), std::max(i, j)}).second)
        bad("conflicting duplicate structure entry for c[" + std::to_string(k) + "][" +
            std::to_string(i) + "][" + std::to_string(j) + "]");
      const ScalarField f = parse_expr(need(entry, "expr"), coords, "structure entry");
      c[(static_cast<std::size_t>(k) * r + i) * r + j] = f;
      c[(static_cast<std::size_t>(k) * r + j) * r + i] = -f;
    }
    return c;
  }
  if (!v.is_array() || static_cast<int>(v.size()) != r)
    bad("structure must be a dense rank^3 array or a sparse entry list");
  for (int k = 0; k < r; ++k) {
    const auto plane = parse_matrix(v[k], r, r, coords, "structure");
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j)
        c[(static_cast<std::size_t>(k) * r + i) * r + j] =
            plane[static_cast<std::size_t>(i) * r + j];
  }
  return c;
}

CoTensor parse_torsion3form(const json& v, const AlgebroidPtr& alg,
                            const std::vector<std::string>& coords) {
  const int r = alg->rank();
  if (!v.is_array()) bad("torsion3form must be a sparse entry list");
  std::vector<ScalarField> h(static_cast<std::size_t>(r) * r * r,
                             ScalarField::constant(0.0));
  std::set<std::array<int, 3>> seen;
  for (const auto& entry : v) {
    int idx[3] = {need_int(entry, "i"), need_int(entry, "j"), need_int(entry, "k")};
    for (int d = 0; d < 3; ++d)
      if (idx[d] < 0 || idx[d] >= r) bad("torsion3form entry index out of range");
    if (idx[0] == idx[1] || idx[0] == idx[2] || idx[1] == idx[2])
      bad("torsion3form entry with repeated slots");
    std::array<int, 3> sorted = {idx[0], idx[1], idx[2]};
    std::sort(sorted.begin(), sorted.end());
    if (!seen.insert(sorted).second) bad("conflicting duplicate torsion3form entry");
    const ScalarField f = parse_expr(need(entry, "expr"), coords, "torsion3form entry");
    // alternating completion over all six slot orders
    const int perms[6][4] = {{0, 1, 2, +1}, {1, 2, 0, +1}, {2, 0, 1, +1},
                             {0, 2, 1, -1}, {2, 1, 0, -1}, {1, 0, 2, -1}};
    for (const auto& p : perms) {
      const std::size_t flat =
          (static_cast<std::size_t>(idx[p[0]]) * r + idx[p[1]]) * r + idx[p[2]];
      h[flat] = p[3] > 0 ? f : -f;
    }
  }
  return CoTensor(alg, 3, std::move(h));
}

json matrix_to_json(const std::vector<ScalarField>& fields, int rows, int cols,
                    const std::vector<std::string>& coords) {
  json out = json::array();
  for (int a = 0; a < rows; ++a) {
    json row = json::array();
    for (int i = 0; i < cols; ++i)
      row.push_back(to_string(fields[static_cast<std::size_t>(a) * cols + i], coords));
    out.push_back(std::move(row));
  }
  return out;
}

}  // namespace

Fixture load_fixture_text(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    bad(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) bad("top-level document must be an object");

  Fixture fx;

  const json& name = need(doc, "name");
  if (!name.is_string()) bad("'name' must be a string");
  fx.name = name.get<std::string>();

  const int n = need_int(doc, "base_dim");
  const int r = need_int(doc, "rank");
  if (n <= 0 || r <= 0) bad("base_dim and rank must be positive");
  const std::vector<std::string> coords = need_names(doc, "coords", n);

  const json& domain = need(doc, "domain");
  DomainBox box{need_name_reals(need(domain, "lower"), "domain.lower", n),
                need_name_reals(need(domain, "upper"), "domain.upper", n)};
  for (int a = 0; a < n; ++a)
    if (box.lower[a] >= box.upper[a]) bad("domain intervals must be non-empty");

  std::vector<ScalarField> anchor = parse_matrix(need(doc, "anchor"), n, r, coords, "anchor");
  std::vector<ScalarField> structure = parse_structure(need(doc, "structure"), r, coords);
  fx.alg = make_algebroid(n, r, coords, std::move(anchor), std::move(structure), box);

  if (auto it = doc.find("metric"); it != doc.end())
    fx.metric = Metric(CoTensor(fx.alg, 2, parse_matrix(*it, r, r, coords, "metric")));
  if (auto it = doc.find("J"); it != doc.end())
    fx.complex_structure =
        AlmostComplex(VecTensor(fx.alg, 1, parse_matrix(*it, r, r, coords, "J")));
  if (auto it = doc.find("torsion3form"); it != doc.end())
    fx.torsion_form = parse_torsion3form(*it, fx.alg, coords);
  if (auto it = doc.find("connection"); it != doc.end()) {
    const json& v = *it;
    if (!v.is_array() || static_cast<int>(v.size()) != r)
      bad("connection must be a dense rank^3 array");
    std::vector<ScalarField> gamma(static_cast<std::size_t>(r) * r * r);
    for (int k = 0; k < r; ++k) {
      const auto plane = parse_matrix(v[k], r, r, coords, "connection");
      for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j)
          gamma[(static_cast<std::size_t>(k) * r + i) * r + j] =
              plane[static_cast<std::size_t>(i) * r + j];
    }
    fx.declared_connection = Connection(fx.alg, std::move(gamma));
  }
  if (auto it = doc.find("sections"); it != doc.end()) {
    if (!it->is_object()) bad("sections must be a map of name -> expression array");
    for (const auto& [sname, comps] : it->items()) {
      if (!comps.is_array() || static_cast<int>(comps.size()) != r)
        bad("section '" + sname + "' must have " + std::to_string(r) + " components");
      std::vector<ScalarField> fields;
      for (const auto& e : comps)
        fields.push_back(parse_expr(e, coords, "section '" + sname + "' component"));
      fx.sections.emplace(sname, Section(fx.alg, std::move(fields)));
    }
  }
  return fx;
}

Fixture load_fixture_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_fixture_text(buf.str());
}

std::string save_fixture_text(const Fixture& fx) {
  const Algebroid& alg = *fx.alg;
  const int n = alg.base_dim(), r = alg.rank();
  const auto& coords = alg.coords();

  json doc;
  doc["name"] = fx.name;
  doc["base_dim"] = n;
  doc["rank"] = r;
  doc["coords"] = coords;
  doc["domain"] = {{"lower", alg.box().lower}, {"upper", alg.box().upper}};

  std::vector<ScalarField> anchor(static_cast<std::size_t>(n) * r);
  for (int a = 0; a < n; ++a)
    for (int i = 0; i < r; ++i) anchor[static_cast<std::size_t>(a) * r + i] = alg.rho(a, i);
  doc["anchor"] = matrix_to_json(anchor, n, r, coords);

  json structure = json::array();
  for (int k = 0; k < r; ++k) {
    std::vector<ScalarField> plane(static_cast<std::size_t>(r) * r);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j) plane[static_cast<std::size_t>(i) * r + j] = alg.c(k, i, j);
    structure.push_back(matrix_to_json(plane, r, r, coords));
  }
  doc["structure"] = std::move(structure);

  if (fx.metric) {
    std::vector<ScalarField> g(static_cast<std::size_t>(r) * r);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j) g[static_cast<std::size_t>(i) * r + j] = fx.metric->g(i, j);
    doc["metric"] = matrix_to_json(g, r, r, coords);
  }
  if (fx.complex_structure) {
    std::vector<ScalarField> j_fields(static_cast<std::size_t>(r) * r);
    for (int k = 0; k < r; ++k)
      for (int i = 0; i < r; ++i)
        j_fields[static_cast<std::size_t>(k) * r + i] = fx.complex_structure->comp(k, i);
    doc["J"] = matrix_to_json(j_fields, r, r, coords);
  }
  if (fx.torsion_form) {
    json h = json::array();
    for (int i = 0; i < r; ++i)
      for (int j = i + 1; j < r; ++j)
        for (int k = j + 1; k < r; ++k) {
          const int idx[3] = {i, j, k};
          const ScalarField& f = fx.torsion_form->comp(idx);
          if (f.is_constant(0.0)) continue;
          h.push_back({{"i", i}, {"j", j}, {"k", k}, {"expr", to_string(f, coords)}});
        }
    doc["torsion3form"] = std::move(h);
  }
  if (fx.declared_connection) {
    json conn = json::array();
    for (int k = 0; k < r; ++k) {
      std::vector<ScalarField> plane(static_cast<std::size_t>(r) * r);
      for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j)
          plane[static_cast<std::size_t>(i) * r + j] = fx.declared_connection->gamma(k, i, j);
      conn.push_back(matrix_to_json(plane, r, r, coords));
    }
    doc["connection"] = std::move(conn);
  }
  if (!fx.sections.empty()) {
    json sections = json::object();
    for (const auto& [sname, sec] : fx.sections) {
      json comps = json::array();
      for (int i = 0; i < r; ++i) comps.push_back(to_string(sec.comp(i), coords));
      sections[sname] = std::move(comps);
    }
    doc["sections"] = std::move(sections);
  }
  return doc.dump(2) + "\n";
}

namespace {

bool fields_equal(const std::vector<ScalarField>& a, const std::vector<ScalarField>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!structurally_equal(a[i], b[i])) return false;
  return true;
}

}  // namespace

bool fixture_equivalent(const Fixture& a, const Fixture& b) {
  if (a.name != b.name) return false;
  const Algebroid &aa = *a.alg, &ab = *b.alg;
  if (aa.base_dim() != ab.base_dim() || aa.rank() != ab.rank()) return false;
  if (aa.coords() != ab.coords()) return false;
  if (aa.box().lower != ab.box().lower || aa.box().upper != ab.box().upper) return false;
  const int n = aa.base_dim(), r = aa.rank();
  for (int x = 0; x < n; ++x)
    for (int i = 0; i < r; ++i)
      if (!structurally_equal(aa.rho(x, i), ab.rho(x, i))) return false;
  for (int k = 0; k < r; ++k)
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j)
        if (!structurally_equal(aa.c(k, i, j), ab.c(k, i, j))) return false;
  if (a.metric.has_value() != b.metric.has_value()) return false;
  if (a.metric && !fields_equal(a.metric->tensor().comps(), b.metric->tensor().comps()))
    return false;
  if (a.complex_structure.has_value() != b.complex_structure.has_value()) return false;
  if (a.complex_structure &&
      !fields_equal(a.complex_structure->endo().comps(), b.complex_structure->endo().comps()))
    return false;
  if (a.torsion_form.has_value() != b.torsion_form.has_value()) return false;
  if (a.torsion_form && !fields_equal(a.torsion_form->comps(), b.torsion_form->comps()))
    return false;
  if (a.declared_connection.has_value() != b.declared_connection.has_value()) return false;
  if (a.declared_connection) {
    for (int k = 0; k < r; ++k)
      for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j)
          if (!structurally_equal(a.declared_connection->gamma(k, i, j),
                                  b.declared_connection->gamma(k, i, j)))
            return false;
  }
  if (a.sections.size() != b.sections.size()) return false;
  for (const auto& [sname, sec] : a.sections) {
    auto it = b.sections.find(sname);
    if (it == b.sections.end()) return false;
    if (!fields_equal(sec.comps(), it->second.comps())) return false;
  }
  return true;
}

}  // namespace algc
