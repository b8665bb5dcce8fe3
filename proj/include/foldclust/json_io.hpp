#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "foldclust/character_table.hpp"
#include "foldclust/cluster.hpp"
#include "foldclust/folding.hpp"
#include "foldclust/quiver.hpp"

namespace foldclust::json_io {

using nlohmann::json;

// Integers beyond 2^53 are not exactly representable as doubles, so they
// travel as decimal strings.
inline json encode_int(Int v) {
  constexpr Int limit = Int{1} << 53;
  if (v > limit || v < -limit) return std::to_string(v);
  return v;
}

inline Int decode_int(const json& j) {
  try {
    if (j.is_number_integer()) return j.get<Int>();
    if (j.is_string()) {
      std::size_t used = 0;
      const std::string s = j.get<std::string>();
      const Int v = std::stoll(s, &used);
      if (used != s.size()) throw std::invalid_argument(s);
      return v;
    }
  } catch (const std::exception&) {
  }
  fail(ErrorCode::ParseError, "expected an integer, got " + j.dump());
}

inline const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) fail(ErrorCode::ParseError, std::string("missing field '") + key + "'");
  return j.at(key);
}

inline std::vector<std::string> decode_labels(const json& j) {
  if (!j.is_array()) fail(ErrorCode::ParseError, "label list must be an array");
  std::vector<std::string> out;
  for (const auto& x : j) {
    if (x.is_string()) out.push_back(x.get<std::string>());
    else if (x.is_number_integer()) out.push_back(std::to_string(x.get<Int>()));
    else fail(ErrorCode::ParseError, "labels must be strings");
  }
  return out;
}

inline json encode_entries(const IntMatrix& m) {
  json rows = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(encode_int(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline IntMatrix decode_entries(const json& j, std::size_t rows, std::size_t cols) {
  if (!j.is_array() || j.size() != rows) fail(ErrorCode::ParseError, "entries must have one row per row label");
  IntMatrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    if (!j[r].is_array() || j[r].size() != cols) fail(ErrorCode::ParseError, "entries row has the wrong length");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = decode_int(j[r][c]);
  }
  return m;
}

inline json encode(const ExchangeMatrix& b) {
  json sym = json::array();
  for (auto d : b.symmetrizer()) sym.push_back(encode_int(d));
  return {{"row_labels", b.row_labels()}, {"col_labels", b.col_labels()}, {"entries", encode_entries(b.entries())},
          {"symmetrizer", sym}};
}

inline ExchangeMatrix decode_matrix(const json& j) {
  auto rows = decode_labels(field(j, "row_labels"));
  auto cols = j.contains("col_labels") ? decode_labels(j.at("col_labels")) : rows;
  auto entries = decode_entries(field(j, "entries"), rows.size(), cols.size());
  return ExchangeMatrix(std::move(rows), std::move(cols), std::move(entries));
}

inline json encode(const CartanDatum& c) {
  json sym = json::array();
  for (auto d : c.symmetrizer()) sym.push_back(encode_int(d));
  return {{"labels", c.labels()}, {"entries", encode_entries(c.entries())}, {"symmetrizer", sym}};
}

inline CartanDatum decode_cartan(const json& j) {
  auto labels = decode_labels(j.contains("labels") ? j.at("labels") : field(j, "row_labels"));
  auto entries = decode_entries(field(j, "entries"), labels.size(), labels.size());
  if (j.contains("symmetrizer")) {
    std::vector<Int> d;
    for (const auto& x : j.at("symmetrizer")) d.push_back(decode_int(x));
    return CartanDatum(std::move(labels), std::move(entries), std::move(d));
  }
  return CartanDatum(std::move(labels), std::move(entries));
}

inline json encode(const VertexGroupAction& a) {
  json gens = json::array();
  for (const auto& g : a.generators()) {
    json m = json::object();
    for (const auto& [from, to] : permutation_to_map(a.vertex_labels(), g))
      if (from != to) m[from] = to;
    gens.push_back(std::move(m));
  }
  return {{"vertices", a.vertex_labels()}, {"generators", gens}, {"order", a.order()}};
}

inline LabelMap decode_label_map(const json& j) {
  if (!j.is_object()) fail(ErrorCode::ParseError, "a permutation must be an object of label pairs");
  LabelMap m;
  for (const auto& [k, v] : j.items()) {
    if (!v.is_string()) fail(ErrorCode::ParseError, "permutation images must be strings");
    m[k] = v.get<std::string>();
  }
  return m;
}

inline VertexGroupAction decode_action(const json& j, std::size_t cap = kDefaultGroupCap) {
  auto vertices = decode_labels(field(j, "vertices"));
  std::vector<LabelMap> gens;
  if (j.contains("generators"))
    for (const auto& g : j.at("generators")) gens.push_back(decode_label_map(g));
  return enumerate_group(gens, std::move(vertices), cap);
}

inline json encode(const Quiver& q) {
  json arrows = json::array();
  for (const auto& a : q.arrows()) arrows.push_back({{"from", a.from}, {"to", a.to}, {"mult", encode_int(a.mult)}});
  return {{"vertices", q.vertices()}, {"arrows", arrows}};
}

inline Quiver decode_quiver(const json& j) {
  auto vertices = decode_labels(field(j, "vertices"));
  std::vector<Arrow> arrows;
  for (const auto& a : field(j, "arrows")) {
    const auto ends = decode_labels(json::array({field(a, "from"), field(a, "to")}));
    arrows.push_back({ends[0], ends[1], a.contains("mult") ? decode_int(a.at("mult")) : 1});
  }
  return Quiver(std::move(vertices), arrows);
}

inline json encode(const LaurentPoly& p, const std::vector<std::string>& vars) {
  json terms = json::array();
  for (const auto& [e, c] : p.terms()) terms.push_back({{"exp", e}, {"coef", encode_int(c)}});
  return {{"vars", vars}, {"terms", terms}};
}

inline LaurentPoly decode_laurent(const json& j) {
  const auto vars = decode_labels(field(j, "vars"));
  LaurentPoly p(vars.size());
  for (const auto& t : field(j, "terms")) {
    Exponent e;
    for (const auto& x : field(t, "exp")) e.push_back(static_cast<std::int32_t>(decode_int(x)));
    p.add_term(e, decode_int(field(t, "coef")));
  }
  return p;
}

inline json encode(const Cyclotomic& z) { return {{"N", z.order()}, {"coeffs", z.reduced()}}; }

inline Cyclotomic decode_cyclotomic(const json& j) {
  if (j.is_number_integer() || j.is_string()) return Cyclotomic(decode_int(j));
  std::vector<Int> coeffs;
  for (const auto& x : field(j, "coeffs")) coeffs.push_back(decode_int(x));
  return Cyclotomic(decode_int(field(j, "N")), std::move(coeffs));
}

inline UserCharacterTable decode_character_table(const json& j) {
  UserCharacterTable t;
  t.vertices = decode_labels(field(j, "vertices"));
  for (const auto& e : field(j, "elements")) t.elements.push_back(decode_label_map(e));
  for (const auto& row : field(j, "characters")) {
    std::vector<Cyclotomic> r;
    for (const auto& v : row) r.push_back(decode_cyclotomic(v));
    t.characters.push_back(std::move(r));
  }
  return t;
}

inline json encode(const CharacterTable& t, const std::vector<std::string>& vertices) {
  json elements = json::array(), chars = json::array();
  for (const auto& g : t.elements) {
    json m = json::object();
    for (const auto& [from, to] : permutation_to_map(vertices, g)) m[from] = to;
    elements.push_back(std::move(m));
  }
  for (const auto& row : t.characters) {
    json r = json::array();
    for (const auto& v : row) r.push_back(encode(v));
    chars.push_back(std::move(r));
  }
  return {{"vertices", vertices}, {"elements", elements}, {"characters", chars}};
}

inline json encode(const FoldedRoots& r) {
  json roots = json::array();
  for (const auto& v : r.roots) {
    json x = json::array();
    for (auto c : v) x.push_back(encode_int(c));
    roots.push_back(std::move(x));
  }
  return {{"basis", r.basis}, {"roots", roots}};
}

inline json encode(const ExchangeGraph& g) {
  json seeds = json::array(), edges = json::array(), vars = json::array();
  const auto& names = g.seeds.front().variable_names;
  for (std::size_t i = 0; i < g.seeds.size(); ++i) {
    json cluster = json::object();
    const Seed& s = g.seeds[i];
    for (std::size_t c = 0; c < s.matrix.cols(); ++c) cluster[s.matrix.col_labels()[c]] = encode(s.cluster[c], names);
    seeds.push_back({{"id", key_digest(g.keys[i])}, {"cluster", cluster}, {"matrix", encode(s.matrix)}});
  }
  for (const auto& e : g.edges)
    edges.push_back({{"from", key_digest(g.keys[e.from])}, {"label", e.label}, {"to", key_digest(g.keys[e.to])}});
  for (const auto& v : g.variables) vars.push_back(encode(v, names));
  return {{"num_seeds", g.seeds.size()}, {"num_variables", g.variables.size()}, {"truncated", g.truncated},
          {"seeds", seeds}, {"edges", edges}, {"variables", vars}};
}

inline std::string dot_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

inline std::string to_dot(const Quiver& q, const std::string& name = "Q") {
  std::string out = "digraph " + dot_quote(name) + " {\n";
  for (const auto& v : q.vertices()) out += "  " + dot_quote(v) + ";\n";
  for (const auto& a : q.arrows())
    out += "  " + dot_quote(a.from) + " -> " + dot_quote(a.to) + " [label=" + dot_quote(std::to_string(a.mult)) + "];\n";
  return out + "}\n";
}

/// Undirected exchange graph; each pair of opposite mutation edges is drawn once.
inline std::string to_dot(const ExchangeGraph& g) {
  std::string out = "graph \"exchange\" {\n";
  for (const auto& k : g.keys) out += "  " + dot_quote(key_digest(k)) + ";\n";
  for (const auto& e : g.edges)
    if (e.from <= e.to)
      out += "  " + dot_quote(key_digest(g.keys[e.from])) + " -- " + dot_quote(key_digest(g.keys[e.to])) +
             " [label=" + dot_quote(e.label) + "];\n";
  return out + "}\n";
}

}  // namespace foldclust::json_io
