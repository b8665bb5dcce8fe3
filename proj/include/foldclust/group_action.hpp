#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "foldclust/error.hpp"
#include "foldclust/matrix.hpp"

namespace foldclust {

/// Permutation of vertex indices 0..n-1; perm[i] is the image of i.
using Permutation = std::vector<std::size_t>;

inline Permutation identity_permutation(std::size_t n) {
  Permutation p(n);
  for (std::size_t i = 0; i < n; ++i) p[i] = i;
  return p;
}

/// (a * b)(i) = a(b(i))
inline Permutation compose(const Permutation& a, const Permutation& b) {
  Permutation c(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) c[i] = a[b[i]];
  return c;
}

inline Permutation inverse(const Permutation& p) {
  Permutation q(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) q[p[i]] = i;
  return q;
}

inline std::size_t permutation_order(const Permutation& p) {
  const Permutation id = identity_permutation(p.size());
  Permutation q = p;
  std::size_t k = 1;
  while (q != id) {
    q = compose(p, q);
    ++k;
  }
  return k;
}

inline constexpr std::size_t kDefaultGroupCap = 10000;

/// A finite permutation group acting on vertex labels, fully materialized.
/// Elements are sorted lexicographically by their index images, so the
/// identity is always element 0.
class VertexGroupAction {
 public:
  VertexGroupAction() = default;

  const std::vector<std::string>& vertex_labels() const { return labels_; }
  const std::vector<Permutation>& generators() const { return generators_; }
  const std::vector<Permutation>& elements() const { return elements_; }
  std::size_t order() const { return elements_.size(); }
  std::size_t degree() const { return labels_.size(); }

  std::optional<std::size_t> vertex_index(const std::string& label) const {
    auto it = index_.find(label);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }
  std::size_t require_vertex(const std::string& label) const {
    auto i = vertex_index(label);
    if (!i) fail(ErrorCode::UnknownVertex, "unknown vertex '" + label + "'");
    return *i;
  }

  std::size_t element_index(const Permutation& p) const {
    auto it = std::lower_bound(elements_.begin(), elements_.end(), p);
    if (it == elements_.end() || *it != p) fail(ErrorCode::NotAPermutation, "element not in group");
    return static_cast<std::size_t>(it - elements_.begin());
  }

  /// Orbit index of each vertex, orbits numbered by first vertex occurrence.
  std::vector<std::size_t> orbit_ids() const {
    std::vector<std::size_t> id(degree(), SIZE_MAX);
    std::size_t next = 0;
    for (std::size_t v = 0; v < degree(); ++v) {
      if (id[v] != SIZE_MAX) continue;
      for (const auto& g : elements_) id[g[v]] = next;
      ++next;
    }
    return id;
  }

  /// Orbits as index lists in order of first vertex occurrence.
  std::vector<std::vector<std::size_t>> orbit_indices() const {
    const auto id = orbit_ids();
    std::vector<std::vector<std::size_t>> out;
    for (std::size_t v = 0; v < degree(); ++v) {
      if (id[v] >= out.size()) out.resize(id[v] + 1);
      out[id[v]].push_back(v);
    }
    return out;
  }

  /// Builds an action from explicit elements already closed under products.
  static VertexGroupAction from_elements(std::vector<std::string> labels,
                                         std::vector<Permutation> generators,
                                         std::vector<Permutation> elements) {
    VertexGroupAction a;
    a.labels_ = std::move(labels);
    for (std::size_t i = 0; i < a.labels_.size(); ++i) a.index_[a.labels_[i]] = i;
    a.generators_ = std::move(generators);
    std::sort(elements.begin(), elements.end());
    elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
    a.elements_ = std::move(elements);
    return a;
  }

 private:
  std::vector<std::string> labels_;
  std::map<std::string, std::size_t> index_;
  std::vector<Permutation> generators_;
  std::vector<Permutation> elements_;
};

/// Label map form of a generator; omitted vertices are fixed.
using LabelMap = std::map<std::string, std::string>;

inline Permutation permutation_from_map(const std::vector<std::string>& labels, const LabelMap& map) {
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < labels.size(); ++i) index[labels[i]] = i;
  Permutation p = identity_permutation(labels.size());
  for (const auto& [from, to] : map) {
    auto f = index.find(from);
    auto t = index.find(to);
    if (f == index.end() || t == index.end())
      fail(ErrorCode::NotAPermutation, "generator mentions unknown vertex '" +
                                           (f == index.end() ? from : to) + "'");
    p[f->second] = t->second;
  }
  std::vector<bool> hit(labels.size(), false);
  for (std::size_t v : p) {
    if (hit[v]) fail(ErrorCode::NotAPermutation, "generator is not a bijection");
    hit[v] = true;
  }
  return p;
}

inline LabelMap permutation_to_map(const std::vector<std::string>& labels, const Permutation& p) {
  LabelMap m;
  for (std::size_t i = 0; i < p.size(); ++i)
    if (p[i] != i) m[labels[i]] = labels[p[i]];
  return m;
}

/// Closes the generators under composition.
inline VertexGroupAction enumerate_group(const std::vector<Permutation>& generators,
                                         std::vector<std::string> vertex_labels,
                                         std::size_t cap = kDefaultGroupCap) {
  detail::require_distinct(vertex_labels, "vertex");
  const std::size_t n = vertex_labels.size();
  for (const auto& g : generators) {
    if (g.size() != n) fail(ErrorCode::NotAPermutation, "generator has wrong degree");
    std::vector<bool> hit(n, false);
    for (std::size_t v : g) {
      if (v >= n || hit[v]) fail(ErrorCode::NotAPermutation, "generator is not a bijection");
      hit[v] = true;
    }
  }
  std::set<Permutation> seen{identity_permutation(n)};
  std::vector<Permutation> frontier{identity_permutation(n)};
  while (!frontier.empty()) {
    std::vector<Permutation> next;
    for (const auto& h : frontier)
      for (const auto& g : generators) {
        Permutation gh = compose(g, h);
        if (seen.insert(gh).second) {
          if (seen.size() > cap)
            fail(ErrorCode::GroupTooLarge, "group order exceeds cap " + std::to_string(cap));
          next.push_back(std::move(gh));
        }
      }
    frontier = std::move(next);
  }
  return VertexGroupAction::from_elements(std::move(vertex_labels), generators,
                                          std::vector<Permutation>(seen.begin(), seen.end()));
}

inline VertexGroupAction enumerate_group(const std::vector<LabelMap>& generators,
                                         std::vector<std::string> vertex_labels,
                                         std::size_t cap = kDefaultGroupCap) {
  std::vector<Permutation> perms;
  for (const auto& g : generators) perms.push_back(permutation_from_map(vertex_labels, g));
  return enumerate_group(perms, std::move(vertex_labels), cap);
}

inline VertexGroupAction trivial_action(std::vector<std::string> vertex_labels) {
  return enumerate_group(std::vector<Permutation>{}, std::move(vertex_labels));
}

struct OrbitPartition {
  std::vector<std::vector<std::string>> orbits;  // each sorted, list sorted by representative
  std::map<std::size_t, std::string> representative;  // orbit position -> least label

  std::size_t size() const { return orbits.size(); }
};

/// Orbit partition with lexicographically-least representatives.
inline OrbitPartition orbits(const VertexGroupAction& action) {
  OrbitPartition out;
  for (const auto& idx : action.orbit_indices()) {
    std::vector<std::string> orbit;
    for (std::size_t v : idx) orbit.push_back(action.vertex_labels()[v]);
    std::sort(orbit.begin(), orbit.end());
    out.orbits.push_back(std::move(orbit));
  }
  std::sort(out.orbits.begin(), out.orbits.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  for (std::size_t i = 0; i < out.orbits.size(); ++i) out.representative[i] = out.orbits[i].front();
  return out;
}

/// Subgroup of elements fixing a vertex, acting on the same labels.
inline VertexGroupAction stabilizer(const VertexGroupAction& action, const std::string& vertex) {
  const std::size_t v = action.require_vertex(vertex);
  std::vector<Permutation> fixing;
  for (const auto& g : action.elements())
    if (g[v] == v) fixing.push_back(g);
  std::vector<Permutation> gens(fixing.begin() + 1, fixing.end());
  return VertexGroupAction::from_elements(action.vertex_labels(), std::move(gens), std::move(fixing));
}

/// Rendering of an orbit as a label: singletons keep their label, larger
/// orbits become "{a,a'}" with members sorted.
inline std::string orbit_label(std::vector<std::string> members) {
  if (members.size() == 1) return members.front();
  std::sort(members.begin(), members.end());
  std::string out = "{";
  for (std::size_t i = 0; i < members.size(); ++i) out += (i ? "," : "") + members[i];
  return out + "}";
}

struct AdmissibilityReport {
  bool equivariant = true;
  bool admissible = true;
  std::string counterexample;

  bool ok() const { return equivariant && admissible; }
};

namespace detail {

// Maps every matrix row to its vertex index in the action; LabelMismatch if
// the two label sets differ.
inline std::vector<std::size_t> rows_to_vertices(const ExchangeMatrix& m, const VertexGroupAction& action) {
  if (m.rows() != action.degree())
    fail(ErrorCode::LabelMismatch, "matrix rows and action vertices differ");
  std::vector<std::size_t> out;
  for (const auto& r : m.row_labels()) {
    auto v = action.vertex_index(r);
    if (!v) fail(ErrorCode::LabelMismatch, "row label '" + r + "' is not an action vertex");
    out.push_back(*v);
  }
  return out;
}

}  // namespace detail

/// Equivariance entry(g·i, g·j) = entry(i, j) and admissibility (zero entries
/// within an orbit) of an exchange matrix under the action.
inline AdmissibilityReport validate_admissible(const ExchangeMatrix& m, const VertexGroupAction& action) {
  const auto row_vertex = detail::rows_to_vertices(m, action);
  std::vector<std::size_t> vertex_row(action.degree());
  for (std::size_t r = 0; r < row_vertex.size(); ++r) vertex_row[row_vertex[r]] = r;
  std::vector<std::optional<std::size_t>> row_col(m.rows());
  for (std::size_t c = 0; c < m.cols(); ++c) row_col[m.col_row(c)] = c;

  AdmissibilityReport report;
  const auto& labels = m.row_labels();
  for (const auto& g : action.elements()) {
    if (!report.equivariant) break;
    for (std::size_t c = 0; c < m.cols() && report.equivariant; ++c) {
      const std::size_t gc_row = vertex_row[g[row_vertex[m.col_row(c)]]];
      if (!row_col[gc_row]) {
        report.equivariant = false;
        report.counterexample = "column " + m.col_labels()[c] + " maps to frozen row " + labels[gc_row];
        break;
      }
      for (std::size_t r = 0; r < m.rows(); ++r) {
        const std::size_t gr = vertex_row[g[row_vertex[r]]];
        if (m.at(gr, *row_col[gc_row]) != m.at(r, c)) {
          report.equivariant = false;
          report.counterexample = "entry (" + labels[r] + "," + m.col_labels()[c] + ") differs from (" +
                                  labels[gr] + "," + labels[gc_row] + ")";
          break;
        }
      }
    }
  }
  const auto orbit = action.orbit_ids();
  for (std::size_t c = 0; c < m.cols() && report.admissible; ++c)
    for (std::size_t r = 0; r < m.rows(); ++r)
      if (r != m.col_row(c) && orbit[row_vertex[r]] == orbit[row_vertex[m.col_row(c)]] && m.at(r, c) != 0) {
        report.admissible = false;
        if (report.counterexample.empty())
          report.counterexample = "nonzero entry (" + labels[r] + "," + m.col_labels()[c] + ") within an orbit";
        break;
      }
  return report;
}

/// Same checks for a square Cartan datum (off-diagonal zeros within orbits).
inline AdmissibilityReport validate_admissible(const CartanDatum& c, const VertexGroupAction& action) {
  if (c.rank() != action.degree()) fail(ErrorCode::LabelMismatch, "Cartan labels and action vertices differ");
  std::vector<std::size_t> label_vertex;
  for (const auto& l : c.labels()) {
    auto v = action.vertex_index(l);
    if (!v) fail(ErrorCode::LabelMismatch, "Cartan label '" + l + "' is not an action vertex");
    label_vertex.push_back(*v);
  }
  std::vector<std::size_t> vertex_label(action.degree());
  for (std::size_t i = 0; i < label_vertex.size(); ++i) vertex_label[label_vertex[i]] = i;
  AdmissibilityReport report;
  for (const auto& g : action.elements()) {
    for (std::size_t i = 0; i < c.rank() && report.equivariant; ++i)
      for (std::size_t j = 0; j < c.rank(); ++j) {
        const std::size_t gi = vertex_label[g[label_vertex[i]]], gj = vertex_label[g[label_vertex[j]]];
        if (c.at(gi, gj) != c.at(i, j)) {
          report.equivariant = false;
          report.counterexample = "entry (" + c.labels()[i] + "," + c.labels()[j] + ") not invariant";
          break;
        }
      }
  }
  const auto orbit = action.orbit_ids();
  for (std::size_t i = 0; i < c.rank() && report.admissible; ++i)
    for (std::size_t j = 0; j < c.rank(); ++j)
      if (i != j && orbit[label_vertex[i]] == orbit[label_vertex[j]] && c.at(i, j) != 0) {
        report.admissible = false;
        if (report.counterexample.empty())
          report.counterexample = "edge " + c.labels()[i] + "-" + c.labels()[j] + " within an orbit";
        break;
      }
  return report;
}

}  // namespace foldclust
