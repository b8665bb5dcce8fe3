#pragma once

#include <set>
#include <string>
#include <utility>
#include <vector>

#include "foldclust/group_action.hpp"
#include "foldclust/matrix.hpp"
#include "foldclust/roots.hpp"

namespace foldclust {

namespace detail {

// Orbits of the labels, ordered by first occurrence in `labels`; each orbit
// lists positions into `labels` in label order.
inline std::vector<std::vector<std::size_t>> orbits_in_order(const std::vector<std::string>& labels,
                                                             const VertexGroupAction& action) {
  const auto id = action.orbit_ids();
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> slot(action.degree(), SIZE_MAX);
  for (std::size_t p = 0; p < labels.size(); ++p) {
    const std::size_t o = id[action.require_vertex(labels[p])];
    if (slot[o] == SIZE_MAX) {
      slot[o] = out.size();
      out.emplace_back();
    }
    out[slot[o]].push_back(p);
  }
  return out;
}

inline std::string orbit_label_of(const std::vector<std::string>& labels, const std::vector<std::size_t>& members) {
  std::vector<std::string> names;
  for (std::size_t p : members) names.push_back(labels[p]);
  return orbit_label(std::move(names));
}

inline void require_admissible(const AdmissibilityReport& r) {
  if (!r.equivariant) fail(ErrorCode::NotEquivariant, r.counterexample);
  if (!r.admissible) fail(ErrorCode::NotAdmissible, r.counterexample);
}

}  // namespace detail

/// Folded exchange matrix: rows are row orbits, columns mutable orbits, and
/// entry(Z, X) = sum over z in Z of B[z][x] for any x in X.
inline ExchangeMatrix fold_exchange(const ExchangeMatrix& b, const VertexGroupAction& action) {
  detail::require_admissible(validate_admissible(b, action));
  const auto row_orbits = detail::orbits_in_order(b.row_labels(), action);
  const auto col_orbits = detail::orbits_in_order(b.col_labels(), action);

  std::vector<std::string> rows, cols;
  for (const auto& o : row_orbits) rows.push_back(detail::orbit_label_of(b.row_labels(), o));
  for (const auto& o : col_orbits) cols.push_back(detail::orbit_label_of(b.col_labels(), o));

  IntMatrix folded(rows.size(), cols.size());
  for (std::size_t zi = 0; zi < row_orbits.size(); ++zi)
    for (std::size_t xi = 0; xi < col_orbits.size(); ++xi) {
      bool first = true;
      Int value = 0;
      // Every member of the column orbit must give the same sum.
      for (std::size_t x : col_orbits[xi]) {
        Int sum = 0;
        for (std::size_t z : row_orbits[zi]) sum = checked_add(sum, b.at(z, x));
        if (first) {
          value = sum;
          first = false;
        } else if (sum != value) {
          fail(ErrorCode::InconsistentFold, "fold of orbit " + cols[xi] + " depends on the representative");
        }
      }
      folded(zi, xi) = value;
    }
  return ExchangeMatrix(std::move(rows), std::move(cols), std::move(folded));
}

/// C_{IJ} = (1/#J) sum over (i, j) in I x J of C~_ij.
inline CartanDatum fold_cartan(const CartanDatum& c, const VertexGroupAction& action) {
  detail::require_admissible(validate_admissible(c, action));
  const auto orbs = detail::orbits_in_order(c.labels(), action);
  std::vector<std::string> labels;
  for (const auto& o : orbs) labels.push_back(detail::orbit_label_of(c.labels(), o));
  IntMatrix folded(orbs.size(), orbs.size());
  for (std::size_t a = 0; a < orbs.size(); ++a)
    for (std::size_t b = 0; b < orbs.size(); ++b) {
      Int sum = 0;
      for (std::size_t i : orbs[a])
        for (std::size_t j : orbs[b]) sum = checked_add(sum, c.at(i, j));
      const Int size = static_cast<Int>(orbs[b].size());
      if (sum % size != 0) fail(ErrorCode::NonIntegerFold, "folded entry is not an integer");
      folded(a, b) = sum / size;
    }
  return CartanDatum(std::move(labels), std::move(folded));
}

struct CartanUnfolding {
  CartanDatum cartan;
  VertexGroupAction action;
};

struct ExchangeUnfolding {
  ExchangeMatrix matrix;
  VertexGroupAction action;
};

namespace detail {

struct UnfoldLayout {
  std::vector<std::string> labels;           // unfolded vertex labels
  std::vector<std::pair<std::size_t, Int>> origin;  // (original index, copy)
  std::vector<Int> copies;                   // n_i per original index
  Permutation generator;
};

// Vertex set union_i {i} x Z/n_i with n_i = prod_{j != i} d_j and the cyclic
// shift (i, j) -> (i, j + 1). Vertices with a single copy keep their label.
inline UnfoldLayout unfold_layout(const std::vector<std::string>& labels, const std::vector<Int>& d) {
  UnfoldLayout layout;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    Int n = 1;
    for (std::size_t j = 0; j < labels.size(); ++j)
      if (j != i) n = checked_mul(n, d[j]);
    layout.copies.push_back(n);
    for (Int j = 0; j < n; ++j) {
      layout.labels.push_back(n == 1 ? labels[i] : "(" + labels[i] + "," + std::to_string(j) + ")");
      layout.origin.emplace_back(i, j);
    }
  }
  layout.generator.resize(layout.labels.size());
  for (std::size_t v = 0; v < layout.labels.size(); ++v) {
    const auto [i, j] = layout.origin[v];
    const Int n = layout.copies[i];
    layout.generator[v] = v - static_cast<std::size_t>(j) + static_cast<std::size_t>((j + 1) % n);
  }
  return layout;
}

// d_i x_{ii'} / lcm(d_i, d_{i'}) when gcd(n_i, n_{i'}) divides j - j', else 0.
inline Int unfolded_entry(const UnfoldLayout& layout, const std::vector<Int>& d, std::size_t u, std::size_t v,
                          Int original) {
  const auto [i, j] = layout.origin[u];
  const auto [ip, jp] = layout.origin[v];
  const Int g = gcd(layout.copies[i], layout.copies[ip]);
  if ((j - jp) % g != 0) return 0;
  const Int num = checked_mul(d[i], original);
  const Int den = lcm(d[i], d[ip]);
  if (num % den != 0) fail(ErrorCode::NonIntegerFold, "unfolded entry is not an integer");
  return num / den;
}

}  // namespace detail

/// Symmetric Cartan datum with a cyclic action whose fold is C.
inline CartanUnfolding unfold_cartan(const CartanDatum& c, std::size_t group_cap = kDefaultGroupCap) {
  const auto& d = c.symmetrizer();
  const auto layout = detail::unfold_layout(c.labels(), d);
  const std::size_t n = layout.labels.size();
  IntMatrix m(n, n);
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = 0; v < n; ++v)
      m(u, v) = detail::unfolded_entry(layout, d, u, v, c.at(layout.origin[u].first, layout.origin[v].first));
  CartanDatum unfolded(layout.labels, std::move(m));
  auto action = enumerate_group(std::vector<Permutation>{layout.generator}, layout.labels, group_cap);
  return {std::move(unfolded), std::move(action)};
}

/// Skew-symmetric exchange matrix with a cyclic action whose fold is B, for
/// an acyclic principal part. Frozen rows stay single vertices.
inline ExchangeUnfolding unfold_exchange(const ExchangeMatrix& b, std::size_t group_cap = kDefaultGroupCap) {
  const IntMatrix p = b.principal();
  if (!is_acyclic(p)) fail(ErrorCode::NotAcyclic, "principal part has a directed cycle");
  // Left skew-symmetrizer: diag(e)·P skew-symmetric.
  const auto e = skew_symmetrizer(p.transposed());
  if (!e) fail(ErrorCode::NotSkewSymmetrizable, "principal part is not skew-symmetrizable");
  const auto layout = detail::unfold_layout(b.col_labels(), *e);

  std::vector<std::string> rows = layout.labels;
  std::vector<std::size_t> frozen;
  for (std::size_t r = 0; r < b.rows(); ++r)
    if (b.is_frozen_row(r)) {
      frozen.push_back(r);
      rows.push_back(b.row_labels()[r]);
    }
  const std::size_t n = layout.labels.size();
  IntMatrix m(rows.size(), n);
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = 0; v < n; ++v)
      m(u, v) = detail::unfolded_entry(layout, *e, u, v, p(layout.origin[u].first, layout.origin[v].first));
  for (std::size_t f = 0; f < frozen.size(); ++f)
    for (std::size_t v = 0; v < n; ++v) m(n + f, v) = b.at(frozen[f], layout.origin[v].first);

  Permutation gen = layout.generator;
  for (std::size_t f = 0; f < frozen.size(); ++f) gen.push_back(n + f);
  auto action = enumerate_group(std::vector<Permutation>{gen}, rows, group_cap);
  return {ExchangeMatrix(std::move(rows), layout.labels, std::move(m)), std::move(action)};
}

/// Image of the positive roots under v -> sum over g of g·v, expressed over
/// the folded simple roots (each orbit sum of simple roots is a unit vector).
struct FoldedRoots {
  std::vector<std::string> basis;
  std::vector<RootVector> roots;  // graded lexicographic, deduplicated
};

inline FoldedRoots fold_roots(const CartanDatum& c, const VertexGroupAction& action) {
  detail::require_admissible(validate_admissible(c, action));
  const RootSystem rs = positive_roots(c);
  const auto orbs = detail::orbits_in_order(c.labels(), action);
  std::vector<std::size_t> label_vertex, vertex_label(action.degree());
  for (std::size_t i = 0; i < c.rank(); ++i) {
    label_vertex.push_back(action.require_vertex(c.labels()[i]));
    vertex_label[label_vertex.back()] = i;
  }
  FoldedRoots out;
  for (const auto& o : orbs) out.basis.push_back(detail::orbit_label_of(c.labels(), o));
  const Int group_order = static_cast<Int>(action.order());
  std::set<RootVector> images;
  for (const auto& alpha : rs.positive_roots) {
    RootVector summed(c.rank(), 0);
    for (const auto& g : action.elements())
      for (std::size_t i = 0; i < c.rank(); ++i) {
        const std::size_t gi = vertex_label[g[label_vertex[i]]];
        summed[gi] = checked_add(summed[gi], alpha[i]);
      }
    RootVector folded;
    for (const auto& o : orbs) {
      const Int scaled = checked_mul(summed[o.front()], static_cast<Int>(o.size()));
      if (scaled % group_order != 0) fail(ErrorCode::NonIntegerFold, "folded root coordinate is not integral");
      folded.push_back(scaled / group_order);
    }
    images.insert(std::move(folded));
  }
  out.roots.assign(images.begin(), images.end());
  sort_graded(out.roots);
  return out;
}

}  // namespace foldclust
