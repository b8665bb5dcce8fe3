#pragma once

#include <algorithm>
#include <optional>
#include <tuple>
#include <vector>

#include "foldclust/matrix.hpp"

namespace foldclust {

namespace detail {

using Coloring = std::vector<std::size_t>;

// Colour refinement: splits colour classes by the multiset of
// (neighbour colour, m_ij, m_ji) until stable. Colours are ranks of sorted
// signatures, so the result does not depend on the vertex order.
inline Coloring refine(const IntMatrix& m, Coloring color) {
  const std::size_t n = m.rows();
  using Signature = std::pair<std::size_t, std::vector<std::tuple<std::size_t, Int, Int>>>;
  std::size_t classes = 0;
  for (;;) {
    std::vector<Signature> sig(n);
    for (std::size_t i = 0; i < n; ++i) {
      sig[i].first = color[i];
      for (std::size_t j = 0; j < n; ++j)
        if (j != i) sig[i].second.emplace_back(color[j], m(i, j), m(j, i));
      std::sort(sig[i].second.begin(), sig[i].second.end());
    }
    std::vector<Signature> sorted = sig;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    for (std::size_t i = 0; i < n; ++i)
      color[i] = static_cast<std::size_t>(std::lower_bound(sorted.begin(), sorted.end(), sig[i]) - sorted.begin());
    if (sorted.size() == classes) return color;
    classes = sorted.size();
  }
}

inline IntMatrix permuted(const IntMatrix& m, const std::vector<std::size_t>& order) {
  IntMatrix out(m.rows(), m.cols());
  for (std::size_t a = 0; a < order.size(); ++a)
    for (std::size_t b = 0; b < order.size(); ++b) out(a, b) = m(order[a], order[b]);
  return out;
}

inline void canonical_search(const IntMatrix& m, const Coloring& color, std::optional<IntMatrix>& best) {
  const std::size_t n = m.rows();
  // First colour class (in colour order) with more than one vertex.
  std::vector<std::size_t> count(n, 0);
  for (auto c : color) ++count[c];
  std::size_t target = n;
  for (std::size_t c = 0; c < n; ++c)
    if (count[c] > 1) {
      target = c;
      break;
    }
  if (target == n) {
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[color[i]] = i;
    IntMatrix candidate = permuted(m, order);
    if (!best || candidate < *best) best = std::move(candidate);
    return;
  }
  for (std::size_t v = 0; v < n; ++v) {
    if (color[v] != target) continue;
    // Individualize v: it keeps colour 2*target, the rest of its class and
    // every later class shift up, preserving the relative order.
    Coloring next(n);
    for (std::size_t i = 0; i < n; ++i) {
      if (i == v) next[i] = 2 * color[i];
      else next[i] = 2 * color[i] + (color[i] >= target ? 1 : 0);
    }
    canonical_search(m, refine(m, next), best);
  }
}

}  // namespace detail

/// Canonical representative of a square matrix under simultaneous row and
/// column permutation: the lexicographically least leaf of an
/// individualization-refinement search.
inline IntMatrix canonical_form(const IntMatrix& m) {
  detail::require_square(m);
  if (m.rows() == 0) return m;
  std::optional<IntMatrix> best;
  detail::canonical_search(m, detail::refine(m, detail::Coloring(m.rows(), 0)), best);
  return *best;
}

}  // namespace foldclust
