#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "foldclust/matrix.hpp"

namespace foldclust {

/// One connected finite-type component: family letter, rank, and the witness
/// map from canonical vertex names ("1".."n", Bourbaki numbering) to labels.
struct DynkinComponent {
  char family = 'A';
  int rank = 0;
  std::map<std::string, std::string> relabeling;

  std::string name() const { return std::string(1, family) + std::to_string(rank); }
};

/// Finite type, possibly disconnected. No components means the empty type A0.
struct DynkinType {
  std::vector<DynkinComponent> components;

  int rank() const {
    int r = 0;
    for (const auto& c : components) r += c.rank;
    return r;
  }

  /// "A0", "G2", "(A1)^2", "A1xB3": components sorted, repeats as powers.
  std::string name() const {
    if (components.empty()) return "A0";
    std::vector<std::pair<char, int>> parts;
    for (const auto& c : components) parts.emplace_back(c.family, c.rank);
    std::sort(parts.begin(), parts.end());
    std::string out;
    for (std::size_t i = 0; i < parts.size();) {
      std::size_t j = i;
      while (j < parts.size() && parts[j] == parts[i]) ++j;
      const std::string base = std::string(1, parts[i].first) + std::to_string(parts[i].second);
      if (!out.empty()) out += "x";
      out += (j - i == 1) ? base : "(" + base + ")^" + std::to_string(j - i);
      i = j;
    }
    return out;
  }
};

/// Canonical Cartan matrix, a_ij = <alpha_i^vee, alpha_j>. In B_n the last
/// vertex is short (row n carries the -2); in C_n it is long.
inline std::optional<IntMatrix> canonical_cartan(char family, int n) {
  if (n < 1) return std::nullopt;
  IntMatrix c(n, n);
  for (int i = 0; i < n; ++i) c(i, i) = 2;
  auto link = [&](int i, int j, Int aij = -1, Int aji = -1) {
    c(i - 1, j - 1) = aij;
    c(j - 1, i - 1) = aji;
  };
  switch (family) {
    case 'A':
      for (int i = 1; i < n; ++i) link(i, i + 1);
      return c;
    case 'B':
      if (n < 2) return std::nullopt;
      for (int i = 1; i < n - 1; ++i) link(i, i + 1);
      link(n - 1, n, -1, -2);
      return c;
    case 'C':
      if (n < 2) return std::nullopt;
      for (int i = 1; i < n - 1; ++i) link(i, i + 1);
      link(n - 1, n, -2, -1);
      return c;
    case 'D':
      if (n < 4) return std::nullopt;
      for (int i = 1; i < n - 1; ++i) link(i, i + 1);
      link(n - 2, n);
      return c;
    case 'E':
      if (n < 6 || n > 8) return std::nullopt;
      link(1, 3);
      link(2, 4);
      for (int i = 3; i < n; ++i) link(i, i + 1);
      return c;
    case 'F':
      if (n != 4) return std::nullopt;
      link(1, 2);
      link(2, 3, -1, -2);
      link(3, 4);
      return c;
    case 'G':
      if (n != 2) return std::nullopt;
      link(1, 2, -1, -3);
      return c;
    default:
      return std::nullopt;
  }
}

/// The bundled table: A1..An, B2..Bn, C3..Cn, D4..Dn, E6-E8, F4, G2 with
/// n the rank ceiling. B2 and C2 coincide up to relabeling; B2 is listed.
inline std::vector<std::pair<char, int>> bundled_finite_types(int max_rank = 8) {
  std::vector<std::pair<char, int>> out;
  for (int n = 1; n <= max_rank; ++n) out.emplace_back('A', n);
  for (int n = 2; n <= max_rank; ++n) out.emplace_back('B', n);
  for (int n = 3; n <= max_rank; ++n) out.emplace_back('C', n);
  for (int n = 4; n <= max_rank; ++n) out.emplace_back('D', n);
  for (int n = 6; n <= std::min(8, max_rank); ++n) out.emplace_back('E', n);
  if (max_rank >= 4) out.emplace_back('F', 4);
  if (max_rank >= 2) out.emplace_back('G', 2);
  return out;
}

inline CartanDatum canonical_cartan_datum(char family, int n) {
  auto m = canonical_cartan(family, n);
  if (!m) fail(ErrorCode::NotFiniteType, std::string("no canonical matrix for ") + family + std::to_string(n));
  std::vector<std::string> labels;
  for (int i = 1; i <= n; ++i) labels.push_back(std::to_string(i));
  return CartanDatum(std::move(labels), std::move(*m));
}

namespace detail {

// Finds a bijection f with target(f(i), f(j)) == pattern(i, j) for all i, j.
inline std::optional<std::vector<std::size_t>> match_matrices(const IntMatrix& pattern,
                                                              const IntMatrix& target) {
  const std::size_t n = pattern.rows();
  if (target.rows() != n) return std::nullopt;
  auto profile = [](const IntMatrix& m, std::size_t i) {
    std::vector<std::pair<Int, Int>> p;
    for (std::size_t j = 0; j < m.rows(); ++j)
      if (j != i) p.emplace_back(m(i, j), m(j, i));
    std::sort(p.begin(), p.end());
    return p;
  };
  std::vector<std::vector<std::pair<Int, Int>>> pp(n), tp(n);
  for (std::size_t i = 0; i < n; ++i) {
    pp[i] = profile(pattern, i);
    tp[i] = profile(target, i);
  }
  std::vector<std::size_t> image(n);
  std::vector<bool> used(n, false);
  std::function<bool(std::size_t)> extend = [&](std::size_t i) -> bool {
    if (i == n) return true;
    for (std::size_t t = 0; t < n; ++t) {
      if (used[t] || pp[i] != tp[t] || pattern(i, i) != target(t, t)) continue;
      bool ok = true;
      for (std::size_t j = 0; j < i && ok; ++j)
        ok = pattern(i, j) == target(t, image[j]) && pattern(j, i) == target(image[j], t);
      if (!ok) continue;
      used[t] = true;
      image[i] = t;
      if (extend(i + 1)) return true;
      used[t] = false;
    }
    return false;
  };
  if (!extend(0)) return std::nullopt;
  return image;
}

inline std::vector<std::vector<std::size_t>> connected_components(const IntMatrix& m) {
  const std::size_t n = m.rows();
  std::vector<int> comp(n, -1);
  std::vector<std::vector<std::size_t>> out;
  for (std::size_t s = 0; s < n; ++s) {
    if (comp[s] >= 0) continue;
    out.emplace_back();
    std::vector<std::size_t> stack{s};
    comp[s] = static_cast<int>(out.size() - 1);
    while (!stack.empty()) {
      const std::size_t i = stack.back();
      stack.pop_back();
      out.back().push_back(i);
      for (std::size_t j = 0; j < n; ++j)
        if (comp[j] < 0 && (m(i, j) != 0 || m(j, i) != 0)) {
          comp[j] = comp[s];
          stack.push_back(j);
        }
    }
    std::sort(out.back().begin(), out.back().end());
  }
  return out;
}

}  // namespace detail

/// Recognizes a (possibly disconnected) finite-type Cartan matrix by
/// isomorphism against the bundled table. Components above max_rank, or not
/// in the table, make the result absent.
inline std::optional<DynkinType> recognize_dynkin(const CartanDatum& c, int max_rank = 8) {
  DynkinType result;
  for (const auto& comp : detail::connected_components(c.entries())) {
    const int n = static_cast<int>(comp.size());
    if (n > max_rank) return std::nullopt;
    IntMatrix sub(comp.size(), comp.size());
    for (std::size_t a = 0; a < comp.size(); ++a)
      for (std::size_t b = 0; b < comp.size(); ++b) sub(a, b) = c.at(comp[a], comp[b]);
    std::optional<DynkinComponent> found;
    for (auto [family, rank] : bundled_finite_types(max_rank)) {
      if (rank != n) continue;
      const IntMatrix canon = *canonical_cartan(family, rank);
      if (auto f = detail::match_matrices(canon, sub)) {
        DynkinComponent dc{family, rank, {}};
        for (std::size_t i = 0; i < comp.size(); ++i)
          dc.relabeling[std::to_string(i + 1)] = c.labels()[comp[(*f)[i]]];
        found = std::move(dc);
        break;
      }
    }
    if (!found) return std::nullopt;
    result.components.push_back(std::move(*found));
  }
  return result;
}

/// Substitutes the witness relabeling back into the canonical matrices and
/// compares with the input entry by entry.
inline bool verify_relabeling(const CartanDatum& c, const DynkinType& t) {
  std::map<std::string, std::pair<std::size_t, std::size_t>> where;  // label -> (component, canonical index)
  for (std::size_t k = 0; k < t.components.size(); ++k)
    for (const auto& [canon, label] : t.components[k].relabeling)
      where[label] = {k, static_cast<std::size_t>(std::stoi(canon) - 1)};
  if (where.size() != c.rank()) return false;
  for (std::size_t i = 0; i < c.rank(); ++i)
    for (std::size_t j = 0; j < c.rank(); ++j) {
      auto [ki, ci] = where.at(c.labels()[i]);
      auto [kj, cj] = where.at(c.labels()[j]);
      Int expected = 0;
      if (ki == kj) {
        const auto& comp = t.components[ki];
        expected = (*canonical_cartan(comp.family, comp.rank))(ci, cj);
      }
      if (expected != c.at(i, j)) return false;
    }
  return true;
}

}  // namespace foldclust
