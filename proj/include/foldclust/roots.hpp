#pragma once

#include <algorithm>
#include <numeric>
#include <set>
#include <vector>

#include "foldclust/dynkin.hpp"
#include "foldclust/matrix.hpp"

namespace foldclust {

using RootVector = std::vector<Int>;

/// Finite root system over the simple roots of a Cartan datum.
struct RootSystem {
  CartanDatum cartan;
  DynkinType type;
  std::vector<RootVector> positive_roots;   // graded lexicographic
  std::vector<IntMatrix> simple_reflections;  // s_i(v) = v - <alpha_i^vee, v> alpha_i

  std::size_t size() const { return positive_roots.size(); }
};

inline IntMatrix simple_reflection(const CartanDatum& c, std::size_t i) {
  IntMatrix s = IntMatrix::identity(c.rank());
  for (std::size_t j = 0; j < c.rank(); ++j) s(i, j) = checked_sub(s(i, j), c.at(i, j));
  return s;
}

inline bool is_nonnegative(const RootVector& v) {
  return std::all_of(v.begin(), v.end(), [](Int x) { return x >= 0; });
}

inline Int root_height(const RootVector& v) { return std::accumulate(v.begin(), v.end(), Int{0}); }

inline void sort_graded(std::vector<RootVector>& roots) {
  std::sort(roots.begin(), roots.end(), [](const RootVector& a, const RootVector& b) {
    const Int ha = root_height(a), hb = root_height(b);
    if (ha != hb) return ha < hb;
    return a < b;
  });
}

/// Closure of the simple roots under simple reflections, positive part.
inline RootSystem positive_roots(const CartanDatum& c) {
  auto type = recognize_dynkin(c);
  if (!type) fail(ErrorCode::NotFiniteType, "Cartan matrix is not of finite type");
  RootSystem rs{c, std::move(*type), {}, {}};
  const std::size_t n = c.rank();
  for (std::size_t i = 0; i < n; ++i) rs.simple_reflections.push_back(simple_reflection(c, i));
  std::set<RootVector> seen;
  std::vector<RootVector> frontier;
  for (std::size_t i = 0; i < n; ++i) {
    RootVector e(n, 0);
    e[i] = 1;
    seen.insert(e);
    frontier.push_back(e);
  }
  while (!frontier.empty()) {
    std::vector<RootVector> next;
    for (const auto& r : frontier)
      for (const auto& s : rs.simple_reflections) {
        RootVector image = s.apply(r);
        if (is_nonnegative(image) && seen.insert(image).second) next.push_back(std::move(image));
      }
    frontier = std::move(next);
  }
  rs.positive_roots.assign(seen.begin(), seen.end());
  sort_graded(rs.positive_roots);
  return rs;
}

}  // namespace foldclust
