#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "foldclust/cluster.hpp"
#include "foldclust/folding.hpp"
#include "foldclust/group_action.hpp"
#include "foldclust/roots.hpp"

namespace foldclust {

struct ReducedWord {
  std::vector<std::string> letters;
  std::size_t length() const { return letters.size(); }
};

/// Matrix of s_{l1} s_{l2} ... s_{lk} on the root lattice (column vectors).
inline IntMatrix weyl_element(const CartanDatum& c, const std::vector<std::string>& letters) {
  IntMatrix w = IntMatrix::identity(c.rank());
  for (const auto& l : letters) {
    auto i = c.index(l);
    if (!i) fail(ErrorCode::InvalidWord, "letter '" + l + "' is not a generator");
    w = w * simple_reflection(c, *i);
  }
  return w;
}

/// Number of positive roots sent to negative roots.
inline std::size_t weyl_length(const RootSystem& rs, const IntMatrix& w) {
  std::size_t n = 0;
  for (const auto& a : rs.positive_roots)
    if (!is_nonnegative(w.apply(a))) ++n;
  return n;
}

namespace detail {

inline std::vector<std::string> sorted_subset(const CartanDatum& c, const std::vector<std::string>& k) {
  std::vector<std::string> out;
  for (const auto& l : c.labels())
    if (std::find(k.begin(), k.end(), l) != k.end()) out.push_back(l);
  if (out.size() != std::set<std::string>(k.begin(), k.end()).size())
    fail(ErrorCode::UnknownVertex, "subset contains a label outside the Cartan datum");
  return out;
}

// Appends the lowest generator of `allowed` that lengthens w until none does.
inline void greedy_extend(const CartanDatum& c, const std::vector<std::string>& allowed, IntMatrix& w,
                          std::vector<std::string>& letters) {
  for (;;) {
    bool grew = false;
    for (const auto& l : allowed) {
      RootVector e(c.rank(), 0);
      e[*c.index(l)] = 1;
      if (is_nonnegative(w.apply(e))) {
        w = w * simple_reflection(c, *c.index(l));
        letters.push_back(l);
        grew = true;
        break;
      }
    }
    if (!grew) return;
  }
}

}  // namespace detail

/// Reduced word for w0 whose prefix is a reduced word for the longest element
/// of the parabolic subgroup on K.
inline ReducedWord longest_word_with_parabolic_prefix(const CartanDatum& c, const std::vector<std::string>& k) {
  if (!recognize_dynkin(c)) fail(ErrorCode::NotFiniteType, "Cartan matrix is not of finite type");
  const auto parabolic = detail::sorted_subset(c, k);
  IntMatrix w = IntMatrix::identity(c.rank());
  ReducedWord word;
  detail::greedy_extend(c, parabolic, w, word.letters);
  detail::greedy_extend(c, c.labels(), w, word.letters);
  return word;
}

/// Number of positive roots of the parabolic sub-datum on K.
inline std::size_t parabolic_root_count(const CartanDatum& c, const std::vector<std::string>& k) {
  const auto sub = detail::sorted_subset(c, k);
  if (sub.empty()) return 0;
  return positive_roots(c.restrict_to(sub)).size();
}

/// InvalidWord unless the word is reduced for w0 and its first r_K letters
/// form a reduced word in the generators of K.
inline void validate_word(const CartanDatum& c, const ReducedWord& word, const std::vector<std::string>& k) {
  const RootSystem rs = positive_roots(c);
  const IntMatrix w = weyl_element(c, word.letters);
  if (word.length() != rs.size())
    fail(ErrorCode::InvalidWord, "word length " + std::to_string(word.length()) + " differs from the number of positive roots " +
                                     std::to_string(rs.size()));
  if (weyl_length(rs, w) != word.length()) fail(ErrorCode::InvalidWord, "word is not reduced");
  const std::size_t rk = parabolic_root_count(c, k);
  const std::vector<std::string> prefix(word.letters.begin(), word.letters.begin() + static_cast<std::ptrdiff_t>(rk));
  for (const auto& l : prefix)
    if (std::find(k.begin(), k.end(), l) == k.end())
      fail(ErrorCode::InvalidWord, "prefix letter '" + l + "' lies outside K");
  if (weyl_length(rs, weyl_element(c, prefix)) != rk) fail(ErrorCode::InvalidWord, "prefix is not reduced");
}

/// Index data of the construction: positions are 1-based, generator symbols
/// are encoded as 0 (they precede every position), missing successors as
/// SIZE_MAX.
struct BikIndex {
  std::size_t r = 0, r_k = 0;
  std::vector<std::size_t> e;                  // positions with a later repeat
  std::map<std::size_t, std::size_t> next;     // position -> n+
  std::map<std::string, std::size_t> first;    // generator -> j+ (first occurrence)
  std::map<std::string, std::string> t;        // generator -> t_j label
};

inline BikIndex bik_index(const CartanDatum& c, const ReducedWord& word, const std::vector<std::string>& k) {
  BikIndex idx;
  idx.r = word.length();
  idx.r_k = parabolic_root_count(c, k);
  const auto& w = word.letters;
  for (std::size_t n = 1; n <= w.size(); ++n)
    for (std::size_t m = n + 1; m <= w.size(); ++m)
      if (w[m - 1] == w[n - 1]) {
        idx.e.push_back(n);
        idx.next[n] = m;
        break;
      }
  for (const auto& g : c.labels()) {
    auto it = std::find(w.begin(), w.end(), g);
    if (it != w.end()) idx.first[g] = static_cast<std::size_t>(it - w.begin()) + 1;
    if (std::find(k.begin(), k.end(), g) != k.end()) {
      std::size_t t = 0;
      for (std::size_t p = 1; p <= idx.r_k; ++p)
        if (w[p - 1] == g) t = p;
      idx.t[g] = std::to_string(t);
    } else {
      idx.t[g] = g;
    }
  }
  return idx;
}

/// The exchange matrix B((i), K) over the Cartan datum of the folded type.
inline ExchangeMatrix build_bik(const CartanDatum& c, const ReducedWord& word, const std::vector<std::string>& k) {
  validate_word(c, word, k);
  const BikIndex idx = bik_index(c, word, k);
  const auto& w = word.letters;

  // A row is either a position or a generator symbol.
  struct Slot {
    std::size_t pos;  // 0 for a generator
    std::string letter;
  };
  std::vector<Slot> rows, cols;
  std::vector<std::string> row_labels, col_labels;
  for (std::size_t n : idx.e)
    if (n > idx.r_k) {
      cols.push_back({n, w[n - 1]});
      col_labels.push_back(std::to_string(n));
    }
  rows = cols;
  row_labels = col_labels;
  std::vector<std::string> generator_rows;
  for (const auto& g : c.labels()) {
    const std::string& t = idx.t.at(g);
    if (std::find(k.begin(), k.end(), g) == k.end()) {
      rows.push_back({0, g});
      generator_rows.push_back(g);
    } else {
      rows.push_back({static_cast<std::size_t>(std::stoul(t)), g});
    }
    row_labels.push_back(t);
  }
  // Generator symbols that look like positions get a "t_" prefix.
  bool clash = false;
  for (std::size_t r = 0; r < rows.size(); ++r)
    if (rows[r].pos != 0)
      for (const auto& g : generator_rows) clash = clash || row_labels[r] == g;
  if (clash)
    for (std::size_t r = 0; r < rows.size(); ++r)
      if (rows[r].pos == 0) row_labels[r] = "t_" + row_labels[r];

  auto successor = [&](const Slot& s) -> std::size_t {
    if (s.pos == 0) {
      auto it = idx.first.find(s.letter);
      return it == idx.first.end() ? SIZE_MAX : it->second;
    }
    auto it = idx.next.find(s.pos);
    return it == idx.next.end() ? SIZE_MAX : it->second;
  };

  IntMatrix b(rows.size(), cols.size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j) {
      const Slot& m = rows[i];
      const Slot& n = cols[j];
      const std::size_t mp = successor(m), np = successor(n);
      const Int cmn = c.at(*c.index(m.letter), *c.index(n.letter));
      Int v = 0;
      if (mp == n.pos) v = 1;
      else if (np == m.pos) v = -1;
      else if (n.pos < m.pos && m.pos < np && np < mp) v = -cmn;
      else if (m.pos < n.pos && n.pos < mp && mp < np) v = cmn;
      b(i, j) = v;
    }
  return ExchangeMatrix(std::move(row_labels), std::move(col_labels), std::move(b));
}

/// For every column n, the row n- with (n-)+ = n. The selected square block
/// is triangular with unit diagonal, which certifies full column rank.
inline std::optional<std::vector<std::size_t>> unit_triangular_rows(const ExchangeMatrix& bik) {
  const std::size_t n = bik.cols();
  std::vector<std::size_t> chosen;
  for (std::size_t j = 0; j < n; ++j) {
    std::optional<std::size_t> found;
    for (std::size_t r = 0; r < bik.rows(); ++r) {
      if (bik.at(r, j) != 1) continue;
      bool later_zero = true;
      for (std::size_t jj = j + 1; jj < n; ++jj) later_zero = later_zero && bik.at(r, jj) == 0;
      if (later_zero && std::find(chosen.begin(), chosen.end(), r) == chosen.end()) {
        found = r;
        break;
      }
    }
    if (!found) return std::nullopt;
    chosen.push_back(*found);
  }
  return chosen;
}

struct FlagCase {
  CartanDatum folded;
  std::vector<std::string> j_orbits, k_orbits;
  ReducedWord word;
  ExchangeMatrix bik;
  std::optional<DynkinType> cluster_type;
  std::size_t variables = 0;
  std::size_t coefficients = 0;
};

/// Folds C~, builds the word and B((i), K) for K the complement of J, and
/// classifies the principal part. J may name vertices or orbit labels.
inline FlagCase classify_flag_case(const CartanDatum& ct, const VertexGroupAction& action,
                                   const std::vector<std::string>& j, std::size_t budget = 1000000) {
  FlagCase out{fold_cartan(ct, action), {}, {}, {}, {}, std::nullopt, 0, 0};
  if (j.empty()) fail(ErrorCode::UnknownVertex, "J must be nonempty");
  std::set<std::string> chosen;
  for (const auto& label : j) {
    const auto orbit = find_orbit(action, label);
    // A single vertex of a larger orbit is only accepted if the whole orbit is listed.
    if (std::find(orbit.begin(), orbit.end(), label) != orbit.end() && orbit.size() > 1)
      for (const auto& m : orbit)
        if (std::find(j.begin(), j.end(), m) == j.end())
          fail(ErrorCode::NotEquivariant, "J is not stable under the action (missing '" + m + "')");
    chosen.insert(orbit_label(orbit));
  }
  for (const auto& l : out.folded.labels())
    (chosen.count(l) ? out.j_orbits : out.k_orbits).push_back(l);
  out.word = longest_word_with_parabolic_prefix(out.folded, out.k_orbits);
  out.bik = build_bik(out.folded, out.word, out.k_orbits);
  out.cluster_type = is_finite_type(out.bik, budget);
  out.variables = out.word.length() - parabolic_root_count(out.folded, out.k_orbits);
  out.coefficients = out.folded.rank();
  return out;
}

}  // namespace foldclust
