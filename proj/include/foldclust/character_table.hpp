#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "foldclust/cyclotomic.hpp"
#include "foldclust/group_action.hpp"

namespace foldclust {

/// Irreducible characters of a finite permutation group, one value per
/// element (elements in the group's sorted order).
struct CharacterTable {
  std::vector<Permutation> elements;
  std::vector<std::vector<std::size_t>> classes;
  std::vector<std::vector<Cyclotomic>> characters;
  Int exponent = 1;

  std::size_t size() const { return characters.size(); }

  std::size_t index_of(const Permutation& g) const {
    auto it = std::lower_bound(elements.begin(), elements.end(), g);
    if (it == elements.end() || *it != g) fail(ErrorCode::UnsupportedGroup, "element outside the character table's group");
    return static_cast<std::size_t>(it - elements.begin());
  }
  const Cyclotomic& value(std::size_t k, const Permutation& g) const { return characters[k][index_of(g)]; }
  Int degree(std::size_t k) const { return characters[k][0].integer_value(); }
};

/// A character table supplied by the user: group elements as label maps over
/// `vertices`, values per element.
struct UserCharacterTable {
  std::vector<std::string> vertices;
  std::vector<LabelMap> elements;
  std::vector<std::vector<Cyclotomic>> characters;
};

inline std::vector<std::vector<std::size_t>> conjugacy_classes(const std::vector<Permutation>& elements) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<bool> seen(elements.size(), false);
  for (std::size_t i = 0; i < elements.size(); ++i) {
    if (seen[i]) continue;
    std::set<std::size_t> cls;
    for (const auto& g : elements) {
      const Permutation c = compose(compose(g, elements[i]), inverse(g));
      const auto it = std::lower_bound(elements.begin(), elements.end(), c);
      cls.insert(static_cast<std::size_t>(it - elements.begin()));
    }
    for (auto c : cls) seen[c] = true;
    out.emplace_back(cls.begin(), cls.end());
  }
  return out;
}

/// Exact first orthogonality: <chi_a, chi_b> = delta_ab, and as many
/// characters as classes.
inline bool verify_orthogonality(const CharacterTable& t) {
  if (t.characters.size() != t.classes.size()) return false;
  const Int order = static_cast<Int>(t.elements.size());
  for (std::size_t a = 0; a < t.size(); ++a)
    for (std::size_t b = 0; b < t.size(); ++b) {
      if (t.characters[a].size() != t.elements.size()) return false;
      Cyclotomic sum;
      for (std::size_t g = 0; g < t.elements.size(); ++g) sum += t.characters[a][g] * t.characters[b][g].conj();
      if (!(sum == Cyclotomic(a == b ? order : 0))) return false;
    }
  return true;
}

namespace detail {

inline bool is_abelian(const std::vector<Permutation>& elements) {
  for (const auto& a : elements)
    for (const auto& b : elements)
      if (compose(a, b) != compose(b, a)) return false;
  return true;
}

inline std::vector<Permutation> closure(const std::vector<Permutation>& gens, std::size_t degree) {
  std::set<Permutation> seen{identity_permutation(degree)};
  std::vector<Permutation> frontier(seen.begin(), seen.end());
  while (!frontier.empty()) {
    std::vector<Permutation> next;
    for (const auto& x : frontier)
      for (const auto& g : gens) {
        Permutation y = compose(g, x);
        if (seen.insert(y).second) next.push_back(std::move(y));
      }
    frontier = std::move(next);
  }
  return {seen.begin(), seen.end()};
}

// Characters of an abelian group are homomorphisms to roots of unity; try
// every exponent assignment on a generating set and keep the consistent ones.
inline CharacterTable abelian_table(const std::vector<Permutation>& elements) {
  CharacterTable t;
  t.elements = elements;
  t.classes = conjugacy_classes(elements);
  const std::size_t degree = elements.front().size();
  std::vector<Permutation> gens;
  std::set<Permutation> span{elements.front()};
  for (const auto& e : elements)
    if (!span.count(e)) {
      gens.push_back(e);
      const auto c = closure(gens, degree);
      span = std::set<Permutation>(c.begin(), c.end());
    }
  for (const auto& e : elements) t.exponent = lcm(t.exponent, static_cast<Int>(permutation_order(e)));
  const Int n = t.exponent;
  std::vector<Int> orders;
  for (const auto& g : gens) orders.push_back(static_cast<Int>(permutation_order(g)));

  std::vector<Int> choice(gens.size(), 0);
  for (;;) {
    std::vector<Int> exp(elements.size(), -1);
    exp[0] = 0;
    std::vector<std::size_t> queue{0};
    bool consistent = true;
    for (std::size_t q = 0; q < queue.size() && consistent; ++q) {
      const std::size_t x = queue[q];
      for (std::size_t k = 0; k < gens.size() && consistent; ++k) {
        const std::size_t y = t.index_of(compose(gens[k], elements[x]));
        const Int v = (exp[x] + choice[k] * (n / orders[k])) % n;
        if (exp[y] < 0) {
          exp[y] = v;
          queue.push_back(y);
        } else if (exp[y] != v) {
          consistent = false;
        }
      }
    }
    if (consistent) {
      std::vector<Cyclotomic> row;
      for (Int e : exp) row.push_back(Cyclotomic::root_of_unity(n, e));
      t.characters.push_back(std::move(row));
    }
    std::size_t k = 0;
    while (k < choice.size() && ++choice[k] == orders[k]) choice[k++] = 0;
    if (k == choice.size()) break;
  }
  return t;
}

// The only nonabelian group of order 6; character values depend on the
// element order alone.
inline CharacterTable s3_table(const std::vector<Permutation>& elements) {
  CharacterTable t;
  t.elements = elements;
  t.classes = conjugacy_classes(elements);
  t.exponent = 6;
  const std::map<std::size_t, std::vector<Int>> by_order{{1, {1, 1, 2}}, {2, {1, -1, 0}}, {3, {1, 1, -1}}};
  t.characters.assign(3, {});
  for (const auto& e : elements) {
    const auto& v = by_order.at(permutation_order(e));
    for (std::size_t k = 0; k < 3; ++k) t.characters[k].push_back(Cyclotomic(v[k]));
  }
  return t;
}

inline std::optional<CharacterTable> from_user(const VertexGroupAction& h, const UserCharacterTable& user) {
  if (std::set<std::string>(user.vertices.begin(), user.vertices.end()) !=
      std::set<std::string>(h.vertex_labels().begin(), h.vertex_labels().end()))
    return std::nullopt;
  std::vector<Permutation> perms;
  for (const auto& m : user.elements) perms.push_back(permutation_from_map(h.vertex_labels(), m));
  if (std::set<Permutation>(perms.begin(), perms.end()) !=
      std::set<Permutation>(h.elements().begin(), h.elements().end()) ||
      perms.size() != h.order())
    return std::nullopt;
  CharacterTable t;
  t.elements = h.elements();
  t.classes = conjugacy_classes(t.elements);
  for (const auto& e : t.elements) t.exponent = lcm(t.exponent, static_cast<Int>(permutation_order(e)));
  for (const auto& row : user.characters) {
    if (row.size() != perms.size()) fail(ErrorCode::InvalidCharacterTable, "character row length differs from group order");
    std::vector<Cyclotomic> ordered(perms.size());
    for (std::size_t i = 0; i < perms.size(); ++i) ordered[t.index_of(perms[i])] = row[i];
    t.characters.push_back(std::move(ordered));
  }
  if (!verify_orthogonality(t)) fail(ErrorCode::InvalidCharacterTable, "user character table fails orthogonality");
  return t;
}

}  // namespace detail

/// Character table of a group: abelian groups generically, S3 bundled, any
/// other group only from a matching user table.
inline CharacterTable character_table(const VertexGroupAction& h, const std::vector<UserCharacterTable>& user = {}) {
  for (const auto& u : user)
    if (auto t = detail::from_user(h, u)) return *t;
  CharacterTable t;
  if (detail::is_abelian(h.elements())) t = detail::abelian_table(h.elements());
  else if (h.order() == 6) t = detail::s3_table(h.elements());
  else fail(ErrorCode::UnsupportedGroup, "no character table for a nonabelian group of order " + std::to_string(h.order()));
  if (!verify_orthogonality(t)) fail(ErrorCode::InvalidCharacterTable, "computed character table fails orthogonality");
  return t;
}

}  // namespace foldclust
