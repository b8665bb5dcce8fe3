#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "foldclust/character_table.hpp"
#include "foldclust/dynkin.hpp"
#include "foldclust/group_action.hpp"
#include "foldclust/matrix.hpp"

namespace foldclust {

struct Arrow {
  std::string from;
  std::string to;
  Int mult = 1;

  friend bool operator==(const Arrow&, const Arrow&) = default;
};

/// Finite quiver; parallel arrows are merged into one multiplicity and
/// arrows are kept in (source, target) vertex order.
class Quiver {
 public:
  Quiver() = default;
  Quiver(std::vector<std::string> vertices, const std::vector<Arrow>& arrows) : vertices_(std::move(vertices)) {
    detail::require_distinct(vertices_, "quiver vertex");
    for (std::size_t i = 0; i < vertices_.size(); ++i) index_[vertices_[i]] = i;
    for (const auto& a : arrows) {
      if (a.mult < 1) fail(ErrorCode::MalformedMatrix, "arrow multiplicity must be positive");
      auto& slot = mult_[{require(a.from), require(a.to)}];
      slot = checked_add(slot, a.mult);
    }
  }

  /// Quiver of a square skew-symmetric matrix: b_zx > 0 gives b_zx arrows z -> x.
  static Quiver from_matrix(const std::vector<std::string>& labels, const IntMatrix& b) {
    std::vector<Arrow> arrows;
    for (std::size_t z = 0; z < b.rows(); ++z)
      for (std::size_t x = 0; x < b.cols(); ++x)
        if (b(z, x) > 0) arrows.push_back({labels[z], labels[x], b(z, x)});
    return Quiver(labels, arrows);
  }

  const std::vector<std::string>& vertices() const { return vertices_; }
  std::size_t size() const { return vertices_.size(); }

  std::vector<Arrow> arrows() const {
    std::vector<Arrow> out;
    for (const auto& [st, m] : mult_) out.push_back({vertices_[st.first], vertices_[st.second], m});
    return out;
  }

  Int multiplicity(std::size_t from, std::size_t to) const {
    auto it = mult_.find({from, to});
    return it == mult_.end() ? 0 : it->second;
  }

  std::optional<std::size_t> index(const std::string& v) const {
    auto it = index_.find(v);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  /// a_ij = number of arrows i -> j.
  IntMatrix adjacency() const {
    IntMatrix a(size(), size());
    for (const auto& [st, m] : mult_) a(st.first, st.second) = m;
    return a;
  }

  /// b_zx = #(z -> x) - #(x -> z).
  IntMatrix exchange_entries() const {
    const IntMatrix a = adjacency();
    IntMatrix b(size(), size());
    for (std::size_t z = 0; z < size(); ++z)
      for (std::size_t x = 0; x < size(); ++x) b(z, x) = checked_sub(a(z, x), a(x, z));
    return b;
  }

  ExchangeMatrix exchange_matrix() const { return ExchangeMatrix::square(vertices_, exchange_entries()); }

  friend bool operator==(const Quiver& a, const Quiver& b) {
    return a.vertices_ == b.vertices_ && a.mult_ == b.mult_;
  }

 private:
  std::size_t require(const std::string& v) const {
    auto it = index_.find(v);
    if (it == index_.end()) fail(ErrorCode::UnknownVertex, "arrow endpoint '" + v + "' is not a vertex");
    return it->second;
  }

  std::vector<std::string> vertices_;
  std::map<std::string, std::size_t> index_;
  std::map<std::pair<std::size_t, std::size_t>, Int> mult_;
};

inline Quiver double_quiver(const Quiver& q) {
  std::vector<Arrow> arrows;
  for (const auto& a : q.arrows()) {
    arrows.push_back(a);
    arrows.push_back({a.to, a.from, a.mult});
  }
  return Quiver(q.vertices(), arrows);
}

/// Symmetric matrix of edge counts, ignoring orientation.
inline IntMatrix underlying_graph(const Quiver& q) {
  const IntMatrix a = q.adjacency();
  IntMatrix g(q.size(), q.size());
  for (std::size_t i = 0; i < q.size(); ++i)
    for (std::size_t j = 0; j < q.size(); ++j)
      if (i != j) g(i, j) = checked_add(a(i, j), a(j, i));
  return g;
}

/// Vertex bijection a -> b preserving arrow multiplicities and colours.
inline std::optional<std::vector<std::size_t>> find_quiver_isomorphism(const Quiver& a, const std::vector<std::string>& color_a,
                                                                      const Quiver& b, const std::vector<std::string>& color_b) {
  if (a.size() != b.size()) return std::nullopt;
  // Colours ride on the diagonal, above any loop count.
  std::map<std::string, Int> ids;
  for (const auto& c : color_a) ids.emplace(c, 0);
  for (const auto& c : color_b) ids.emplace(c, 0);
  Int next = 1;
  for (auto& [c, id] : ids) id = next++;
  IntMatrix ma = a.adjacency(), mb = b.adjacency();
  const Int scale = 1 << 20;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ma(i, i) = checked_add(ma(i, i), checked_mul(scale, ids[color_a[i]]));
    mb(i, i) = checked_add(mb(i, i), checked_mul(scale, ids[color_b[i]]));
  }
  return detail::match_matrices(ma, mb);
}

inline bool graphs_isomorphic(const IntMatrix& a, const IntMatrix& b) { return detail::match_matrices(a, b).has_value(); }

/// Equivariance (arrow counts preserved by every element) and admissibility
/// (no arrows between vertices of one orbit).
inline AdmissibilityReport validate_admissible(const Quiver& q, const VertexGroupAction& action) {
  AdmissibilityReport report;
  if (std::set<std::string>(q.vertices().begin(), q.vertices().end()) !=
          std::set<std::string>(action.vertex_labels().begin(), action.vertex_labels().end()) ||
      q.size() != action.degree())
    fail(ErrorCode::LabelMismatch, "quiver vertices and action vertices differ");
  std::vector<std::size_t> to_action, to_quiver(q.size());
  for (std::size_t i = 0; i < q.size(); ++i) {
    to_action.push_back(action.require_vertex(q.vertices()[i]));
    to_quiver[to_action.back()] = i;
  }
  for (const auto& g : action.elements())
    for (std::size_t i = 0; i < q.size() && report.equivariant; ++i)
      for (std::size_t j = 0; j < q.size(); ++j) {
        const std::size_t gi = to_quiver[g[to_action[i]]], gj = to_quiver[g[to_action[j]]];
        if (q.multiplicity(gi, gj) != q.multiplicity(i, j)) {
          report.equivariant = false;
          report.counterexample = "arrows " + q.vertices()[i] + "->" + q.vertices()[j] + " and " + q.vertices()[gi] + "->" +
                                  q.vertices()[gj] + " differ";
          break;
        }
      }
  const auto id = action.orbit_ids();
  for (std::size_t i = 0; i < q.size() && report.admissible; ++i)
    for (std::size_t j = 0; j < q.size(); ++j)
      if (id[to_action[i]] == id[to_action[j]] && q.multiplicity(i, j) != 0) {
        report.admissible = false;
        if (report.counterexample.empty())
          report.counterexample = "arrow " + q.vertices()[i] + "->" + q.vertices()[j] + " inside an orbit";
        break;
      }
  return report;
}

/// How F_ij representatives and the elements kappa are picked.
enum class QGammaChoice { Least, Greatest };

struct EquivariantQuiver {
  Quiver quiver;
  std::vector<std::string> representative;  // per vertex: orbit representative
  std::vector<std::size_t> character;       // per vertex: index into the stabilizer's table
  std::vector<Int> degree;                  // per vertex: character degree

  std::vector<std::string> fibers() const {
    std::vector<std::string> out;
    for (std::size_t v = 0; v < representative.size(); ++v)
      out.push_back(representative[v] + "|" + std::to_string(degree[v]));
    return out;
  }
};

/// The quiver Q_Gamma: vertices (i, rho) for orbit representatives i and
/// irreducible characters rho of the stabilizer; arrow counts are
/// dimensions of stabilizer-equivariant Hom spaces, by character inner products.
inline EquivariantQuiver build_q_gamma(const Quiver& q, const VertexGroupAction& action,
                                       const std::vector<UserCharacterTable>& user_tables = {},
                                       QGammaChoice choice = QGammaChoice::Least) {
  const auto report = validate_admissible(q, action);
  if (!report.equivariant) fail(ErrorCode::NotEquivariant, report.counterexample);
  if (!report.admissible) fail(ErrorCode::NotAdmissible, report.counterexample);

  const auto& labels = action.vertex_labels();
  auto qidx = [&](std::size_t v) { return *q.index(labels[v]); };
  const OrbitPartition part = orbits(action);

  struct Block {
    std::size_t rep;  // action vertex index
    CharacterTable table;
    std::size_t first_vertex;
  };
  std::vector<Block> blocks;
  EquivariantQuiver out;
  std::vector<std::string> vertices;
  for (std::size_t o = 0; o < part.size(); ++o) {
    const std::string& rep = part.representative.at(o);
    Block b{action.require_vertex(rep), character_table(stabilizer(action, rep), user_tables), vertices.size()};
    for (std::size_t k = 0; k < b.table.size(); ++k) {
      vertices.push_back(b.table.size() == 1 ? rep : rep + "_" + std::to_string(k));
      out.representative.push_back(rep);
      out.character.push_back(k);
      out.degree.push_back(b.table.degree(k));
    }
    blocks.push_back(std::move(b));
  }

  const auto& elems = action.elements();
  // kappa_v: chosen element sending the representative of v's orbit to v.
  auto kappa = [&](std::size_t rep, std::size_t v) -> const Permutation& {
    const Permutation* found = nullptr;
    for (const auto& g : elems)
      if (g[rep] == v) {
        found = &g;
        if (choice == QGammaChoice::Least) break;
      }
    return *found;
  };
  auto orbit_of = [&](std::size_t v) {
    std::set<std::size_t> o;
    for (const auto& g : elems) o.insert(g[v]);
    return o;
  };

  std::vector<Arrow> arrows;
  for (const auto& bi : blocks)
    for (const auto& bj : blocks) {
      // Gamma-orbits on O_i x O_j, each represented by its least or greatest
      // pair in label order.
      std::vector<std::pair<std::size_t, std::size_t>> reps;
      std::set<std::pair<std::size_t, std::size_t>> covered;
      std::vector<std::pair<std::size_t, std::size_t>> pairs;
      for (auto a : orbit_of(bi.rep))
        for (auto b : orbit_of(bj.rep)) pairs.emplace_back(a, b);
      std::sort(pairs.begin(), pairs.end(), [&](const auto& x, const auto& y) {
        return std::pair{labels[x.first], labels[x.second]} < std::pair{labels[y.first], labels[y.second]};
      });
      if (choice == QGammaChoice::Greatest) std::reverse(pairs.begin(), pairs.end());
      for (const auto& p : pairs) {
        if (covered.count(p)) continue;
        reps.push_back(p);
        for (const auto& g : elems) covered.emplace(g[p.first], g[p.second]);
      }

      std::vector<std::vector<Cyclotomic>> total(bi.table.size(), std::vector<Cyclotomic>(bj.table.size()));
      for (const auto& [ip, jp] : reps) {
        const Int m = q.multiplicity(qidx(ip), qidx(jp));
        if (m == 0) continue;
        const Permutation& ki = kappa(bi.rep, ip);
        const Permutation& kj = kappa(bj.rep, jp);
        const Permutation ki_inv = inverse(ki), kj_inv = inverse(kj);
        std::vector<Permutation> h;
        for (const auto& g : elems)
          if (g[ip] == ip && g[jp] == jp) h.push_back(g);
        const Int order = static_cast<Int>(h.size());
        for (std::size_t r = 0; r < bi.table.size(); ++r)
          for (std::size_t s = 0; s < bj.table.size(); ++s) {
            Cyclotomic sum;
            for (const auto& g : h) {
              const Cyclotomic left = bi.table.value(r, compose(compose(ki_inv, g), ki));
              const Cyclotomic right = bj.table.value(s, compose(compose(kj_inv, g), kj));
              sum += left.conj() * Cyclotomic(m) * right;
            }
            const Int value = sum.integer_value();
            if (value % order != 0) fail(ErrorCode::InvalidCharacterTable, "arrow count is not an integer");
            total[r][s] += Cyclotomic(value / order);
          }
      }
      for (std::size_t r = 0; r < bi.table.size(); ++r)
        for (std::size_t s = 0; s < bj.table.size(); ++s) {
          const Int value = total[r][s].integer_value();
          if (value < 0) fail(ErrorCode::InvalidCharacterTable, "negative arrow count");
          if (value > 0) arrows.push_back({vertices[bi.first_vertex + r], vertices[bj.first_vertex + s], value});
        }
    }
  out.quiver = Quiver(std::move(vertices), arrows);
  return out;
}

/// Whether (Q-bar)_Gamma is isomorphic to the double of Q_Gamma, by a
/// bijection respecting (representative, character degree) fibers.
inline bool check_double_commutes(const Quiver& q, const VertexGroupAction& action,
                                  const std::vector<UserCharacterTable>& user_tables = {}) {
  const EquivariantQuiver lhs = build_q_gamma(double_quiver(q), action, user_tables);
  const EquivariantQuiver one_sided = build_q_gamma(q, action, user_tables);
  const Quiver rhs = double_quiver(one_sided.quiver);
  return find_quiver_isomorphism(lhs.quiver, lhs.fibers(), rhs, one_sided.fibers()).has_value();
}

/// Exchange matrix of the slices 0..s of the quiver N Q^op with the arrows
/// (n, i) -> (n+1, i) added; the top slice is frozen.
inline ExchangeMatrix ntheta_matrix(const Quiver& q, std::size_t slices = 1) {
  if (slices < 1) fail(ErrorCode::MalformedMatrix, "at least one slice above the base is required");
  if (!is_acyclic(q.adjacency())) fail(ErrorCode::NotAcyclic, "quiver has a directed cycle");
  auto name = [](std::size_t n, const std::string& v) { return "(" + std::to_string(n) + "," + v + ")"; };
  std::vector<std::string> vertices, cols;
  for (std::size_t n = 0; n <= slices; ++n)
    for (const auto& v : q.vertices()) {
      vertices.push_back(name(n, v));
      if (n < slices) cols.push_back(name(n, v));
    }
  std::vector<Arrow> arrows;
  for (std::size_t n = 0; n <= slices; ++n) {
    for (const auto& a : q.arrows()) {
      arrows.push_back({name(n, a.to), name(n, a.from), a.mult});
      if (n + 1 <= slices) arrows.push_back({name(n + 1, a.from), name(n, a.to), a.mult});
    }
    if (n + 1 <= slices)
      for (const auto& v : q.vertices()) arrows.push_back({name(n, v), name(n + 1, v), 1});
  }
  const Quiver theta(vertices, arrows);
  const IntMatrix b = theta.exchange_entries();
  IntMatrix entries(vertices.size(), cols.size());
  for (std::size_t r = 0; r < vertices.size(); ++r)
    for (std::size_t c = 0; c < cols.size(); ++c) entries(r, c) = b(r, c);
  return ExchangeMatrix(std::move(vertices), std::move(cols), std::move(entries));
}

}  // namespace foldclust
