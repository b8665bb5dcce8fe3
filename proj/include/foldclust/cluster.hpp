#pragma once

#include <algorithm>
#include <future>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include "foldclust/canonical.hpp"
#include "foldclust/dynkin.hpp"
#include "foldclust/laurent.hpp"
#include "foldclust/linalg.hpp"
#include "foldclust/matrix.hpp"
#include "foldclust/mutation.hpp"

namespace foldclust {

/// Exchange matrix with a cluster of Laurent polynomials in the initial
/// variables. Variables are numbered: mutable columns first (column order),
/// then frozen rows (row order).
struct Seed {
  ExchangeMatrix matrix;
  std::vector<LaurentPoly> cluster;       // one per column
  std::vector<LaurentPoly> coefficients;  // one per frozen row
  std::vector<std::string> variable_names;

  std::size_t nvars() const { return variable_names.size(); }
};

inline Seed initial_seed(const ExchangeMatrix& b) {
  Seed s{b, {}, {}, {}};
  for (const auto& c : b.col_labels()) s.variable_names.push_back(c);
  for (const auto& f : b.frozen_labels()) s.variable_names.push_back(f);
  const std::size_t n = s.variable_names.size();
  for (std::size_t c = 0; c < b.cols(); ++c) s.cluster.push_back(LaurentPoly::variable(n, c));
  for (std::size_t f = 0; f < n - b.cols(); ++f) s.coefficients.push_back(LaurentPoly::variable(n, b.cols() + f));
  return s;
}

namespace detail {

// Current value attached to each row: a cluster variable or a coefficient.
inline std::vector<const LaurentPoly*> row_values(const Seed& s) {
  std::vector<const LaurentPoly*> out(s.matrix.rows(), nullptr);
  for (std::size_t c = 0; c < s.matrix.cols(); ++c) out[s.matrix.col_row(c)] = &s.cluster[c];
  std::size_t f = 0;
  for (std::size_t r = 0; r < s.matrix.rows(); ++r)
    if (!out[r]) out[r] = &s.coefficients[f++];
  return out;
}

}  // namespace detail

/// Seed mutation: x_k' = (prod_{b_zk > 0} v_z^{b_zk} + prod_{b_zk < 0} v_z^{-b_zk}) / x_k.
inline Seed mutate_seed(const Seed& s, const std::string& k) {
  const std::size_t c = detail::require_mutable(s.matrix, k);
  const auto values = detail::row_values(s);
  LaurentPoly plus = LaurentPoly::constant(s.nvars(), 1), minus = plus;
  for (std::size_t z = 0; z < s.matrix.rows(); ++z) {
    const Int b = s.matrix.at(z, c);
    if (b > 0) plus = plus * values[z]->pow(b);
    else if (b < 0) minus = minus * values[z]->pow(-b);
  }
  Seed out = s;
  out.cluster[c] = (plus + minus).divide_exact(s.cluster[c]);
  out.matrix = mutate(s.matrix, k);
  return out;
}

/// Seeds are unordered clusters: sort the variables, permute the matrix
/// columns and matching rows, and serialize both.
inline std::string seed_key(const Seed& s) {
  const std::size_t n = s.matrix.cols();
  std::vector<std::string> ser(n);
  for (std::size_t c = 0; c < n; ++c) ser[c] = s.cluster[c].serialize();
  auto column = [&](std::size_t c) {
    std::vector<Int> v;
    for (std::size_t r = 0; r < s.matrix.rows(); ++r) v.push_back(s.matrix.at(r, c));
    return v;
  };
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (ser[a] != ser[b]) return ser[a] < ser[b];
    return column(a) < column(b);
  });
  std::vector<std::size_t> rows;
  for (auto c : order) rows.push_back(s.matrix.col_row(c));
  for (std::size_t r = 0; r < s.matrix.rows(); ++r)
    if (s.matrix.is_frozen_row(r)) rows.push_back(r);
  std::string key;
  for (auto c : order) key += ser[c] + ";";
  key += "|";
  for (auto r : rows) {
    for (auto c : order) key += std::to_string(s.matrix.at(r, c)) + ",";
    key += ";";
  }
  return key;
}

/// Short stable digest of a seed key (FNV-1a, 64 bit, hex).
inline std::string key_digest(const std::string& key) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char ch : key) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  static const char* hex = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i, h >>= 4) out[i] = hex[h & 15];
  return out;
}

struct ExploreLimits {
  std::size_t max_seeds = 10000;
  Int max_var_degree = 1000;
  unsigned jobs = 1;
};

struct ExchangeEdge {
  std::size_t from;
  std::string label;
  std::size_t to;
};

struct ExchangeGraph {
  std::vector<Seed> seeds;
  std::vector<std::string> keys;
  std::vector<ExchangeEdge> edges;
  std::vector<LaurentPoly> variables;  // distinct cluster variables in discovery order
  bool truncated = false;

  std::size_t degree(std::size_t node) const {
    return static_cast<std::size_t>(std::count_if(edges.begin(), edges.end(), [&](const auto& e) { return e.from == node; }));
  }
};

/// Breadth-first closure under seed mutation.
inline ExchangeGraph explore(const ExchangeMatrix& b, const ExploreLimits& limits = {}) {
  ExchangeGraph g;
  std::map<std::string, std::size_t> index;
  std::set<std::string> variable_keys;
  auto note_variables = [&](const Seed& s) {
    for (const auto& v : s.cluster)
      if (variable_keys.insert(v.serialize()).second) g.variables.push_back(v);
  };
  Seed start = initial_seed(b);
  g.keys.push_back(seed_key(start));
  index[g.keys.back()] = 0;
  note_variables(start);
  g.seeds.push_back(std::move(start));

  std::vector<std::size_t> frontier{0};
  const auto& labels = b.col_labels();
  const unsigned jobs = std::max(1u, limits.jobs);
  while (!frontier.empty()) {
    // Mutate every (node, label) pair of this level, possibly in parallel;
    // merging happens below in a fixed order.
    std::vector<std::pair<std::size_t, std::size_t>> work;
    for (auto node : frontier)
      for (std::size_t k = 0; k < labels.size(); ++k) work.emplace_back(node, k);
    std::vector<Seed> results(work.size());
    auto run = [&](std::size_t begin, std::size_t end) {
      for (std::size_t w = begin; w < end; ++w) results[w] = mutate_seed(g.seeds[work[w].first], labels[work[w].second]);
    };
    if (jobs == 1 || work.size() < 2) {
      run(0, work.size());
    } else {
      std::vector<std::future<void>> tasks;
      const std::size_t chunk = (work.size() + jobs - 1) / jobs;
      for (std::size_t begin = 0; begin < work.size(); begin += chunk)
        tasks.push_back(std::async(std::launch::async, run, begin, std::min(work.size(), begin + chunk)));
      for (auto& t : tasks) t.get();
    }
    std::vector<std::size_t> next;
    for (std::size_t w = 0; w < work.size(); ++w) {
      Seed& s = results[w];
      std::string key = seed_key(s);
      auto it = index.find(key);
      std::size_t target;
      if (it != index.end()) {
        target = it->second;
      } else {
        bool too_deep = false;
        for (const auto& v : s.cluster) too_deep = too_deep || v.degree() > limits.max_var_degree;
        if (too_deep || g.seeds.size() >= limits.max_seeds) {
          g.truncated = true;
          continue;
        }
        target = g.seeds.size();
        index[key] = target;
        g.keys.push_back(std::move(key));
        note_variables(s);
        g.seeds.push_back(std::move(s));
        next.push_back(target);
      }
      g.edges.push_back({work[w].first, labels[work[w].second], target});
    }
    frontier = std::move(next);
  }
  return g;
}

/// Finite type of the principal part, searched over its mutation class up to
/// simultaneous relabeling. Absent as soon as some member has |b_ij b_ji| >= 4,
/// or when the class closes without a member of Dynkin shape.
inline std::optional<DynkinType> is_finite_type(const ExchangeMatrix& b, std::size_t budget = 1000000) {
  const ExchangeMatrix principal = b.principal_matrix();
  if (principal.cols() == 0) return DynkinType{};
  std::set<IntMatrix> seen;
  std::vector<IntMatrix> members;
  auto infinite_entry = [](const IntMatrix& m) {
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = i + 1; j < m.rows(); ++j)
        if (checked_abs(checked_mul(m(i, j), m(j, i))) >= 4) return true;
    return false;
  };
  const IntMatrix first = canonical_form(principal.entries());
  if (infinite_entry(first)) return std::nullopt;
  seen.insert(first);
  members.push_back(first);
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < first.rows(); ++i) labels.push_back(std::to_string(i));
  for (std::size_t cursor = 0; cursor < members.size(); ++cursor) {
    const ExchangeMatrix current = ExchangeMatrix::square(labels, members[cursor]);
    for (const auto& k : labels) {
      IntMatrix next = canonical_form(mutate(current, k).entries());
      if (seen.count(next)) continue;
      if (infinite_entry(next)) return std::nullopt;
      if (seen.size() >= budget) fail(ErrorCode::SearchBudgetExceeded, "mutation class exceeds search budget");
      seen.insert(next);
      members.push_back(std::move(next));
    }
  }
  for (const auto& m : members)
    if (auto t = recognize_dynkin(cartan_counterpart(ExchangeMatrix::square(labels, m)))) return t;
  // Mutation-finite but without a Dynkin member (affine and similar classes).
  return std::nullopt;
}

/// Products of variables from a single cluster (coefficients included) of
/// total degree at most max_total_degree, deduplicated, sorted.
inline std::vector<LaurentPoly> cluster_monomials(const ExchangeGraph& g, int max_total_degree) {
  if (g.truncated) fail(ErrorCode::GraphTruncated, "exchange graph is truncated");
  std::map<std::string, LaurentPoly> found;
  for (const auto& s : g.seeds) {
    std::vector<LaurentPoly> vars = s.cluster;
    vars.insert(vars.end(), s.coefficients.begin(), s.coefficients.end());
    const std::size_t nv = s.nvars();
    // Depth-first over nondecreasing variable indices.
    std::vector<std::pair<std::size_t, LaurentPoly>> stack{{0, LaurentPoly::constant(nv, 1)}};
    std::vector<int> depth{0};
    while (!stack.empty()) {
      auto [from, poly] = stack.back();
      const int d = depth.back();
      stack.pop_back();
      depth.pop_back();
      found.emplace(poly.serialize(), poly);
      if (d == max_total_degree) continue;
      for (std::size_t i = from; i < vars.size(); ++i) {
        stack.emplace_back(i, poly * vars[i]);
        depth.push_back(d + 1);
      }
    }
  }
  std::vector<LaurentPoly> out;
  for (auto& [k, p] : found) out.push_back(std::move(p));
  return out;
}

/// Exact rank of the coefficient matrix over the joint monomial support.
inline std::size_t laurent_rank(const std::vector<LaurentPoly>& polys) {
  std::map<Exponent, std::size_t> support;
  for (const auto& p : polys)
    for (const auto& [e, c] : p.terms()) support.emplace(e, 0);
  std::size_t col = 0;
  for (auto& [e, i] : support) i = col++;
  std::vector<std::vector<Rational>> rows(polys.size(), std::vector<Rational>(support.size()));
  for (std::size_t r = 0; r < polys.size(); ++r)
    for (const auto& [e, c] : polys[r].terms()) rows[r][support.at(e)] = c;
  return rational_rank(std::move(rows));
}

inline bool check_linear_independence(const std::vector<LaurentPoly>& polys) {
  return laurent_rank(polys) == polys.size();
}

/// Cluster variables of a graph with every frozen variable set to 1,
/// deduplicated in discovery order.
inline std::vector<LaurentPoly> specialize_coefficients(const ExchangeGraph& g) {
  if (g.seeds.empty()) return {};
  const Seed& s = g.seeds.front();
  std::vector<std::size_t> frozen;
  for (std::size_t v = s.matrix.cols(); v < s.nvars(); ++v) frozen.push_back(v);
  std::vector<LaurentPoly> out;
  std::set<std::string> seen;
  for (const auto& v : g.variables) {
    LaurentPoly p = v.specialize_to_one(frozen);
    if (seen.insert(p.serialize()).second) out.push_back(std::move(p));
  }
  return out;
}

}  // namespace foldclust
