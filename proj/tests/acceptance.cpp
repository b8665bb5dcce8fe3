// Acceptance checks: one line per criterion, non-zero exit on any failure.
#include <chrono>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>
#include <string>

#include "foldclust.hpp"
#include "oracles.hpp"

using namespace foldclust;

namespace {

struct Outcome {
  bool ok = true;
  std::string note;
  void expect(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      if (note.size() < 400) note += (note.empty() ? "" : "; ") + what;
    }
  }
};

int failures = 0;

void criterion(int n, const std::string& name, double limit_s, const std::function<void(Outcome&)>& body) {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    body(o);
  } catch (const std::exception& e) {
    o.expect(false, std::string("exception: ") + e.what());
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (limit_s > 0 && secs >= limit_s) o.expect(false, "over time limit " + std::to_string(limit_s) + " s");
  if (!o.ok) ++failures;
  std::printf("[%s] %d. %s (%.3f s)%s%s\n", o.ok ? "PASS" : "FAIL", n, name.c_str(), secs, o.note.empty() ? "" : " ",
              o.note.c_str());
  std::fflush(stdout);
}

ExchangeMatrix orient(const CartanDatum& c) {
  IntMatrix m(c.rank(), c.rank());
  for (std::size_t i = 0; i < c.rank(); ++i)
    for (std::size_t j = i + 1; j < c.rank(); ++j) {
      m(i, j) = -c.at(i, j);
      m(j, i) = c.at(j, i);
    }
  return ExchangeMatrix::square(c.labels(), m);
}

CartanDatum type_a(std::vector<std::string> labels) {
  const auto base = canonical_cartan_datum('A', static_cast<int>(labels.size()));
  return CartanDatum(std::move(labels), base.entries());
}

struct Fixture {
  std::string name;
  Quiver quiver;
  std::vector<LabelMap> generators;
  char family;  // expected underlying graph of Q_Gamma
  int rank;
};

std::vector<Fixture> fixtures() {
  const LabelMap swap_ab{{"a", "a'"}, {"a'", "a"}, {"b", "b'"}, {"b'", "b"}};
  return {
      {"A3/Z2", Quiver({"a", "b", "a'"}, {{"a", "b"}, {"a'", "b"}}), {{{"a", "a'"}, {"a'", "a"}}}, 'A', 3},
      {"A5/Z2", Quiver({"a", "b", "c", "b'", "a'"}, {{"a", "b"}, {"b", "c"}, {"a'", "b'"}, {"b'", "c"}}), {swap_ab}, 'D', 4},
      {"D4/Z2", Quiver({"1", "2", "3", "4"}, {{"1", "2"}, {"2", "3"}, {"2", "4"}}), {{{"3", "4"}, {"4", "3"}}}, 'A', 5},
      {"D4/Z3", Quiver({"1", "1'", "1''", "2"}, {{"1", "2"}, {"1'", "2"}, {"1''", "2"}}),
       {{{"1", "1'"}, {"1'", "1''"}, {"1''", "1"}}}, 'D', 4},
      {"D4/S3", Quiver({"1", "1'", "1''", "2"}, {{"1", "2"}, {"1'", "2"}, {"1''", "2"}}),
       {{{"1", "1'"}, {"1'", "1"}}, {{"1'", "1''"}, {"1''", "1'"}}}, 'A', 5},
      {"D5/Z2", Quiver({"1", "2", "3", "4", "5"}, {{"1", "2"}, {"2", "3"}, {"3", "4"}, {"3", "5"}}),
       {{{"4", "5"}, {"5", "4"}}}, 'A', 7},
      {"E6/Z2", Quiver({"a", "b", "c", "b'", "a'", "d"}, {{"a", "b"}, {"b", "c"}, {"a'", "b'"}, {"b'", "c"}, {"c", "d"}}),
       {swap_ab}, 'E', 6},
  };
}

IntMatrix dynkin_graph(char family, int n) {
  const auto c = canonical_cartan_datum(family, n);
  IntMatrix g(c.rank(), c.rank());
  for (std::size_t i = 0; i < c.rank(); ++i)
    for (std::size_t j = 0; j < c.rank(); ++j)
      if (i != j) g(i, j) = -c.at(i, j);
  return g;
}

long long root_sum(const std::vector<std::pair<char, int>>& types) {
  long long r = 0;
  for (auto [f, n] : types) r += oracle::type_data(f, n).roots;
  return r;
}

ExchangeMatrix random_symmetrizable(CounterRng& rng, std::vector<Int>& d) {
  const std::size_t n = 1 + rng.below(5), frozen = rng.below(3);
  d.assign(n, 0);
  for (auto& x : d) x = rng.between(1, 3);
  IntMatrix m(n + frozen, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const Int s = rng.between(-2, 2);
      m(i, j) = s * d[i];
      m(j, i) = -s * d[j];
    }
  for (std::size_t f = 0; f < frozen; ++f)
    for (std::size_t j = 0; j < n; ++j) m(n + f, j) = rng.between(-2, 2);
  std::vector<std::string> rows, cols;
  for (std::size_t i = 0; i < n; ++i) cols.push_back("x" + std::to_string(i));
  rows = cols;
  for (std::size_t f = 0; f < frozen; ++f) rows.push_back("f" + std::to_string(f));
  return ExchangeMatrix(rows, cols, m);
}

}  // namespace

int main() {
  criterion(1, "folding D4 by Z/3 gives the G2 exchange matrix", 0.1, [](Outcome& o) {
    const auto f = fixtures()[3];
    const auto b = ExchangeMatrix::square(f.quiver.vertices(), f.quiver.exchange_entries());
    const auto g2 = fold_exchange(b, enumerate_group(f.generators, f.quiver.vertices()));
    o.expect(g2.entries() == IntMatrix::from_rows({{0, 3}, {-1, 0}}), "wrong folded matrix");
  });

  criterion(2, "flag exchange matrix for C3 with K = {a,b}", 0.1, [](Outcome& o) {
    const CartanDatum c3({"a", "b", "c"}, IntMatrix::from_rows({{2, -1, 0}, {-1, 2, -2}, {0, -1, 2}}));
    const ReducedWord w{{"a", "b", "a", "c", "b", "a", "c", "b", "c"}};
    const auto b = build_bik(c3, w, {"a", "b"});
    o.expect(b.row_labels() == std::vector<std::string>{"4", "5", "7", "3", "2", "c"}, "row labels");
    o.expect(b.col_labels() == std::vector<std::string>{"4", "5", "7"}, "column labels");
    o.expect(b.entries() == IntMatrix::from_rows({{0, -1, 1}, {2, 0, -2}, {-1, 1, 0}, {0, -1, 0}, {-2, 1, 0}, {1, 0, 0}}),
             "entries");
    const auto idx = bik_index(c3, w, {"a", "b"});
    o.expect(idx.e == std::vector<std::size_t>{1, 2, 3, 4, 5, 7}, "e set");
    o.expect(idx.first.at("a") == 1 && idx.first.at("b") == 2 && idx.first.at("c") == 4, "first occurrences");
    o.expect(idx.next == std::map<std::size_t, std::size_t>{{1, 3}, {2, 5}, {3, 6}, {4, 7}, {5, 8}, {7, 9}}, "successors");
  });

  criterion(3, "orbit mutation commutes with folding on random sequences", 10, [](Outcome& o) {
    std::ostringstream lost;
    for (const auto& f : fixtures()) {
      const auto action = enumerate_group(f.generators, f.quiver.vertices());
      const auto b = ExchangeMatrix::square(f.quiver.vertices(), f.quiver.exchange_entries());
      std::size_t lost_count = 0;
      for (std::uint64_t run = 0; run < 200; ++run) {
        CounterRng rng(CounterRng::mix(run) ^ 0x5eed);
        const auto seq = random_orbit_sequence(b, action, rng.below(9), rng);
        const auto report = check_commutation(b, action, seq);
        if (report.status == CommutationReport::Status::AdmissibilityLost) ++lost_count;
        else o.expect(report.agrees(), f.name + ": " + report.detail);
      }
      lost << (lost.tellp() > 0 ? " " : "") << f.name << "=" << lost_count;
      o.expect(lost_count == 0, f.name + " lost admissibility");
    }
    o.note = "admissibility lost: " + lost.str() + (o.note.empty() ? "" : "; " + o.note);
  });

  criterion(4, "unfold/fold round trips for bundled types of rank <= 4", 1, [](Outcome& o) {
    for (auto [family, n] : bundled_finite_types(4)) {
      const auto c = canonical_cartan_datum(family, n);
      const auto u = unfold_cartan(c);
      const std::string tag = std::string(1, family) + std::to_string(n);
      o.expect(fold_cartan(u.cartan, u.action).entries() == c.entries(), tag + " cartan");
      const auto b = orient(c);
      const auto ue = unfold_exchange(b);
      o.expect(fold_exchange(ue.matrix, ue.action).entries() == b.entries(), tag + " exchange");
    }
  });

  criterion(5, "flag classification table rows", 60, [](Outcome& o) {
    struct Row {
      std::string name;
      CartanDatum cartan;
      std::vector<LabelMap> gens;
      std::vector<std::string> j;
      std::string type;
      std::vector<std::pair<char, int>> folded, k;
    };
    const auto a4 = canonical_cartan_datum('A', 4), a5 = canonical_cartan_datum('A', 5);
    const auto a6 = canonical_cartan_datum('A', 6), a7 = canonical_cartan_datum('A', 7);
    const auto d4 = canonical_cartan_datum('D', 4), d5 = canonical_cartan_datum('D', 5);
    const auto a3z = type_a({"a", "b", "a'"}), a5z = type_a({"a", "b", "c", "b'", "a'"});
    const std::vector<LabelMap> z2a3{{{"a", "a'"}, {"a'", "a"}}};
    const std::vector<LabelMap> z2a5{{{"a", "a'"}, {"a'", "a"}, {"b", "b'"}, {"b'", "b"}}};
    const std::vector<LabelMap> fork{{{"3", "4"}, {"4", "3"}}};
    const std::vector<Row> rows{
        {"A4 J={1}", a4, {}, {"1"}, "A0", {{'A', 4}}, {{'A', 3}}},
        {"A4 J={2}", a4, {}, {"2"}, "A2", {{'A', 4}}, {{'A', 1}, {'A', 2}}},
        {"A4 J={1,2}", a4, {}, {"1", "2"}, "A3", {{'A', 4}}, {{'A', 2}}},
        {"A4 J={1,4}", a4, {}, {"1", "4"}, "(A1)^3", {{'A', 4}}, {{'A', 2}}},
        {"A4 J={2,3}", a4, {}, {"2", "3"}, "D4", {{'A', 4}}, {{'A', 1}, {'A', 1}}},
        {"A4 J={1,2,3}", a4, {}, {"1", "2", "3"}, "D5", {{'A', 4}}, {{'A', 1}}},
        {"A4 J=all", a4, {}, {"1", "2", "3", "4"}, "D6", {{'A', 4}}, {}},
        {"A5 J={1,4}", a5, {}, {"1", "4"}, "A6", {{'A', 5}}, {{'A', 2}, {'A', 1}}},
        {"A5 J={3}", a5, {}, {"3"}, "D4", {{'A', 5}}, {{'A', 2}, {'A', 2}}},
        {"A5 J={1,3}", a5, {}, {"1", "3"}, "E6", {{'A', 5}}, {{'A', 1}, {'A', 2}}},
        {"A5 J={2,3}", a5, {}, {"2", "3"}, "E6", {{'A', 5}}, {{'A', 1}, {'A', 2}}},
        {"A5 J={1,2,3}", a5, {}, {"1", "2", "3"}, "E7", {{'A', 5}}, {{'A', 2}}},
        {"A6 J={3}", a6, {}, {"3"}, "E6", {{'A', 6}}, {{'A', 2}, {'A', 3}}},
        {"A6 J={2,3}", a6, {}, {"2", "3"}, "E8", {{'A', 6}}, {{'A', 1}, {'A', 3}}},
        {"A7 J={3}", a7, {}, {"3"}, "E8", {{'A', 7}}, {{'A', 2}, {'A', 4}}},
        {"D4 J={3,4}", d4, {}, {"3", "4"}, "A5", {{'D', 4}}, {{'A', 2}}},
        {"D4 J={1}", d4, {}, {"1"}, "(A1)^2", {{'D', 4}}, {{'A', 3}}},
        {"D5 J={4}", d5, {}, {"4"}, "A5", {{'D', 5}}, {{'A', 4}}},
        {"A3/Z2 J=all", a3z, z2a3, {"a", "a'", "b"}, "B2", {{'B', 2}}, {}},
        {"A5/Z2 J={c}", a5z, z2a5, {"c"}, "B3", {{'C', 3}}, {{'A', 2}}},
        {"D4/Z2 J={3,4}", d4, fork, {"3", "4"}, "C3", {{'B', 3}}, {{'A', 2}}},
        {"A5/Z2 J={a,a'}", a5z, z2a5, {"a", "a'"}, "(A1)^2", {{'C', 3}}, {{'C', 2}}},
        {"D4/Z2 J={1}", d4, fork, {"1"}, "(A1)^2", {{'B', 3}}, {{'B', 2}}},
    };
    for (const auto& r : rows) {
      const auto fc = classify_flag_case(r.cartan, enumerate_group(r.gens, r.cartan.labels()), r.j);
      const std::string got = fc.cluster_type ? fc.cluster_type->name() : "infinite";
      o.expect(got == r.type, r.name + ": type " + got);
      o.expect(static_cast<long long>(fc.variables) == root_sum(r.folded) - root_sum(r.k),
               r.name + ": variables " + std::to_string(fc.variables));
      long long rank = 0;
      for (auto [f, n] : r.folded) rank += n;
      o.expect(static_cast<long long>(fc.coefficients) == rank, r.name + ": coefficients");
    }
  });

  criterion(6, "finite-type recognition and cluster counts", 30, [](Outcome& o) {
    auto sq = [](std::vector<std::vector<Int>> rows) {
      return ExchangeMatrix::square({"1", "2"}, IntMatrix::from_rows(rows));
    };
    const auto g2 = is_finite_type(sq({{0, 3}, {-1, 0}}));
    o.expect(g2 && g2->name() == "G2", "G2");
    const auto a2 = is_finite_type(sq({{0, 1}, {-1, 0}}));
    o.expect(a2 && a2->name() == "A2", "A2");
    o.expect(!is_finite_type(sq({{0, 2}, {-2, 0}})), "Kronecker");
    for (auto [family, n] : std::vector<std::pair<char, int>>{{'A', 2}, {'B', 2}, {'G', 2}, {'A', 3}, {'B', 3}, {'C', 3}}) {
      const auto g = explore(orient(canonical_cartan_datum(family, n)));
      o.expect(!g.truncated && static_cast<long long>(g.seeds.size()) == oracle::cluster_count(family, n),
               std::string(1, family) + std::to_string(n) + " count " + std::to_string(g.seeds.size()));
    }
  });

  criterion(7, "Laurent phenomenon on random paths and regular exchange graphs", 0, [](Outcome& o) {
    const auto types = bundled_finite_types(4);
    CounterRng rng(7);
    std::size_t inexact = 0;
    for (int path = 0; path < 1000; ++path) {
      const auto [family, n] = types[rng.below(types.size())];
      Seed s = initial_seed(orient(canonical_cartan_datum(family, n)));
      const std::size_t len = rng.below(13);
      for (std::size_t step = 0; step < len; ++step) {
        try {
          s = mutate_seed(s, s.matrix.col_labels()[rng.below(s.matrix.cols())]);
        } catch (const Error& e) {
          if (e.code() != ErrorCode::InexactDivision) throw;
          ++inexact;
          break;
        }
      }
    }
    o.expect(inexact == 0, std::to_string(inexact) + " inexact divisions");
    for (auto [family, n] : types) {
      const auto g = explore(orient(canonical_cartan_datum(family, n)));
      o.expect(!g.truncated, "truncated");
      for (std::size_t v = 0; v < g.seeds.size(); ++v)
        if (g.degree(v) != static_cast<std::size_t>(n)) {
          o.expect(false, std::string(1, family) + std::to_string(n) + " not regular");
          break;
        }
    }
  });

  criterion(8, "folded roots of A5/Z2 and D4/Z3", 0.1, [](Outcome& o) {
    auto check = [&](const CartanDatum& c, const std::vector<LabelMap>& gens, std::size_t count) {
      const auto action = enumerate_group(gens, c.labels());
      const auto folded = fold_roots(c, action);
      const auto expected = positive_roots(fold_cartan(c, action)).positive_roots;
      o.expect(folded.roots.size() == count &&
                   std::set<RootVector>(folded.roots.begin(), folded.roots.end()) ==
                       std::set<RootVector>(expected.begin(), expected.end()),
               "root set of size " + std::to_string(count));
    };
    check(type_a({"a", "b", "c", "b'", "a'"}), {{{"a", "a'"}, {"a'", "a"}, {"b", "b'"}, {"b'", "b"}}}, 9);
    const CartanDatum d4({"1", "1'", "1''", "2"},
                         IntMatrix::from_rows({{2, 0, 0, -1}, {0, 2, 0, -1}, {0, 0, 2, -1}, {-1, -1, -1, 2}}));
    check(d4, {{{"1", "1'"}, {"1'", "1''"}, {"1''", "1"}}}, 6);
  });

  criterion(9, "equivariant quivers of the folding fixtures", 5, [](Outcome& o) {
    for (const auto& f : fixtures()) {
      const auto action = enumerate_group(f.generators, f.quiver.vertices());
      const auto eq = build_q_gamma(f.quiver, action);
      o.expect(graphs_isomorphic(underlying_graph(eq.quiver), dynkin_graph(f.family, f.rank)), f.name + " shape");
      o.expect(check_double_commutes(f.quiver, action), f.name + " double quiver");
    }
  });

  criterion(10, "cluster monomials of degree <= 3 for B2 and G2 are independent", 30, [](Outcome& o) {
    for (Int c : {2, 3}) {
      const auto g = explore(ExchangeMatrix::square({"1", "2"}, IntMatrix::from_rows({{0, c}, {-1, 0}})));
      o.expect(check_linear_independence(cluster_monomials(g, 3)), "dependent for b12 = " + std::to_string(c));
    }
  });

  criterion(11, "mutation involution, symmetrizer and orbit order independence", 0, [](Outcome& o) {
    CounterRng rng(11);
    for (int trial = 0; trial < 1000; ++trial) {
      std::vector<Int> d;
      const auto b = random_symmetrizable(rng, d);
      const auto k = b.col_labels()[rng.below(b.cols())];
      const auto once = mutate(b, k);
      o.expect(mutate(once, k) == b, "not an involution");
      oracle::Dense principal(b.cols(), std::vector<long long>(b.cols()));
      for (std::size_t i = 0; i < b.cols(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) principal[i][j] = once.at(i, j);
      o.expect(oracle::skew_symmetrized_by(principal, {d.begin(), d.end()}), "symmetrizer not preserved");
    }
    std::size_t orbits_checked = 0;
    for (const auto& f : fixtures()) {
      const auto action = enumerate_group(f.generators, f.quiver.vertices());
      ExchangeMatrix cur = ExchangeMatrix::square(f.quiver.vertices(), f.quiver.exchange_entries());
      for (int step = 0; step < 8; ++step) {
        const auto pool = mutable_orbits(cur, action);
        for (const auto& orbit : pool)
          if (orbit.size() <= 4) {
            ++orbits_checked;
            o.expect(orbit_mutation_order_independent(cur, action, orbit), f.name + " order dependent");
          }
        const auto next = pool[rng.below(pool.size())];
        if (!validate_admissible(orbit_mutate(cur, action, next), action).ok()) break;
        cur = orbit_mutate(cur, action, next);
      }
    }
    o.expect(orbits_checked > 0, "no orbits checked");
  });

  return failures == 0 ? 0 : 1;
}
