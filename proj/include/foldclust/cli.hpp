#pragma once

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "foldclust/json_io.hpp"
#include "foldclust/weyl.hpp"

namespace foldclust::cli {

using json_io::json;

namespace detail {

struct Options {
  std::string input;
  std::string action;
  std::string cartan;
  std::string format = "json";
  unsigned jobs = 1;
  std::size_t max_seeds = 10000;
  Int max_degree = 1000;
  std::uint64_t seed = 0;
  std::vector<std::string> k;
  std::string j_set;
  std::string word;
  std::string parabolic;
  std::size_t slices = 1;
  std::string sequence;
  std::string orbit;
  std::string tables;
  std::size_t random_runs = 0;
  std::size_t length = 8;
  int degree = 3;
  std::size_t budget = 1000000;
  bool check = false;
};

inline std::size_t group_cap() {
  if (const char* env = std::getenv("CLUSTER_MAX_GROUP")) {
    try {
      return static_cast<std::size_t>(std::stoull(env));
    } catch (const std::exception&) {
      fail(ErrorCode::ParseError, "CLUSTER_MAX_GROUP must be a positive integer");
    }
  }
  return kDefaultGroupCap;
}

inline json read_json(const std::string& path, std::istream& in) {
  std::stringstream buf;
  if (path.empty() || path == "-") {
    buf << in.rdbuf();
  } else {
    std::ifstream file(path);
    if (!file) fail(ErrorCode::ParseError, "cannot open '" + path + "'");
    buf << file.rdbuf();
  }
  try {
    return json::parse(buf.str());
  } catch (const json::exception& e) {
    fail(ErrorCode::ParseError, e.what());
  }
}

// Comma-separated list, or a JSON array of strings.
inline std::vector<std::string> split_list(const std::string& s) {
  if (!s.empty() && s.front() == '[') {
    try {
      return json_io::decode_labels(json::parse(s));
    } catch (const json::exception& e) {
      fail(ErrorCode::ParseError, e.what());
    }
  }
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ',') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else if (c != ' ') {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

inline bool is_cartan(const json& j) { return j.is_object() && j.contains("labels"); }
inline bool is_quiver(const json& j) { return j.is_object() && j.contains("arrows"); }

inline ExchangeMatrix read_matrix(const json& j) {
  return is_quiver(j) ? json_io::decode_quiver(j).exchange_matrix() : json_io::decode_matrix(j);
}

inline VertexGroupAction read_action(const Options& o, std::istream& in, const std::vector<std::string>& fallback) {
  if (o.action.empty()) return enumerate_group(std::vector<Permutation>{}, fallback, group_cap());
  return json_io::decode_action(read_json(o.action, in), group_cap());
}

inline std::vector<UserCharacterTable> read_tables(const Options& o, std::istream& in) {
  std::vector<UserCharacterTable> out;
  if (o.tables.empty()) return out;
  const json j = read_json(o.tables, in);
  if (j.is_array())
    for (const auto& t : j) out.push_back(json_io::decode_character_table(t));
  else
    out.push_back(json_io::decode_character_table(j));
  return out;
}

// Valued quiver drawing of an exchange matrix: one edge per positive entry.
inline std::string matrix_dot(const ExchangeMatrix& b) {
  std::string out = "digraph \"B\" {\n";
  for (const auto& r : b.row_labels()) {
    out += "  " + json_io::dot_quote(r);
    if (!b.col_index(r)) out += " [shape=box]";
    out += ";\n";
  }
  for (std::size_t z = 0; z < b.rows(); ++z)
    for (std::size_t x = 0; x < b.cols(); ++x)
      if (b.at(z, x) > 0)
        out += "  " + json_io::dot_quote(b.row_labels()[z]) + " -> " + json_io::dot_quote(b.col_labels()[x]) +
               " [label=" + json_io::dot_quote(std::to_string(b.at(z, x))) + "];\n";
  return out + "}\n";
}

inline void emit(std::ostream& out, const Options& o, const ExchangeMatrix& b) {
  if (o.format == "dot") out << matrix_dot(b);
  else out << json_io::encode(b).dump(2) << "\n";
}

inline void emit(std::ostream& out, const json& j) { out << j.dump(2) << "\n"; }

inline std::vector<std::vector<std::string>> parse_sequence(const std::string& s, const VertexGroupAction& action) {
  json j;
  try {
    j = json::parse(s);
  } catch (const json::exception& e) {
    fail(ErrorCode::ParseError, e.what());
  }
  if (!j.is_array()) fail(ErrorCode::ParseError, "sequence must be a JSON list of orbit labels");
  std::vector<std::vector<std::string>> out;
  for (const auto& x : j) {
    if (!x.is_string()) fail(ErrorCode::ParseError, "orbit labels must be strings");
    out.push_back(find_orbit(action, x.get<std::string>()));
  }
  return out;
}

inline std::string status_name(CommutationReport::Status s) {
  switch (s) {
    case CommutationReport::Status::Agree: return "agree";
    case CommutationReport::Status::Mismatch: return "mismatch";
    case CommutationReport::Status::AdmissibilityLost: return "admissibility_lost";
  }
  return "unknown";
}

inline ExploreLimits limits(const Options& o) { return {o.max_seeds, o.max_degree, o.jobs}; }

inline int dispatch(const std::string& cmd, const Options& o, std::istream& in, std::ostream& out) {
  if (cmd == "fold") {
    const json j = read_json(o.input, in);
    if (is_cartan(j)) {
      const CartanDatum c = json_io::decode_cartan(j);
      emit(out, json_io::encode(fold_cartan(c, read_action(o, in, c.labels()))));
    } else {
      const ExchangeMatrix b = read_matrix(j);
      emit(out, o, fold_exchange(b, read_action(o, in, b.row_labels())));
    }
  } else if (cmd == "unfold") {
    const json j = read_json(o.input, in);
    if (is_cartan(j)) {
      const auto u = unfold_cartan(json_io::decode_cartan(j), group_cap());
      emit(out, {{"cartan", json_io::encode(u.cartan)}, {"action", json_io::encode(u.action)}});
    } else {
      const auto u = unfold_exchange(read_matrix(j), group_cap());
      emit(out, {{"matrix", json_io::encode(u.matrix)}, {"action", json_io::encode(u.action)}});
    }
  } else if (cmd == "mutate") {
    ExchangeMatrix b = read_matrix(read_json(o.input, in));
    for (const auto& k : o.k) b = mutate(b, k);
    emit(out, o, b);
  } else if (cmd == "orbit-mutate") {
    const ExchangeMatrix b = read_matrix(read_json(o.input, in));
    const auto action = read_action(o, in, b.row_labels());
    emit(out, o, orbit_mutate(b, action, find_orbit(action, o.orbit)));
  } else if (cmd == "check-commutation") {
    const ExchangeMatrix b = read_matrix(read_json(o.input, in));
    const auto action = read_action(o, in, b.row_labels());
    if (o.random_runs > 0) {
      std::size_t agree = 0, mismatch = 0, lost = 0;
      for (std::size_t run = 0; run < o.random_runs; ++run) {
        CounterRng rng(o.seed ^ CounterRng::mix(run));
        const std::size_t len = rng.below(o.length + 1);
        const auto report = check_commutation(b, action, random_orbit_sequence(b, action, len, rng));
        (report.status == CommutationReport::Status::Agree      ? agree
         : report.status == CommutationReport::Status::Mismatch ? mismatch
                                                                : lost)++;
      }
      emit(out, {{"runs", o.random_runs}, {"agree", agree}, {"mismatch", mismatch}, {"admissibility_lost", lost},
                 {"seed", o.seed}});
      return mismatch == 0 ? 0 : 1;
    }
    const auto report = check_commutation(b, action, parse_sequence(o.sequence.empty() ? "[]" : o.sequence, action));
    json j{{"agrees", report.agrees()}, {"status", status_name(report.status)}, {"detail", report.detail}};
    if (report.status == CommutationReport::Status::AdmissibilityLost) j["step"] = report.step;
    emit(out, j);
  } else if (cmd == "explore") {
    const ExchangeGraph g = explore(read_matrix(read_json(o.input, in)), limits(o));
    if (o.format == "dot") out << json_io::to_dot(g);
    else emit(out, json_io::encode(g));
  } else if (cmd == "finite-type") {
    const auto t = is_finite_type(read_matrix(read_json(o.input, in)), o.budget);
    emit(out, {{"finite", t.has_value()}, {"type", t ? json(t->name()) : json(nullptr)}});
  } else if (cmd == "bik") {
    const CartanDatum c = json_io::decode_cartan(read_json(o.cartan.empty() ? o.input : o.cartan, in));
    const auto k = split_list(o.parabolic);
    const ReducedWord word = o.word.empty() ? longest_word_with_parabolic_prefix(c, k) : ReducedWord{split_list(o.word)};
    emit(out, o, build_bik(c, word, k));
  } else if (cmd == "classify-flag") {
    const CartanDatum c = json_io::decode_cartan(read_json(o.cartan.empty() ? o.input : o.cartan, in));
    const auto result = classify_flag_case(c, read_action(o, in, c.labels()), split_list(o.j_set), o.budget);
    emit(out, {{"cluster_type", result.cluster_type ? json(result.cluster_type->name()) : json(nullptr)},
               {"variables", result.variables},
               {"coefficients", result.coefficients}});
  } else if (cmd == "qgamma") {
    const Quiver q = json_io::decode_quiver(read_json(o.input, in));
    const auto action = read_action(o, in, q.vertices());
    const auto tables = read_tables(o, in);
    if (o.check) {
      emit(out, {{"double_commutes", check_double_commutes(q, action, tables)}});
      return 0;
    }
    const auto eq = build_q_gamma(q, action, tables);
    if (o.format == "dot") out << json_io::to_dot(eq.quiver, "Q_Gamma");
    else emit(out, json_io::encode(eq.quiver));
  } else if (cmd == "roots") {
    const CartanDatum c = json_io::decode_cartan(read_json(o.input, in));
    if (o.action.empty()) {
      const RootSystem rs = positive_roots(c);
      emit(out, json_io::encode(FoldedRoots{c.labels(), rs.positive_roots}));
    } else {
      emit(out, json_io::encode(fold_roots(c, read_action(o, in, c.labels()))));
    }
  } else if (cmd == "ntheta") {
    emit(out, o, ntheta_matrix(json_io::decode_quiver(read_json(o.input, in)), o.slices));
  } else if (cmd == "specialize") {
    const ExchangeGraph g = explore(read_matrix(read_json(o.input, in)), limits(o));
    if (g.truncated) fail(ErrorCode::GraphTruncated, "exchange graph is truncated");
    json vars = json::array();
    for (const auto& p : specialize_coefficients(g)) vars.push_back(json_io::encode(p, g.seeds.front().variable_names));
    emit(out, {{"num_variables", vars.size()}, {"variables", vars}});
  } else if (cmd == "independence") {
    const json j = read_json(o.input, in);
    std::vector<LaurentPoly> polys;
    if (j.is_array()) {
      for (const auto& p : j) polys.push_back(json_io::decode_laurent(p));
    } else {
      polys = cluster_monomials(explore(read_matrix(j), limits(o)), o.degree);
    }
    if (polys.empty()) fail(ErrorCode::ParseError, "no polynomials to test");
    const std::size_t rank = laurent_rank(polys);
    emit(out, {{"count", polys.size()}, {"rank", rank}, {"independent", rank == polys.size()}});
  }
  return 0;
}

}  // namespace detail

/// Runs one subcommand. Exit codes: 0 success, 1 domain error (JSON error
/// object on stdout), 2 usage error.
inline int run(int argc, const char* const* argv, std::istream& in = std::cin, std::ostream& out = std::cout,
               std::ostream& err = std::cerr) {
  detail::Options o;
  CLI::App app{"Folding, mutation and cluster combinatorics of exchange matrices", "foldclust"};
  app.require_subcommand(1, 1);

  auto input = [&](CLI::App* sub) { sub->add_option("-i,--input", o.input, "input JSON file (default stdin)"); };
  auto action = [&](CLI::App* sub, bool required) {
    auto* opt = sub->add_option("-a,--action", o.action, "group action JSON file");
    if (required) opt->required();
  };
  auto format = [&](CLI::App* sub) {
    sub->add_option("--format", o.format, "output format")->check(CLI::IsMember({"json", "dot"}));
  };
  auto explore_limits = [&](CLI::App* sub) {
    sub->add_option("--max-seeds", o.max_seeds, "seed limit for exploration");
    sub->add_option("--max-degree", o.max_degree, "cluster variable degree limit");
    sub->add_option("--jobs", o.jobs, "worker threads")->check(CLI::PositiveNumber);
  };

  auto* fold = app.add_subcommand("fold", "fold an exchange matrix, quiver or Cartan matrix");
  input(fold);
  action(fold, true);
  format(fold);
  auto* unfold = app.add_subcommand("unfold", "unfold to symmetric data with a cyclic action");
  input(unfold);
  auto* mut = app.add_subcommand("mutate", "matrix mutation at one or more columns, in order");
  input(mut);
  format(mut);
  mut->add_option("-k", o.k, "mutable column label")->required();
  auto* omut = app.add_subcommand("orbit-mutate", "mutation at every vertex of an orbit");
  input(omut);
  action(omut, true);
  format(omut);
  omut->add_option("--orbit", o.orbit, "orbit label or member")->required();
  auto* comm = app.add_subcommand("check-commutation", "compare folding after orbit mutation with mutation after folding");
  input(comm);
  action(comm, true);
  comm->add_option("--sequence", o.sequence, "JSON list of orbit labels");
  comm->add_option("--random", o.random_runs, "number of random sequences");
  comm->add_option("--length", o.length, "maximum random sequence length");
  comm->add_option("--seed", o.seed, "random seed");
  auto* expl = app.add_subcommand("explore", "exchange graph by breadth-first seed mutation");
  input(expl);
  format(expl);
  explore_limits(expl);
  auto* fin = app.add_subcommand("finite-type", "finite type of the principal part");
  input(fin);
  fin->add_option("--budget", o.budget, "mutation class size limit");
  auto* bik = app.add_subcommand("bik", "exchange matrix of a reduced word with a parabolic prefix");
  input(bik);
  format(bik);
  bik->add_option("--cartan", o.cartan, "Cartan JSON file");
  bik->add_option("--word", o.word, "reduced word, comma separated (default: constructed)");
  bik->add_option("--K", o.parabolic, "parabolic subset, comma separated");
  auto* cls = app.add_subcommand("classify-flag", "cluster type and counts for a folded flag case");
  input(cls);
  action(cls, false);
  cls->add_option("--cartan", o.cartan, "Cartan JSON file");
  cls->add_option("--J", o.j_set, "Gamma-stable vertex set, comma separated")->required();
  cls->add_option("--budget", o.budget, "mutation class size limit");
  auto* qg = app.add_subcommand("qgamma", "equivariant quiver of a group action");
  input(qg);
  action(qg, false);
  format(qg);
  qg->add_option("--tables", o.tables, "character tables JSON file");
  qg->add_flag("--check", o.check, "check compatibility with double quivers instead");
  auto* roots = app.add_subcommand("roots", "positive roots, folded when an action is given");
  input(roots);
  action(roots, false);
  auto* nth = app.add_subcommand("ntheta", "exchange matrix of stacked opposite-quiver slices");
  input(nth);
  format(nth);
  nth->add_option("--slices", o.slices, "number of slices above the base")->check(CLI::PositiveNumber);
  auto* spec = app.add_subcommand("specialize", "cluster variables with frozen variables set to 1");
  input(spec);
  explore_limits(spec);
  auto* ind = app.add_subcommand("independence", "exact linear independence of cluster monomials");
  input(ind);
  explore_limits(ind);
  ind->add_option("--degree", o.degree, "maximum monomial degree")->check(CLI::NonNegativeNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return 0;
    }
    err << e.what() << "\n" << "Run with --help for usage.\n";
    return 2;
  }

  try {
    return detail::dispatch(app.get_subcommands().front()->get_name(), o, in, out);
  } catch (const Error& e) {
    out << json{{"error", std::string(to_string(e.code()))}, {"detail", e.detail()}}.dump() << "\n";
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

inline int run(const std::vector<std::string>& args, std::istream& in = std::cin, std::ostream& out = std::cout,
               std::ostream& err = std::cerr) {
  std::vector<const char*> argv{"foldclust"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), in, out, err);
}

}  // namespace foldclust::cli
