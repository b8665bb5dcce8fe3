#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "foldclust/folding.hpp"
#include "foldclust/group_action.hpp"
#include "foldclust/matrix.hpp"
#include "foldclust/random.hpp"

namespace foldclust {

namespace detail {

inline std::size_t require_mutable(const ExchangeMatrix& b, const std::string& k) {
  if (auto c = b.col_index(k)) return *c;
  if (b.row_index(k)) fail(ErrorCode::FrozenColumn, "'" + k + "' is frozen");
  fail(ErrorCode::UnknownColumn, "no column '" + k + "'");
}

inline IntMatrix mutate_entries(const ExchangeMatrix& b, std::size_t k) {
  const std::size_t kr = b.col_row(k);
  IntMatrix out(b.rows(), b.cols());
  for (std::size_t z = 0; z < b.rows(); ++z)
    for (std::size_t y = 0; y < b.cols(); ++y) {
      if (z == kr || y == k) {
        out(z, y) = checked_neg(b.at(z, y));
        continue;
      }
      const Int bzk = b.at(z, k), bky = b.at(kr, y);
      const Int twice = checked_add(checked_mul(checked_abs(bzk), bky), checked_mul(bzk, checked_abs(bky)));
      // The two summands always share parity.
      if (twice % 2 != 0) fail(ErrorCode::MalformedMatrix, "odd mutation correction");
      out(z, y) = checked_add(b.at(z, y), twice / 2);
    }
  return out;
}

}  // namespace detail

/// Fomin-Zelevinsky mutation at the mutable column labeled k.
inline ExchangeMatrix mutate(const ExchangeMatrix& b, const std::string& k) {
  const std::size_t c = detail::require_mutable(b, k);
  return ExchangeMatrix(b.row_labels(), b.col_labels(), detail::mutate_entries(b, c));
}

/// The orbit containing a vertex, or the orbit whose rendered label matches.
inline std::vector<std::string> find_orbit(const VertexGroupAction& action, const std::string& label) {
  const auto part = orbits(action);
  for (const auto& o : part.orbits) {
    if (std::find(o.begin(), o.end(), label) != o.end() || orbit_label(o) == label) return o;
  }
  fail(ErrorCode::UnknownVertex, "no orbit for '" + label + "'");
}

namespace detail {

inline std::vector<std::string> checked_orbit(const ExchangeMatrix& b, const VertexGroupAction& action,
                                              std::vector<std::string> orbit) {
  if (orbit.empty()) fail(ErrorCode::UnknownVertex, "empty orbit");
  std::sort(orbit.begin(), orbit.end());
  if (find_orbit(action, orbit.front()) != orbit)
    fail(ErrorCode::LabelMismatch, "vertex set is not an orbit of the action");
  for (const auto& x : orbit)
    if (!b.col_index(x)) {
      if (b.row_index(x)) fail(ErrorCode::FrozenOrbit, "orbit contains frozen vertex '" + x + "'");
      fail(ErrorCode::UnknownColumn, "no column '" + x + "'");
    }
  for (const auto& x : orbit)
    for (const auto& y : orbit)
      if (x != y && b.at(*b.row_index(x), *b.col_index(y)) != 0)
        fail(ErrorCode::NonCommutingOrbit, "entry (" + x + "," + y + ") within the orbit is nonzero");
  return orbit;
}

inline ExchangeMatrix mutate_sequence(ExchangeMatrix b, const std::vector<std::string>& order) {
  for (const auto& x : order) b = mutate(b, x);
  return b;
}

}  // namespace detail

/// Product of the commuting mutations at every member of a mutable orbit.
inline ExchangeMatrix orbit_mutate(const ExchangeMatrix& b, const VertexGroupAction& action,
                                   const std::vector<std::string>& orbit) {
  const auto members = detail::checked_orbit(b, action, orbit);
  if (!validate_admissible(b, action).equivariant)
    fail(ErrorCode::NotEquivariant, "matrix is not equivariant under the action");
  ExchangeMatrix forward = detail::mutate_sequence(b, members);
  std::vector<std::string> reversed(members.rbegin(), members.rend());
  if (detail::mutate_sequence(b, reversed) != forward)
    fail(ErrorCode::NonCommutingOrbit, "orbit mutations do not commute");
  return forward;
}

/// Applies the orbit mutations in every order (orbits of size <= max_size)
/// and reports whether all results coincide.
inline bool orbit_mutation_order_independent(const ExchangeMatrix& b, const VertexGroupAction& action,
                                             const std::vector<std::string>& orbit, std::size_t max_size = 4) {
  auto members = detail::checked_orbit(b, action, orbit);
  if (members.size() > max_size) fail(ErrorCode::SearchBudgetExceeded, "orbit too large for all orders");
  const ExchangeMatrix reference = detail::mutate_sequence(b, members);
  while (std::next_permutation(members.begin(), members.end()))
    if (detail::mutate_sequence(b, members) != reference) return false;
  return true;
}

/// Orbits made of mutable columns, in first-occurrence column order.
inline std::vector<std::vector<std::string>> mutable_orbits(const ExchangeMatrix& b, const VertexGroupAction& action) {
  std::vector<std::vector<std::string>> out;
  for (const auto& o : detail::orbits_in_order(b.col_labels(), action)) {
    std::vector<std::string> members;
    for (std::size_t p : o) members.push_back(b.col_labels()[p]);
    std::sort(members.begin(), members.end());
    if (members == find_orbit(action, members.front())) out.push_back(std::move(members));
  }
  return out;
}

/// Uniformly random orbit sequence of the given length.
inline std::vector<std::vector<std::string>> random_orbit_sequence(const ExchangeMatrix& b, const VertexGroupAction& action,
                                                                   std::size_t length, CounterRng& rng) {
  const auto pool = mutable_orbits(b, action);
  std::vector<std::vector<std::string>> out;
  if (pool.empty()) return out;
  for (std::size_t i = 0; i < length; ++i) out.push_back(pool[rng.below(pool.size())]);
  return out;
}

struct CommutationReport {
  enum class Status { Agree, Mismatch, AdmissibilityLost };
  Status status = Status::Agree;
  std::size_t step = 0;  // index of the failing step for AdmissibilityLost
  std::string detail;    // first mismatching entry or lost-admissibility witness

  bool agrees() const { return status == Status::Agree; }
};

/// Folds after orbit mutations and mutates after folding; compares the two.
inline CommutationReport check_commutation(const ExchangeMatrix& b, const VertexGroupAction& action,
                                           const std::vector<std::vector<std::string>>& sequence) {
  CommutationReport report;
  ExchangeMatrix unfolded = b;
  ExchangeMatrix folded = fold_exchange(b, action);
  for (std::size_t s = 0; s <= sequence.size(); ++s) {
    const AdmissibilityReport adm = validate_admissible(unfolded, action);
    if (!adm.equivariant) fail(ErrorCode::NotEquivariant, adm.counterexample);
    if (!adm.admissible) {
      report.status = CommutationReport::Status::AdmissibilityLost;
      report.step = s;
      report.detail = adm.counterexample;
      return report;
    }
    if (s == sequence.size()) break;
    auto orbit = sequence[s];
    std::sort(orbit.begin(), orbit.end());
    unfolded = orbit_mutate(unfolded, action, orbit);
    folded = mutate(folded, orbit_label(orbit));
  }
  const ExchangeMatrix lhs = fold_exchange(unfolded, action);
  if (lhs.row_labels() != folded.row_labels() || lhs.col_labels() != folded.col_labels()) {
    report.status = CommutationReport::Status::Mismatch;
    report.detail = "label sets differ";
    return report;
  }
  for (std::size_t r = 0; r < lhs.rows(); ++r)
    for (std::size_t c = 0; c < lhs.cols(); ++c)
      if (lhs.at(r, c) != folded.at(r, c)) {
        report.status = CommutationReport::Status::Mismatch;
        report.detail = "entry (" + lhs.row_labels()[r] + "," + lhs.col_labels()[c] + "): " +
                        std::to_string(lhs.at(r, c)) + " vs " + std::to_string(folded.at(r, c));
        return report;
      }
  return report;
}

}  // namespace foldclust
