#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <queue>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "foldclust/error.hpp"
#include "foldclust/integer.hpp"

namespace foldclust {

/// Dense row-major integer matrix.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols, Int fill = 0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static IntMatrix from_rows(const std::vector<std::vector<Int>>& rows) {
    const std::size_t cols = rows.empty() ? 0 : rows.front().size();
    IntMatrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != cols)
        fail(ErrorCode::MalformedMatrix, "ragged matrix rows");
      for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  static IntMatrix identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Int& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  Int operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  const std::vector<Int>& data() const { return data_; }

  std::vector<std::vector<Int>> to_rows() const {
    std::vector<std::vector<Int>> out(rows_, std::vector<Int>(cols_));
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) out[i][j] = (*this)(i, j);
    return out;
  }

  IntMatrix transposed() const {
    IntMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
    if (a.cols_ != b.rows_) fail(ErrorCode::MalformedMatrix, "dimension mismatch in product");
    IntMatrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const Int aik = a(i, k);
        if (aik == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j)
          c(i, j) = checked_add(c(i, j), checked_mul(aik, b(k, j)));
      }
    return c;
  }

  std::vector<Int> apply(const std::vector<Int>& v) const {
    if (v.size() != cols_) fail(ErrorCode::MalformedMatrix, "dimension mismatch in apply");
    std::vector<Int> out(rows_, 0);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j)
        if ((*this)(i, j) != 0) out[i] = checked_add(out[i], checked_mul((*this)(i, j), v[j]));
    return out;
  }

  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;
  friend auto operator<=>(const IntMatrix& a, const IntMatrix& b) {
    if (auto c = a.rows_ <=> b.rows_; c != 0) return c;
    if (auto c = a.cols_ <=> b.cols_; c != 0) return c;
    return a.data_ <=> b.data_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Int> data_;
};

namespace detail {

// Positive rational kept in lowest terms.
struct Ratio {
  Int num = 1;
  Int den = 1;

  static Ratio make(Int n, Int d) {
    if (d < 0) {
      n = checked_neg(n);
      d = checked_neg(d);
    }
    const Int g = gcd(n, d);
    return {n / g, d / g};
  }
  Ratio times(Int n, Int d) const { return make(checked_mul(num, n), checked_mul(den, d)); }
  friend bool operator==(const Ratio&, const Ratio&) = default;
};

// Solves x_j / x_i = ratio(i, j) over the graph whose edges are the pairs with
// a ratio. Returns the componentwise-minimal positive integer solution, or
// nothing when a cycle is inconsistent.
template <typename RatioFn>
std::optional<std::vector<Int>> solve_ratio_system(std::size_t n, RatioFn ratio) {
  std::vector<std::optional<Ratio>> value(n);
  std::vector<int> component(n, -1);
  int next_component = 0;
  for (std::size_t start = 0; start < n; ++start) {
    if (value[start]) continue;
    value[start] = Ratio{1, 1};
    component[start] = next_component;
    std::queue<std::size_t> frontier;
    frontier.push(start);
    while (!frontier.empty()) {
      const std::size_t i = frontier.front();
      frontier.pop();
      for (std::size_t j = 0; j < n; ++j) {
        if (j == i) continue;
        const std::optional<std::pair<Int, Int>> r = ratio(i, j);
        if (!r) continue;
        const Ratio expected = value[i]->times(r->first, r->second);
        if (!value[j]) {
          value[j] = expected;
          component[j] = next_component;
          frontier.push(j);
        } else if (!(*value[j] == expected)) {
          return std::nullopt;
        }
      }
    }
    ++next_component;
  }
  std::vector<Int> out(n);
  for (int c = 0; c < next_component; ++c) {
    Int den_lcm = 1;
    for (std::size_t i = 0; i < n; ++i)
      if (component[i] == c) den_lcm = lcm(den_lcm, value[i]->den);
    Int num_gcd = 0;
    for (std::size_t i = 0; i < n; ++i)
      if (component[i] == c) num_gcd = gcd(num_gcd, checked_mul(value[i]->num, den_lcm / value[i]->den));
    for (std::size_t i = 0; i < n; ++i)
      if (component[i] == c) out[i] = checked_mul(value[i]->num, den_lcm / value[i]->den) / num_gcd;
  }
  return out;
}

inline void require_square(const IntMatrix& m) {
  if (m.rows() != m.cols()) fail(ErrorCode::MalformedMatrix, "matrix is not square");
}

inline void require_distinct(const std::vector<std::string>& labels, const char* what) {
  std::set<std::string> seen(labels.begin(), labels.end());
  if (seen.size() != labels.size())
    fail(ErrorCode::LabelMismatch, std::string("duplicate ") + what + " label");
}

}  // namespace detail

/// Minimal positive integer diagonal D with M·D skew-symmetric, if any.
/// M·D skew-symmetric means M(i,j)·D(j) = -M(j,i)·D(i).
inline std::optional<std::vector<Int>> skew_symmetrizer(const IntMatrix& m) {
  detail::require_square(m);
  const std::size_t n = m.rows();
  for (std::size_t i = 0; i < n; ++i) {
    if (m(i, i) != 0) return std::nullopt;
    for (std::size_t j = i + 1; j < n; ++j) {
      const Int a = m(i, j), b = m(j, i);
      if ((a == 0) != (b == 0)) return std::nullopt;
      if (a != 0 && (a > 0) == (b > 0)) return std::nullopt;
    }
  }
  return detail::solve_ratio_system(n, [&](std::size_t i, std::size_t j) -> std::optional<std::pair<Int, Int>> {
    if (m(i, j) == 0) return std::nullopt;
    // D_j / D_i = -M_ji / M_ij
    return std::pair<Int, Int>{checked_abs(m(j, i)), checked_abs(m(i, j))};
  });
}

/// Checks the structural Cartan conditions; throws MalformedCartan.
inline void validate_cartan_shape(const IntMatrix& c) {
  detail::require_square(c);
  for (std::size_t i = 0; i < c.rows(); ++i) {
    if (c(i, i) != 2) fail(ErrorCode::MalformedCartan, "diagonal entry is not 2");
    for (std::size_t j = 0; j < c.cols(); ++j) {
      if (i == j) continue;
      if (c(i, j) > 0) fail(ErrorCode::MalformedCartan, "positive off-diagonal entry");
      if ((c(i, j) == 0) != (c(j, i) == 0))
        fail(ErrorCode::MalformedCartan, "asymmetric zero pattern");
    }
  }
}

/// Minimal positive integer d with diag(d)·C symmetric, if any.
inline std::optional<std::vector<Int>> symmetrizer(const IntMatrix& c) {
  validate_cartan_shape(c);
  return detail::solve_ratio_system(c.rows(), [&](std::size_t i, std::size_t j) -> std::optional<std::pair<Int, Int>> {
    if (c(i, j) == 0) return std::nullopt;
    // d_i C_ij = d_j C_ji  =>  d_j / d_i = C_ij / C_ji
    return std::pair<Int, Int>{checked_abs(c(i, j)), checked_abs(c(j, i))};
  });
}

/// Integer matrix with labeled rows and columns. Columns are the mutable
/// indices and each column label is also a row label; rows whose label is
/// not a column label are frozen.
class ExchangeMatrix {
 public:
  ExchangeMatrix() = default;

  ExchangeMatrix(std::vector<std::string> row_labels, std::vector<std::string> col_labels,
                 IntMatrix entries)
      : row_labels_(std::move(row_labels)),
        col_labels_(std::move(col_labels)),
        entries_(std::move(entries)) {
    if (entries_.rows() != row_labels_.size() || entries_.cols() != col_labels_.size())
      fail(ErrorCode::MalformedMatrix, "entries shape does not match labels");
    detail::require_distinct(row_labels_, "row");
    detail::require_distinct(col_labels_, "column");
    col_rows_.reserve(col_labels_.size());
    for (const auto& c : col_labels_) {
      auto it = std::find(row_labels_.begin(), row_labels_.end(), c);
      if (it == row_labels_.end())
        fail(ErrorCode::LabelMismatch, "column label '" + c + "' is not a row label");
      col_rows_.push_back(static_cast<std::size_t>(it - row_labels_.begin()));
    }
    auto d = skew_symmetrizer(principal());
    if (!d) fail(ErrorCode::NotSkewSymmetrizable, "principal part is not skew-symmetrizable");
    symmetrizer_ = std::move(*d);
  }

  /// Square matrix whose rows and columns share one label list.
  static ExchangeMatrix square(std::vector<std::string> labels, IntMatrix entries) {
    auto cols = labels;
    return ExchangeMatrix(std::move(labels), std::move(cols), std::move(entries));
  }

  const std::vector<std::string>& row_labels() const { return row_labels_; }
  const std::vector<std::string>& col_labels() const { return col_labels_; }
  const IntMatrix& entries() const { return entries_; }
  /// Right skew-symmetrizer of the principal part, indexed like the columns.
  const std::vector<Int>& symmetrizer() const { return symmetrizer_; }

  std::size_t rows() const { return row_labels_.size(); }
  std::size_t cols() const { return col_labels_.size(); }
  Int at(std::size_t r, std::size_t c) const { return entries_(r, c); }

  /// Row index of the c-th column's label.
  std::size_t col_row(std::size_t c) const { return col_rows_[c]; }

  std::optional<std::size_t> row_index(const std::string& label) const {
    auto it = std::find(row_labels_.begin(), row_labels_.end(), label);
    if (it == row_labels_.end()) return std::nullopt;
    return static_cast<std::size_t>(it - row_labels_.begin());
  }
  std::optional<std::size_t> col_index(const std::string& label) const {
    auto it = std::find(col_labels_.begin(), col_labels_.end(), label);
    if (it == col_labels_.end()) return std::nullopt;
    return static_cast<std::size_t>(it - col_labels_.begin());
  }

  bool is_frozen_row(std::size_t r) const {
    return std::find(col_rows_.begin(), col_rows_.end(), r) == col_rows_.end();
  }

  std::vector<std::string> frozen_labels() const {
    std::vector<std::string> out;
    for (std::size_t r = 0; r < rows(); ++r)
      if (is_frozen_row(r)) out.push_back(row_labels_[r]);
    return out;
  }

  /// Rows restricted to the column labels, in column order.
  IntMatrix principal() const {
    IntMatrix p(cols(), cols());
    for (std::size_t i = 0; i < cols(); ++i)
      for (std::size_t j = 0; j < cols(); ++j) p(i, j) = entries_(col_rows_[i], j);
    return p;
  }

  ExchangeMatrix principal_matrix() const { return square(col_labels_, principal()); }

  friend bool operator==(const ExchangeMatrix& a, const ExchangeMatrix& b) {
    return a.row_labels_ == b.row_labels_ && a.col_labels_ == b.col_labels_ &&
           a.entries_ == b.entries_;
  }

 private:
  std::vector<std::string> row_labels_;
  std::vector<std::string> col_labels_;
  IntMatrix entries_;
  std::vector<std::size_t> col_rows_;
  std::vector<Int> symmetrizer_;
};

/// Generalized Cartan matrix with a positive integer symmetrizer d such that
/// diag(d)·C is symmetric.
class CartanDatum {
 public:
  CartanDatum() = default;

  CartanDatum(std::vector<std::string> labels, IntMatrix entries)
      : labels_(std::move(labels)), entries_(std::move(entries)) {
    check_labels();
    validate_cartan_shape(entries_);
    auto d = foldclust::symmetrizer(entries_);
    if (!d) fail(ErrorCode::NotSymmetrizable, "Cartan matrix is not symmetrizable");
    symmetrizer_ = std::move(*d);
  }

  CartanDatum(std::vector<std::string> labels, IntMatrix entries, std::vector<Int> symmetrizer)
      : labels_(std::move(labels)), entries_(std::move(entries)), symmetrizer_(std::move(symmetrizer)) {
    check_labels();
    validate_cartan_shape(entries_);
    if (symmetrizer_.size() != labels_.size())
      fail(ErrorCode::MalformedCartan, "symmetrizer length does not match rank");
    for (std::size_t i = 0; i < rank(); ++i) {
      if (symmetrizer_[i] <= 0) fail(ErrorCode::MalformedCartan, "symmetrizer entries must be positive");
      for (std::size_t j = 0; j < rank(); ++j)
        if (checked_mul(symmetrizer_[i], entries_(i, j)) != checked_mul(symmetrizer_[j], entries_(j, i)))
          fail(ErrorCode::NotSymmetrizable, "supplied symmetrizer does not symmetrize the matrix");
    }
  }

  const std::vector<std::string>& labels() const { return labels_; }
  const IntMatrix& entries() const { return entries_; }
  const std::vector<Int>& symmetrizer() const { return symmetrizer_; }
  std::size_t rank() const { return labels_.size(); }
  Int at(std::size_t i, std::size_t j) const { return entries_(i, j); }

  std::optional<std::size_t> index(const std::string& label) const {
    auto it = std::find(labels_.begin(), labels_.end(), label);
    if (it == labels_.end()) return std::nullopt;
    return static_cast<std::size_t>(it - labels_.begin());
  }

  bool is_symmetric() const { return entries_ == entries_.transposed(); }

  /// Sub-datum on the given labels, in the order given.
  CartanDatum restrict_to(const std::vector<std::string>& subset) const {
    std::vector<std::size_t> idx;
    for (const auto& s : subset) {
      auto i = index(s);
      if (!i) fail(ErrorCode::UnknownVertex, "unknown Cartan label '" + s + "'");
      idx.push_back(*i);
    }
    IntMatrix m(idx.size(), idx.size());
    for (std::size_t a = 0; a < idx.size(); ++a)
      for (std::size_t b = 0; b < idx.size(); ++b) m(a, b) = entries_(idx[a], idx[b]);
    return CartanDatum(subset, std::move(m));
  }

  friend bool operator==(const CartanDatum& a, const CartanDatum& b) {
    return a.labels_ == b.labels_ && a.entries_ == b.entries_;
  }

 private:
  void check_labels() const {
    detail::require_distinct(labels_, "Cartan");
    if (entries_.rows() != labels_.size() || entries_.cols() != labels_.size())
      fail(ErrorCode::MalformedCartan, "entries shape does not match labels");
  }

  std::vector<std::string> labels_;
  IntMatrix entries_;
  std::vector<Int> symmetrizer_;
};

/// A with A_ii = 2 and A_ij = -|B_ij| on the principal part of B.
inline CartanDatum cartan_counterpart(const ExchangeMatrix& b) {
  const IntMatrix p = b.principal();
  if (!skew_symmetrizer(p)) fail(ErrorCode::NotSkewSymmetrizable, "principal part is not skew-symmetrizable");
  IntMatrix a(p.rows(), p.cols());
  for (std::size_t i = 0; i < p.rows(); ++i)
    for (std::size_t j = 0; j < p.cols(); ++j) a(i, j) = i == j ? 2 : -checked_abs(p(i, j));
  return CartanDatum(b.col_labels(), std::move(a));
}

/// Directed graph of positive entries of a square matrix has no directed cycle.
inline bool is_acyclic(const IntMatrix& m) {
  detail::require_square(m);
  const std::size_t n = m.rows();
  std::vector<int> indegree(n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j && m(i, j) > 0) ++indegree[j];
  std::queue<std::size_t> ready;
  for (std::size_t i = 0; i < n; ++i)
    if (indegree[i] == 0) ready.push(i);
  std::size_t seen = 0;
  while (!ready.empty()) {
    const std::size_t i = ready.front();
    ready.pop();
    ++seen;
    for (std::size_t j = 0; j < n; ++j)
      if (i != j && m(i, j) > 0 && --indegree[j] == 0) ready.push(j);
  }
  return seen == n;
}

}  // namespace foldclust
