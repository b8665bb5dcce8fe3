#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "foldclust/error.hpp"
#include "foldclust/integer.hpp"

namespace foldclust {

using Exponent = std::vector<std::int32_t>;

/// Multivariate Laurent polynomial with integer coefficients over a fixed
/// number of variables. Terms are kept in lexicographic exponent order and
/// zero coefficients are never stored.
class LaurentPoly {
 public:
  LaurentPoly() = default;
  explicit LaurentPoly(std::size_t nvars) : nvars_(nvars) {}

  static LaurentPoly constant(std::size_t nvars, Int c) {
    LaurentPoly p(nvars);
    if (c != 0) p.terms_[Exponent(nvars, 0)] = c;
    return p;
  }

  static LaurentPoly variable(std::size_t nvars, std::size_t var, std::int32_t power = 1) {
    LaurentPoly p(nvars);
    Exponent e(nvars, 0);
    e[var] = power;
    p.terms_[e] = 1;
    return p;
  }

  static LaurentPoly monomial(Exponent e, Int c = 1) {
    LaurentPoly p(e.size());
    if (c != 0) p.terms_[std::move(e)] = c;
    return p;
  }

  std::size_t nvars() const { return nvars_; }
  const std::map<Exponent, Int>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  void add_term(const Exponent& e, Int c) {
    if (e.size() != nvars_) fail(ErrorCode::MalformedMatrix, "exponent length mismatch");
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
      it->second = checked_add(it->second, c);
      if (it->second == 0) terms_.erase(it);
    }
  }

  LaurentPoly& operator+=(const LaurentPoly& o) {
    check_compatible(o);
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }
  LaurentPoly& operator-=(const LaurentPoly& o) {
    check_compatible(o);
    for (const auto& [e, c] : o.terms_) add_term(e, checked_neg(c));
    return *this;
  }
  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }

  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
    a.check_compatible(b);
    LaurentPoly out(a.nvars_);
    Exponent e(a.nvars_);
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) {
        for (std::size_t i = 0; i < a.nvars_; ++i) e[i] = ea[i] + eb[i];
        out.add_term(e, checked_mul(ca, cb));
      }
    return out;
  }

  LaurentPoly pow(Int k) const {
    LaurentPoly out = constant(nvars_, 1);
    for (Int i = 0; i < k; ++i) out = out * *this;
    return out;
  }

  /// Multiplication by a Laurent monomial x^shift.
  LaurentPoly shifted(const Exponent& shift) const {
    LaurentPoly out(nvars_);
    for (const auto& [e, c] : terms_) {
      Exponent s = e;
      for (std::size_t i = 0; i < nvars_; ++i) s[i] += shift[i];
      out.terms_.emplace(std::move(s), c);
    }
    return out;
  }

  /// Componentwise minimum exponent; requires a nonzero polynomial.
  Exponent min_exponent() const {
    Exponent m = terms_.begin()->first;
    for (const auto& [e, c] : terms_)
      for (std::size_t i = 0; i < nvars_; ++i) m[i] = std::min(m[i], e[i]);
    return m;
  }

  /// Largest sum of absolute exponents over the terms.
  Int degree() const {
    Int d = 0;
    for (const auto& [e, c] : terms_) {
      Int s = 0;
      for (auto x : e) s += x < 0 ? -x : x;
      d = std::max(d, s);
    }
    return d;
  }

  /// Exact quotient in the Laurent ring; InexactDivision when none exists.
  LaurentPoly divide_exact(const LaurentPoly& d) const {
    check_compatible(d);
    if (d.is_zero()) fail(ErrorCode::InexactDivision, "division by zero");
    if (is_zero()) return LaurentPoly(nvars_);
    // Strip monomial factors so both sides are polynomials with no variable
    // dividing them; the quotient is then a polynomial if it exists.
    const Exponent dmin = d.min_exponent(), nmin = min_exponent();
    Exponent neg_d(nvars_), neg_n(nvars_), result_shift(nvars_);
    for (std::size_t i = 0; i < nvars_; ++i) {
      neg_d[i] = -dmin[i];
      neg_n[i] = -nmin[i];
      result_shift[i] = nmin[i] - dmin[i];
    }
    const LaurentPoly divisor = d.shifted(neg_d);
    LaurentPoly remainder = shifted(neg_n);
    LaurentPoly quotient(nvars_);
    const auto& [lead_e, lead_c] = *divisor.terms_.rbegin();
    while (!remainder.is_zero()) {
      const auto [re, rc] = *remainder.terms_.rbegin();
      Exponent qe(nvars_);
      for (std::size_t i = 0; i < nvars_; ++i) {
        qe[i] = re[i] - lead_e[i];
        if (qe[i] < 0) fail(ErrorCode::InexactDivision, "Laurent division is not exact");
      }
      if (rc % lead_c != 0) fail(ErrorCode::InexactDivision, "Laurent division is not exact over Z");
      const LaurentPoly q = monomial(qe, rc / lead_c);
      quotient += q;
      remainder -= q * divisor;
    }
    return quotient.shifted(result_shift);
  }

  /// Sets the listed variables to 1.
  LaurentPoly specialize_to_one(const std::vector<std::size_t>& vars) const {
    LaurentPoly out(nvars_);
    for (const auto& [e, c] : terms_) {
      Exponent s = e;
      for (auto v : vars) s[v] = 0;
      out.add_term(s, c);
    }
    return out;
  }

  /// Canonical text form, also used as a dedup key.
  std::string serialize() const {
    std::string out;
    for (const auto& [e, c] : terms_) {
      out += std::to_string(c) + "[";
      for (std::size_t i = 0; i < e.size(); ++i) out += (i ? "," : "") + std::to_string(e[i]);
      out += "]";
    }
    return out.empty() ? "0" : out;
  }

  /// Human-readable rendering with the given variable names.
  std::string to_string(const std::vector<std::string>& names) const {
    if (is_zero()) return "0";
    auto render = [&](const Exponent& e) {
      std::string num, den;
      for (std::size_t i = 0; i < e.size(); ++i) {
        if (e[i] == 0) continue;
        std::string& part = e[i] > 0 ? num : den;
        const int p = e[i] > 0 ? e[i] : -e[i];
        if (!part.empty()) part += "*";
        part += names[i] + (p > 1 ? "^" + std::to_string(p) : "");
      }
      return std::pair{num, den};
    };
    std::string out;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      auto [num, den] = render(it->first);
      Int c = it->second;
      if (!out.empty()) out += c < 0 ? " - " : " + ";
      else if (c < 0) out += "-";
      c = c < 0 ? -c : c;
      std::string mono = num.empty() ? "" : num;
      if (c != 1 || mono.empty()) mono = std::to_string(c) + (mono.empty() ? "" : "*" + mono);
      if (!den.empty()) mono += "/(" + den + ")";
      out += mono;
    }
    return out;
  }

  friend bool operator==(const LaurentPoly&, const LaurentPoly&) = default;
  friend bool operator<(const LaurentPoly& a, const LaurentPoly& b) { return a.terms_ < b.terms_; }

 private:
  void check_compatible(const LaurentPoly& o) const {
    if (o.nvars_ != nvars_) fail(ErrorCode::MalformedMatrix, "Laurent polynomials over different variable sets");
  }

  std::size_t nvars_ = 0;
  std::map<Exponent, Int> terms_;
};

}  // namespace foldclust
