#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "foldclust/error.hpp"
#include "foldclust/integer.hpp"

namespace foldclust {

namespace detail {

using IntPoly = std::vector<Int>;  // coefficient of x^k at index k

inline void trim(IntPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

// Exact quotient of integer polynomials with a monic divisor.
inline IntPoly poly_divide(IntPoly num, const IntPoly& den) {
  IntPoly q(num.size() >= den.size() ? num.size() - den.size() + 1 : 0, 0);
  for (std::size_t i = q.size(); i-- > 0;) {
    const Int c = num[i + den.size() - 1];
    q[i] = c;
    for (std::size_t k = 0; k < den.size(); ++k) num[i + k] = checked_sub(num[i + k], checked_mul(c, den[k]));
  }
  return q;
}

// Remainder modulo a monic polynomial.
inline IntPoly poly_mod(IntPoly num, const IntPoly& den) {
  trim(num);
  while (num.size() >= den.size()) {
    const Int c = num.back();
    const std::size_t shift = num.size() - den.size();
    for (std::size_t k = 0; k < den.size(); ++k) num[shift + k] = checked_sub(num[shift + k], checked_mul(c, den[k]));
    trim(num);
  }
  return num;
}

inline const IntPoly& cyclotomic_polynomial(Int n) {
  thread_local std::map<Int, IntPoly> cache;
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  IntPoly p(static_cast<std::size_t>(n) + 1, 0);
  p[0] = -1;
  p[static_cast<std::size_t>(n)] = 1;
  for (Int d = 1; d < n; ++d)
    if (n % d == 0) p = poly_divide(p, cyclotomic_polynomial(d));
  trim(p);
  return cache.emplace(n, std::move(p)).first->second;
}

}  // namespace detail

/// Element of Z[zeta_N], stored as coefficients of zeta^k (k < N) without
/// reduction; equality and rendering go through the remainder modulo Phi_N,
/// whose powers 1..zeta^{phi(N)-1} form a Z-basis.
class Cyclotomic {
 public:
  Cyclotomic() : n_(1), c_{0} {}
  Cyclotomic(Int value) : n_(1), c_{value} {}  // NOLINT: integers embed implicitly
  Cyclotomic(Int n, std::vector<Int> coeffs) : n_(n), c_(static_cast<std::size_t>(n), 0) {
    if (n < 1) fail(ErrorCode::InvalidCharacterTable, "cyclotomic order must be positive");
    for (std::size_t k = 0; k < coeffs.size(); ++k) {
      auto& slot = c_[k % static_cast<std::size_t>(n)];
      slot = checked_add(slot, coeffs[k]);
    }
  }

  /// zeta_n^k.
  static Cyclotomic root_of_unity(Int n, Int k) {
    std::vector<Int> c(static_cast<std::size_t>(n), 0);
    c[static_cast<std::size_t>(((k % n) + n) % n)] = 1;
    return Cyclotomic(n, std::move(c));
  }

  Int order() const { return n_; }

  /// Same value over zeta_m, m a multiple of N.
  Cyclotomic lifted(Int m) const {
    if (m % n_ != 0) fail(ErrorCode::InvalidCharacterTable, "cannot lift to a non-multiple order");
    std::vector<Int> c(static_cast<std::size_t>(m), 0);
    const Int step = m / n_;
    for (std::size_t k = 0; k < c_.size(); ++k) c[k * static_cast<std::size_t>(step)] = c_[k];
    return Cyclotomic(m, std::move(c));
  }

  Cyclotomic conj() const {
    std::vector<Int> c(c_.size(), 0);
    for (std::size_t k = 0; k < c_.size(); ++k) c[(c_.size() - k) % c_.size()] = c_[k];
    return Cyclotomic(n_, std::move(c));
  }

  friend Cyclotomic operator+(const Cyclotomic& a, const Cyclotomic& b) {
    const Int m = lcm(a.n_, b.n_);
    Cyclotomic x = a.lifted(m), y = b.lifted(m);
    for (std::size_t k = 0; k < x.c_.size(); ++k) x.c_[k] = checked_add(x.c_[k], y.c_[k]);
    return x;
  }
  friend Cyclotomic operator-(const Cyclotomic& a) {
    Cyclotomic x = a;
    for (auto& v : x.c_) v = checked_neg(v);
    return x;
  }
  friend Cyclotomic operator-(const Cyclotomic& a, const Cyclotomic& b) { return a + (-b); }
  friend Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b) {
    const Int m = lcm(a.n_, b.n_);
    const Cyclotomic x = a.lifted(m), y = b.lifted(m);
    std::vector<Int> out(static_cast<std::size_t>(m), 0);
    for (std::size_t i = 0; i < x.c_.size(); ++i) {
      if (x.c_[i] == 0) continue;
      for (std::size_t j = 0; j < y.c_.size(); ++j)
        if (y.c_[j] != 0) {
          auto& slot = out[(i + j) % out.size()];
          slot = checked_add(slot, checked_mul(x.c_[i], y.c_[j]));
        }
    }
    return Cyclotomic(m, std::move(out));
  }
  Cyclotomic& operator+=(const Cyclotomic& o) { return *this = *this + o; }

  /// Coefficients over 1, zeta, ..., zeta^{phi(N)-1}.
  std::vector<Int> reduced() const { return detail::poly_mod(c_, detail::cyclotomic_polynomial(n_)); }

  bool is_integer() const {
    const auto r = reduced();
    for (std::size_t k = 1; k < r.size(); ++k)
      if (r[k] != 0) return false;
    return true;
  }
  Int integer_value() const {
    if (!is_integer()) fail(ErrorCode::InvalidCharacterTable, "cyclotomic value is not a rational integer");
    const auto r = reduced();
    return r.empty() ? 0 : r[0];
  }

  friend bool operator==(const Cyclotomic& a, const Cyclotomic& b) {
    const Int m = lcm(a.n_, b.n_);
    return (a.lifted(m) - b.lifted(m)).reduced().empty();
  }

  std::string to_string() const {
    const auto r = reduced();
    if (r.empty()) return "0";
    std::string out;
    for (std::size_t k = 0; k < r.size(); ++k) {
      if (r[k] == 0) continue;
      const Int v = r[k];
      if (!out.empty()) out += v < 0 ? " - " : " + ";
      else if (v < 0) out += "-";
      const Int a = v < 0 ? -v : v;
      if (k == 0) out += std::to_string(a);
      else {
        if (a != 1) out += std::to_string(a) + "*";
        out += "z" + std::to_string(n_) + (k > 1 ? "^" + std::to_string(k) : "");
      }
    }
    return out;
  }

 private:
  Int n_;
  std::vector<Int> c_;
};

}  // namespace foldclust
