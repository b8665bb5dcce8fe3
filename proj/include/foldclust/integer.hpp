#pragma once

#include <cstdint>
#include <numeric>
#include <string>

#include "foldclust/error.hpp"

namespace foldclust {

using Int = std::int64_t;

// Overflow-checked arithmetic. Every exact computation in the library goes
// through these so that a silent wraparound can never masquerade as a result.

inline Int checked_add(Int a, Int b) {
  Int r;
  if (__builtin_add_overflow(a, b, &r))
    fail(ErrorCode::Overflow, "integer addition overflow");
  return r;
}

inline Int checked_sub(Int a, Int b) {
  Int r;
  if (__builtin_sub_overflow(a, b, &r))
    fail(ErrorCode::Overflow, "integer subtraction overflow");
  return r;
}

inline Int checked_mul(Int a, Int b) {
  Int r;
  if (__builtin_mul_overflow(a, b, &r))
    fail(ErrorCode::Overflow, "integer multiplication overflow");
  return r;
}

inline Int checked_abs(Int a) {
  if (a == INT64_MIN) fail(ErrorCode::Overflow, "integer abs overflow");
  return a < 0 ? -a : a;
}

inline Int checked_neg(Int a) {
  if (a == INT64_MIN) fail(ErrorCode::Overflow, "integer negation overflow");
  return -a;
}

inline Int checked_pow(Int base, Int exp) {
  Int r = 1;
  for (Int i = 0; i < exp; ++i) r = checked_mul(r, base);
  return r;
}

inline Int gcd(Int a, Int b) { return std::gcd(a, b); }

inline Int lcm(Int a, Int b) {
  if (a == 0 || b == 0) return 0;
  return checked_mul(checked_abs(a) / gcd(a, b), checked_abs(b));
}

}  // namespace foldclust
