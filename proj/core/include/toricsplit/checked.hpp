#pragma once

#include <cstdint>
#include <string>

#include "toricsplit/error.hpp"

// Overflow-checked int64 arithmetic. Every operation throws OverflowError
// instead of wrapping.
namespace toricsplit::checked {

__extension__ typedef __int128 Int128;

inline std::int64_t add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw OverflowError("integer overflow in addition");
  return r;
}

inline std::int64_t sub(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_sub_overflow(a, b, &r)) throw OverflowError("integer overflow in subtraction");
  return r;
}

inline std::int64_t mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw OverflowError("integer overflow in multiplication");
  return r;
}

inline std::int64_t neg(std::int64_t a) { return sub(0, a); }

inline std::int64_t narrow(Int128 v) {
  if (v > INT64_MAX || v < INT64_MIN) throw OverflowError("integer overflow narrowing 128-bit value");
  return static_cast<std::int64_t>(v);
}

/// 2^e as int64; e must be in [0, 62].
inline std::int64_t pow2(int e) {
  if (e < 0 || e > 62) throw OverflowError("2^" + std::to_string(e) + " is not representable");
  return std::int64_t{1} << e;
}

}  // namespace toricsplit::checked
