#pragma once

#include <cstdint>
#include <optional>
#include <vector>

namespace polyform {

using i64 = std::int64_t;

// Largest |x| accepted by eval_polygonal; keeps the quadratic inside 64 bits
// for every gonality this library accepts.
inline constexpr i64 kMaxIndexMagnitude = i64(1) << 30;
inline constexpr i64 kMaxGonality = i64(1) << 32;

/// x-th generalized m-gonal number, ((m-2)x^2 - (m-4)x) / 2.
/// Throws std::out_of_range when m < 3 or the guard |x| <= 2^30 is violated.
i64 eval_polygonal(i64 m, i64 x);

/// All generalized m-gonal values in [0, bound], strictly increasing.
std::vector<i64> enumerate_values(i64 m, i64 bound);

/// Some x with eval_polygonal(m, x) == n, or empty if n is not an m-gonal
/// value. Prefers the index of smallest absolute value, positive on tie.
std::optional<i64> polygonal_index_of(i64 m, i64 n);

}  // namespace polyform
