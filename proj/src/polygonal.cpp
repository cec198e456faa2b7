#include "polyform/polygonal.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace polyform {

namespace {

using i128 = __int128;

i64 isqrt(i128 n) {
  if (n < 0) return -1;
  i64 r = static_cast<i64>(std::sqrt(static_cast<long double>(n)));
  while (r > 0 && i128(r) * r > n) --r;
  while (i128(r + 1) * (r + 1) <= n) ++r;
  return r;
}

}  // namespace

i64 eval_polygonal(i64 m, i64 x) {
  if (m < 3 || m > kMaxGonality)
    throw std::out_of_range("eval_polygonal: gonality out of range");
  if (x > kMaxIndexMagnitude || x < -kMaxIndexMagnitude)
    throw std::out_of_range("eval_polygonal: index out of range");
  i128 v = (i128(m - 2) * x * x - i128(m - 4) * x) / 2;
  if (v < 0 || v > INT64_MAX)
    throw std::out_of_range("eval_polygonal: value exceeds 64 bits");
  return static_cast<i64>(v);
}

std::vector<i64> enumerate_values(i64 m, i64 bound) {
  if (m < 3) throw std::out_of_range("enumerate_values: gonality out of range");
  if (bound < 0) return {};
  std::vector<i64> out;
  // P_m is non-decreasing along x = 0,1,2,... and along x = 0,-1,-2,...,
  // so each direction can stop at the first value beyond the bound.
  for (i64 x = 0; x <= kMaxIndexMagnitude; ++x) {
    i64 v = eval_polygonal(m, x);
    if (v > bound) break;
    out.push_back(v);
  }
  for (i64 x = -1; x >= -kMaxIndexMagnitude; --x) {
    i64 v = eval_polygonal(m, x);
    if (v > bound) break;
    out.push_back(v);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::optional<i64> polygonal_index_of(i64 m, i64 n) {
  if (m < 3) throw std::out_of_range("polygonal_index_of: gonality out of range");
  if (n < 0) return std::nullopt;
  // (m-2)x^2 - (m-4)x - 2n = 0; x is integral iff the discriminant is a
  // perfect square and the root divides out exactly.
  i128 disc = i128(m - 4) * (m - 4) + i128(8) * n * (m - 2);
  i64 s = isqrt(disc);
  if (i128(s) * s != disc) return std::nullopt;
  std::optional<i64> best;
  for (i64 num : {(m - 4) + s, (m - 4) - s}) {
    if (num % (2 * (m - 2)) != 0) continue;
    i64 x = num / (2 * (m - 2));
    if (eval_polygonal(m, x) != n) continue;
    if (!best || std::abs(x) < std::abs(*best) ||
        (std::abs(x) == std::abs(*best) && x > *best))
      best = x;
  }
  return best;
}

}  // namespace polyform
