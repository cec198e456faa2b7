#include "polyform/polygonal.hpp"

#include <set>
#include <stdexcept>

#include "doctest.h"

using namespace polyform;

namespace {

// Independent oracle: collect values by scanning a generous index window.
std::vector<i64> naive_values(i64 m, i64 bound) {
  std::set<i64> vals;
  for (i64 x = -4000; x <= 4000; ++x) {
    i64 v = eval_polygonal(m, x);
    if (v <= bound) vals.insert(v);
  }
  return {vals.begin(), vals.end()};
}

}  // namespace

TEST_CASE("eval_polygonal matches hand-computed values") {
  CHECK(eval_polygonal(7, 0) == 0);
  CHECK(eval_polygonal(7, 1) == 1);
  CHECK(eval_polygonal(35, -1) == 32);  // m - 3
  CHECK(eval_polygonal(12, 2) == 12);   // P_m(2) = m
  CHECK(eval_polygonal(5, -2) == 7);
  CHECK(eval_polygonal(3, 3) == 6);
  CHECK(eval_polygonal(4, -5) == 25);
}

TEST_CASE("eval_polygonal guards its domain") {
  CHECK_THROWS_AS(eval_polygonal(2, 1), std::out_of_range);
  CHECK_THROWS_AS(eval_polygonal(7, (i64(1) << 30) + 1), std::out_of_range);
  CHECK_THROWS_AS(eval_polygonal(7, -(i64(1) << 30) - 1), std::out_of_range);
  CHECK_NOTHROW(eval_polygonal(7, i64(1) << 30));
}

TEST_CASE("triangular decomposition P_m(x) = (m-2) P_3(x-1) + x") {
  for (i64 m : {3, 4, 5, 8, 12, 35, 100}) {
    for (i64 x = -10000; x <= 10000; x += 37) {
      CHECK(eval_polygonal(m, x) == (m - 2) * eval_polygonal(3, x - 1) + x);
    }
  }
}

TEST_CASE("triangular symmetry P_3(x) = P_3(-x-1)") {
  for (i64 x = -10000; x <= 10000; x += 97)
    CHECK(eval_polygonal(3, x) == eval_polygonal(3, -x - 1));
}

TEST_CASE("enumerate_values worked examples") {
  CHECK(enumerate_values(3, 10) == std::vector<i64>{0, 1, 3, 6, 10});
  CHECK(enumerate_values(4, 9) == std::vector<i64>{0, 1, 4, 9});
  CHECK(enumerate_values(10, 10) == std::vector<i64>{0, 1, 7, 10});
  CHECK(enumerate_values(5, -1).empty());
}

TEST_CASE("enumerate_values agrees with the naive oracle") {
  for (i64 m = 3; m <= 30; ++m) {
    auto got = enumerate_values(m, 10000);
    CHECK(got == naive_values(m, 10000));
    for (std::size_t i = 1; i < got.size(); ++i) CHECK(got[i - 1] < got[i]);
  }
}

TEST_CASE("polygonal_index_of inverts eval") {
  CHECK(polygonal_index_of(3, 6) == 3);
  CHECK(polygonal_index_of(9, 1) == 1);
  CHECK(!polygonal_index_of(9, 2).has_value());
  for (i64 m : {3, 4, 7, 19}) {
    for (i64 x = -300; x <= 300; ++x) {
      auto back = polygonal_index_of(m, eval_polygonal(m, x));
      REQUIRE(back.has_value());
      CHECK(eval_polygonal(m, *back) == eval_polygonal(m, x));
    }
  }
}

TEST_CASE("polygonal_index_of prefers small indices, positive on tie") {
  CHECK(polygonal_index_of(3, 0) == 0);
  CHECK(polygonal_index_of(4, 4) == 2);   // x = +-2; positive wins
  CHECK(polygonal_index_of(3, 1) == 1);   // P_3(1) = P_3(-2) = 1
}
