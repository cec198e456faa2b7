#include "polyform/rep_table.hpp"

#include <random>
#include <set>
#include <sstream>

#include "doctest.h"

using namespace polyform;

namespace {

// Nested-loop oracle, independent of the bitset fold. Handles rank <= 3.
std::set<i64> oracle_bits(const MGonalForm& form, i64 bound) {
  std::set<i64> reachable{0};
  for (i64 a : form.coeffs) {
    std::set<i64> next;
    for (i64 base : reachable)
      for (i64 v : enumerate_values(form.m, bound))
        if (base + a * v <= bound) next.insert(base + a * v);
    reachable = next;
  }
  return reachable;
}

std::set<i64> table_bits(const RepTable& t) {
  std::set<i64> out;
  for (i64 n = 0; n <= t.bound(); ++n)
    if (t.test(n)) out.insert(n);
  return out;
}

}  // namespace

TEST_CASE("build_table worked examples") {
  CHECK(table_bits(RepTable::build({3, {1}}, 10)) ==
        std::set<i64>{0, 1, 3, 6, 10});
  CHECK(table_bits(RepTable::build({4, {}}, 5)) == std::set<i64>{0});
  auto triple = RepTable::build({3, {1, 1, 1}}, 50);
  for (i64 n = 0; n <= 50; ++n) CHECK(triple.test(n));
}

TEST_CASE("extend_table worked examples") {
  auto base = RepTable::build({3, {1}}, 10);
  CHECK(table_bits(base.extended(2)) ==
        std::set<i64>{0, 1, 2, 3, 5, 6, 7, 8, 9, 10});
  auto penta = RepTable::build({5, {}}, 5).extended(1);
  CHECK(table_bits(penta) == std::set<i64>{0, 1, 2, 5});
  // A coefficient beyond the bound adds nothing.
  CHECK(table_bits(base.extended(11)) == table_bits(base));
  CHECK_THROWS_AS(RepTable::build({3, {2}}, 10).extended(1),
                  std::invalid_argument);
}

TEST_CASE("truant worked examples") {
  auto t1 = RepTable::build({3, {1}}, 10).truant();
  CHECK(t1.truant == 2);
  CHECK(RepTable::build({3, {1, 1, 1}}, 50).truant().universal());
  auto t3 = RepTable::build({35, {1, 2, 4, 8, 16}}, 100).truant();
  CHECK(t3.truant == 33);  // m - 2
}

TEST_CASE("build_table matches the nested-loop oracle on a seeded grid") {
  std::mt19937_64 rng(20260823);
  for (int trial = 0; trial < 200; ++trial) {
    i64 m = 3 + i64(rng() % 10);
    i64 n = i64(rng() % 4);
    std::vector<i64> coeffs;
    for (i64 i = 0; i < n; ++i) coeffs.push_back(1 + i64(rng() % 5));
    std::sort(coeffs.begin(), coeffs.end());
    i64 bound = 1 + i64(rng() % 200);
    MGonalForm form{m, coeffs};
    CAPTURE(form.to_string());
    CAPTURE(bound);
    CHECK(table_bits(RepTable::build(form, bound)) == oracle_bits(form, bound));
  }
}

TEST_CASE("extension is monotone: no bit is ever cleared") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    i64 m = 3 + i64(rng() % 10);
    i64 bound = 50 + i64(rng() % 150);
    auto parent = RepTable::build({m, {1}}, bound);
    i64 a = 1 + i64(rng() % 4);
    auto child = parent.extended(a);
    for (i64 v = 0; v <= bound; ++v)
      if (parent.test(v)) CHECK(child.test(v));
  }
}

TEST_CASE("serialization round-trips and rejects corruption") {
  auto table = RepTable::build({3, {1, 1}}, 100);
  std::stringstream buf;
  table.serialize(buf);
  auto back = RepTable::deserialize(buf);
  CHECK(back.form() == table.form());
  CHECK(back.bound() == table.bound());
  CHECK(back.words() == table.words());

  std::stringstream buf2;
  table.serialize(buf2);
  std::string bytes = buf2.str();
  bytes[bytes.size() / 2] ^= 0x40;
  std::stringstream corrupted(bytes);
  CHECK_THROWS_AS(RepTable::deserialize(corrupted), std::runtime_error);
}

TEST_CASE("decompose produces exact witnesses") {
  const i64 m = 35;
  auto d = decompose({m, {1, 2, 4}}, 116 * 33 + 11, 100);
  REQUIRE(d.status == DecomposeStatus::found);
  i64 total = 0;
  const std::vector<i64> coeffs{1, 2, 4};
  for (std::size_t i = 0; i < 3; ++i)
    total += coeffs[i] * eval_polygonal(m, d.witness[i]);
  CHECK(total == 116 * 33 + 11);

  auto zero = decompose({9, {1}}, 0, 10);
  REQUIRE(zero.status == DecomposeStatus::found);
  CHECK(zero.witness == std::vector<i64>{0});

  auto pair = decompose({12, {1, 1}}, 6 * 10 + 6, 100);
  REQUIRE(pair.status == DecomposeStatus::found);
  CHECK(eval_polygonal(12, pair.witness[0]) + eval_polygonal(12, pair.witness[1]) == 66);
}

TEST_CASE("decompose separates absent from inconclusive") {
  // 2 is not a 9-gonal value and [1] cannot reach it; full coverage at this
  // radius, so the verdict is a hard absence.
  CHECK(decompose({9, {1}}, 2, 100).status == DecomposeStatus::absent);
  // Radius 1 only sees P_9 values {0, 1, 9}; coverage of [0, 24] is not
  // provable, so a miss must stay inconclusive.
  CHECK(decompose({9, {1}}, 24, 1).status == DecomposeStatus::inconclusive);
  CHECK(decompose({9, {}}, 1, 10).status == DecomposeStatus::absent);
  CHECK(decompose({9, {}}, 0, 10).status == DecomposeStatus::found);
}

TEST_CASE("form validation") {
  CHECK_THROWS_AS((MGonalForm{2, {1}}).validate(), std::invalid_argument);
  CHECK_THROWS_AS((MGonalForm{5, {2, 1}}).validate(), std::invalid_argument);
  CHECK_THROWS_AS((MGonalForm{5, {0}}).validate(), std::invalid_argument);
  CHECK_NOTHROW((MGonalForm{5, {1, 1, 3}}).validate());
}
