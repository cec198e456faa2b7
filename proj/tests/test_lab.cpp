#include "polyform/lab.hpp"

#include <algorithm>

#include "doctest.h"

using namespace polyform;

TEST_CASE("ceil_log2") {
  CHECK(ceil_log2(1) == 0);
  CHECK(ceil_log2(2) == 1);
  CHECK(ceil_log2(7) == 3);
  CHECK(ceil_log2(8) == 3);
  CHECK(ceil_log2(9) == 4);
  CHECK_THROWS_AS(ceil_log2(0), std::invalid_argument);
}

TEST_CASE("unit-coefficient counts follow the closed formula") {
  auto report = check_ell(3, 14, 20000);
  REQUIRE(report.per_m.size() == 12);
  CHECK(report.all_match());
  CHECK(report.per_m[0].observed == "3");    // m = 3
  CHECK(report.per_m[4].observed == "4");    // m = 7
  CHECK(report.per_m[9].observed == "8");    // m = 12
}

TEST_CASE("predicted rank formulas") {
  CHECK(predicted_min_rank(20) == 5);   // s = 12 >= 2
  CHECK(predicted_min_rank(10) == 4);   // s = -2
  CHECK(predicted_min_rank(35) == 6);   // s = -3
  CHECK(predicted_min_rank(5) == 2);
  CHECK_THROWS_AS(predicted_min_rank(4), std::invalid_argument);
  CHECK(predicted_max_rank(9) == 7);
  CHECK(predicted_max_rank(11) == 8);   // 11 = 2 mod 3
  CHECK(predicted_max_rank(12) == 10);
}

TEST_CASE("power-of-two near-miss forms per s") {
  auto one = power2_near_misses(35);  // s = -3
  REQUIRE(one.size() == 1);
  CHECK(one[0].form.coeffs == std::vector<i64>{1, 2, 4, 8, 16});
  CHECK(one[0].stated_missed == 33);

  CHECK(power2_near_misses(34).size() == 2);  // s = -2
  CHECK(power2_near_misses(33).size() == 3);  // s = -1
  CHECK(power2_near_misses(32).size() == 5);  // s = 0
  auto seven = power2_near_misses(31);        // s = 1
  REQUIRE(seven.size() == 7);
  CHECK(seven[0].stated_missed == 5 * 29 - 1);
  CHECK(seven.back().form.coeffs == std::vector<i64>{1, 2, 4, 7, 13});
  for (const auto& miss : seven) CHECK_NOTHROW(miss.form.validate());

  CHECK_THROWS_AS(power2_near_misses(30), std::invalid_argument);  // s = 2
}

TEST_CASE("power-of-two forms behave as stated at a moderate bound") {
  auto low = check_power2_forms({31, 32, 33, 34, 35}, 50000);
  CHECK(low.all_match());
  // The observed strings carry the computed truants, including the ones
  // smaller than the stated missed value.
  CHECK(low.per_m[0].observed.find("m=31 [1,2,4,8,16] truant 119") != std::string::npos);
  CHECK(low.per_m[1].observed.find("m=32 [1,2,4,8,15] truant 45") != std::string::npos);
}

TEST_CASE("five equal coefficients cover the multiples grid") {
  CHECK(check_multiples_lemma(3, 10, 20));
  CHECK(check_multiples_lemma(1, 3, 20));
  CHECK(check_multiples_lemma(12, 30, 20));
  CHECK_THROWS_AS(check_multiples_lemma(0, 10, 5), std::invalid_argument);
  CHECK_THROWS_AS(check_multiples_lemma(3, 10, 0), std::invalid_argument);
}

TEST_CASE("three-heavy and all-ones leaf families") {
  SearchConfig cfg;
  cfg.bound = 20000;
  for (i64 m : {9, 12, 14}) {
    auto report = check_leaf_families(m, cfg);
    CAPTURE(m);
    REQUIRE(report.per_m.size() == 4);
    CHECK(report.all_match());
  }
  CHECK_THROWS_AS(check_leaf_families(8, cfg), std::invalid_argument);
}

TEST_CASE("node proposition holds on a full small tree") {
  SearchConfig cfg;
  cfg.bound = 200;
  auto full = check_node_proposition(8, cfg);
  CHECK(full.pass);
  CHECK(!full.truncated);
  auto count = build_tree(8, cfg).node_count;
  CHECK(full.nodes_checked == count);

  auto sampled = check_node_proposition(8, cfg, 10);
  CHECK(sampled.pass);
  CHECK(sampled.nodes_checked == 10);
  auto again = check_node_proposition(8, cfg, 10);
  CHECK(sampled.nodes_checked == again.nodes_checked);

  SearchConfig tight = cfg;
  tight.node_budget = 3;
  auto truncated = check_node_proposition(8, tight);
  CHECK(truncated.truncated);
  CHECK(!truncated.pass);
}

TEST_CASE("rank extremes against the closed formulas") {
  SearchConfig cfg;
  cfg.bound = 64;
  auto small = check_rank_extremes(3, 3, cfg);
  REQUIRE(small.per_m.size() == 1);
  CHECK(small.per_m[0].verdict == Verdict::untested);

  auto ten = check_rank_extremes(10, 10, cfg);
  REQUIRE(ten.per_m.size() == 1);
  CHECK(ten.per_m[0].verdict == Verdict::matches);
  CHECK(ten.per_m[0].observed == "r=4 R=8");
}

TEST_CASE("slow-escalation prefixes are well formed") {
  const auto& prefixes = slow_escalation_prefixes();
  CHECK(prefixes.size() > 100);
  for (const auto& p : prefixes) {
    CHECK(p.a >= 1);
    CHECK(p.a <= 12);
    for (i64 c : p.prefix) CHECK(c <= p.a);
    CHECK(std::is_sorted(p.prefix.begin(), p.prefix.end()));
  }
}

TEST_CASE("repeated-coefficient extensions close under the rank cap") {
  auto results = check_table1(14, 20000);
  REQUIRE(results.size() == slow_escalation_prefixes().size());
  CHECK(results[0].entry.a == 1);
  CHECK(results[0].minimal_rank == 10);  // all-ones closes at m - 4
  for (const auto& r : results) {
    CAPTURE(r.entry.a);
    CHECK(r.minimal_rank > i64(r.entry.prefix.size()));
    CHECK(r.minimal_rank <= 14 + 5);
  }
}
