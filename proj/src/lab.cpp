#include "polyform/lab.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace polyform {

namespace {

std::string str(i64 v) { return std::to_string(v); }

MVerdict verdict_entry(i64 m, bool match, std::string observed,
                       std::string predicted, std::string note = "") {
  return {m, match ? Verdict::matches : Verdict::differs, std::move(observed),
          std::move(predicted), std::move(note)};
}

}  // namespace

bool ConjectureReport::all_match() const {
  return std::all_of(per_m.begin(), per_m.end(), [](const MVerdict& v) {
    return v.verdict == Verdict::matches;
  });
}

std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::matches: return "matches";
    case Verdict::differs: return "differs";
    default: return "untested";
  }
}

i64 ceil_log2(i64 k) {
  if (k < 1) throw std::invalid_argument("ceil_log2: k must be >= 1");
  i64 n = 0;
  while ((i64(1) << n) < k) ++n;
  return n;
}

ConjectureReport check_ell(i64 m_lo, i64 m_hi, i64 bound) {
  ConjectureReport report;
  report.claim_id = "ell";
  for (i64 m = m_lo; m <= m_hi; ++m) {
    i64 predicted = m >= 9 ? m - 4 : (m == 3 || m == 5 || m == 6 ? 3 : 4);
    RepTable table = RepTable::build(MGonalForm{m, {}}, bound);
    i64 observed = -1;
    for (i64 k = 1; k <= std::max<i64>(m, 8); ++k) {
      table = table.extended(1);
      if (table.truant().universal()) {
        observed = k;
        break;
      }
    }
    report.per_m.push_back(
        verdict_entry(m, observed == predicted, str(observed), str(predicted)));
  }
  return report;
}

i64 predicted_min_rank(i64 m) {
  if (m < 5) throw std::invalid_argument("predicted_min_rank: m must be >= 5");
  i64 n = ceil_log2(m - 3);
  i64 s = (i64(1) << n) - m;
  return s >= 2 ? n : n + 1;
}

i64 predicted_max_rank(i64 m) { return m % 3 == 2 ? m - 3 : m - 2; }

namespace {

std::vector<i64> pow2_coeffs(i64 n) {
  std::vector<i64> c;
  for (i64 i = 0; i < n; ++i) c.push_back(i64(1) << i);
  return c;
}

}  // namespace

std::vector<NearMissForm> power2_near_misses(i64 m) {
  i64 n = ceil_log2(m - 3);
  i64 s = (i64(1) << n) - m;
  if (s < -3 || s > 1)
    throw std::invalid_argument("power2_near_misses: needs -3 <= s <= 1");
  auto with_tail = [&](i64 second_last_delta, i64 last_delta) {
    std::vector<i64> c = pow2_coeffs(n);
    c[static_cast<std::size_t>(n - 2)] -= second_last_delta;
    c[static_cast<std::size_t>(n - 1)] -= last_delta;
    return MGonalForm{m, c};
  };
  std::vector<NearMissForm> out;
  switch (s) {
    case -3:
      out = {{with_tail(0, 0), m - 2}};
      break;
    case -2:
      out = {{with_tail(0, 0), m - 2}, {with_tail(0, 1), m - 2}};
      break;
    case -1:
      out = {{with_tail(0, 0), 2 * m - 4},
             {with_tail(0, 1), m - 2},
             {with_tail(0, 2), m - 2}};
      break;
    case 0:
      out = {{with_tail(0, 0), 2 * m - 3},
             {with_tail(0, 1), 2 * m - 4},
             {with_tail(0, 2), m - 2},
             {with_tail(0, 3), m - 2},
             {with_tail(1, 2), m - 2}};
      break;
    default:  // s == 1
      out = {{with_tail(0, 0), 5 * (m - 2) - 1},
             {with_tail(0, 1), 2 * m - 3},
             {with_tail(0, 2), 2 * m - 4},
             {with_tail(0, 3), m - 2},
             {with_tail(0, 4), m - 2},
             {with_tail(1, 2), m - 2},
             {with_tail(1, 3), m - 2}};
      break;
  }
  return out;
}

ConjectureReport check_power2_forms(const std::vector<i64>& ms, i64 bound) {
  ConjectureReport report;
  report.claim_id = "power2";
  for (i64 m : ms) {
    i64 n = ceil_log2(m - 3);
    i64 s = (i64(1) << n) - m;
    if (s >= 2) {
      auto t = RepTable::build(MGonalForm{m, pow2_coeffs(n)}, bound).truant();
      std::string observed =
          t.universal() ? "B-universal" : "truant " + str(*t.truant);
      report.per_m.push_back(verdict_entry(
          m, t.universal(), observed, "B-universal",
          "s=" + str(s) + " rank-" + str(n) + " power-of-two form"));
      continue;
    }
    bool ok = true;
    std::ostringstream observed, predicted;
    auto tall = RepTable::build(MGonalForm{m, pow2_coeffs(n + 1)}, bound).truant();
    ok = tall.universal();
    observed << "rank-" << n + 1 << (tall.universal()
                                         ? " B-universal"
                                         : " truant " + str(*tall.truant));
    predicted << "rank-" << n + 1 << " B-universal";
    for (const auto& miss : power2_near_misses(m)) {
      auto table = RepTable::build(miss.form, bound);
      auto t = table.truant();
      bool match = table.represents_all_up_to(m - 4) &&
                   !table.test(miss.stated_missed) && !t.universal();
      ok = ok && match;
      observed << "; " << miss.form.to_string() << " truant "
               << (t.universal() ? std::string("none") : str(*t.truant));
      predicted << "; covers [1," << m - 4 << "], misses " << miss.stated_missed;
    }
    report.per_m.push_back(verdict_entry(m, ok, observed.str(), predicted.str(),
                                         "s=" + str(s)));
  }
  return report;
}

ConjectureReport check_rank_extremes(i64 m_lo, i64 m_hi, const SearchConfig& cfg) {
  ConjectureReport report;
  report.claim_id = "rank-extremes";
  for (i64 m = m_lo; m <= m_hi; ++m) {
    SearchConfig per_m = cfg;
    per_m.bound = std::max(cfg.bound, m);
    StabilizedReport stab = stabilize_gamma(m, per_m);
    if (stab.report.truncated || !stab.converged) {
      report.per_m.push_back({m, Verdict::untested, "", "",
                              stab.report.truncated ? "budget" : "no convergence"});
      continue;
    }
    std::string observed = "r=" + str(stab.report.min_leaf_rank) +
                           " R=" + str(stab.report.max_leaf_rank);
    if (m < 5) {
      report.per_m.push_back(
          {m, Verdict::untested, observed, "", "out-of-range"});
      continue;
    }
    i64 pr = predicted_min_rank(m);
    i64 pR = predicted_max_rank(m);
    std::string predicted = "r=" + str(pr) + " R=" + str(pR);
    bool match = stab.report.min_leaf_rank == pr && stab.report.max_leaf_rank == pR;
    report.per_m.push_back(verdict_entry(
        m, match, observed, predicted,
        "formulas are asymptotic; small-m disagreement is evidence only"));
  }
  return report;
}

bool check_multiples_lemma(i64 a, i64 m, i64 count) {
  if (a < 1 || count < 1)
    throw std::invalid_argument("check_multiples_lemma: positive a, count");
  i64 bound = count * a * (m - 2);
  RepTable table = RepTable::build(MGonalForm{m, {a, a, a, a, a}}, bound);
  for (i64 k = 1; k <= count; ++k)
    if (!table.test(k * a * (m - 2))) return false;
  return true;
}

namespace {

MGonalForm threes_form(i64 m, std::vector<i64> head, i64 three_count) {
  for (i64 i = 0; i < three_count; ++i) head.push_back(3);
  return MGonalForm{m, std::move(head)};
}

}  // namespace

ConjectureReport check_leaf_families(i64 m, const SearchConfig& cfg) {
  if (m < 9)
    throw std::invalid_argument("check_leaf_families: m must be >= 9");
  ConjectureReport report;
  report.claim_id = "leaf-families";
  const i64 bound = cfg.bound;

  // (a) The universal 3-heavy forms that cap the non-leaf family.
  MGonalForm univ = m % 3 == 0   ? threes_form(m, {1, 2}, (2 * m - 3) / 3 - 2)
                    : m % 3 == 1 ? threes_form(m, {1, 2}, (2 * m - 5) / 3 - 2)
                                 : threes_form(m, {1, 1}, (2 * m - 4) / 3 - 2);
  auto tu = RepTable::build(univ, bound).truant();
  report.per_m.push_back(verdict_entry(
      m, tu.universal(),
      tu.universal() ? "B-universal" : "truant " + str(*tu.truant),
      "B-universal", univ.to_string()));

  // (b) The maximal-rank non-leaf and its stated truant.
  MGonalForm nonleaf = m % 3 == 2 ? threes_form(m, {1, 2}, m - 6)
                                  : threes_form(m, {1, 1}, m - 5);
  i64 expected_truant = m % 3 == 0 ? 3 * m - 10 : 3 * m - 12;
  auto tn = RepTable::build(nonleaf, bound).truant();
  bool tn_match = !tn.universal() && *tn.truant == expected_truant;
  report.per_m.push_back(verdict_entry(
      m, tn_match,
      tn.universal() ? "B-universal" : "truant " + str(*tn.truant),
      "truant " + str(expected_truant), nonleaf.to_string()));

  // (c) The all-ones node: truant m-4, and every child is B-universal.
  MGonalForm ones{m, std::vector<i64>(static_cast<std::size_t>(m - 5), 1)};
  RepTable ones_table = RepTable::build(ones, bound);
  auto to = ones_table.truant();
  bool ones_match = !to.universal() && *to.truant == m - 4;
  report.per_m.push_back(verdict_entry(
      m, ones_match,
      to.universal() ? "B-universal" : "truant " + str(*to.truant),
      "truant " + str(m - 4), ones.to_string()));
  bool children_ok = true;
  for (i64 a = 1; a <= m - 4 && children_ok; ++a)
    children_ok = ones_table.extended(a).truant().universal();
  report.per_m.push_back(verdict_entry(
      m, children_ok, children_ok ? "all B-universal" : "non-universal child",
      "all B-universal", "children of the all-ones node"));
  return report;
}

NodePropositionResult check_node_proposition(i64 m, const SearchConfig& cfg,
                                             i64 sample_size) {
  NodePropositionResult result;
  // Two passes: the first counts nodes so the sample spreads evenly.
  TreeReport count_pass = build_tree(m, cfg, {});
  if (count_pass.truncated) {
    result.truncated = true;
    result.pass = false;
    return result;
  }
  const i64 total = count_pass.node_count;
  const i64 wanted = sample_size <= 0 ? total : std::min(sample_size, total);
  i64 index = 0;
  build_tree(m, cfg, [&](const EscalatorNode& node, const RepTable& table) {
    bool take = (index * wanted) / total != ((index + 1) * wanted) / total;
    ++index;
    if (!take) return;
    ++result.nodes_checked;
    i64 upto = std::min(node.form.coeff_sum(), cfg.bound);
    if (result.pass && !table.represents_all_up_to(upto)) {
      result.pass = false;
      result.offending_form = node.form.to_string();
    }
  });
  return result;
}

const std::vector<SlowPrefix>& slow_escalation_prefixes() {
  static const std::vector<SlowPrefix> table = {
      {1, {}},
      {2, {1}},
      {3, {1, 1}}, {3, {1, 2}},
      {4, {1, 1, 1}}, {4, {1, 1, 2}}, {4, {1, 1, 3}}, {4, {1, 2}},
      {5, {1, 1, 1, 1}}, {5, {1, 1, 1, 2}}, {5, {1, 1, 1, 3}},
      {5, {1, 1, 1, 4}}, {5, {1, 2, 2}}, {5, {1, 2, 3}}, {5, {1, 2, 4}},
      {6, {1, 1, 1, 1, 1}}, {6, {1, 1, 1, 1, 2}}, {6, {1, 1, 1, 1, 3}},
      {6, {1, 1, 1, 1, 4}}, {6, {1, 1, 1, 1, 5}}, {6, {1, 1, 1, 2}},
      {6, {1, 1, 1, 3}}, {6, {1, 1, 1, 4}}, {6, {1, 1, 2, 2}},
      {6, {1, 1, 2, 3}}, {6, {1, 1, 2, 4}}, {6, {1, 1, 2, 5}},
      {6, {1, 2, 2}}, {6, {1, 2, 3}}, {6, {1, 2, 4}},
      {7, {1, 2, 2, 2}}, {7, {1, 2, 2, 3}}, {7, {1, 2, 2, 4}},
      {7, {1, 2, 2, 5}}, {7, {1, 2, 2, 6}}, {7, {1, 2, 3}},
      {8, {1, 2, 2, 2}}, {8, {1, 2, 2, 3}}, {8, {1, 2, 2, 4}},
      {8, {1, 2, 2, 5}}, {8, {1, 2, 2, 6}}, {8, {1, 2, 3, 3}},
      {8, {1, 2, 3, 4}}, {8, {1, 2, 3, 5}}, {8, {1, 2, 3, 6}},
      {8, {1, 2, 3, 7}},
      {9, {1, 2, 2, 2, 2}}, {9, {1, 2, 2, 2, 3}}, {9, {1, 2, 2, 2, 4}},
      {9, {1, 2, 2, 2, 5}}, {9, {1, 2, 2, 2, 6}}, {9, {1, 2, 2, 2, 7}},
      {9, {1, 2, 2, 2, 8}}, {9, {1, 2, 2, 3}}, {9, {1, 2, 2, 4}},
      {9, {1, 2, 2, 5}}, {9, {1, 2, 2, 6}}, {9, {1, 2, 3, 3}},
      {9, {1, 2, 3, 4}}, {9, {1, 2, 3, 5}}, {9, {1, 2, 3, 6}},
      {9, {1, 2, 3, 7}},
      {10, {1, 2, 2, 2, 2}}, {10, {1, 2, 2, 2, 3}}, {10, {1, 2, 2, 2, 4}},
      {10, {1, 2, 2, 2, 5}}, {10, {1, 2, 2, 2, 6}}, {10, {1, 2, 2, 2, 7}},
      {10, {1, 2, 2, 2, 8}}, {10, {1, 2, 2, 3, 3}}, {10, {1, 2, 2, 3, 4}},
      {10, {1, 2, 2, 3, 5}}, {10, {1, 2, 2, 3, 6}}, {10, {1, 2, 2, 3, 7}},
      {10, {1, 2, 2, 3, 8}}, {10, {1, 2, 2, 3, 9}}, {10, {1, 2, 2, 4}},
      {10, {1, 2, 2, 5}}, {10, {1, 2, 2, 6}}, {10, {1, 2, 3, 3}},
      {10, {1, 2, 3, 4}}, {10, {1, 2, 3, 5}}, {10, {1, 2, 3, 6}},
      {10, {1, 2, 3, 7}},
      {11, {1, 2, 2, 2, 2, 2}}, {11, {1, 2, 2, 2, 2, 3}},
      {11, {1, 2, 2, 2, 2, 4}}, {11, {1, 2, 2, 2, 2, 5}},
      {11, {1, 2, 2, 2, 2, 6}}, {11, {1, 2, 2, 2, 2, 7}},
      {11, {1, 2, 2, 2, 2, 8}}, {11, {1, 2, 2, 2, 2, 9}},
      {11, {1, 2, 2, 2, 2, 10}}, {11, {1, 2, 2, 2, 3}},
      {11, {1, 2, 2, 2, 4}}, {11, {1, 2, 2, 2, 5}}, {11, {1, 2, 2, 2, 6}},
      {11, {1, 2, 2, 2, 7}}, {11, {1, 2, 2, 2, 8}}, {11, {1, 2, 2, 3, 3}},
      {11, {1, 2, 2, 3, 4}}, {11, {1, 2, 2, 3, 5}}, {11, {1, 2, 2, 3, 6}},
      {11, {1, 2, 2, 3, 7}}, {11, {1, 2, 2, 3, 8}}, {11, {1, 2, 2, 3, 9}},
      {11, {1, 2, 2, 4, 4}}, {11, {1, 2, 2, 4, 5}}, {11, {1, 2, 2, 4, 6}},
      {11, {1, 2, 2, 4, 7}}, {11, {1, 2, 2, 4, 8}}, {11, {1, 2, 2, 4, 9}},
      {11, {1, 2, 2, 4, 10}}, {11, {1, 2, 2, 5}}, {11, {1, 2, 2, 6}},
      {11, {1, 2, 3, 3, 3}}, {11, {1, 2, 3, 3, 4}}, {11, {1, 2, 3, 3, 5}},
      {11, {1, 2, 3, 3, 6}}, {11, {1, 2, 3, 3, 7}}, {11, {1, 2, 3, 3, 8}},
      {11, {1, 2, 3, 3, 9}}, {11, {1, 2, 3, 3, 10}}, {11, {1, 2, 3, 4}},
      {11, {1, 2, 3, 5}}, {11, {1, 2, 3, 6}}, {11, {1, 2, 3, 7}},
      {12, {1, 2, 2, 2, 2, 2}}, {12, {1, 2, 2, 2, 2, 3}},
      {12, {1, 2, 2, 2, 2, 4}}, {12, {1, 2, 2, 2, 2, 5}},
      {12, {1, 2, 2, 2, 2, 6}}, {12, {1, 2, 2, 2, 2, 7}},
      {12, {1, 2, 2, 2, 2, 8}}, {12, {1, 2, 2, 2, 2, 9}},
      {12, {1, 2, 2, 2, 2, 10}}, {12, {1, 2, 2, 2, 3, 3}},
      {12, {1, 2, 2, 2, 3, 4}}, {12, {1, 2, 2, 2, 3, 5}},
      {12, {1, 2, 2, 2, 3, 6}}, {12, {1, 2, 2, 2, 3, 7}},
      {12, {1, 2, 2, 2, 3, 8}}, {12, {1, 2, 2, 2, 3, 9}},
      {12, {1, 2, 2, 2, 3, 10}}, {12, {1, 2, 2, 2, 3, 11}},
      {12, {1, 2, 2, 2, 4}}, {12, {1, 2, 2, 2, 5}}, {12, {1, 2, 2, 2, 6}},
      {12, {1, 2, 2, 2, 7}}, {12, {1, 2, 2, 2, 8}}, {12, {1, 2, 2, 3, 3}},
      {12, {1, 2, 2, 3, 4}}, {12, {1, 2, 2, 3, 5}}, {12, {1, 2, 2, 3, 6}},
      {12, {1, 2, 2, 3, 7}}, {12, {1, 2, 2, 3, 8}}, {12, {1, 2, 2, 3, 9}},
      {12, {1, 2, 2, 4, 4}}, {12, {1, 2, 2, 4, 5}}, {12, {1, 2, 2, 4, 6}},
      {12, {1, 2, 2, 4, 7}}, {12, {1, 2, 2, 4, 8}}, {12, {1, 2, 2, 4, 9}},
      {12, {1, 2, 2, 4, 10}}, {12, {1, 2, 2, 5, 5}}, {12, {1, 2, 2, 5, 6}},
      {12, {1, 2, 2, 5, 7}}, {12, {1, 2, 2, 5, 8}}, {12, {1, 2, 2, 5, 9}},
      {12, {1, 2, 2, 5, 10}}, {12, {1, 2, 2, 5, 11}}, {12, {1, 2, 2, 6}},
      {12, {1, 2, 3, 3, 3}}, {12, {1, 2, 3, 3, 4}}, {12, {1, 2, 3, 3, 5}},
      {12, {1, 2, 3, 3, 6}}, {12, {1, 2, 3, 3, 7}}, {12, {1, 2, 3, 3, 8}},
      {12, {1, 2, 3, 3, 9}}, {12, {1, 2, 3, 3, 10}}, {12, {1, 2, 3, 4, 4}},
      {12, {1, 2, 3, 4, 5}}, {12, {1, 2, 3, 4, 6}}, {12, {1, 2, 3, 4, 7}},
      {12, {1, 2, 3, 4, 8}}, {12, {1, 2, 3, 4, 9}}, {12, {1, 2, 3, 4, 10}},
      {12, {1, 2, 3, 4, 11}}, {12, {1, 2, 3, 5}}, {12, {1, 2, 3, 6}},
      {12, {1, 2, 3, 7}},
  };
  return table;
}

std::vector<Table1Result> check_table1(i64 m, i64 bound) {
  std::vector<Table1Result> out;
  for (const auto& entry : slow_escalation_prefixes()) {
    Table1Result r;
    r.entry = entry;
    bool all_ones = std::all_of(entry.prefix.begin(), entry.prefix.end(),
                                [](i64 c) { return c == 1; });
    if (all_ones && !entry.prefix.empty()) {
      if (entry.a == 2) r.predicted_rank = m / 2;
      else if (entry.a == 4) r.predicted_rank = (m - 2 + 3) / 4 + 2;
      else if (entry.a >= 5) r.predicted_rank = (m - 3 + entry.a - 1) / entry.a + entry.a - 2;
    }
    bool orderable = entry.prefix.empty() || entry.prefix.back() <= entry.a;
    if (orderable) {
      RepTable table = RepTable::build(MGonalForm{m, entry.prefix}, bound);
      const i64 cap = m + 5;
      for (i64 n = table.form().rank(); n < cap; ++n) {
        table = table.extended(entry.a);
        if (table.truant().universal()) {
          r.minimal_rank = table.form().rank();
          break;
        }
      }
    }
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace polyform
