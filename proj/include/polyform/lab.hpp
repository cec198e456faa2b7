#pragma once

#include <string>
#include <vector>

#include "polyform/escalator.hpp"

namespace polyform {

enum class Verdict { matches, differs, untested };

struct MVerdict {
  i64 m = 0;
  Verdict verdict = Verdict::untested;
  std::string observed;
  std::string predicted;
  std::string note;
};

struct ConjectureReport {
  std::string claim_id;
  std::vector<MVerdict> per_m;

  bool all_match() const;
};

std::string verdict_name(Verdict v);

/// Smallest n with 2^n >= k (k >= 1).
i64 ceil_log2(i64 k);

/// Minimal count of unit coefficients making the all-ones form B-universal,
/// against the closed formula (m-4 for m >= 9; 3 for m in {3,5,6}; else 4).
ConjectureReport check_ell(i64 m_lo, i64 m_hi, i64 bound);

/// Predicted minimal universal rank; defined for m >= 5.
i64 predicted_min_rank(i64 m);
/// Predicted maximal leaf rank: m-3 when m = 2 (mod 3), else m-2.
i64 predicted_max_rank(i64 m);

/// The power-of-two escalation family. For s = 2^ceil(log2(m-3)) - m >= 2
/// checks B-universality of [1,2,...,2^(n-1)]; for -3 <= s <= 1 checks that
/// the (n+1)-term form is B-universal and that each rank-n near-miss covers
/// [1, m-4] but misses its stated value (the computed truant is reported in
/// the observed string; it is smaller than the stated value for some forms).
ConjectureReport check_power2_forms(const std::vector<i64>& ms, i64 bound);

/// The rank-n forms covering [1, m-4] when -3 <= s <= 1, each with the value
/// listed as unrepresented (m-2, 2m-4, 2m-3, or 5(m-2)-1, per form). The
/// listed value is always missed but is not always the least missed.
struct NearMissForm {
  MGonalForm form;
  i64 stated_missed = 0;
};
std::vector<NearMissForm> power2_near_misses(i64 m);

/// Tree rank extremes vs. the two closed formulas; small m gets its verdict
/// recorded as evidence, not failure.
ConjectureReport check_rank_extremes(i64 m_lo, i64 m_hi, const SearchConfig& cfg);

/// Five copies of A*P_m represent k*A*(m-2) for k = 1..count.
bool check_multiples_lemma(i64 a, i64 m, i64 count);

/// The slow-escalation leaf families: the rank-extreme 3-heavy forms and the
/// all-ones node with its children. Requires m >= 9.
ConjectureReport check_leaf_families(i64 m, const SearchConfig& cfg);

struct NodePropositionResult {
  bool pass = true;
  i64 nodes_checked = 0;
  bool truncated = false;
  std::string offending_form;  // first violation, empty on pass
};

/// Every (sampled) tree node represents 1..min(sum of coefficients, bound).
/// sample_size == 0 checks every node; otherwise an evenly spread
/// deterministic sample of that many nodes.
NodePropositionResult check_node_proposition(i64 m, const SearchConfig& cfg,
                                             i64 sample_size = 0);

/// Coefficient prefixes that force five equal coefficients A early in a
/// slowly escalated leaf, shipped as data.
struct SlowPrefix {
  i64 a;  // the repeated coefficient
  std::vector<i64> prefix;
};
const std::vector<SlowPrefix>& slow_escalation_prefixes();

struct Table1Result {
  SlowPrefix entry;
  i64 minimal_rank = -1;  // -1 when no extension under the cap is B-universal
  i64 predicted_rank = -1;  // closed-form n for all-ones prefixes, else -1
};

/// For each prefix, minimal total rank of prefix + repeated A that is
/// B-universal, ranks capped at m + 5.
std::vector<Table1Result> check_table1(i64 m, i64 bound);

}  // namespace polyform
