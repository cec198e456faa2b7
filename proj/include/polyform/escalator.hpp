#pragma once

#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "polyform/rep_table.hpp"

namespace polyform {

struct SearchConfig {
  i64 bound = 1000;
  i64 c_const = 4;          // configured stand-in for the absolute constant C
  i64 node_budget = 10'000'000;
  i64 depth_budget = 100'000;
  int max_doublings = 10;
};

struct TreeReport {
  i64 m = 0;
  i64 bound = 0;
  i64 gamma_bound = 0;  // max truant over non-leaf nodes, relative to bound
  i64 min_leaf_rank = 0;
  i64 max_leaf_rank = 0;
  std::map<i64, i64> leaf_count_by_rank;
  i64 node_count = 0;
  i64 leaf_count = 0;
  bool truncated = false;

  bool agrees_with(const TreeReport& other) const;
};

struct EscalatorNode {
  MGonalForm form;
  TruantResult truant;

  bool leaf() const { return truant.universal(); }
  /// Parent form: drop the last coefficient.
  MGonalForm parent_form() const;
};

/// One child per new coefficient a in [a_k, truant]; each child represents
/// the parent's truant. Precondition: the node is not B-universal.
std::vector<EscalatorNode> children_of(const RepTable& parent_table);

/// Called for every visited node, depth-first, children in increasing
/// coefficient order. Leaves have node.leaf() == true.
using NodeVisitor = std::function<void(const EscalatorNode&, const RepTable&)>;

/// Depth-first escalator tree under cfg.bound. A leaf is a B-universal node.
/// Budget exhaustion is reported via report.truncated, never silently.
TreeReport build_tree(i64 m, const SearchConfig& cfg, const NodeVisitor& visit = {});

struct StabilizedReport {
  i64 stable_bound = 0;  // bound of the first report confirmed by its double
  TreeReport report;
  bool converged = false;
  int doublings_used = 0;
};

/// Doubles the bound from cfg.bound until two consecutive tree reports agree
/// on gamma, rank extremes, and leaf census, or cfg.max_doublings is spent.
StabilizedReport stabilize_gamma(i64 m, const SearchConfig& cfg);

struct LeafFilter {
  std::optional<i64> rank;
  std::vector<i64> coeff_prefix;  // empty prefix matches everything
};

struct LeafCensus {
  std::vector<MGonalForm> leaves;
  i64 count = 0;
};

/// Exact multiset of leaves matching the filter. Throws std::runtime_error
/// when the tree build was truncated.
LeafCensus leaf_census(i64 m, const SearchConfig& cfg, const LeafFilter& filter);

}  // namespace polyform
