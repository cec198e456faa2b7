#include "polyform/escalator.hpp"

#include <stdexcept>

namespace polyform {

bool TreeReport::agrees_with(const TreeReport& other) const {
  return gamma_bound == other.gamma_bound &&
         min_leaf_rank == other.min_leaf_rank &&
         max_leaf_rank == other.max_leaf_rank &&
         leaf_count_by_rank == other.leaf_count_by_rank &&
         !truncated && !other.truncated;
}

MGonalForm EscalatorNode::parent_form() const {
  if (form.coeffs.empty())
    throw std::logic_error("EscalatorNode: root has no parent");
  MGonalForm p = form;
  p.coeffs.pop_back();
  return p;
}

std::vector<EscalatorNode> children_of(const RepTable& parent_table) {
  TruantResult t = parent_table.truant();
  if (t.universal())
    throw std::invalid_argument("children_of: B-universal nodes have no children");
  const auto& coeffs = parent_table.form().coeffs;
  const i64 lo = coeffs.empty() ? 1 : coeffs.back();
  std::vector<EscalatorNode> children;
  for (i64 a = lo; a <= *t.truant; ++a) {
    RepTable child = parent_table.extended(a);
    children.push_back({child.form(), child.truant()});
  }
  return children;
}

namespace {

struct TreeBuilder {
  const SearchConfig& cfg;
  const NodeVisitor& visit;
  TreeReport report;

  // Returns false once a budget is exhausted; the caller stops descending.
  bool walk(const RepTable& table) {
    if (report.node_count >= cfg.node_budget ||
        table.form().rank() > cfg.depth_budget) {
      report.truncated = true;
      return false;
    }
    ++report.node_count;
    TruantResult t = table.truant();
    EscalatorNode node{table.form(), t};
    if (visit) visit(node, table);
    if (t.universal()) {
      i64 rank = table.form().rank();
      ++report.leaf_count;
      ++report.leaf_count_by_rank[rank];
      if (report.min_leaf_rank == 0 || rank < report.min_leaf_rank)
        report.min_leaf_rank = rank;
      if (rank > report.max_leaf_rank) report.max_leaf_rank = rank;
      return true;
    }
    if (*t.truant > report.gamma_bound) report.gamma_bound = *t.truant;
    const i64 lo = table.form().coeffs.empty() ? 1 : table.form().coeffs.back();
    for (i64 a = lo; a <= *t.truant; ++a) {
      if (!walk(table.extended(a))) return false;
    }
    return true;
  }
};

}  // namespace

TreeReport build_tree(i64 m, const SearchConfig& cfg, const NodeVisitor& visit) {
  if (cfg.bound < m)
    throw std::invalid_argument("build_tree: bound must be >= m");
  if (cfg.node_budget < 1 || cfg.depth_budget < 1)
    throw std::invalid_argument("build_tree: budgets must be positive");
  TreeBuilder builder{cfg, visit, {}};
  builder.report.m = m;
  builder.report.bound = cfg.bound;
  builder.walk(RepTable::build(MGonalForm{m, {}}, cfg.bound));
  return builder.report;
}

StabilizedReport stabilize_gamma(i64 m, const SearchConfig& cfg) {
  if (cfg.bound < m)
    throw std::invalid_argument("stabilize_gamma: initial bound must be >= m");
  StabilizedReport out;
  SearchConfig step = cfg;
  TreeReport prev = build_tree(m, step, {});
  for (int d = 0; d < cfg.max_doublings; ++d) {
    step.bound *= 2;
    TreeReport next = build_tree(m, step, {});
    out.doublings_used = d + 1;
    if (next.agrees_with(prev)) {
      out.stable_bound = prev.bound;
      out.report = next;
      out.converged = true;
      return out;
    }
    prev = next;
  }
  out.stable_bound = prev.bound;
  out.report = prev;
  out.converged = false;
  return out;
}

LeafCensus leaf_census(i64 m, const SearchConfig& cfg, const LeafFilter& filter) {
  LeafCensus census;
  auto matches = [&](const MGonalForm& f) {
    if (filter.rank && f.rank() != *filter.rank) return false;
    if (filter.coeff_prefix.size() > f.coeffs.size()) return false;
    for (std::size_t i = 0; i < filter.coeff_prefix.size(); ++i)
      if (f.coeffs[i] != filter.coeff_prefix[i]) return false;
    return true;
  };
  TreeReport report = build_tree(m, cfg, [&](const EscalatorNode& node, const RepTable&) {
    if (node.leaf() && matches(node.form)) {
      census.leaves.push_back(node.form);
      ++census.count;
    }
  });
  if (report.truncated)
    throw std::runtime_error(
        "leaf_census: tree build hit a budget; census would be incomplete");
  return census;
}

}  // namespace polyform
