#pragma once

#include "epiq/proof.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace epiq {

enum class CutPolicy {
    Subformulas, // goal subformulas, axiom items and heads, bot, update formulas
    None,
};

struct SearchConfig {
    std::size_t max_depth = 10;
    CutPolicy cut_pool = CutPolicy::Subformulas;
    bool loop_check = true;
    /// Rule priority; empty means default_branch_order().
    std::vector<Rule> branch_order;
    /// Expanded nodes before giving up; 0 means unlimited.
    std::uint64_t node_limit = 50'000'000;
};

struct SearchStats {
    std::uint64_t nodes = 0;
    std::size_t depth_reached = 0;
    bool node_limit_hit = false;
};

struct SearchResult {
    std::optional<ProofTree> proof;
    SearchStats stats;
};

/// Leaves, right rules, left rules, update and fact rules, structural rules,
/// cuts.
const std::vector<Rule>& default_branch_order();

/// Cut formulas of the given sort available to a search for this goal.
std::vector<F> cut_pool(const Sequent& goal, const AssumptionBase& base, Sort sort);

/// Backward instances of one rule for a goal, as the search would try them
/// with the given cut policy. Each entry lists the premises of one instance.
std::vector<std::vector<Sequent>> backward_instances(Rule rule, const Sequent& goal, const AssumptionBase& base,
                                                     CutPolicy cut_pool = CutPolicy::Subformulas);

/// Iterative deepening backward search. Depth counts the nodes on the
/// longest branch of the returned tree.
SearchResult prove(const Sequent& goal, const AssumptionBase& base, const SearchConfig& cfg = {});

} // namespace epiq
