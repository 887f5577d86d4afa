#pragma once

#include "epiq/kripke.hpp"
#include "epiq/proof.hpp"

#include <optional>
#include <string>
#include <vector>

namespace epiq {

struct Target {
    Sequent sequent;
    bool expected = true;
    std::string note;
};

struct Scenario {
    std::string name;
    KripkeStateModel states;
    ActionModel actions;
    std::size_t horizon = 0;
    BmsSystem compiled;
    std::vector<Target> targets;
    /// Axioms for proof search; empty unless the scenario ships one.
    AssumptionBase base;
    /// Names over which axioms_of describes the scenario.
    std::vector<std::string> vocabulary;
};

/// "s_none" for the empty set, otherwise "s_1_3" for children 1 and 3.
std::string muddy_state_name(const std::vector<std::size_t>& dirty);

/// Children C1..Cn, the first k dirty. Actions q0 (at least one child is
/// dirty) and q (nobody knows). Positive targets use `rounds` rounds of q
/// (default k-1) and negative targets one round fewer.
Scenario muddy_scenario(std::size_t n, std::size_t k, std::optional<std::size_t> rounds = std::nullopt,
                        std::optional<std::size_t> horizon = std::nullopt);

/// Child C1 is the only dirty child and lies in the first round (qbar).
Scenario lying_scenario(std::size_t n, std::optional<std::size_t> horizon = std::nullopt);

Scenario mitm_scenario(std::optional<std::size_t> horizon = std::nullopt);

} // namespace epiq
