#pragma once

#include "epiq/epistemic_system.hpp"
#include "epiq/formula.hpp"
#include "epiq/semantics.hpp"

#include <map>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace epiq {

using Relation = std::vector<std::pair<std::size_t, std::size_t>>;

struct KripkeStateModel {
    std::vector<std::string> states;
    std::vector<std::string> agents;
    std::map<std::string, Relation> access;
    std::map<std::string, std::set<std::size_t>> valuation;
};

/// Deterministic actions with preconditions. An action applies at a state
/// when the state's base lies in `pre` and, if a kernel formula is given,
/// the formula is false there. Kernel formulas are evaluated in the current
/// updated model and may use top, bot, facts, & | and the agent modalities.
struct ActionModel {
    std::vector<std::string> actions;
    std::map<std::string, Relation> access;
    std::vector<std::set<std::size_t>> pre;
    std::vector<F> kernel;
};

class ModelError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class HorizonExceeded : public ModelError {
public:
    using ModelError::ModelError;
};

/// Throws ModelError on out-of-range indices, unknown agents or facts.
void check_models(const KripkeStateModel& sm, const ActionModel& am);

struct BmsSystem {
    std::shared_ptr<const EpistemicSystem> system;
    std::shared_ptr<const Environment> env;
    /// Atom names of M ("s", "s.alpha") and Q ("1", "alpha*beta").
    std::vector<std::string> state_names;
    std::vector<std::string> word_names;
    std::size_t state_rounds = 0;
    std::size_t word_rounds = 0;
};

/// Closes the states under update and the actions under composition, each
/// quotiented by bisimulation (facts and preconditions label states,
/// induced state maps label action words). A closure that still grows after
/// `horizon` rounds raises HorizonExceeded; more than 63 classes raise
/// ModelError. The environment binds each initial state as a proposition
/// variable, each action as an action variable and each valuation entry as
/// a fact.
BmsSystem bms_to_system(const KripkeStateModel& sm, const ActionModel& am, std::size_t horizon);

/// How an action looks to one agent.
enum class Appearance { Self, Skip };

struct ActionDescriptor {
    std::string kind;
    Element kernel = 0; // join of the kernel
    std::vector<Appearance> appearance; // one per agent
};

ActionDescriptor public_refutation(const Lattice& M, std::size_t agents, Element m);
ActionDescriptor private_refutation(const Lattice& M, const std::vector<std::string>& agents, Element m,
                                    const std::set<std::string>& group);
ActionDescriptor failure_test(const Lattice& M, std::size_t agents, Element m);
/// Kernel is the complement of m; throws ModelError unless m has exactly
/// one complement.
ActionDescriptor public_announcement(const Lattice& M, std::size_t agents, Element m);

/// Realizes named descriptors over the powerset of the model's states (bit
/// i = state i) as an action model. Skip appearances point at an added
/// action "skip" with full precondition.
ActionModel realize(const KripkeStateModel& sm, const std::vector<std::pair<std::string, ActionDescriptor>>& actions);

} // namespace epiq
