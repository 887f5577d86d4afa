#pragma once

#include "epiq/formula.hpp"
#include "epiq/semantics.hpp"

#include <optional>
#include <string>
#include <vector>

namespace epiq {

enum class Rule {
    // Q-system
    QId,
    Q1L,
    Q1R,
    QBotL,
    QTopR,
    AppQR,
    AppQL,
    BoxQR,
    BoxQL,
    SeqL,
    SeqR,
    QOrL,
    QOrR1,
    QOrR2,
    QAndL1,
    QAndL2,
    QAndR,
    RResL,
    RResR,
    LResL,
    LResR,
    QCut,
    Agent,
    // M-system
    MId,
    MBotL,
    BotR,
    MTopR,
    AppMR,
    AppML,
    BoxMR,
    BoxML,
    MAndR,
    MAndL1,
    MAndL2,
    MOrL,
    MOrR1,
    MOrR2,
    Contr,
    Exch,
    Fact,
    MCut,
    WeakL,
    WeakR,
    // mixed rules
    UpdL,
    UpdR,
    DyL,
    DyR,
    OneML,
    SeqML,
    OrML,
    RResML,
    LResML,
    AndML1,
    AndML2,
    // leaves from an assumption base
    Assumption,
};

const std::vector<Rule>& all_rules();
/// Certificate name, e.g. "Id", "AppQ_R", "1ML".
const char* rule_name(Rule r);
/// Side of the conclusion; Assumption has no fixed side and reports M.
Sort rule_side(Rule r);
std::size_t rule_arity(Rule r);
/// Resolves a certificate name against the side of the conclusion.
/// "Ass." is accepted for Assumption.
std::optional<Rule> rule_by_name(const std::string& name, Sort side);

enum class AxiomKind { AppearanceM, AppearanceQ, Kernel, Fact, Hypothesis };

const char* axiom_kind_name(AxiomKind k);
std::optional<AxiomKind> axiom_kind_by_name(const std::string& name);

struct Axiom {
    AxiomKind kind;
    Sequent seq;
};

/// Scenario axioms used as Assumption leaves.
///
///   appearance_m   m, @A |-M m'
///   appearance_q   q, @A |-Q q'
///   kernel         m, q |-M bot
///   fact           m |-M #p
///   hypothesis     any sequent
class AssumptionBase {
public:
    Signature signature;

    /// Throws std::invalid_argument when the sequent does not have the
    /// shape of its kind.
    void add(AxiomKind kind, Sequent seq);
    [[nodiscard]] const std::vector<Axiom>& axioms() const { return axioms_; }
    [[nodiscard]] std::optional<std::size_t> find(const Sequent& s) const;
    [[nodiscard]] bool empty() const { return axioms_.empty(); }

private:
    std::vector<Axiom> axioms_;
};

/// Semantic check of a base: appearance axioms must be equalities, kernel
/// axioms must name the join of the kernel, fact and hypothesis axioms must
/// hold. Returns one message per failing axiom.
std::vector<std::string> check_base(const AssumptionBase& base, const Environment& env);

struct ProofTree {
    Sequent conclusion;
    Rule rule = Rule::QId;
    std::vector<ProofTree> premises;
};

std::size_t proof_depth(const ProofTree& t);
std::size_t proof_size(const ProofTree& t);

/// Returns nullopt when the step is an instance of the rule, otherwise the
/// first violated constraint.
std::optional<std::string> check_step(Rule rule, const std::vector<Sequent>& premises, const Sequent& conclusion,
                                      const AssumptionBase& base);

struct ProofViolation {
    std::vector<std::size_t> path; // premise indices from the root
    std::string rule;
    std::string sequent;
    std::string message;

    [[nodiscard]] std::string describe() const;
};

std::optional<ProofViolation> check_proof(const ProofTree& tree, const AssumptionBase& base);

struct GeneratedBase {
    AssumptionBase base;
    /// Kernel axioms whose generator had no expression over the vocabulary.
    std::vector<std::string> skipped;
};

/// Appearance, kernel and fact axioms true in the environment, over a
/// vocabulary of variable names and facts written "#p". Values are written
/// as the single matching name when one exists, otherwise as a join of
/// names in vocabulary order. Throws std::invalid_argument when an
/// appearance has no such expression or a name is unbound.
GeneratedBase axioms_of(const Environment& env, const std::vector<std::string>& vocabulary);

} // namespace epiq
