#pragma once

#include "epiq/lattice.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace epiq {

/// A map L1 x L2 -> L3 that preserves joins in each argument.
///
/// Tabulated operations store every pair (row-major over the first
/// argument). Atomic operations require powerset arguments, store images of
/// atom pairs only, and are extended by joins in both arguments.
class BinaryOp {
public:
    static BinaryOp from_table(LatticePtr left, LatticePtr right, LatticePtr out, std::vector<Element> table);
    static BinaryOp from_atoms(LatticePtr left, LatticePtr right, LatticePtr out, std::vector<Element> atom_table);

    Element operator()(Element x, Element y) const;

    [[nodiscard]] bool atomic() const { return atomic_; }
    [[nodiscard]] const Lattice& left() const { return *left_; }
    [[nodiscard]] const Lattice& right() const { return *right_; }
    [[nodiscard]] const Lattice& out() const { return *out_; }
    [[nodiscard]] const std::vector<Element>& table() const { return table_; }

private:
    LatticePtr left_;
    LatticePtr right_;
    LatticePtr out_;
    bool atomic_ = false;
    std::vector<Element> table_;
};

struct Violation {
    std::string law;
    std::string witness;
};

struct ValidationReport {
    std::vector<Violation> violations;
    std::size_t checks = 0;
    [[nodiscard]] bool ok() const { return violations.empty(); }
};

/// A module M over a quantale Q together with per-agent appearance maps.
///
/// The constructor checks shapes only (carriers, arities, agent names);
/// algebraic laws are reported by validate_system.
class EpistemicSystem {
public:
    EpistemicSystem(LatticePtr module, LatticePtr quantale, BinaryOp mult, Element unit, BinaryOp act,
                    std::vector<std::string> agents, std::vector<LatticeMap> app_m, std::vector<LatticeMap> app_q);

    [[nodiscard]] const Lattice& M() const { return *m_; }
    [[nodiscard]] const Lattice& Q() const { return *q_; }
    [[nodiscard]] const LatticePtr& M_ptr() const { return m_; }
    [[nodiscard]] const LatticePtr& Q_ptr() const { return q_; }
    [[nodiscard]] const BinaryOp& mult() const { return mult_; }
    [[nodiscard]] const BinaryOp& act() const { return act_; }
    [[nodiscard]] Element unit() const { return unit_; }

    [[nodiscard]] const std::vector<std::string>& agents() const { return agents_; }
    [[nodiscard]] std::optional<std::size_t> find_agent(const std::string& name) const;
    /// Throws std::out_of_range for an unknown agent.
    [[nodiscard]] std::size_t agent(const std::string& name) const;

    [[nodiscard]] const LatticeMap& app_m(std::size_t a) const { return app_m_.at(a); }
    [[nodiscard]] const LatticeMap& app_q(std::size_t a) const { return app_q_.at(a); }

    [[nodiscard]] Element update(Element m, Element q) const { return act_(m, q); }
    [[nodiscard]] Element compose(Element q1, Element q2) const { return mult_(q1, q2); }
    [[nodiscard]] Element appear_m(std::size_t a, Element m) const { return app_m_.at(a)(m); }
    [[nodiscard]] Element appear_q(std::size_t a, Element q) const { return app_q_.at(a)(q); }

    [[nodiscard]] Element box_m(std::size_t a, Element m) const;
    [[nodiscard]] Element box_q(std::size_t a, Element q) const;
    /// [q]m, the largest m' with m'.q <= m.
    [[nodiscard]] Element dyn_box(Element q, Element m) const;
    /// {m}m', the largest q with m.q <= m'.
    [[nodiscard]] Element co_residual(Element m, Element m2) const;
    /// a\b, the largest c with a*c <= b.
    [[nodiscard]] Element left_residual(Element a, Element b) const;
    /// b/a, the largest c with c*a <= b.
    [[nodiscard]] Element right_residual(Element b, Element a) const;

    /// Join of Ker(q).
    [[nodiscard]] Element kernel_generator(Element q) const;
    /// Ker(q) as an element list; requires an enumerable module.
    [[nodiscard]] std::vector<Element> kernel(Element q) const;
    [[nodiscard]] bool is_stable(Element phi) const;
    /// Stab(Q) as an element list; requires an enumerable module.
    [[nodiscard]] std::vector<Element> stabilizer() const;

    /// Elements of Q over which join-preserving statements can be checked:
    /// the atoms of a powerset, otherwise all elements.
    [[nodiscard]] std::vector<Element> q_generators() const;
    [[nodiscard]] std::vector<Element> m_generators() const;

private:
    LatticePtr m_;
    LatticePtr q_;
    BinaryOp mult_;
    Element unit_;
    BinaryOp act_;
    std::vector<std::string> agents_;
    std::vector<LatticeMap> app_m_;
    std::vector<LatticeMap> app_q_;
};

/// Checks the quantale, module and appearance laws. Join-preservation of
/// tabulated operations is checked through bottom plus binary joins.
/// Statements that are joins in every argument are checked on generators
/// (atoms of powersets, all elements otherwise).
ValidationReport validate_system(const EpistemicSystem& sys, std::size_t max_witnesses_per_law = 4);

/// Accessibility relation s ->_A s' iff s' <= f_A(s) over the atoms of M.
/// Returns nullopt when M is not atomistic.
std::optional<std::vector<std::pair<Element, Element>>> accessibility(const EpistemicSystem& sys, std::size_t agent);

/// The four structural conditions satisfied by BMS-derived systems.
struct BmsConditions {
    bool boolean_carriers = false;
    bool update_of_atoms = false;
    bool compose_of_atoms = false;
    bool no_zero_divisors = false;
    std::vector<std::string> witnesses;
    [[nodiscard]] bool all() const
    {
        return boolean_carriers && update_of_atoms && compose_of_atoms && no_zero_divisors;
    }
};

BmsConditions check_bms_conditions(const EpistemicSystem& sys);

/// Adjunction and kernel laws: the four adjoint pairs, Ker(q) = down(join Ker(q)),
/// [q]bot = join Ker(q). The argument of the left adjoint ranges over
/// generators; the other argument ranges over all elements of enumerable
/// carriers, otherwise over atoms, bottom, top and `samples` pseudo-random
/// elements.
ValidationReport check_adjunctions(const EpistemicSystem& sys, std::size_t samples = 64,
                                   std::size_t max_witnesses_per_law = 4);

} // namespace epiq
