#pragma once

#include "epiq/epistemic_system.hpp"
#include "epiq/formula.hpp"

#include <map>
#include <memory>
#include <stdexcept>
#include <string>

namespace epiq {

class EvalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Binds variables and facts of the formula language to a system.
class Environment {
public:
    /// Throws EvalError if a fact value is not in the stabilizer.
    Environment(std::shared_ptr<const EpistemicSystem> sys, std::map<std::string, Element> qvals,
                std::map<std::string, Element> mvals, std::map<std::string, Element> facts);

    [[nodiscard]] const EpistemicSystem& system() const { return *sys_; }
    [[nodiscard]] const std::shared_ptr<const EpistemicSystem>& system_ptr() const { return sys_; }
    [[nodiscard]] const std::map<std::string, Element>& qvals() const { return qvals_; }
    [[nodiscard]] const std::map<std::string, Element>& mvals() const { return mvals_; }
    [[nodiscard]] const std::map<std::string, Element>& facts() const { return facts_; }

    [[nodiscard]] Signature signature() const;

private:
    std::shared_ptr<const EpistemicSystem> sys_;
    std::map<std::string, Element> qvals_;
    std::map<std::string, Element> mvals_;
    std::map<std::string, Element> facts_;
};

Element eval(const Environment& env, const F& f);
Element eval_q(const Environment& env, const F& f);
Element eval_m(const Environment& env, const F& f);

/// Left fold of a Q-context starting at 1.
Element fold_q(const Environment& env, const std::vector<Item>& ctx);
/// Left fold of an M-context starting at top.
Element fold_m(const Environment& env, const std::vector<Item>& ctx);

bool holds(const Environment& env, const Sequent& s);

} // namespace epiq
