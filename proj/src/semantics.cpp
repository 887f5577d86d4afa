#include "epiq/semantics.hpp"

namespace epiq {

Environment::Environment(std::shared_ptr<const EpistemicSystem> sys, std::map<std::string, Element> qvals,
                         std::map<std::string, Element> mvals, std::map<std::string, Element> facts)
    : sys_(std::move(sys))
    , qvals_(std::move(qvals))
    , mvals_(std::move(mvals))
    , facts_(std::move(facts))
{
    for (const auto& [name, v] : qvals_)
        if (!sys_->Q().contains(v))
            throw EvalError("value of action variable " + name + " is not an element of Q");
    for (const auto& [name, v] : mvals_)
        if (!sys_->M().contains(v))
            throw EvalError("value of proposition variable " + name + " is not an element of M");
    for (const auto& [name, v] : facts_) {
        if (!sys_->M().contains(v))
            throw EvalError("value of fact " + name + " is not an element of M");
        if (!sys_->is_stable(v))
            throw EvalError("fact " + name + " is not stable under the actions");
    }
}

Signature Environment::signature() const
{
    Signature sig;
    sig.agents.insert(sys_->agents().begin(), sys_->agents().end());
    for (const auto& kv : qvals_)
        sig.qvars.insert(kv.first);
    for (const auto& kv : mvals_)
        sig.mvars.insert(kv.first);
    for (const auto& kv : facts_)
        sig.facts.insert(kv.first);
    return sig;
}

namespace {

Element lookup(const std::map<std::string, Element>& vals, const std::string& name, const char* what)
{
    auto it = vals.find(name);
    if (it == vals.end())
        throw EvalError(std::string("unbound ") + what + " " + name);
    return it->second;
}

std::size_t agent_of(const Environment& env, const std::string& name)
{
    auto a = env.system().find_agent(name);
    if (!a)
        throw EvalError("unknown agent " + name);
    return *a;
}

} // namespace

Element eval(const Environment& env, const F& f)
{
    return f->sort == Sort::Q ? eval_q(env, f) : eval_m(env, f);
}

Element eval_q(const Environment& env, const F& f)
{
    const EpistemicSystem& sys = env.system();
    const Lattice& Q = sys.Q();
    if (f->sort != Sort::Q)
        throw EvalError("expected an action formula");
    switch (f->op) {
    case Op::Top:
        return Q.top();
    case Op::Bot:
        return Q.bottom();
    case Op::One:
        return sys.unit();
    case Op::Var:
        return lookup(env.qvals(), f->name, "action variable");
    case Op::Seq:
        return sys.compose(eval_q(env, f->a), eval_q(env, f->b));
    case Op::LRes:
        return sys.left_residual(eval_q(env, f->a), eval_q(env, f->b));
    case Op::RRes:
        return sys.right_residual(eval_q(env, f->a), eval_q(env, f->b));
    case Op::Or:
        return Q.join(eval_q(env, f->a), eval_q(env, f->b));
    case Op::And:
        return Q.meet(eval_q(env, f->a), eval_q(env, f->b));
    case Op::App:
        return sys.appear_q(agent_of(env, f->name), eval_q(env, f->a));
    case Op::Box:
        return sys.box_q(agent_of(env, f->name), eval_q(env, f->a));
    default:
        throw EvalError("malformed action formula");
    }
}

Element eval_m(const Environment& env, const F& f)
{
    const EpistemicSystem& sys = env.system();
    const Lattice& M = sys.M();
    if (f->sort != Sort::M)
        throw EvalError("expected a proposition formula");
    switch (f->op) {
    case Op::Top:
        return M.top();
    case Op::Bot:
        return M.bottom();
    case Op::Var:
        return lookup(env.mvals(), f->name, "proposition variable");
    case Op::Fact:
        return lookup(env.facts(), f->name, "fact");
    case Op::Or:
        return M.join(eval_m(env, f->a), eval_m(env, f->b));
    case Op::And:
        return M.meet(eval_m(env, f->a), eval_m(env, f->b));
    case Op::App:
        return sys.appear_m(agent_of(env, f->name), eval_m(env, f->a));
    case Op::Box:
        return sys.box_m(agent_of(env, f->name), eval_m(env, f->a));
    case Op::DynBox:
        return sys.dyn_box(eval_q(env, f->a), eval_m(env, f->b));
    case Op::Update:
        return sys.update(eval_m(env, f->a), eval_q(env, f->b));
    default:
        throw EvalError("malformed proposition formula");
    }
}

Element fold_q(const Environment& env, const std::vector<Item>& ctx)
{
    const EpistemicSystem& sys = env.system();
    Element acc = sys.unit();
    for (const Item& it : ctx) {
        if (it.is_agent)
            acc = sys.appear_q(agent_of(env, it.agent), acc);
        else
            acc = sys.compose(acc, eval_q(env, it.f));
    }
    return acc;
}

Element fold_m(const Environment& env, const std::vector<Item>& ctx)
{
    const EpistemicSystem& sys = env.system();
    Element acc = sys.M().top();
    for (const Item& it : ctx) {
        if (it.is_agent)
            acc = sys.appear_m(agent_of(env, it.agent), acc);
        else if (it.f->sort == Sort::Q)
            acc = sys.update(acc, eval_q(env, it.f));
        else
            acc = sys.M().meet(acc, eval_m(env, it.f));
    }
    return acc;
}

bool holds(const Environment& env, const Sequent& s)
{
    if (s.side == Sort::Q)
        return env.system().Q().leq(fold_q(env, s.ctx), eval_q(env, s.concl));
    return env.system().M().leq(fold_m(env, s.ctx), eval_m(env, s.concl));
}

} // namespace epiq
