#include "epiq/proof.hpp"

#include "epiq/parser.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace epiq {

namespace {

struct RuleInfo {
    Rule rule;
    const char* name;
    Sort side;
    std::size_t arity;
};

const std::vector<RuleInfo>& rule_table()
{
    static const std::vector<RuleInfo> t = {
        {Rule::QId, "Id", Sort::Q, 0},         {Rule::Q1L, "1L", Sort::Q, 1},
        {Rule::Q1R, "1R", Sort::Q, 0},         {Rule::QBotL, "BotL", Sort::Q, 0},
        {Rule::QTopR, "TopR", Sort::Q, 0},     {Rule::AppQR, "AppQ_R", Sort::Q, 1},
        {Rule::AppQL, "AppQ_L", Sort::Q, 1},   {Rule::BoxQR, "BoxQ_R", Sort::Q, 1},
        {Rule::BoxQL, "BoxQ_L", Sort::Q, 1},   {Rule::SeqL, "SeqL", Sort::Q, 1},
        {Rule::SeqR, "SeqR", Sort::Q, 2},      {Rule::QOrL, "OrL", Sort::Q, 2},
        {Rule::QOrR1, "OrR1", Sort::Q, 1},     {Rule::QOrR2, "OrR2", Sort::Q, 1},
        {Rule::QAndL1, "AndL1", Sort::Q, 1},   {Rule::QAndL2, "AndL2", Sort::Q, 1},
        {Rule::QAndR, "AndR", Sort::Q, 2},     {Rule::RResL, "RResL", Sort::Q, 2},
        {Rule::RResR, "RResR", Sort::Q, 1},    {Rule::LResL, "LResL", Sort::Q, 2},
        {Rule::LResR, "LResR", Sort::Q, 1},    {Rule::QCut, "QCut", Sort::Q, 2},
        {Rule::Agent, "Agent", Sort::Q, 1},    {Rule::MId, "Id", Sort::M, 0},
        {Rule::MBotL, "BotL", Sort::M, 0},     {Rule::BotR, "BotR", Sort::M, 1},
        {Rule::MTopR, "TopR", Sort::M, 0},     {Rule::AppMR, "AppM_R", Sort::M, 1},
        {Rule::AppML, "AppM_L", Sort::M, 1},   {Rule::BoxMR, "BoxM_R", Sort::M, 1},
        {Rule::BoxML, "BoxM_L", Sort::M, 1},   {Rule::MAndR, "AndR", Sort::M, 2},
        {Rule::MAndL1, "AndL1", Sort::M, 1},   {Rule::MAndL2, "AndL2", Sort::M, 1},
        {Rule::MOrL, "OrL", Sort::M, 2},       {Rule::MOrR1, "OrR1", Sort::M, 1},
        {Rule::MOrR2, "OrR2", Sort::M, 1},     {Rule::Contr, "Contr", Sort::M, 1},
        {Rule::Exch, "Exch", Sort::M, 1},      {Rule::Fact, "Fact", Sort::M, 1},
        {Rule::MCut, "MCut", Sort::M, 2},      {Rule::WeakL, "WeakL", Sort::M, 1},
        {Rule::WeakR, "WeakR", Sort::M, 1},    {Rule::UpdL, "UpdL", Sort::M, 1},
        {Rule::UpdR, "UpdR", Sort::M, 2},      {Rule::DyL, "DyL", Sort::M, 2},
        {Rule::DyR, "DyR", Sort::M, 1},        {Rule::OneML, "1ML", Sort::M, 1},
        {Rule::SeqML, "SeqML", Sort::M, 1},    {Rule::OrML, "OrML", Sort::M, 2},
        {Rule::RResML, "RResML", Sort::M, 2},  {Rule::LResML, "LResML", Sort::M, 2},
        {Rule::AndML1, "AndML1", Sort::M, 1},  {Rule::AndML2, "AndML2", Sort::M, 1},
        {Rule::Assumption, "Assumption", Sort::M, 0},
    };
    return t;
}

const RuleInfo& info(Rule r)
{
    return rule_table()[static_cast<std::size_t>(r)];
}

} // namespace

const std::vector<Rule>& all_rules()
{
    static const std::vector<Rule> rules = [] {
        std::vector<Rule> v;
        for (const auto& i : rule_table())
            v.push_back(i.rule);
        return v;
    }();
    return rules;
}

const char* rule_name(Rule r) { return info(r).name; }
Sort rule_side(Rule r) { return info(r).side; }
std::size_t rule_arity(Rule r) { return info(r).arity; }

std::optional<Rule> rule_by_name(const std::string& name, Sort side)
{
    if (name == "Assumption" || name == "Ass.")
        return Rule::Assumption;
    for (const auto& i : rule_table())
        if (i.side == side && name == i.name)
            return i.rule;
    return std::nullopt;
}

const char* axiom_kind_name(AxiomKind k)
{
    switch (k) {
    case AxiomKind::AppearanceM:
        return "appearance_m";
    case AxiomKind::AppearanceQ:
        return "appearance_q";
    case AxiomKind::Kernel:
        return "kernel";
    case AxiomKind::Fact:
        return "fact";
    case AxiomKind::Hypothesis:
        return "hypothesis";
    }
    return "?";
}

std::optional<AxiomKind> axiom_kind_by_name(const std::string& name)
{
    for (AxiomKind k : {AxiomKind::AppearanceM, AxiomKind::AppearanceQ, AxiomKind::Kernel, AxiomKind::Fact,
                        AxiomKind::Hypothesis})
        if (name == axiom_kind_name(k))
            return k;
    return std::nullopt;
}

void AssumptionBase::add(AxiomKind kind, Sequent seq)
{
    check_well_formed(seq);
    const auto& c = seq.ctx;
    auto bad = [&](const char* why) {
        throw std::invalid_argument(std::string(axiom_kind_name(kind)) + " axiom " + print(seq) + ": " + why);
    };
    switch (kind) {
    case AxiomKind::AppearanceM:
        if (seq.side != Sort::M || c.size() != 2 || !c[0].is_m() || !c[1].is_agent)
            bad("expected m, @A |-M m'");
        break;
    case AxiomKind::AppearanceQ:
        if (seq.side != Sort::Q || c.size() != 2 || !c[0].is_q() || !c[1].is_agent)
            bad("expected q, @A |-Q q'");
        break;
    case AxiomKind::Kernel:
        if (seq.side != Sort::M || c.size() != 2 || !c[0].is_m() || !c[1].is_q() || seq.concl->op != Op::Bot)
            bad("expected m, q |-M bot");
        break;
    case AxiomKind::Fact:
        if (seq.side != Sort::M || c.size() != 1 || !c[0].is_m() || seq.concl->op != Op::Fact)
            bad("expected m |-M #p");
        break;
    case AxiomKind::Hypothesis:
        break;
    }
    axioms_.push_back({kind, std::move(seq)});
}

std::optional<std::size_t> AssumptionBase::find(const Sequent& s) const
{
    for (std::size_t i = 0; i < axioms_.size(); ++i)
        if (equal(axioms_[i].seq, s))
            return i;
    return std::nullopt;
}

std::vector<std::string> check_base(const AssumptionBase& base, const Environment& env)
{
    std::vector<std::string> out;
    const EpistemicSystem& sys = env.system();
    for (const Axiom& ax : base.axioms()) {
        const Sequent& s = ax.seq;
        try {
            switch (ax.kind) {
            case AxiomKind::AppearanceM:
                if (fold_m(env, s.ctx) != eval_m(env, s.concl))
                    out.push_back(print(s) + ": appearance differs from the stated value");
                break;
            case AxiomKind::AppearanceQ:
                if (fold_q(env, s.ctx) != eval_q(env, s.concl))
                    out.push_back(print(s) + ": appearance differs from the stated value");
                break;
            case AxiomKind::Kernel:
                if (eval_m(env, s.ctx[0].f) != sys.kernel_generator(eval_q(env, s.ctx[1].f)))
                    out.push_back(print(s) + ": not the join of the kernel");
                break;
            case AxiomKind::Fact:
            case AxiomKind::Hypothesis:
                if (!holds(env, s))
                    out.push_back(print(s) + ": does not hold");
                break;
            }
        } catch (const std::exception& e) {
            out.push_back(print(s) + ": " + e.what());
        }
    }
    return out;
}

std::size_t proof_depth(const ProofTree& t)
{
    std::size_t d = 0;
    for (const auto& p : t.premises)
        d = std::max(d, proof_depth(p));
    return d + 1;
}

std::size_t proof_size(const ProofTree& t)
{
    std::size_t n = 1;
    for (const auto& p : t.premises)
        n += proof_size(p);
    return n;
}

// ---------------------------------------------------------------------------

namespace {

using Ctx = std::vector<Item>;

Ctx slice(const Ctx& c, std::size_t from, std::size_t to)
{
    return Ctx(c.begin() + static_cast<std::ptrdiff_t>(from), c.begin() + static_cast<std::ptrdiff_t>(to));
}

Ctx cat(std::initializer_list<Ctx> parts)
{
    Ctx out;
    for (const Ctx& p : parts)
        out.insert(out.end(), p.begin(), p.end());
    return out;
}

Ctx one_item(F f) { return Ctx{Item::of(std::move(f))}; }
Ctx agent_item(const std::string& a) { return Ctx{Item::of_agent(a)}; }

bool formula_only(const Ctx& c, std::size_t from, std::size_t to, Sort s)
{
    for (std::size_t i = from; i < to; ++i)
        if (c[i].is_agent || c[i].f->sort != s)
            return false;
    return true;
}

bool is(const Item& it, Op op, Sort s)
{
    return !it.is_agent && it.f->op == op && it.f->sort == s;
}

class Step {
public:
    Step(Rule r, const std::vector<Sequent>& p, const Sequent& c, const AssumptionBase& base)
        : rule_(r)
        , p_(p)
        , c_(c)
        , base_(base)
    {
    }

    std::optional<std::string> run()
    {
        try {
            check_well_formed(c_);
            for (const auto& s : p_)
                check_well_formed(s);
        } catch (const std::invalid_argument& e) {
            return std::string("ill-formed sequent: ") + e.what();
        }
        if (rule_ != Rule::Assumption && c_.side != rule_side(rule_))
            return std::string("conclusion must be ") + (rule_side(rule_) == Sort::Q ? "a Q" : "an M") + "-sequent";
        if (p_.size() != rule_arity(rule_))
            return "expected " + std::to_string(rule_arity(rule_)) + " premise(s), found " + std::to_string(p_.size());
        if (!err_.empty())
            return err_;
        dispatch();
        if (!err_.empty())
            return err_;
        return std::nullopt;
    }

private:
    bool fail(const std::string& msg)
    {
        if (err_.empty())
            err_ = msg;
        return false;
    }

    bool side(std::size_t i, Sort s)
    {
        if (p_[i].side != s)
            return fail("premise " + std::to_string(i + 1) + " must be " + (s == Sort::Q ? "a Q" : "an M") +
                        "-sequent");
        return true;
    }

    bool ctx_is(const Ctx& got, const Ctx& want, const std::string& what)
    {
        if (!equal(got, want))
            return fail(what + " context does not match");
        return true;
    }

    bool concl_is(const F& got, const F& want, const std::string& what)
    {
        if (!equal(got, want))
            return fail(what + " right-hand side does not match");
        return true;
    }

    bool same_concl(std::size_t i) { return concl_is(p_[i].concl, c_.concl, "premise " + std::to_string(i + 1)); }

    bool concl_op(Op op, const char* what)
    {
        if (c_.concl->op != op)
            return fail(std::string("conclusion right-hand side must be ") + what);
        return true;
    }

    // Left rule acting on one formula occurrence: the conclusion context is
    // G, X, G' and each premise context is G, repl_k, G'. Tries every
    // occurrence of a principal formula; the first that fits is accepted.
    template <class Principal, class Replace>
    bool left_rule(Principal principal, Replace replace, const char* what)
    {
        const Ctx& c = c_.ctx;
        for (std::size_t i = 0; i < c.size(); ++i) {
            if (!principal(c[i], i))
                continue;
            bool ok = true;
            for (std::size_t k = 0; k < p_.size() && ok; ++k) {
                const Ctx want = cat({slice(c, 0, i), replace(c[i], k), slice(c, i + 1, c.size())});
                ok = equal(p_[k].ctx, want) && equal(p_[k].concl, c_.concl) && p_[k].side == c_.side;
            }
            if (ok)
                return true;
        }
        return fail(std::string("no ") + what + " in the conclusion context matches the premise");
    }

    void dispatch();

    Rule rule_;
    const std::vector<Sequent>& p_;
    const Sequent& c_;
    const AssumptionBase& base_;
    std::string err_;
};

void Step::dispatch()
{
    const Ctx& C = c_.ctx;
    const F& R = c_.concl;
    const Sort S = c_.side;
    auto occurrence = [](Op op, Sort s) { return [op, s](const Item& it, std::size_t) { return is(it, op, s); }; };
    auto first_of = [&](std::size_t n) { return n > 0 && C.size() >= n; };

    switch (rule_) {
    case Rule::QId:
    case Rule::MId:
        if (C.size() != 1 || C[0].is_agent || !equal(C[0].f, R))
            fail("Id needs a single context formula equal to the right-hand side");
        return;
    case Rule::Q1R:
        if (!C.empty())
            fail("1R needs an empty context");
        else
            concl_op(Op::One, "1");
        return;
    case Rule::QBotL:
        if (std::none_of(C.begin(), C.end(), [](const Item& it) { return is(it, Op::Bot, Sort::Q); }))
            fail("BotL needs bot in the context");
        return;
    case Rule::MBotL:
        if (C.size() != 1 || !is(C[0], Op::Bot, Sort::M))
            fail("BotL needs the context to be exactly bot");
        return;
    case Rule::QTopR:
    case Rule::MTopR:
        concl_op(Op::Top, "top");
        return;
    case Rule::Assumption:
        if (!base_.find(c_))
            fail("sequent is not an axiom of the assumption base");
        return;

    case Rule::Q1L:
        left_rule(occurrence(Op::One, Sort::Q), [](const Item&, std::size_t) { return Ctx{}; }, "1");
        return;
    case Rule::OneML:
        left_rule(occurrence(Op::One, Sort::Q), [](const Item&, std::size_t) { return Ctx{}; }, "1");
        return;
    case Rule::SeqL:
    case Rule::SeqML:
        left_rule(
            occurrence(Op::Seq, Sort::Q),
            [](const Item& it, std::size_t) { return cat({one_item(it.f->a), one_item(it.f->b)}); }, "q1 * q2");
        return;
    case Rule::QOrL:
    case Rule::MOrL:
        left_rule(
            occurrence(Op::Or, S), [](const Item& it, std::size_t k) { return one_item(k == 0 ? it.f->a : it.f->b); },
            "disjunction");
        return;
    case Rule::QAndL1:
    case Rule::MAndL1:
    case Rule::AndML1:
        left_rule(
            occurrence(Op::And, rule_ == Rule::AndML1 ? Sort::Q : S),
            [](const Item& it, std::size_t) { return one_item(it.f->a); }, "conjunction");
        return;
    case Rule::QAndL2:
    case Rule::MAndL2:
    case Rule::AndML2:
        left_rule(
            occurrence(Op::And, rule_ == Rule::AndML2 ? Sort::Q : S),
            [](const Item& it, std::size_t) { return one_item(it.f->b); }, "conjunction");
        return;
    case Rule::OrML: {
        if (C.empty() || !is(C.back(), Op::Or, Sort::Q)) {
            fail("OrML needs an action disjunction as the last context item");
            return;
        }
        const Ctx g = slice(C, 0, C.size() - 1);
        side(0, Sort::M) && side(1, Sort::M) && ctx_is(p_[0].ctx, cat({g, one_item(C.back().f->a)}), "premise 1") &&
            ctx_is(p_[1].ctx, cat({g, one_item(C.back().f->b)}), "premise 2") && same_concl(0) && same_concl(1);
        return;
    }
    case Rule::Contr:
        left_rule(
            [&](const Item& it, std::size_t) { return it.is_m(); },
            [](const Item& it, std::size_t) { return cat({one_item(it.f), one_item(it.f)}); }, "proposition");
        return;
    case Rule::WeakL:
        if (!side(0, Sort::M) || !same_concl(0))
            return;
        for (std::size_t i = 0; i < C.size(); ++i)
            if (C[i].is_m() && equal(p_[0].ctx, cat({slice(C, 0, i), slice(C, i + 1, C.size())})))
                return;
        fail("no proposition of the conclusion context is the weakened one");
        return;
    case Rule::Exch:
        if (!side(0, Sort::M) || !same_concl(0))
            return;
        for (std::size_t i = 0; i + 1 < C.size(); ++i) {
            if (!C[i].is_m() || !C[i + 1].is_m())
                continue;
            Ctx swapped = C;
            std::swap(swapped[i], swapped[i + 1]);
            if (equal(p_[0].ctx, swapped))
                return;
        }
        fail("premise is not the conclusion with two adjacent propositions exchanged");
        return;

    case Rule::AppQR:
    case Rule::AppMR:
        if (!concl_op(Op::App, "an appearance formula"))
            return;
        if (C.empty() || !C.back().is_agent || C.back().agent != R->name) {
            fail("context must end with the agent @" + R->name);
            return;
        }
        side(0, S) && ctx_is(p_[0].ctx, slice(C, 0, C.size() - 1), "premise") &&
            concl_is(p_[0].concl, R->a, "premise");
        return;
    case Rule::AppQL:
    case Rule::AppML:
        if (!first_of(1) || !is(C[0], Op::App, S)) {
            fail("context must start with an appearance formula");
            return;
        }
        side(0, S) &&
            ctx_is(p_[0].ctx, cat({one_item(C[0].f->a), agent_item(C[0].f->name), slice(C, 1, C.size())}),
                   "premise") &&
            same_concl(0);
        return;
    case Rule::BoxQR:
    case Rule::BoxMR:
        if (!concl_op(Op::Box, "a box formula"))
            return;
        side(0, S) && ctx_is(p_[0].ctx, cat({C, agent_item(R->name)}), "premise") &&
            concl_is(p_[0].concl, R->a, "premise");
        return;
    case Rule::BoxQL:
    case Rule::BoxML:
        if (!first_of(2) || !is(C[0], Op::Box, S) || !C[1].is_agent || C[1].agent != C[0].f->name) {
            fail("context must start with a box formula followed by its agent");
            return;
        }
        side(0, S) && ctx_is(p_[0].ctx, cat({one_item(C[0].f->a), slice(C, 2, C.size())}), "premise") &&
            same_concl(0);
        return;
    case Rule::QOrR1:
    case Rule::QOrR2:
    case Rule::MOrR1:
    case Rule::MOrR2: {
        if (!concl_op(Op::Or, "a disjunction"))
            return;
        const bool first = rule_ == Rule::QOrR1 || rule_ == Rule::MOrR1;
        side(0, S) && ctx_is(p_[0].ctx, C, "premise") && concl_is(p_[0].concl, first ? R->a : R->b, "premise");
        return;
    }
    case Rule::QAndR:
    case Rule::MAndR:
        if (!concl_op(Op::And, "a conjunction"))
            return;
        side(0, S) && side(1, S) && ctx_is(p_[0].ctx, C, "premise 1") && ctx_is(p_[1].ctx, C, "premise 2") &&
            concl_is(p_[0].concl, R->a, "premise 1") && concl_is(p_[1].concl, R->b, "premise 2");
        return;
    case Rule::SeqR: {
        if (!concl_op(Op::Seq, "a composition"))
            return;
        std::size_t k = C.size();
        while (k > 0 && C[k - 1].is_agent)
            --k;
        if (!formula_only(C, 0, k, Sort::Q)) {
            fail("SeqR context must be actions followed by agents");
            return;
        }
        const Ctx ga = slice(C, k, C.size());
        if (!side(0, Sort::Q) || !side(1, Sort::Q))
            return;
        const Ctx& p1 = p_[0].ctx;
        if (p1.size() < ga.size() || p1.size() - ga.size() > k) {
            fail("premise 1 does not split the context");
            return;
        }
        const std::size_t split = p1.size() - ga.size();
        ctx_is(p1, cat({slice(C, 0, split), ga}), "premise 1") &&
            ctx_is(p_[1].ctx, cat({slice(C, split, k), ga}), "premise 2") &&
            concl_is(p_[0].concl, R->a, "premise 1") && concl_is(p_[1].concl, R->b, "premise 2");
        return;
    }
    case Rule::RResL: {
        if (!first_of(1) || !is(C[0], Op::RRes, Sort::Q)) {
            fail("context must start with a right residual");
            return;
        }
        if (!formula_only(C, 1, C.size(), Sort::Q)) {
            fail("RResL context after the residual must contain actions only");
            return;
        }
        side(0, Sort::Q) && side(1, Sort::Q) && ctx_is(p_[0].ctx, slice(C, 1, C.size()), "premise 1") &&
            concl_is(p_[0].concl, C[0].f->b, "premise 1") && ctx_is(p_[1].ctx, one_item(C[0].f->a), "premise 2") &&
            same_concl(1);
        return;
    }
    case Rule::RResR:
        if (!concl_op(Op::RRes, "a right residual"))
            return;
        side(0, Sort::Q) && ctx_is(p_[0].ctx, cat({C, one_item(R->b)}), "premise") &&
            concl_is(p_[0].concl, R->a, "premise");
        return;
    case Rule::LResL: {
        if (C.empty() || !is(C.back(), Op::LRes, Sort::Q)) {
            fail("context must end with a left residual");
            return;
        }
        if (!formula_only(C, 0, C.size() - 1, Sort::Q)) {
            fail("LResL context before the residual must contain actions only");
            return;
        }
        side(0, Sort::Q) && side(1, Sort::Q) && ctx_is(p_[0].ctx, slice(C, 0, C.size() - 1), "premise 1") &&
            concl_is(p_[0].concl, C.back().f->a, "premise 1") &&
            ctx_is(p_[1].ctx, one_item(C.back().f->b), "premise 2") && same_concl(1);
        return;
    }
    case Rule::LResR:
        if (!concl_op(Op::LRes, "a left residual"))
            return;
        if (!formula_only(C, 0, C.size(), Sort::Q)) {
            fail("LResR context must contain actions only");
            return;
        }
        side(0, Sort::Q) && ctx_is(p_[0].ctx, cat({one_item(R->a), C}), "premise") &&
            concl_is(p_[0].concl, R->b, "premise");
        return;
    case Rule::QCut:
    case Rule::MCut: {
        if (!side(0, S) || !side(1, S))
            return;
        const Ctx& p1 = p_[0].ctx;
        if (p1.size() > C.size()) {
            fail("premise 1 context is longer than the conclusion context");
            return;
        }
        const F& cut = p_[0].concl;
        ctx_is(p1, slice(C, 0, p1.size()), "premise 1") &&
            ctx_is(p_[1].ctx, cat({one_item(cut), slice(C, p1.size(), C.size())}), "premise 2") && same_concl(1);
        return;
    }
    case Rule::Agent:
        if (C.size() != 1 || !is(C[0], Op::One, Sort::Q)) {
            fail("Agent conclusion context must be exactly 1");
            return;
        }
        if (!side(0, Sort::Q))
            return;
        if (p_[0].ctx.size() != 1 || !p_[0].ctx[0].is_agent) {
            fail("Agent premise context must be a single agent");
            return;
        }
        same_concl(0);
        return;

    case Rule::BotR:
        if (!concl_op(Op::Bot, "bot"))
            return;
        side(0, Sort::M) && ctx_is(p_[0].ctx, C, "premise") && same_concl(0);
        return;
    case Rule::WeakR:
        side(0, Sort::M) && ctx_is(p_[0].ctx, C, "premise") &&
            concl_is(p_[0].concl, fm::bot(Sort::M), "premise");
        return;
    case Rule::Fact:
        if (!concl_op(Op::Fact, "a fact"))
            return;
        if (C.empty() || !C.back().is_q()) {
            fail("Fact context must end with an action");
            return;
        }
        side(0, Sort::M) && ctx_is(p_[0].ctx, slice(C, 0, C.size() - 1), "premise") && same_concl(0);
        return;
    case Rule::UpdL:
        if (!first_of(1) || !is(C[0], Op::Update, Sort::M)) {
            fail("context must start with an update formula");
            return;
        }
        side(0, Sort::M) &&
            ctx_is(p_[0].ctx, cat({one_item(C[0].f->a), one_item(C[0].f->b), slice(C, 1, C.size())}), "premise") &&
            same_concl(0);
        return;
    case Rule::UpdR: {
        if (!concl_op(Op::Update, "an update formula"))
            return;
        if (!side(0, Sort::M) || !side(1, Sort::Q))
            return;
        const Ctx& pq = p_[1].ctx;
        std::size_t k = pq.size();
        while (k > 0 && pq[k - 1].is_agent)
            --k;
        if (!formula_only(pq, 0, k, Sort::Q)) {
            fail("premise 2 context must be actions followed by agents");
            return;
        }
        const Ctx gq = slice(pq, 0, k);
        const Ctx ga = slice(pq, k, pq.size());
        const Ctx& pm = p_[0].ctx;
        if (pm.size() < ga.size() || !equal(slice(pm, pm.size() - ga.size(), pm.size()), ga)) {
            fail("premise 1 context must end with the agents of premise 2");
            return;
        }
        const Ctx g = slice(pm, 0, pm.size() - ga.size());
        ctx_is(C, cat({g, gq, ga}), "conclusion") && concl_is(p_[0].concl, R->a, "premise 1") &&
            concl_is(p_[1].concl, R->b, "premise 2");
        return;
    }
    case Rule::DyL:
        if (!first_of(1) || !is(C[0], Op::DynBox, Sort::M)) {
            fail("context must start with a dynamic box");
            return;
        }
        if (!formula_only(C, 1, C.size(), Sort::Q)) {
            fail("DyL context after the dynamic box must contain actions only");
            return;
        }
        side(0, Sort::M) && side(1, Sort::Q) && ctx_is(p_[0].ctx, one_item(C[0].f->b), "premise 1") &&
            same_concl(0) && ctx_is(p_[1].ctx, slice(C, 1, C.size()), "premise 2") &&
            concl_is(p_[1].concl, C[0].f->a, "premise 2");
        return;
    case Rule::DyR:
        if (!concl_op(Op::DynBox, "a dynamic box"))
            return;
        side(0, Sort::M) && ctx_is(p_[0].ctx, cat({C, one_item(R->a)}), "premise") &&
            concl_is(p_[0].concl, R->b, "premise");
        return;
    case Rule::RResML: {
        if (!side(0, Sort::Q) || !side(1, Sort::M))
            return;
        const std::size_t n = p_[0].ctx.size();
        if (C.size() < n + 1 || !is(C[C.size() - n - 1], Op::RRes, Sort::Q)) {
            fail("RResML needs a right residual followed by the context of premise 1");
            return;
        }
        const std::size_t i = C.size() - n - 1;
        if (!formula_only(C, i + 1, C.size(), Sort::Q)) {
            fail("RResML context after the residual must contain actions only");
            return;
        }
        ctx_is(p_[0].ctx, slice(C, i + 1, C.size()), "premise 1") && concl_is(p_[0].concl, C[i].f->b, "premise 1") &&
            ctx_is(p_[1].ctx, cat({slice(C, 0, i), one_item(C[i].f->a)}), "premise 2") && same_concl(1);
        return;
    }
    case Rule::LResML: {
        if (C.empty() || !is(C.back(), Op::LRes, Sort::Q)) {
            fail("context must end with a left residual");
            return;
        }
        if (!side(0, Sort::Q) || !side(1, Sort::M))
            return;
        const std::size_t n = p_[0].ctx.size();
        if (C.size() < n + 1) {
            fail("premise 1 context is too long");
            return;
        }
        const std::size_t i = C.size() - 1 - n;
        if (!formula_only(C, i, C.size() - 1, Sort::Q)) {
            fail("LResML context before the residual must contain actions only");
            return;
        }
        const F& res = C.back().f;
        ctx_is(p_[0].ctx, slice(C, i, C.size() - 1), "premise 1") && concl_is(p_[0].concl, res->a, "premise 1") &&
            ctx_is(p_[1].ctx, cat({slice(C, 0, i), one_item(res->b)}), "premise 2") && same_concl(1);
        return;
    }
    }
}

} // namespace

std::optional<std::string> check_step(Rule rule, const std::vector<Sequent>& premises, const Sequent& conclusion,
                                      const AssumptionBase& base)
{
    return Step(rule, premises, conclusion, base).run();
}

std::string ProofViolation::describe() const
{
    std::ostringstream os;
    os << "at root";
    for (std::size_t i : path)
        os << "." << i;
    os << " (" << rule << "): " << message << " [" << sequent << "]";
    return os.str();
}

namespace {

std::optional<ProofViolation> check_rec(const ProofTree& t, const AssumptionBase& base, std::vector<std::size_t>& path)
{
    std::vector<Sequent> prem;
    prem.reserve(t.premises.size());
    for (const auto& p : t.premises)
        prem.push_back(p.conclusion);
    if (auto err = check_step(t.rule, prem, t.conclusion, base))
        return ProofViolation{path, rule_name(t.rule), print(t.conclusion), *err};
    for (std::size_t i = 0; i < t.premises.size(); ++i) {
        path.push_back(i);
        if (auto v = check_rec(t.premises[i], base, path))
            return v;
        path.pop_back();
    }
    return std::nullopt;
}

} // namespace

std::optional<ProofViolation> check_proof(const ProofTree& tree, const AssumptionBase& base)
{
    std::vector<std::size_t> path;
    return check_rec(tree, base, path);
}

// ---------------------------------------------------------------------------

namespace {

struct VocabEntry {
    std::string name;
    F f;
    Element value;
};

F join_of(const std::vector<const VocabEntry*>& parts, Sort s)
{
    if (parts.empty())
        return fm::bot(s);
    F acc = parts.front()->f;
    for (std::size_t i = 1; i < parts.size(); ++i)
        acc = fm::lor(acc, parts[i]->f);
    return acc;
}

std::optional<F> express(const Lattice& lat, const std::vector<VocabEntry>& vocab, Element target, Sort s)
{
    for (const auto& v : vocab)
        if (v.value == target)
            return v.f;
    if (target == lat.bottom())
        return fm::bot(s);
    std::vector<const VocabEntry*> used;
    Element acc = lat.bottom();
    for (const auto& v : vocab) {
        if (!lat.leq(v.value, target) || lat.leq(v.value, acc))
            continue;
        used.push_back(&v);
        acc = lat.join(acc, v.value);
    }
    if (acc != target)
        return std::nullopt;
    return join_of(used, s);
}

} // namespace

GeneratedBase axioms_of(const Environment& env, const std::vector<std::string>& vocabulary)
{
    const EpistemicSystem& sys = env.system();
    GeneratedBase out;
    std::vector<VocabEntry> mv;  // variables and facts
    std::vector<VocabEntry> mvars;
    std::vector<VocabEntry> facts;
    std::vector<VocabEntry> qv;
    for (const std::string& name : vocabulary) {
        if (!name.empty() && name[0] == '#') {
            const std::string p = name.substr(1);
            auto it = env.facts().find(p);
            if (it == env.facts().end())
                throw std::invalid_argument("vocabulary fact " + name + " is not bound");
            mv.push_back({name, fm::fact(p), it->second});
            facts.push_back(mv.back());
            out.base.signature.facts.insert(p);
        } else if (auto it = env.mvals().find(name); it != env.mvals().end()) {
            mv.push_back({name, fm::var(Sort::M, name), it->second});
            mvars.push_back(mv.back());
            out.base.signature.mvars.insert(name);
        } else if (auto jt = env.qvals().find(name); jt != env.qvals().end()) {
            qv.push_back({name, fm::var(Sort::Q, name), jt->second});
            out.base.signature.qvars.insert(name);
        } else {
            throw std::invalid_argument("vocabulary item " + name + " is not bound");
        }
    }
    if (vocabulary.empty())
        return out;
    out.base.signature.agents.insert(sys.agents().begin(), sys.agents().end());

    for (const auto& m : mvars)
        for (std::size_t a = 0; a < sys.agents().size(); ++a) {
            const std::string& agent = sys.agents()[a];
            auto e = express(sys.M(), mv, sys.appear_m(a, m.value), Sort::M);
            if (!e)
                throw std::invalid_argument("appearance of " + m.name + " to " + agent +
                                            " has no expression over the vocabulary");
            out.base.add(AxiomKind::AppearanceM, Sequent{Sort::M, {Item::of(m.f), Item::of_agent(agent)}, *e});
        }
    for (const auto& q : qv)
        for (std::size_t a = 0; a < sys.agents().size(); ++a) {
            const std::string& agent = sys.agents()[a];
            auto e = express(sys.Q(), qv, sys.appear_q(a, q.value), Sort::Q);
            if (!e)
                throw std::invalid_argument("appearance of " + q.name + " to " + agent +
                                            " has no expression over the vocabulary");
            out.base.add(AxiomKind::AppearanceQ, Sequent{Sort::Q, {Item::of(q.f), Item::of_agent(agent)}, *e});
        }
    for (const auto& q : qv) {
        const Element ker = sys.kernel_generator(q.value);
        auto e = express(sys.M(), mv, ker, Sort::M);
        if (!e) {
            out.skipped.push_back(q.name);
            continue;
        }
        out.base.add(AxiomKind::Kernel, Sequent{Sort::M, {Item::of(*e), Item::of(q.f)}, fm::bot(Sort::M)});
    }
    for (const auto& m : mvars)
        for (const auto& p : facts)
            if (sys.M().leq(m.value, p.value))
                out.base.add(AxiomKind::Fact, Sequent{Sort::M, {Item::of(m.f)}, p.f});
    return out;
}

} // namespace epiq
