#include "epiq/search.hpp"

#include <algorithm>
#include <limits>
#include <set>
#include <string>
#include <unordered_map>
#include <unordered_set>

namespace epiq {

const std::vector<Rule>& default_branch_order()
{
    static const std::vector<Rule> order = {
        // leaves
        Rule::QId, Rule::MId, Rule::Q1R, Rule::QBotL, Rule::MBotL, Rule::QTopR, Rule::MTopR, Rule::Assumption,
        // right rules
        Rule::QAndR, Rule::MAndR, Rule::RResR, Rule::LResR, Rule::DyR, Rule::BoxQR, Rule::BoxMR, Rule::AppQR,
        Rule::AppMR, Rule::QOrR1, Rule::QOrR2, Rule::MOrR1, Rule::MOrR2, Rule::SeqR,
        // left rules
        Rule::Q1L, Rule::OneML, Rule::SeqL, Rule::SeqML, Rule::UpdL, Rule::AppQL, Rule::AppML, Rule::BoxQL,
        Rule::BoxML, Rule::QOrL, Rule::MOrL, Rule::OrML, Rule::QAndL1, Rule::QAndL2, Rule::MAndL1, Rule::MAndL2,
        Rule::AndML1, Rule::AndML2, Rule::RResL, Rule::LResL, Rule::RResML, Rule::LResML, Rule::DyL,
        // update, facts, agents
        Rule::UpdR, Rule::Fact, Rule::Agent, Rule::WeakR,
        // structural
        Rule::WeakL, Rule::Exch, Rule::Contr,
        // cuts
        Rule::MCut, Rule::QCut,
        // never useful backwards: the premise equals the conclusion
        Rule::BotR,
    };
    return order;
}

namespace {

using Ctx = std::vector<Item>;
using Premises = std::vector<Sequent>;

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

Ctx one(const F& f) { return Ctx{Item::of(f)}; }

bool is(const Item& it, Op op, Sort s) { return !it.is_agent && it.f->op == op && it.f->sort == s; }

bool q_only(const Ctx& c, std::size_t from, std::size_t to)
{
    for (std::size_t i = from; i < to; ++i)
        if (!c[i].is_q())
            return false;
    return true;
}

std::size_t agent_suffix_start(const Ctx& c)
{
    std::size_t k = c.size();
    while (k > 0 && c[k - 1].is_agent)
        --k;
    return k;
}

class PoolBuilder {
public:
    void add(const F& f)
    {
        if (seen_.insert(print(f) + (f->sort == Sort::Q ? ":Q" : ":M")).second)
            (f->sort == Sort::Q ? q_ : m_).push_back(f);
    }
    std::vector<F> q_;
    std::vector<F> m_;

private:
    std::set<std::string> seen_;
};

struct Pools {
    std::vector<F> m;
    std::vector<F> q;
};

Pools build_pools(const Sequent& goal, const AssumptionBase& base)
{
    PoolBuilder pb;
    std::vector<F> goal_subs;
    for (const Item& it : goal.ctx)
        if (!it.is_agent)
            subformulas(it.f, goal_subs);
    subformulas(goal.concl, goal_subs);
    for (const F& f : goal_subs)
        pb.add(f);
    std::vector<F> heads_m;
    std::vector<F> heads_q;
    for (const F& f : goal_subs)
        (f->sort == Sort::Q ? heads_q : heads_m).push_back(f);
    for (const Axiom& ax : base.axioms()) {
        for (const Item& it : ax.seq.ctx)
            if (!it.is_agent)
                pb.add(it.f);
        pb.add(ax.seq.concl);
        if (ax.kind == AxiomKind::AppearanceM)
            heads_m.push_back(ax.seq.concl);
        if (ax.kind == AxiomKind::AppearanceQ)
            heads_q.push_back(ax.seq.concl);
    }
    pb.add(fm::bot(Sort::M));
    pb.add(fm::bot(Sort::Q));
    for (const F& m : heads_m) {
        if (m->op == Op::Update || m->op == Op::Bot)
            continue;
        for (const F& q : heads_q)
            if (q->op != Op::Bot)
                pb.add(fm::update(m, q));
    }
    return {pb.m_, pb.q_};
}

// Backward instances of one rule for a goal, in a fixed order.
class Expander {
public:
    Expander(const AssumptionBase& base, const Pools& pools, const std::vector<std::string>& agents,
             std::size_t ctx_cap)
        : base_(base)
        , pools_(pools)
        , agents_(agents)
        , ctx_cap_(ctx_cap)
    {
    }

    std::vector<Premises> expand(Rule r, const Sequent& g) const;

private:
    const AssumptionBase& base_;
    const Pools& pools_;
    const std::vector<std::string>& agents_;
    std::size_t ctx_cap_;
};

std::vector<Premises> Expander::expand(Rule r, const Sequent& g) const
{
    std::vector<Premises> out;
    if (r != Rule::Assumption && rule_side(r) != g.side)
        return out;
    const Ctx& C = g.ctx;
    const F& R = g.concl;
    const Sort S = g.side;
    auto seq = [](Sort s, Ctx c, F f) { return Sequent{s, std::move(c), std::move(f)}; };
    auto leaf = [&](bool ok) {
        if (ok)
            out.push_back({});
    };
    // Replace occurrence i of a principal formula by each listed context.
    auto at_each = [&](auto principal, auto replace) {
        for (std::size_t i = 0; i < C.size(); ++i) {
            if (!principal(C[i]))
                continue;
            Premises ps;
            for (const Ctx& rep : replace(C[i]))
                ps.push_back(seq(S, cat({slice(C, 0, i), rep, slice(C, i + 1, C.size())}), R));
            out.push_back(std::move(ps));
        }
    };

    switch (r) {
    case Rule::QId:
    case Rule::MId:
        leaf(C.size() == 1 && !C[0].is_agent && equal(C[0].f, R));
        break;
    case Rule::Q1R:
        leaf(C.empty() && R->op == Op::One);
        break;
    case Rule::QBotL:
        leaf(std::any_of(C.begin(), C.end(), [](const Item& it) { return is(it, Op::Bot, Sort::Q); }));
        break;
    case Rule::MBotL:
        leaf(C.size() == 1 && is(C[0], Op::Bot, Sort::M));
        break;
    case Rule::QTopR:
    case Rule::MTopR:
        leaf(R->op == Op::Top);
        break;
    case Rule::Assumption:
        leaf(base_.find(g).has_value());
        break;

    case Rule::QAndR:
    case Rule::MAndR:
        if (R->op == Op::And)
            out.push_back({seq(S, C, R->a), seq(S, C, R->b)});
        break;
    case Rule::QOrR1:
    case Rule::MOrR1:
        if (R->op == Op::Or)
            out.push_back({seq(S, C, R->a)});
        break;
    case Rule::QOrR2:
    case Rule::MOrR2:
        if (R->op == Op::Or)
            out.push_back({seq(S, C, R->b)});
        break;
    case Rule::RResR:
        if (R->op == Op::RRes)
            out.push_back({seq(S, cat({C, one(R->b)}), R->a)});
        break;
    case Rule::LResR:
        if (R->op == Op::LRes && q_only(C, 0, C.size()))
            out.push_back({seq(S, cat({one(R->a), C}), R->b)});
        break;
    case Rule::DyR:
        if (R->op == Op::DynBox)
            out.push_back({seq(S, cat({C, one(R->a)}), R->b)});
        break;
    case Rule::BoxQR:
    case Rule::BoxMR:
        if (R->op == Op::Box)
            out.push_back({seq(S, cat({C, Ctx{Item::of_agent(R->name)}}), R->a)});
        break;
    case Rule::AppQR:
    case Rule::AppMR:
        if (R->op == Op::App && !C.empty() && C.back().is_agent && C.back().agent == R->name)
            out.push_back({seq(S, slice(C, 0, C.size() - 1), R->a)});
        break;
    case Rule::SeqR: {
        if (R->op != Op::Seq)
            break;
        const std::size_t k = agent_suffix_start(C);
        if (!q_only(C, 0, k))
            break;
        const Ctx ga = slice(C, k, C.size());
        for (std::size_t split = 0; split <= k; ++split)
            out.push_back({seq(S, cat({slice(C, 0, split), ga}), R->a), seq(S, cat({slice(C, split, k), ga}), R->b)});
        break;
    }

    case Rule::Q1L:
    case Rule::OneML:
        at_each([](const Item& it) { return is(it, Op::One, Sort::Q); },
                [](const Item&) { return std::vector<Ctx>{Ctx{}}; });
        break;
    case Rule::SeqL:
    case Rule::SeqML:
        at_each([](const Item& it) { return is(it, Op::Seq, Sort::Q); },
                [](const Item& it) { return std::vector<Ctx>{cat({one(it.f->a), one(it.f->b)})}; });
        break;
    case Rule::QOrL:
    case Rule::MOrL:
        at_each([S](const Item& it) { return is(it, Op::Or, S); },
                [](const Item& it) { return std::vector<Ctx>{one(it.f->a), one(it.f->b)}; });
        break;
    case Rule::QAndL1:
    case Rule::MAndL1:
    case Rule::AndML1: {
        const Sort s = r == Rule::AndML1 ? Sort::Q : S;
        at_each([s](const Item& it) { return is(it, Op::And, s); },
                [](const Item& it) { return std::vector<Ctx>{one(it.f->a)}; });
        break;
    }
    case Rule::QAndL2:
    case Rule::MAndL2:
    case Rule::AndML2: {
        const Sort s = r == Rule::AndML2 ? Sort::Q : S;
        at_each([s](const Item& it) { return is(it, Op::And, s); },
                [](const Item& it) { return std::vector<Ctx>{one(it.f->b)}; });
        break;
    }
    case Rule::UpdL:
        if (!C.empty() && is(C[0], Op::Update, Sort::M))
            out.push_back({seq(S, cat({one(C[0].f->a), one(C[0].f->b), slice(C, 1, C.size())}), R)});
        break;
    case Rule::AppQL:
    case Rule::AppML:
        if (!C.empty() && is(C[0], Op::App, S))
            out.push_back(
                {seq(S, cat({one(C[0].f->a), Ctx{Item::of_agent(C[0].f->name)}, slice(C, 1, C.size())}), R)});
        break;
    case Rule::BoxQL:
    case Rule::BoxML:
        if (C.size() >= 2 && is(C[0], Op::Box, S) && C[1].is_agent && C[1].agent == C[0].f->name)
            out.push_back({seq(S, cat({one(C[0].f->a), slice(C, 2, C.size())}), R)});
        break;
    case Rule::OrML:
        if (!C.empty() && is(C.back(), Op::Or, Sort::Q)) {
            const Ctx g0 = slice(C, 0, C.size() - 1);
            out.push_back({seq(S, cat({g0, one(C.back().f->a)}), R), seq(S, cat({g0, one(C.back().f->b)}), R)});
        }
        break;
    case Rule::RResL:
        if (!C.empty() && is(C[0], Op::RRes, Sort::Q) && q_only(C, 1, C.size()))
            out.push_back({seq(Sort::Q, slice(C, 1, C.size()), C[0].f->b), seq(Sort::Q, one(C[0].f->a), R)});
        break;
    case Rule::LResL:
        if (!C.empty() && is(C.back(), Op::LRes, Sort::Q) && q_only(C, 0, C.size() - 1))
            out.push_back(
                {seq(Sort::Q, slice(C, 0, C.size() - 1), C.back().f->a), seq(Sort::Q, one(C.back().f->b), R)});
        break;
    case Rule::RResML:
        for (std::size_t i = C.size(); i-- > 0;) {
            if (is(C[i], Op::RRes, Sort::Q))
                out.push_back({seq(Sort::Q, slice(C, i + 1, C.size()), C[i].f->b),
                               seq(Sort::M, cat({slice(C, 0, i), one(C[i].f->a)}), R)});
            if (!C[i].is_q())
                break;
        }
        break;
    case Rule::LResML:
        if (!C.empty() && is(C.back(), Op::LRes, Sort::Q)) {
            const F& res = C.back().f;
            for (std::size_t i = C.size() - 1;; --i) {
                out.push_back({seq(Sort::Q, slice(C, i, C.size() - 1), res->a),
                               seq(Sort::M, cat({slice(C, 0, i), one(res->b)}), R)});
                if (i == 0 || !C[i - 1].is_q())
                    break;
            }
        }
        break;
    case Rule::DyL:
        if (!C.empty() && is(C[0], Op::DynBox, Sort::M) && q_only(C, 1, C.size()))
            out.push_back({seq(Sort::M, one(C[0].f->b), R), seq(Sort::Q, slice(C, 1, C.size()), C[0].f->a)});
        break;

    case Rule::UpdR: {
        if (R->op != Op::Update)
            break;
        const std::size_t k = agent_suffix_start(C);
        // agents taken into the action premise: the whole run, or a proper
        // suffix of it with no actions
        for (std::size_t a = C.size() + 1; a-- > k;) {
            const Ctx ga = slice(C, a, C.size());
            if (a > k) {
                out.push_back({seq(Sort::M, cat({slice(C, 0, a), ga}), R->a), seq(Sort::Q, ga, R->b)});
                continue;
            }
            for (std::size_t j = k;; --j) {
                out.push_back(
                    {seq(Sort::M, cat({slice(C, 0, j), ga}), R->a), seq(Sort::Q, cat({slice(C, j, k), ga}), R->b)});
                if (j == 0 || !C[j - 1].is_q())
                    break;
            }
        }
        break;
    }
    case Rule::Fact:
        if (R->op == Op::Fact && !C.empty() && C.back().is_q())
            out.push_back({seq(S, slice(C, 0, C.size() - 1), R)});
        break;
    case Rule::Agent:
        if (C.size() == 1 && is(C[0], Op::One, Sort::Q))
            for (const std::string& a : agents_)
                out.push_back({seq(Sort::Q, Ctx{Item::of_agent(a)}, R)});
        break;
    case Rule::WeakR:
        if (R->op != Op::Bot)
            out.push_back({seq(S, C, fm::bot(Sort::M))});
        break;

    case Rule::WeakL:
        for (std::size_t i = 0; i < C.size(); ++i)
            if (C[i].is_m())
                out.push_back({seq(S, cat({slice(C, 0, i), slice(C, i + 1, C.size())}), R)});
        break;
    case Rule::Exch:
        for (std::size_t i = 0; i + 1 < C.size(); ++i)
            if (C[i].is_m() && C[i + 1].is_m() && !equal(C[i], C[i + 1])) {
                Ctx c = C;
                std::swap(c[i], c[i + 1]);
                out.push_back({seq(S, std::move(c), R)});
            }
        break;
    case Rule::Contr:
        if (C.size() < ctx_cap_)
            for (std::size_t i = 0; i < C.size(); ++i)
                if (C[i].is_m())
                    out.push_back({seq(S, cat({slice(C, 0, i + 1), slice(C, i, C.size())}), R)});
        break;

    case Rule::MCut:
    case Rule::QCut: {
        const std::vector<F>& pool = S == Sort::M ? pools_.m : pools_.q;
        for (std::size_t i = C.size() + 1; i-- > 0;) {
            const Ctx pre = slice(C, 0, i);
            const Ctx rest = slice(C, i, C.size());
            if (rest.size() + 1 > ctx_cap_)
                continue;
            for (const F& c : pool) {
                if (i == C.size() && equal(c, R))
                    continue;
                if (i == 1 && !C[0].is_agent && equal(C[0].f, c))
                    continue;
                out.push_back({seq(S, pre, c), seq(S, cat({one(c), rest}), R)});
            }
        }
        break;
    }
    case Rule::BotR:
        break;
    }
    return out;
}

std::vector<std::string> collect_agents(const Sequent& goal, const AssumptionBase& base)
{
    Signature sig = base.signature;
    collect_signature(goal, sig);
    for (const Axiom& ax : base.axioms())
        collect_signature(ax.seq, sig);
    return {sig.agents.begin(), sig.agents.end()};
}

std::size_t context_cap(const Sequent& goal, const AssumptionBase& base)
{
    std::size_t cap = goal.ctx.size();
    for (const Axiom& ax : base.axioms())
        cap = std::max(cap, ax.seq.ctx.size());
    return cap + 2;
}

struct LimitHit {};

constexpr std::size_t kNoLoop = std::numeric_limits<std::size_t>::max();

class Searcher {
public:
    Searcher(const Sequent& goal, const AssumptionBase& base, const SearchConfig& cfg)
        : cfg_(cfg)
        , pools_(cfg.cut_pool == CutPolicy::None ? Pools{} : build_pools(goal, base))
        , order_(cfg.branch_order.empty() ? default_branch_order() : cfg.branch_order)
        , agents_(collect_agents(goal, base))
        , expander_(base, pools_, agents_, context_cap(goal, base))
    {
    }

    std::optional<ProofTree> run(const Sequent& goal)
    {
        for (std::size_t d = 1; d <= cfg_.max_depth; ++d) {
            stats.depth_reached = d;
            path_.clear();
            auto r = solve(goal, d);
            if (r.tree)
                return r.tree;
        }
        return std::nullopt;
    }

    SearchStats stats;

private:
    struct Outcome {
        std::optional<ProofTree> tree;
        std::size_t loop_dep = kNoLoop;
    };

    Outcome solve(const Sequent& g, std::size_t depth)
    {
        const std::string key = print(g);
        if (auto it = proved_.find(key); it != proved_.end() && proof_depth(it->second) <= depth)
            return {it->second, kNoLoop};
        if (auto it = failed_.find(key); it != failed_.end() && it->second >= depth)
            return {};
        if (cfg_.loop_check) {
            if (auto it = path_.find(key); it != path_.end())
                return {std::nullopt, it->second};
        }
        if (cfg_.node_limit != 0 && ++stats.nodes > cfg_.node_limit) {
            stats.node_limit_hit = true;
            throw LimitHit{};
        }
        if (cfg_.node_limit == 0)
            ++stats.nodes;

        const std::size_t idx = path_.size();
        path_.emplace(key, idx);
        std::size_t loop_dep = kNoLoop;
        for (Rule r : order_) {
            if (depth == 1 && rule_arity(r) != 0)
                continue;
            for (Premises& ps : expander_.expand(r, g)) {
                std::vector<ProofTree> subs;
                bool ok = true;
                for (Sequent& p : ps) {
                    Outcome o = solve(p, depth - 1);
                    loop_dep = std::min(loop_dep, o.loop_dep);
                    if (!o.tree) {
                        ok = false;
                        break;
                    }
                    subs.push_back(std::move(*o.tree));
                }
                if (!ok)
                    continue;
                ProofTree t{g, r, std::move(subs)};
                path_.erase(key);
                proved_.emplace(key, t);
                return {std::move(t), kNoLoop};
            }
        }
        path_.erase(key);
        if (loop_dep >= idx) {
            auto& f = failed_[key];
            f = std::max(f, depth);
            loop_dep = kNoLoop;
        }
        return {std::nullopt, loop_dep};
    }

    const SearchConfig& cfg_;
    Pools pools_;
    std::vector<Rule> order_;
    std::vector<std::string> agents_;
    Expander expander_;
    std::unordered_map<std::string, std::size_t> path_;
    std::unordered_map<std::string, ProofTree> proved_;
    std::unordered_map<std::string, std::size_t> failed_;
};

} // namespace

std::vector<F> cut_pool(const Sequent& goal, const AssumptionBase& base, Sort sort)
{
    Pools p = build_pools(goal, base);
    return sort == Sort::M ? p.m : p.q;
}

std::vector<std::vector<Sequent>> backward_instances(Rule rule, const Sequent& goal, const AssumptionBase& base,
                                                     CutPolicy cut_pool)
{
    check_well_formed(goal);
    const Pools pools = cut_pool == CutPolicy::None ? Pools{} : build_pools(goal, base);
    const std::vector<std::string> agents = collect_agents(goal, base);
    const Expander ex(base, pools, agents, context_cap(goal, base));
    std::vector<std::vector<Sequent>> out;
    for (auto& ps : ex.expand(rule, goal))
        out.emplace_back(ps.begin(), ps.end());
    return out;
}

SearchResult prove(const Sequent& goal, const AssumptionBase& base, const SearchConfig& cfg)
{
    check_well_formed(goal);
    if (cfg.max_depth == 0)
        throw std::invalid_argument("max_depth must be at least 1");
    SearchResult res;
    Searcher s(goal, base, cfg);
    try {
        res.proof = s.run(goal);
    } catch (const LimitHit&) {
    }
    res.stats = s.stats;
    return res;
}

} // namespace epiq
