#pragma once

// Random goals whose shape matches the conclusion of a given rule.

#include "support.hpp"

#include "epiq/proof.hpp"

namespace epiq::testing {

inline Item formula_item(Rng& rng, Sort s) { return Item::of(random_formula(rng, s, 2)); }

inline std::vector<Item> random_context(Rng& rng, Sort side, std::size_t max_len = 3)
{
    std::vector<Item> ctx;
    const std::size_t len = pick(rng, max_len + 1);
    for (std::size_t i = 0; i < len; ++i) {
        const std::size_t r = pick(rng, side == Sort::Q ? 4 : 6);
        if (r == 0)
            ctx.push_back(Item::of_agent(random_agent(rng)));
        else if (side == Sort::Q || r <= 2)
            ctx.push_back(formula_item(rng, Sort::Q));
        else
            ctx.push_back(formula_item(rng, Sort::M));
    }
    return ctx;
}

inline std::vector<Item> q_context(Rng& rng, std::size_t max_len = 2)
{
    std::vector<Item> ctx;
    const std::size_t len = pick(rng, max_len + 1);
    for (std::size_t i = 0; i < len; ++i)
        ctx.push_back(formula_item(rng, Sort::Q));
    return ctx;
}

inline void insert_at_random(Rng& rng, std::vector<Item>& ctx, Item it)
{
    ctx.insert(ctx.begin() + static_cast<long>(pick(rng, ctx.size() + 1)), std::move(it));
}

inline std::vector<Item> join(std::vector<Item> a, const std::vector<Item>& b)
{
    a.insert(a.end(), b.begin(), b.end());
    return a;
}

inline F sub(Rng& rng, Sort s) { return random_formula(rng, s, 1); }

// A random goal whose shape lets `r` apply backwards.
inline Sequent shaped_goal(Rng& rng, Rule r)
{
    const Sort S = rule_side(r);
    Sequent g{S, random_context(rng, S), random_formula(rng, S, 2)};
    switch (r) {
    case Rule::QId:
    case Rule::MId: {
        const F f = random_formula(rng, S, 2);
        return {S, {Item::of(f)}, f};
    }
    case Rule::Q1R:
        return {S, {}, fm::one()};
    case Rule::QBotL:
        insert_at_random(rng, g.ctx, Item::of(fm::bot(Sort::Q)));
        return g;
    case Rule::MBotL:
        return {S, {Item::of(fm::bot(Sort::M))}, g.concl};
    case Rule::QTopR:
    case Rule::MTopR:
        g.concl = fm::top(S);
        return g;
    case Rule::Q1L:
    case Rule::OneML:
        insert_at_random(rng, g.ctx, Item::of(fm::one()));
        return g;
    case Rule::SeqL:
    case Rule::SeqML:
        insert_at_random(rng, g.ctx, Item::of(fm::seq(sub(rng, Sort::Q), sub(rng, Sort::Q))));
        return g;
    case Rule::QOrL:
    case Rule::MOrL:
        insert_at_random(rng, g.ctx, Item::of(fm::lor(sub(rng, S), sub(rng, S))));
        return g;
    case Rule::QAndL1:
    case Rule::QAndL2:
    case Rule::MAndL1:
    case Rule::MAndL2:
        insert_at_random(rng, g.ctx, Item::of(fm::land(sub(rng, S), sub(rng, S))));
        return g;
    case Rule::AndML1:
    case Rule::AndML2:
        insert_at_random(rng, g.ctx, Item::of(fm::land(sub(rng, Sort::Q), sub(rng, Sort::Q))));
        return g;
    case Rule::OrML:
        g.ctx.push_back(Item::of(fm::lor(sub(rng, Sort::Q), sub(rng, Sort::Q))));
        return g;
    case Rule::Contr:
    case Rule::WeakL:
        insert_at_random(rng, g.ctx, formula_item(rng, Sort::M));
        return g;
    case Rule::Exch: {
        const std::size_t i = pick(rng, g.ctx.size() + 1);
        g.ctx.insert(g.ctx.begin() + static_cast<long>(i), {formula_item(rng, Sort::M), formula_item(rng, Sort::M)});
        return g;
    }
    case Rule::AppQR:
    case Rule::AppMR: {
        const std::string a = random_agent(rng);
        g.ctx.push_back(Item::of_agent(a));
        g.concl = fm::app(a, sub(rng, S));
        return g;
    }
    case Rule::AppQL:
    case Rule::AppML:
        g.ctx.insert(g.ctx.begin(), Item::of(fm::app(random_agent(rng), sub(rng, S))));
        return g;
    case Rule::BoxQR:
    case Rule::BoxMR:
        g.concl = fm::box(random_agent(rng), sub(rng, S));
        return g;
    case Rule::BoxQL:
    case Rule::BoxML: {
        const std::string a = random_agent(rng);
        g.ctx.insert(g.ctx.begin(), {Item::of(fm::box(a, sub(rng, S))), Item::of_agent(a)});
        return g;
    }
    case Rule::QOrR1:
    case Rule::QOrR2:
    case Rule::MOrR1:
    case Rule::MOrR2:
        g.concl = fm::lor(sub(rng, S), sub(rng, S));
        return g;
    case Rule::QAndR:
    case Rule::MAndR:
        g.concl = fm::land(sub(rng, S), sub(rng, S));
        return g;
    case Rule::SeqR: {
        std::vector<Item> ctx = q_context(rng, 3);
        if (coin(rng))
            ctx.push_back(Item::of_agent(random_agent(rng)));
        return {S, ctx, fm::seq(sub(rng, Sort::Q), sub(rng, Sort::Q))};
    }
    case Rule::RResL:
        return {S, join({Item::of(fm::rres(sub(rng, S), sub(rng, S)))}, q_context(rng)), g.concl};
    case Rule::RResR:
        g.concl = fm::rres(sub(rng, S), sub(rng, S));
        return g;
    case Rule::LResL:
        return {S, join(q_context(rng), {Item::of(fm::lres(sub(rng, S), sub(rng, S)))}), g.concl};
    case Rule::LResR:
        return {S, q_context(rng), fm::lres(sub(rng, S), sub(rng, S))};
    case Rule::QCut:
    case Rule::MCut:
        return g;
    case Rule::Agent:
        return {S, {Item::of(fm::one())}, g.concl};
    case Rule::BotR:
        g.concl = fm::bot(Sort::M);
        return g;
    case Rule::WeakR:
        return g;
    case Rule::Fact:
        g.ctx.push_back(formula_item(rng, Sort::Q));
        g.concl = fm::fact("f");
        return g;
    case Rule::UpdL:
        g.ctx.insert(g.ctx.begin(), Item::of(fm::update(sub(rng, Sort::M), sub(rng, Sort::Q))));
        return g;
    case Rule::UpdR: {
        std::vector<Item> ctx = random_context(rng, S, 2);
        ctx = join(ctx, q_context(rng, 2));
        if (coin(rng))
            ctx.push_back(Item::of_agent(random_agent(rng)));
        return {S, ctx, fm::update(sub(rng, Sort::M), sub(rng, Sort::Q))};
    }
    case Rule::DyL:
        return {S, join({Item::of(fm::dynbox(sub(rng, Sort::Q), sub(rng, Sort::M)))}, q_context(rng)), g.concl};
    case Rule::DyR:
        g.concl = fm::dynbox(sub(rng, Sort::Q), sub(rng, Sort::M));
        return g;
    case Rule::RResML: {
        std::vector<Item> ctx = random_context(rng, S, 2);
        ctx.push_back(Item::of(fm::rres(sub(rng, Sort::Q), sub(rng, Sort::Q))));
        return {S, join(ctx, q_context(rng)), g.concl};
    }
    case Rule::LResML: {
        std::vector<Item> ctx = join(random_context(rng, S, 2), q_context(rng));
        ctx.push_back(Item::of(fm::lres(sub(rng, Sort::Q), sub(rng, Sort::Q))));
        return {S, ctx, g.concl};
    }
    case Rule::Assumption:
        break;
    }
    return g;
}

} // namespace epiq::testing
