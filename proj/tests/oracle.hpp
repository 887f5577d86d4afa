#pragma once

// Direct product-update semantics on Kripke models, independent of the
// algebraic compilation.

#include "epiq/kripke.hpp"

#include <stdexcept>

namespace epiq::testing {

class KripkeOracle {
public:
    KripkeOracle(const KripkeStateModel& sm, const ActionModel& am)
        : sm_(sm)
        , am_(am)
    {
        for (std::size_t s = 0; s < sm.states.size(); ++s)
            worlds_.push_back({s, {}});
        for (const auto& a : sm.agents)
            rel_[a] = lift(sm.access.at(a));
    }

    // Applies one more round of every action.
    void update()
    {
        std::vector<World> next;
        std::vector<std::vector<std::size_t>> index(worlds_.size(), std::vector<std::size_t>(am_.actions.size(), npos));
        for (std::size_t w = 0; w < worlds_.size(); ++w)
            for (std::size_t a = 0; a < am_.actions.size(); ++a) {
                if (!am_.pre[a].count(worlds_[w].base))
                    continue;
                if (a < am_.kernel.size() && am_.kernel[a] && eval(am_.kernel[a], w))
                    continue;
                index[w][a] = next.size();
                World nw = worlds_[w];
                nw.path.push_back(a);
                next.push_back(nw);
            }
        std::map<std::string, std::vector<std::vector<std::size_t>>> rel;
        for (const auto& agent : sm_.agents) {
            auto& r = rel[agent];
            r.assign(next.size(), {});
            const Relation& ar = am_.access.count(agent) ? am_.access.at(agent) : Relation{};
            for (std::size_t w = 0; w < worlds_.size(); ++w)
                for (std::size_t v : rel_[agent][w])
                    for (const auto& [a, b] : ar)
                        if (index[w][a] != npos && index[v][b] != npos)
                            r[index[w][a]].push_back(index[v][b]);
        }
        worlds_ = std::move(next);
        rel_ = std::move(rel);
    }

    // The world reached from `state` by `path`, if it survived.
    [[nodiscard]] std::optional<std::size_t> find(std::size_t state, const std::vector<std::size_t>& path) const
    {
        for (std::size_t w = 0; w < worlds_.size(); ++w)
            if (worlds_[w].base == state && worlds_[w].path == path)
                return w;
        return std::nullopt;
    }

    [[nodiscard]] bool eval(const F& f, std::size_t w) const
    {
        switch (f->op) {
        case Op::Top:
            return true;
        case Op::Bot:
            return false;
        case Op::Fact:
            return sm_.valuation.at(f->name).count(worlds_[w].base) > 0;
        case Op::And:
            return eval(f->a, w) && eval(f->b, w);
        case Op::Or:
            return eval(f->a, w) || eval(f->b, w);
        case Op::Box:
            for (std::size_t v : rel_.at(f->name)[w])
                if (!eval(f->a, v))
                    return false;
            return true;
        default:
            throw std::invalid_argument("oracle cannot evaluate " + print(f));
        }
    }

    // s |-M [a1 * ... * ak]phi, by updating k times from a fresh model.
    static bool holds(const KripkeStateModel& sm, const ActionModel& am, const Sequent& s)
    {
        const F& state = s.ctx.at(0).f;
        std::size_t base = sm.states.size();
        for (std::size_t i = 0; i < sm.states.size(); ++i)
            if (sm.states[i] == state->name)
                base = i;
        std::vector<std::size_t> path;
        collect_word(s.concl->a, am, path);
        KripkeOracle o(sm, am);
        for (std::size_t r = 0; r < path.size(); ++r)
            o.update();
        const auto w = o.find(base, path);
        return !w || o.eval(s.concl->b, *w);
    }

private:
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

    struct World {
        std::size_t base;
        std::vector<std::size_t> path;
    };

    std::vector<std::vector<std::size_t>> lift(const Relation& r) const
    {
        std::vector<std::vector<std::size_t>> out(sm_.states.size());
        for (const auto& [x, y] : r)
            out[x].push_back(y);
        return out;
    }

    static void collect_word(const F& w, const ActionModel& am, std::vector<std::size_t>& out)
    {
        if (w->op == Op::Seq) {
            collect_word(w->a, am, out);
            collect_word(w->b, am, out);
            return;
        }
        for (std::size_t i = 0; i < am.actions.size(); ++i)
            if (am.actions[i] == w->name) {
                out.push_back(i);
                return;
            }
        throw std::invalid_argument("unknown action " + w->name);
    }

    const KripkeStateModel& sm_;
    const ActionModel& am_;
    std::vector<World> worlds_;
    std::map<std::string, std::vector<std::vector<std::size_t>>> rel_;
};

} // namespace epiq::testing
