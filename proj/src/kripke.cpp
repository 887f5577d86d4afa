#include "epiq/kripke.hpp"

#include <algorithm>
#include <functional>
#include <optional>

namespace epiq {

namespace {

using Label = std::vector<std::int64_t>;
constexpr std::size_t npos = static_cast<std::size_t>(-1);

// A finite structure with one successor list per agent and node.
struct Lts {
    std::vector<std::string> names;
    std::vector<Label> labels;
    std::vector<std::size_t> base;
    std::vector<std::vector<std::size_t>> paths;
    std::vector<std::vector<std::vector<std::size_t>>> succ; // [agent][node]

    [[nodiscard]] std::size_t size() const { return names.size(); }

    std::size_t add(std::string name, Label label, std::size_t b, std::vector<std::size_t> path)
    {
        names.push_back(std::move(name));
        labels.push_back(std::move(label));
        base.push_back(b);
        paths.push_back(std::move(path));
        for (auto& s : succ)
            s.emplace_back();
        return names.size() - 1;
    }
};

// Coarsest bisimulation; classes are numbered by first occurrence.
std::vector<std::size_t> bisimulation(const Lts& t, std::size_t& count)
{
    const std::size_t n = t.size();
    std::vector<std::size_t> cls(n);
    {
        std::map<Label, std::size_t> ids;
        for (std::size_t i = 0; i < n; ++i)
            cls[i] = ids.emplace(t.labels[i], ids.size()).first->second;
        count = ids.size();
    }
    while (true) {
        std::map<std::vector<std::size_t>, std::size_t> ids;
        std::vector<std::size_t> next(n);
        for (std::size_t i = 0; i < n; ++i) {
            std::vector<std::size_t> sig{cls[i]};
            for (const auto& agent : t.succ) {
                std::vector<std::size_t> targets;
                for (std::size_t j : agent[i])
                    targets.push_back(cls[j]);
                std::sort(targets.begin(), targets.end());
                targets.erase(std::unique(targets.begin(), targets.end()), targets.end());
                sig.push_back(npos);
                sig.insert(sig.end(), targets.begin(), targets.end());
            }
            next[i] = ids.emplace(std::move(sig), ids.size()).first->second;
        }
        const bool stable = ids.size() == count;
        cls = std::move(next);
        count = ids.size();
        if (stable)
            return cls;
    }
}

Lts quotient(const Lts& t, const std::vector<std::size_t>& cls, std::size_t count)
{
    Lts q;
    q.succ.assign(t.succ.size(), {});
    std::vector<std::size_t> first(count, npos);
    for (std::size_t i = 0; i < t.size(); ++i)
        if (first[cls[i]] == npos)
            first[cls[i]] = i;
    for (std::size_t c = 0; c < count; ++c) {
        const std::size_t i = first[c];
        q.add(t.names[i], t.labels[i], t.base[i], t.paths[i]);
    }
    for (std::size_t a = 0; a < t.succ.size(); ++a) {
        for (std::size_t i = 0; i < t.size(); ++i)
            for (std::size_t j : t.succ[a][i])
                q.succ[a][cls[i]].push_back(cls[j]);
        for (auto& s : q.succ[a]) {
            std::sort(s.begin(), s.end());
            s.erase(std::unique(s.begin(), s.end()), s.end());
        }
    }
    return q;
}

struct Closure {
    Lts lts;
    std::vector<std::size_t> initial_class;
    std::vector<std::vector<std::size_t>> ext; // [class][letter], npos if undefined
    std::size_t rounds = 0;
};

struct ClosureSpec {
    const std::vector<std::string>* letters;
    std::vector<std::vector<std::vector<std::size_t>>> letter_succ; // [agent][letter]
    std::function<std::vector<char>(const Lts&, std::size_t letter)> applicable;
    std::function<Label(const Lts&, std::size_t node, std::size_t letter)> product_label;
    std::function<std::string(const std::string&, const std::string&)> name;
    const char* what;
};

Closure close(const Lts& start, const ClosureSpec& spec, std::size_t horizon)
{
    const std::size_t L = spec.letters->size();
    Closure out;
    std::size_t count = 0;
    const auto init = bisimulation(start, count);
    out.initial_class = init;
    Lts cur = quotient(start, init, count);
    for (std::size_t round = 1; round <= horizon; ++round) {
        const std::size_t n = cur.size();
        std::vector<std::vector<char>> app(L);
        for (std::size_t l = 0; l < L; ++l)
            app[l] = spec.applicable(cur, l);
        Lts ext = cur;
        std::vector<std::vector<std::size_t>> prod(n, std::vector<std::size_t>(L, npos));
        for (std::size_t c = 0; c < n; ++c)
            for (std::size_t l = 0; l < L; ++l)
                if (app[l][c]) {
                    auto path = cur.paths[c];
                    path.push_back(l);
                    prod[c][l] = ext.add(spec.name(cur.names[c], (*spec.letters)[l]), spec.product_label(cur, c, l),
                                         cur.base[c], std::move(path));
                }
        for (std::size_t a = 0; a < ext.succ.size(); ++a)
            for (std::size_t c = 0; c < n; ++c)
                for (std::size_t l = 0; l < L; ++l) {
                    if (prod[c][l] == npos)
                        continue;
                    auto& s = ext.succ[a][prod[c][l]];
                    for (std::size_t d : cur.succ[a][c])
                        for (std::size_t l2 : spec.letter_succ[a][l])
                            if (prod[d][l2] != npos)
                                s.push_back(prod[d][l2]);
                    std::sort(s.begin(), s.end());
                    s.erase(std::unique(s.begin(), s.end()), s.end());
                }
        std::size_t k = 0;
        const auto cls = bisimulation(ext, k);
        if (k == n) {
            out.ext.assign(n, std::vector<std::size_t>(L, npos));
            for (std::size_t c = 0; c < n; ++c)
                for (std::size_t l = 0; l < L; ++l)
                    if (prod[c][l] != npos)
                        out.ext[c][l] = cls[prod[c][l]];
            out.lts = std::move(cur);
            out.rounds = round;
            return out;
        }
        if (k > Lattice::kMaxAtoms)
            throw ModelError(std::string(spec.what) + " closure exceeds " + std::to_string(Lattice::kMaxAtoms) +
                             " classes");
        cur = quotient(ext, cls, k);
    }
    throw HorizonExceeded(std::string(spec.what) + " closure does not stabilize within horizon " +
                          std::to_string(horizon));
}

std::vector<char> eval_kernel(const F& f, const Lts& t, const std::map<std::string, std::size_t>& fact_index,
                              const std::map<std::string, std::size_t>& agent_index)
{
    const std::size_t n = t.size();
    auto agent = [&](const std::string& name) {
        auto it = agent_index.find(name);
        if (it == agent_index.end())
            throw ModelError("kernel formula uses unknown agent " + name);
        return it->second;
    };
    switch (f->op) {
    case Op::Top:
        return std::vector<char>(n, 1);
    case Op::Bot:
        return std::vector<char>(n, 0);
    case Op::Fact: {
        auto it = fact_index.find(f->name);
        if (it == fact_index.end())
            throw ModelError("kernel formula uses unknown fact " + f->name);
        std::vector<char> v(n);
        for (std::size_t i = 0; i < n; ++i)
            v[i] = t.labels[i][it->second] != 0;
        return v;
    }
    case Op::And:
    case Op::Or: {
        auto a = eval_kernel(f->a, t, fact_index, agent_index);
        auto b = eval_kernel(f->b, t, fact_index, agent_index);
        for (std::size_t i = 0; i < n; ++i)
            a[i] = f->op == Op::And ? (a[i] && b[i]) : (a[i] || b[i]);
        return a;
    }
    case Op::Box: {
        const auto& s = t.succ[agent(f->name)];
        const auto a = eval_kernel(f->a, t, fact_index, agent_index);
        std::vector<char> v(n, 1);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j : s[i])
                if (!a[j])
                    v[i] = 0;
        return v;
    }
    case Op::App: {
        const auto& s = t.succ[agent(f->name)];
        const auto a = eval_kernel(f->a, t, fact_index, agent_index);
        std::vector<char> v(n, 0);
        for (std::size_t i = 0; i < n; ++i)
            if (a[i])
                for (std::size_t j : s[i])
                    v[j] = 1;
        return v;
    }
    default:
        throw ModelError("kernel formula may only use top, bot, facts, &, |, fM and boxM");
    }
}

void check_relation(const Relation& r, std::size_t n, const std::string& what)
{
    for (const auto& [x, y] : r)
        if (x >= n || y >= n)
            throw ModelError(what + " relates an index out of range");
}

Element bit(std::size_t i) { return Element{1} << i; }

} // namespace

void check_models(const KripkeStateModel& sm, const ActionModel& am)
{
    if (sm.states.empty())
        throw ModelError("state model has no states");
    if (sm.states.size() > Lattice::kMaxAtoms)
        throw ModelError("state model has more than 63 states");
    std::set<std::string> agents(sm.agents.begin(), sm.agents.end());
    if (agents.size() != sm.agents.size())
        throw ModelError("duplicate agent");
    for (const auto& [a, r] : sm.access) {
        if (!agents.count(a))
            throw ModelError("state relation for unknown agent " + a);
        check_relation(r, sm.states.size(), "state relation of " + a);
    }
    for (const auto& [p, s] : sm.valuation)
        for (std::size_t i : s)
            if (i >= sm.states.size())
                throw ModelError("valuation of " + p + " names a state out of range");
    if (am.pre.size() != am.actions.size())
        throw ModelError("every action needs a precondition");
    if (!am.kernel.empty() && am.kernel.size() != am.actions.size())
        throw ModelError("kernel formulas must be given for all actions or none");
    for (const auto& [a, r] : am.access) {
        if (!agents.count(a))
            throw ModelError("action relation for unknown agent " + a);
        check_relation(r, am.actions.size(), "action relation of " + a);
    }
    for (const auto& p : am.pre)
        for (std::size_t i : p)
            if (i >= sm.states.size())
                throw ModelError("precondition names a state out of range");
    for (const auto& k : am.kernel)
        if (k && k->sort != Sort::M)
            throw ModelError("kernel formula must be a proposition");
}

BmsSystem bms_to_system(const KripkeStateModel& sm, const ActionModel& am, std::size_t horizon)
{
    check_models(sm, am);
    const std::size_t A = sm.agents.size();
    const std::size_t S = sm.states.size();
    const std::size_t L = am.actions.size();
    std::map<std::string, std::size_t> agent_index;
    for (std::size_t a = 0; a < A; ++a)
        agent_index[sm.agents[a]] = a;
    std::map<std::string, std::size_t> fact_index;
    for (const auto& kv : sm.valuation)
        fact_index.emplace(kv.first, fact_index.size());
    const std::size_t F_ = fact_index.size();

    auto relation_lists = [&](const std::map<std::string, Relation>& rel, std::size_t n) {
        std::vector<std::vector<std::vector<std::size_t>>> out(A, std::vector<std::vector<std::size_t>>(n));
        for (const auto& [name, r] : rel)
            for (const auto& [x, y] : r)
                out[agent_index.at(name)][x].push_back(y);
        for (auto& per : out)
            for (auto& s : per) {
                std::sort(s.begin(), s.end());
                s.erase(std::unique(s.begin(), s.end()), s.end());
            }
        return out;
    };

    // states
    Lts start;
    start.succ.assign(A, {});
    for (std::size_t i = 0; i < S; ++i) {
        Label label(F_ + L, 0);
        for (const auto& [p, idx] : fact_index)
            label[idx] = sm.valuation.at(p).count(i) ? 1 : 0;
        for (std::size_t l = 0; l < L; ++l)
            label[F_ + l] = am.pre[l].count(i) ? 1 : 0;
        start.add(sm.states[i], std::move(label), i, {});
    }
    start.succ = relation_lists(sm.access, S);

    ClosureSpec st;
    st.letters = &am.actions;
    st.letter_succ = relation_lists(am.access, L);
    st.applicable = [&](const Lts& t, std::size_t l) {
        std::vector<char> v(t.size());
        std::vector<char> ker;
        if (!am.kernel.empty() && am.kernel[l])
            ker = eval_kernel(am.kernel[l], t, fact_index, agent_index);
        for (std::size_t c = 0; c < t.size(); ++c)
            v[c] = t.labels[c][F_ + l] != 0 && (ker.empty() || !ker[c]);
        return v;
    };
    st.product_label = [](const Lts& t, std::size_t c, std::size_t) { return t.labels[c]; };
    st.name = [](const std::string& s, const std::string& a) { return s + "." + a; };
    st.what = "state";
    const Closure states = close(start, st, horizon);
    const std::size_t NS = states.lts.size();

    // action words
    Lts eps;
    eps.succ.assign(A, {});
    {
        Label id(NS);
        for (std::size_t c = 0; c < NS; ++c)
            id[c] = static_cast<std::int64_t>(c);
        eps.add("1", std::move(id), 0, {});
        for (std::size_t a = 0; a < A; ++a)
            eps.succ[a][0] = {0};
    }
    ClosureSpec wd;
    wd.letters = &am.actions;
    wd.letter_succ = st.letter_succ;
    wd.applicable = [](const Lts& t, std::size_t) { return std::vector<char>(t.size(), 1); };
    wd.product_label = [&](const Lts& t, std::size_t w, std::size_t l) {
        Label out(NS);
        for (std::size_t c = 0; c < NS; ++c) {
            const std::int64_t e = t.labels[w][c];
            const std::size_t next = e < 0 ? npos : states.ext[static_cast<std::size_t>(e)][l];
            out[c] = next == npos ? -1 : static_cast<std::int64_t>(next);
        }
        return out;
    };
    wd.name = [](const std::string& w, const std::string& a) { return w == "1" ? a : w + "*" + a; };
    wd.what = "action";
    const Closure words = close(eps, wd, horizon);
    const std::size_t NW = words.lts.size();

    auto M = std::make_shared<const Lattice>(Lattice::powerset(NS, states.lts.names));
    auto Q = std::make_shared<const Lattice>(Lattice::powerset(NW, words.lts.names));

    std::vector<Element> mult(NW * NW);
    for (std::size_t i = 0; i < NW; ++i)
        for (std::size_t j = 0; j < NW; ++j) {
            std::size_t w = i;
            for (std::size_t l : words.lts.paths[j])
                w = words.ext[w][l];
            mult[i * NW + j] = bit(w);
        }
    std::vector<Element> act(NS * NW);
    for (std::size_t c = 0; c < NS; ++c)
        for (std::size_t w = 0; w < NW; ++w) {
            const std::int64_t e = words.lts.labels[w][c];
            act[c * NW + w] = e < 0 ? 0 : bit(static_cast<std::size_t>(e));
        }
    std::vector<LatticeMap> app_m;
    std::vector<LatticeMap> app_q;
    for (std::size_t a = 0; a < A; ++a) {
        std::vector<Element> im(NS, 0);
        for (std::size_t c = 0; c < NS; ++c)
            for (std::size_t d : states.lts.succ[a][c])
                im[c] |= bit(d);
        app_m.push_back(LatticeMap::from_atom_images(M, M, std::move(im)));
        std::vector<Element> iq(NW, 0);
        for (std::size_t w = 0; w < NW; ++w)
            for (std::size_t v : words.lts.succ[a][w])
                iq[w] |= bit(v);
        app_q.push_back(LatticeMap::from_atom_images(Q, Q, std::move(iq)));
    }
    auto sys = std::make_shared<const EpistemicSystem>(M, Q, BinaryOp::from_atoms(Q, Q, Q, std::move(mult)), bit(0),
                                                       BinaryOp::from_atoms(M, Q, M, std::move(act)), sm.agents,
                                                       std::move(app_m), std::move(app_q));

    std::map<std::string, Element> mvals;
    for (std::size_t i = 0; i < S; ++i)
        mvals[sm.states[i]] = bit(states.initial_class[i]);
    std::map<std::string, Element> qvals;
    for (std::size_t l = 0; l < L; ++l)
        qvals[am.actions[l]] = bit(words.ext[0][l]);
    std::map<std::string, Element> facts;
    for (const auto& [p, idx] : fact_index) {
        Element e = 0;
        for (std::size_t c = 0; c < NS; ++c)
            if (states.lts.labels[c][idx])
                e |= bit(c);
        facts[p] = e;
    }

    BmsSystem out;
    out.system = sys;
    out.env = std::make_shared<const Environment>(sys, std::move(qvals), std::move(mvals), std::move(facts));
    out.state_names = states.lts.names;
    out.word_names = words.lts.names;
    out.state_rounds = states.rounds;
    out.word_rounds = words.rounds;
    return out;
}

// ---------------------------------------------------------------------------

ActionDescriptor public_refutation(const Lattice& M, std::size_t agents, Element m)
{
    M.check_element(m);
    return {"public refutation", m, std::vector<Appearance>(agents, Appearance::Self)};
}

ActionDescriptor private_refutation(const Lattice& M, const std::vector<std::string>& agents, Element m,
                                    const std::set<std::string>& group)
{
    M.check_element(m);
    for (const auto& g : group)
        if (std::find(agents.begin(), agents.end(), g) == agents.end())
            throw ModelError("private refutation to unknown agent " + g);
    ActionDescriptor d{"private refutation", m, {}};
    for (const auto& a : agents)
        d.appearance.push_back(group.count(a) ? Appearance::Self : Appearance::Skip);
    return d;
}

ActionDescriptor failure_test(const Lattice& M, std::size_t agents, Element m)
{
    M.check_element(m);
    return {"failure test", m, std::vector<Appearance>(agents, Appearance::Skip)};
}

ActionDescriptor public_announcement(const Lattice& M, std::size_t agents, Element m)
{
    M.check_element(m);
    const auto cs = complements(M, m);
    if (cs.size() != 1)
        throw ModelError("cannot announce " + M.label(m) + ": it has " +
                         (cs.empty() ? std::string("no complement") : std::to_string(cs.size()) + " complements"));
    return {"public announcement", cs.front(), std::vector<Appearance>(agents, Appearance::Self)};
}

ActionModel realize(const KripkeStateModel& sm, const std::vector<std::pair<std::string, ActionDescriptor>>& actions)
{
    ActionModel am;
    const std::size_t n = actions.size();
    bool skip = false;
    for (const auto& [name, d] : actions) {
        if (d.appearance.size() != sm.agents.size())
            throw ModelError("descriptor of " + name + " needs one appearance per agent");
        am.actions.push_back(name);
        std::set<std::size_t> pre;
        for (std::size_t i = 0; i < sm.states.size(); ++i)
            if (!((d.kernel >> i) & 1U))
                pre.insert(i);
        am.pre.push_back(std::move(pre));
        skip = skip || std::find(d.appearance.begin(), d.appearance.end(), Appearance::Skip) != d.appearance.end();
    }
    if (skip) {
        am.actions.push_back("skip");
        std::set<std::size_t> all;
        for (std::size_t i = 0; i < sm.states.size(); ++i)
            all.insert(i);
        am.pre.push_back(std::move(all));
    }
    for (std::size_t a = 0; a < sm.agents.size(); ++a) {
        Relation& r = am.access[sm.agents[a]];
        for (std::size_t i = 0; i < n; ++i)
            r.emplace_back(i, actions[i].second.appearance[a] == Appearance::Self ? i : n);
        if (skip)
            r.emplace_back(n, n);
    }
    return am;
}

} // namespace epiq
