#pragma once

#include "epiq/epistemic_system.hpp"
#include "epiq/formula.hpp"
#include "epiq/kripke.hpp"
#include "epiq/semantics.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <random>
#include <string>
#include <vector>

namespace epiq::testing {

using Rng = std::mt19937_64;

inline std::size_t pick(Rng& rng, std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); }
inline bool coin(Rng& rng, double p = 0.5) { return std::bernoulli_distribution(p)(rng); }

// Downsets of a random poset on up to four points, as bitmasks over points.
struct DownsetLattice {
    LatticePtr lat;
    std::vector<std::uint32_t> sets;          // element id -> downset
    std::map<std::uint32_t, Element> id;      // downset -> element id
    std::vector<std::uint32_t> below;         // point -> principal downset
};

inline DownsetLattice random_downsets(Rng& rng, std::size_t max_size = 16)
{
    while (true) {
        const std::size_t p = 2 + pick(rng, 3);
        std::vector<std::uint32_t> below(p);
        for (std::size_t i = 0; i < p; ++i)
            below[i] = 1U << i;
        for (std::size_t i = 0; i < p; ++i)
            for (std::size_t j = i + 1; j < p; ++j)
                if (coin(rng, 0.4))
                    below[j] |= 1U << i;
        for (std::size_t k = 0; k < p; ++k)
            for (std::size_t j = 0; j < p; ++j)
                if ((below[j] >> k) & 1U)
                    below[j] |= below[k];
        DownsetLattice d;
        for (std::uint32_t s = 0; s < (1U << p); ++s) {
            bool closed = true;
            for (std::size_t i = 0; i < p; ++i)
                if (((s >> i) & 1U) && (below[i] & ~s))
                    closed = false;
            if (closed)
                d.sets.push_back(s);
        }
        if (d.sets.size() > max_size)
            continue;
        std::vector<std::string> labels;
        std::vector<std::pair<std::size_t, std::size_t>> leq;
        for (std::size_t i = 0; i < d.sets.size(); ++i) {
            labels.push_back("d" + std::to_string(d.sets[i]));
            d.id[d.sets[i]] = i;
            for (std::size_t j = 0; j < d.sets.size(); ++j)
                if ((d.sets[i] & ~d.sets[j]) == 0)
                    leq.emplace_back(i, j);
        }
        d.lat = std::make_shared<const Lattice>(Lattice::from_order(labels, leq));
        d.below = below;
        return d;
    }
}

// A join-preserving endomap of a downset lattice, given by monotone images
// of the principal downsets.
inline std::vector<std::uint32_t> random_endomap(Rng& rng, const DownsetLattice& d)
{
    const std::size_t p = d.below.size();
    std::vector<std::uint32_t> raw(p);
    for (auto& r : raw)
        r = d.sets[pick(rng, d.sets.size())];
    std::vector<std::uint32_t> g(p, 0);
    for (std::size_t x = 0; x < p; ++x)
        for (std::size_t y = 0; y < p; ++y)
            if ((d.below[x] >> y) & 1U)
                g[x] |= raw[y];
    std::vector<std::uint32_t> table;
    for (std::uint32_t s : d.sets) {
        std::uint32_t img = 0;
        for (std::size_t x = 0; x < p; ++x)
            if ((s >> x) & 1U)
                img |= g[x];
        table.push_back(img);
    }
    return table; // indexed by element id, values are downsets
}

inline std::vector<Element> as_ids(const DownsetLattice& d, const std::vector<std::uint32_t>& sets)
{
    std::vector<Element> out;
    for (auto s : sets)
        out.push_back(d.id.at(s));
    return out;
}

// A system over a distributive module M (|M| <= 16) and the powerset of a
// monoid of at most three join-preserving endomaps of M (|Q| <= 8). The
// action of a monoid element e is m.e = e(m), so e1 * e2 is e2 after e1.
// Appearance maps are sampled until validate_system accepts the system.
inline std::shared_ptr<const EpistemicSystem> random_system(Rng& rng, std::size_t agents = 2)
{
    while (true) {
        const DownsetLattice d = random_downsets(rng);
        const std::size_t n = d.sets.size();
        std::vector<std::vector<Element>> monoid{std::vector<Element>(n)};
        for (std::size_t i = 0; i < n; ++i)
            monoid[0][i] = i;
        const auto gen = as_ids(d, random_endomap(rng, d));
        if (std::find(monoid.begin(), monoid.end(), gen) == monoid.end())
            monoid.push_back(gen);
        for (std::size_t i = 0; i < monoid.size() && monoid.size() <= 3; ++i)
            for (std::size_t j = 0; j < monoid.size() && monoid.size() <= 3; ++j) {
                std::vector<Element> c(n);
                for (std::size_t x = 0; x < n; ++x)
                    c[x] = monoid[j][monoid[i][x]];
                if (std::find(monoid.begin(), monoid.end(), c) == monoid.end())
                    monoid.push_back(c);
            }
        if (monoid.size() > 3)
            continue;
        const std::size_t k = monoid.size();
        auto index_of = [&](const std::vector<Element>& e) {
            return static_cast<std::size_t>(std::find(monoid.begin(), monoid.end(), e) - monoid.begin());
        };
        std::vector<std::string> names;
        for (std::size_t i = 0; i < k; ++i)
            names.push_back("e" + std::to_string(i));
        auto Q = std::make_shared<const Lattice>(Lattice::powerset(k, names));
        std::vector<Element> mult(k * k);
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j) {
                std::vector<Element> c(n);
                for (std::size_t x = 0; x < n; ++x)
                    c[x] = monoid[j][monoid[i][x]];
                mult[i * k + j] = Element{1} << index_of(c);
            }
        const Lattice& M = *d.lat;
        std::vector<Element> act;
        for (Element m = 0; m < n; ++m)
            for (Element q : Q->elements()) {
                Element acc = M.bottom();
                for (std::size_t i = 0; i < k; ++i)
                    if ((q >> i) & 1U)
                        acc = M.join(acc, monoid[i][m]);
                act.push_back(acc);
            }

        std::vector<std::string> agent_names;
        for (std::size_t a = 0; a < agents; ++a)
            agent_names.push_back(std::string(1, static_cast<char>('A' + a)));
        for (int attempt = 0; attempt < 40; ++attempt) {
            std::vector<LatticeMap> app_m;
            std::vector<LatticeMap> app_q;
            for (std::size_t a = 0; a < agents; ++a) {
                const std::size_t kind = pick(rng, 3);
                std::vector<Element> fm(n);
                if (kind == 0) {
                    for (std::size_t x = 0; x < n; ++x)
                        fm[x] = x;
                } else if (kind == 1) {
                    for (std::size_t x = 0; x < n; ++x)
                        fm[x] = x == M.bottom() ? M.bottom() : M.top();
                } else {
                    fm = as_ids(d, random_endomap(rng, d));
                }
                std::vector<Element> fq(k);
                for (std::size_t i = 0; i < k; ++i) {
                    const Element atom = Element{1} << i;
                    if (coin(rng, 0.4))
                        fq[i] = atom;
                    else if (coin(rng))
                        fq[i] = Q->top();
                    else
                        fq[i] = atom | (Element{1} << pick(rng, k));
                }
                app_m.push_back(LatticeMap::from_table(d.lat, d.lat, fm));
                app_q.push_back(LatticeMap::from_atom_images(Q, Q, fq));
            }
            auto sys = std::make_shared<const EpistemicSystem>(
                d.lat, Q, BinaryOp::from_atoms(Q, Q, Q, mult), Element{1}, BinaryOp::from_table(d.lat, Q, d.lat, act),
                agent_names, app_m, app_q);
            if (validate_system(*sys, 1).ok())
                return sys;
        }
    }
}

inline const Signature& test_signature()
{
    static const Signature sig = [] {
        Signature s;
        s.agents = {"A", "B"};
        s.qvars = {"p", "q"};
        s.mvars = {"m", "n"};
        s.facts = {"f"};
        return s;
    }();
    return sig;
}

inline Environment random_environment(Rng& rng, const std::shared_ptr<const EpistemicSystem>& sys)
{
    const auto qs = sys->Q().elements();
    const auto ms = sys->M().elements();
    const auto stab = sys->stabilizer();
    std::map<std::string, Element> q, m, f;
    for (const auto& v : test_signature().qvars)
        q[v] = qs[pick(rng, qs.size())];
    for (const auto& v : test_signature().mvars)
        m[v] = ms[pick(rng, ms.size())];
    for (const auto& v : test_signature().facts)
        f[v] = stab[pick(rng, stab.size())];
    return Environment(sys, q, m, f);
}

inline std::string random_agent(Rng& rng)
{
    const auto& a = test_signature().agents;
    return *std::next(a.begin(), static_cast<long>(pick(rng, a.size())));
}

inline F random_formula(Rng& rng, Sort s, std::size_t depth)
{
    const auto& sig = test_signature();
    auto var = [&](const std::set<std::string>& names) {
        return *std::next(names.begin(), static_cast<long>(pick(rng, names.size())));
    };
    if (depth == 0 || coin(rng, 0.3)) {
        const std::size_t r = pick(rng, 8);
        if (s == Sort::Q) {
            if (r == 0)
                return fm::top(Sort::Q);
            if (r == 1)
                return fm::bot(Sort::Q);
            if (r == 2)
                return fm::one();
            return fm::var(Sort::Q, var(sig.qvars));
        }
        if (r == 0)
            return fm::top(Sort::M);
        if (r == 1)
            return fm::bot(Sort::M);
        if (r <= 3)
            return fm::fact(var(sig.facts));
        return fm::var(Sort::M, var(sig.mvars));
    }
    const std::size_t d = depth - 1;
    if (s == Sort::Q) {
        switch (pick(rng, 7)) {
        case 0: return fm::seq(random_formula(rng, s, d), random_formula(rng, s, d));
        case 1: return fm::lres(random_formula(rng, s, d), random_formula(rng, s, d));
        case 2: return fm::rres(random_formula(rng, s, d), random_formula(rng, s, d));
        case 3: return fm::lor(random_formula(rng, s, d), random_formula(rng, s, d));
        case 4: return fm::land(random_formula(rng, s, d), random_formula(rng, s, d));
        case 5: return fm::app(random_agent(rng), random_formula(rng, s, d));
        default: return fm::box(random_agent(rng), random_formula(rng, s, d));
        }
    }
    switch (pick(rng, 7)) {
    case 0: return fm::lor(random_formula(rng, s, d), random_formula(rng, s, d));
    case 1: return fm::land(random_formula(rng, s, d), random_formula(rng, s, d));
    case 2: return fm::app(random_agent(rng), random_formula(rng, s, d));
    case 3: return fm::box(random_agent(rng), random_formula(rng, s, d));
    case 4: return fm::dynbox(random_formula(rng, Sort::Q, d), random_formula(rng, s, d));
    default: return fm::update(random_formula(rng, s, d), random_formula(rng, Sort::Q, d));
    }
}

// A small random BMS pair: two or three states, one or two agents, one or
// two actions with random preconditions and relations.
struct RandomBms {
    KripkeStateModel states;
    ActionModel actions;
};

inline Relation random_relation(Rng& rng, std::size_t n, double p)
{
    Relation r;
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y)
            if (x == y ? coin(rng, 0.8) : coin(rng, p))
                r.emplace_back(x, y);
    return r;
}

inline RandomBms random_bms(Rng& rng)
{
    RandomBms b;
    const std::size_t ns = 2 + pick(rng, 2);
    const std::size_t na = 1 + pick(rng, 2);
    const std::size_t nact = 1 + pick(rng, 2);
    for (std::size_t i = 0; i < ns; ++i)
        b.states.states.push_back("s" + std::to_string(i));
    for (std::size_t a = 0; a < na; ++a) {
        const std::string name(1, static_cast<char>('A' + a));
        b.states.agents.push_back(name);
        b.states.access[name] = random_relation(rng, ns, 0.4);
        b.actions.access[name] = random_relation(rng, nact, 0.4);
    }
    auto& p = b.states.valuation["p"];
    for (std::size_t i = 0; i < ns; ++i)
        if (coin(rng))
            p.insert(i);
    for (std::size_t i = 0; i < nact; ++i) {
        b.actions.actions.push_back("a" + std::to_string(i));
        std::set<std::size_t> pre;
        for (std::size_t s = 0; s < ns; ++s)
            if (coin(rng, 0.7))
                pre.insert(s);
        b.actions.pre.push_back(pre);
    }
    return b;
}

} // namespace epiq::testing

namespace epiq::testing {

// M = P(states), Q = {bot, 1}; agent a appears through the image of
// relation a. Static systems of this form exhibit the epistemic modalities
// of a single Kripke frame.
inline std::shared_ptr<const EpistemicSystem> relational_system(std::size_t states,
                                                                const std::vector<Relation>& relations)
{
    auto M = std::make_shared<const Lattice>(Lattice::powerset(states));
    auto Q = std::make_shared<const Lattice>(Lattice::powerset(1, {"1"}));
    std::vector<Element> act(states);
    for (std::size_t i = 0; i < states; ++i)
        act[i] = Element{1} << i;
    std::vector<std::string> agents;
    std::vector<LatticeMap> app_m;
    std::vector<LatticeMap> app_q;
    for (std::size_t a = 0; a < relations.size(); ++a) {
        agents.push_back(std::string(1, static_cast<char>('A' + a)));
        std::vector<Element> images(states, 0);
        for (const auto& [x, y] : relations[a])
            images[x] |= Element{1} << y;
        app_m.push_back(LatticeMap::from_atom_images(M, M, images));
        app_q.push_back(LatticeMap::identity(Q));
    }
    return std::make_shared<const EpistemicSystem>(M, Q, BinaryOp::from_atoms(Q, Q, Q, {1}), Element{1},
                                                   BinaryOp::from_atoms(M, Q, M, act), agents, app_m, app_q);
}

} // namespace epiq::testing
