#include "epiq/scenarios.hpp"

#include "epiq/parser.hpp"

#include <stdexcept>

namespace epiq {

namespace {

constexpr std::size_t kMaxChildren = 4;

std::string child(std::size_t i) { return "C" + std::to_string(i); }

std::vector<std::size_t> members(std::size_t mask, std::size_t n)
{
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < n; ++i)
        if ((mask >> i) & 1U)
            out.push_back(i + 1);
    return out;
}

// States are subsets of children; child i cannot tell whether it is dirty.
KripkeStateModel children_model(std::size_t n)
{
    KripkeStateModel sm;
    const std::size_t S = std::size_t{1} << n;
    for (std::size_t b = 0; b < S; ++b)
        sm.states.push_back(muddy_state_name(members(b, n)));
    for (std::size_t i = 0; i < n; ++i) {
        sm.agents.push_back(child(i + 1));
        Relation& r = sm.access[child(i + 1)];
        for (std::size_t b = 0; b < S; ++b) {
            r.emplace_back(b, b);
            r.emplace_back(b, b ^ (std::size_t{1} << i));
        }
        auto& d = sm.valuation["D" + std::to_string(i + 1)];
        for (std::size_t b = 0; b < S; ++b)
            if ((b >> i) & 1U)
                d.insert(b);
    }
    sm.valuation["D0"] = {0};
    return sm;
}

std::set<std::size_t> all_states(const KripkeStateModel& sm)
{
    std::set<std::size_t> s;
    for (std::size_t i = 0; i < sm.states.size(); ++i)
        s.insert(i);
    return s;
}

F nobody_knows_kernel(std::size_t n, const std::string& first_fact)
{
    F k;
    for (std::size_t i = 1; i <= n; ++i) {
        const F part = fm::box(child(i), fm::fact(i == 1 ? first_fact : "D" + std::to_string(i)));
        k = k ? fm::lor(k, part) : part;
    }
    return k;
}

// q0 and q, both public: every child sees the action as it is.
ActionModel muddy_actions(const KripkeStateModel& sm, std::size_t n)
{
    ActionModel am;
    am.actions = {"q0", "q"};
    std::set<std::size_t> not_clean = all_states(sm);
    not_clean.erase(0);
    am.pre = {not_clean, all_states(sm)};
    am.kernel = {nullptr, nobody_knows_kernel(n, "D1")};
    for (const auto& a : sm.agents)
        am.access[a] = {{0, 0}, {1, 1}};
    return am;
}

F rounds_formula(std::size_t rounds, const std::string& last = "q")
{
    F w = fm::var(Sort::Q, "q0");
    for (std::size_t r = 0; r < rounds; ++r)
        w = fm::seq(w, fm::var(Sort::Q, r + 1 == rounds ? last : "q"));
    return w;
}

Sequent knows_after(const std::string& state, const F& word, std::size_t j)
{
    return Sequent{Sort::M,
                   {Item::of(fm::var(Sort::M, state))},
                   fm::dynbox(word, fm::box(child(j), fm::fact("D" + std::to_string(j))))};
}

std::vector<std::string> vocabulary_of(const KripkeStateModel& sm, const ActionModel& am)
{
    std::vector<std::string> v = sm.states;
    for (const auto& kv : sm.valuation)
        v.push_back("#" + kv.first);
    for (const auto& a : am.actions)
        v.push_back(a);
    return v;
}

} // namespace

std::string muddy_state_name(const std::vector<std::size_t>& dirty)
{
    if (dirty.empty())
        return "s_none";
    std::string s = "s";
    for (std::size_t i : dirty)
        s += "_" + std::to_string(i);
    return s;
}

Scenario muddy_scenario(std::size_t n, std::size_t k, std::optional<std::size_t> rounds,
                        std::optional<std::size_t> horizon)
{
    if (n < 1 || n > kMaxChildren)
        throw std::invalid_argument("muddy children needs 1 <= n <= 4");
    if (k < 1 || k > n)
        throw std::invalid_argument("muddy children needs 1 <= k <= n");
    const std::size_t r = rounds.value_or(k - 1);
    Scenario sc;
    sc.name = "muddy";
    sc.states = children_model(n);
    sc.actions = muddy_actions(sc.states, n);
    sc.horizon = horizon.value_or(n + 2);
    sc.compiled = bms_to_system(sc.states, sc.actions, sc.horizon);

    std::vector<std::size_t> dirty;
    for (std::size_t i = 1; i <= k; ++i)
        dirty.push_back(i);
    const std::string real = muddy_state_name(dirty);
    for (std::size_t j = 1; j <= k; ++j)
        sc.targets.push_back({knows_after(real, rounds_formula(r), j), r + 1 >= k,
                              "child " + std::to_string(j) + " knows after " + std::to_string(r) + " round(s)"});
    if (r >= 1)
        for (std::size_t j = 1; j <= k; ++j)
            sc.targets.push_back({knows_after(real, rounds_formula(r - 1), j), r >= k,
                                  "child " + std::to_string(j) + " knows after " + std::to_string(r - 1) +
                                      " round(s)"});
    sc.vocabulary = vocabulary_of(sc.states, sc.actions);
    return sc;
}

Scenario lying_scenario(std::size_t n, std::optional<std::size_t> horizon)
{
    if (n < 2 || n > kMaxChildren)
        throw std::invalid_argument("lying children needs 2 <= n <= 4");
    Scenario sc;
    sc.name = "lying";
    sc.states = children_model(n);
    auto& clean1 = sc.states.valuation["nD1"];
    for (std::size_t b = 0; b < sc.states.states.size(); ++b)
        if (!(b & 1U))
            clean1.insert(b);
    sc.actions = muddy_actions(sc.states, n);
    sc.actions.actions.push_back("qbar");
    sc.actions.pre.push_back(all_states(sc.states));
    sc.actions.kernel.push_back(nobody_knows_kernel(n, "nD1"));
    for (std::size_t i = 1; i <= n; ++i)
        sc.actions.access[child(i)].emplace_back(2, i == 1 ? 2 : 1);
    sc.horizon = horizon.value_or(n + 2);
    sc.compiled = bms_to_system(sc.states, sc.actions, sc.horizon);

    const std::string real = muddy_state_name({1});
    for (std::size_t j = 2; j <= n; ++j)
        sc.targets.push_back(
            {knows_after(real, rounds_formula(1, "qbar"), j), true, "clean child " + std::to_string(j) + " believes it is dirty"});
    sc.targets.push_back({knows_after(real, rounds_formula(1), 2), false, "control with a truthful round"});
    sc.vocabulary = vocabulary_of(sc.states, sc.actions);
    return sc;
}

Scenario mitm_scenario(std::optional<std::size_t> horizon)
{
    Scenario sc;
    sc.name = "mitm";
    KripkeStateModel& sm = sc.states;
    sm.states = {"s", "t"};
    sm.agents = {"A", "B", "C"};
    sm.access["A"] = {{0, 0}, {1, 1}};
    sm.access["B"] = {{0, 0}, {0, 1}, {1, 0}, {1, 1}};
    sm.access["C"] = sm.access["B"];
    sm.valuation["P"] = {0};
    sm.valuation["Pbar"] = {1};

    ActionModel& am = sc.actions;
    am.actions = {"alpha", "beta", "alpha'", "beta'", "gamma"};
    enum { a, b, a2, b2, g };
    am.pre = {{0}, {1}, {0}, {1}, {0, 1}};
    am.access["A"] = {{a, a2}, {b, b2}, {a2, a2}, {b2, b2}, {g, g}};
    am.access["B"] = {{a, b2}, {b, a2}, {a2, a2}, {b2, b2}, {g, g}};
    am.access["C"] = {{a, a}, {a, b}, {b, a}, {b, b}};
    for (std::size_t x : {a2, b2, g})
        for (std::size_t y : {a2, b2, g})
            am.access["C"].emplace_back(x, y);
    sc.horizon = horizon.value_or(4);
    sc.compiled = bms_to_system(sm, am, sc.horizon);

    Signature sig = sc.compiled.env->signature();
    sc.targets.push_back({parse_sequent("s . (alpha | beta) |-M boxM[A](boxM[B](#P))", sig), true,
                          "A knows that B knows P"});
    sc.base.signature = sig;
    const std::vector<std::pair<AxiomKind, std::string>> axioms = {
        {AxiomKind::Fact, "s |-M #P"},
        {AxiomKind::Fact, "t |-M #Pbar"},
        {AxiomKind::Kernel, "#Pbar, alpha |-M bot"},
        {AxiomKind::Kernel, "#Pbar, alpha' |-M bot"},
        {AxiomKind::Kernel, "#P, beta |-M bot"},
        {AxiomKind::Kernel, "#P, beta' |-M bot"},
        {AxiomKind::AppearanceM, "s, @A |-M s"},
        {AxiomKind::AppearanceM, "s, @B |-M s | t"},
        {AxiomKind::AppearanceQ, "alpha, @A |-Q alpha'"},
        {AxiomKind::AppearanceQ, "alpha, @B |-Q beta'"},
        {AxiomKind::AppearanceQ, "alpha', @B |-Q alpha'"},
    };
    for (const auto& [kind, text] : axioms)
        sc.base.add(kind, parse_sequent(text, sig));
    sc.vocabulary = {"s", "t", "#P", "#Pbar", "alpha", "beta", "alpha'", "beta'", "gamma"};
    return sc;
}

} // namespace epiq
