#include "support.hpp"

#include "epiq/parser.hpp"
#include "epiq/search.hpp"

#include <gtest/gtest.h>

using namespace epiq;
using namespace epiq::testing;

namespace {

Signature sig()
{
    Signature s;
    s.agents = {"A"};
    s.qvars = {"q", "q1", "q2", "q'", "q1'"};
    s.mvars = {"m", "m'"};
    return s;
}

struct Goal {
    const char* name;
    const char* sequent;
    std::vector<const char*> hypotheses;
    std::size_t depth;
};

AssumptionBase base_of(const Goal& g)
{
    AssumptionBase b;
    b.signature = sig();
    for (const char* h : g.hypotheses)
        b.add(AxiomKind::Hypothesis, parse_sequent(h, b.signature));
    return b;
}

const std::vector<Goal>& goals()
{
    static const std::vector<Goal> gs = {
        {"identity", "q |-Q q", {}, 1},
        {"action_knowledge", "boxM[A]([fQ[A](q)]m) |-M [q]boxM[A](m)", {}, 6},
        {"appearance_join_1", "fQ[A](q1 | q2) |-Q fQ[A](q1) | fQ[A](q2)", {}, 8},
        {"appearance_join_2", "fQ[A](q1) | fQ[A](q2) |-Q fQ[A](q1 | q2)", {}, 8},
        {"appearance_monotone", "fQ[A](q1) |-Q fQ[A](q1')", {"q1 |-Q q1'"}, 8},
        {"knowledge_monotone", "boxQ[A](q1) |-Q boxQ[A](q1')", {"q1 |-Q q1'"}, 8},
        {"adjunction_1", "fQ[A](q) |-Q q'", {"q |-Q boxQ[A](q')"}, 8},
        {"adjunction_2", "q |-Q boxQ[A](q')", {"fQ[A](q) |-Q q'"}, 8},
        {"update_monotone", "m . q |-M m' . q'", {"m |-M m'", "q |-Q q'"}, 8},
    };
    return gs;
}

} // namespace

TEST(Search, RegressionGoalsAreProvedAndRecheck)
{
    for (const Goal& g : goals()) {
        const AssumptionBase b = base_of(g);
        SearchConfig cfg;
        cfg.max_depth = g.depth;
        const SearchResult r = prove(parse_sequent(g.sequent, b.signature), b, cfg);
        ASSERT_TRUE(r.proof.has_value()) << g.name;
        EXPECT_LE(proof_depth(*r.proof), g.depth) << g.name;
        const auto v = check_proof(*r.proof, b);
        EXPECT_FALSE(v.has_value()) << g.name << ": " << v->describe();
        EXPECT_GT(r.stats.nodes, 0U);
    }
}

TEST(Search, ProvedSequentsHoldInRandomSystems)
{
    Rng rng(9);
    std::vector<std::shared_ptr<const EpistemicSystem>> systems;
    for (int i = 0; i < 8; ++i)
        systems.push_back(random_system(rng, 1));
    Signature s = test_signature();
    s.agents = {"A"};
    for (const char* text : {"boxM[A]([fQ[A](p)]m) |-M [p]boxM[A](m)", "fQ[A](p | q) |-Q fQ[A](p) | fQ[A](q)",
                             "fM[A](m . p) |-M fM[A](m) . fQ[A](p)", "p * (p \\ q) |-Q q"}) {
        const Sequent goal = parse_sequent(text, s);
        const SearchResult r = prove(goal, AssumptionBase{}, SearchConfig{});
        ASSERT_TRUE(r.proof.has_value()) << text;
        for (const auto& sys : systems)
            for (int e = 0; e < 10; ++e)
                EXPECT_TRUE(holds(random_environment(rng, sys), goal)) << text;
    }
}

TEST(Search, InvalidSequentsAreNotProved)
{
    Signature s = sig();
    for (const char* text : {"m |-M m'", "q |-Q q * q", "boxM[A](m) |-M boxM[A](boxM[A](m))", "top |-M m"}) {
        SearchConfig cfg;
        cfg.max_depth = 5;
        const SearchResult r = prove(parse_sequent(text, s), AssumptionBase{}, cfg);
        EXPECT_FALSE(r.proof.has_value()) << text;
        EXPECT_EQ(r.stats.depth_reached, 5U);
    }
}

TEST(Search, CutPolicyNoneRestrictsCuts)
{
    Signature s = sig();
    const Sequent goal = parse_sequent("boxM[A]([fQ[A](q)]m) |-M [q]boxM[A](m)", s);
    EXPECT_FALSE(cut_pool(goal, AssumptionBase{}, Sort::M).empty());
    SearchConfig cfg;
    cfg.cut_pool = CutPolicy::None;
    const SearchResult r = prove(goal, AssumptionBase{}, cfg);
    EXPECT_FALSE(r.proof.has_value());
    for (const auto& inst : backward_instances(Rule::MCut, goal, AssumptionBase{}, CutPolicy::None))
        ADD_FAILURE() << "cut instance with no pool: " << print(inst.front());
}

TEST(Search, NodeLimitStopsSearch)
{
    Signature s = sig();
    SearchConfig cfg;
    cfg.max_depth = 12;
    cfg.node_limit = 500;
    const SearchResult r =
        prove(parse_sequent("boxM[A](m) . q |-M boxM[A](boxM[A](m . q))", s), AssumptionBase{}, cfg);
    EXPECT_FALSE(r.proof.has_value());
    EXPECT_TRUE(r.stats.node_limit_hit);
    EXPECT_LE(r.stats.nodes, 501U);
}

TEST(Search, BackwardInstancesAreKernelSteps)
{
    Rng rng(5);
    const AssumptionBase base;
    std::size_t checked = 0;
    for (int i = 0; i < 400; ++i) {
        const Sort side = coin(rng) ? Sort::Q : Sort::M;
        Sequent g{side, {}, random_formula(rng, side, 2)};
        const std::size_t len = pick(rng, 3);
        for (std::size_t k = 0; k < len; ++k) {
            if (coin(rng, 0.2))
                g.ctx.push_back(Item::of_agent(random_agent(rng)));
            else
                g.ctx.push_back(Item::of(random_formula(rng, side == Sort::Q || coin(rng) ? Sort::Q : Sort::M, 2)));
        }
        for (Rule r : all_rules())
            for (const auto& ps : backward_instances(r, g, base)) {
                const auto v = check_step(r, ps, g, base);
                ASSERT_FALSE(v.has_value()) << rule_name(r) << " at " << print(g) << ": " << *v;
                ++checked;
            }
    }
    EXPECT_GT(checked, 1000U);
}

TEST(Search, RejectsZeroDepth)
{
    SearchConfig cfg;
    cfg.max_depth = 0;
    EXPECT_THROW(prove(parse_sequent("q |-Q q", sig()), AssumptionBase{}, cfg), std::invalid_argument);
}
