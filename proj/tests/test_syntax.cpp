#include "support.hpp"

#include "epiq/parser.hpp"

#include <gtest/gtest.h>

using namespace epiq;
using namespace epiq::testing;

TEST(Syntax, RandomFormulasRoundTrip)
{
    Rng rng(3);
    const Signature& sig = test_signature();
    for (int i = 0; i < 1000; ++i) {
        const Sort s = coin(rng) ? Sort::Q : Sort::M;
        const F f = random_formula(rng, s, 4);
        const std::string text = print(f);
        const F g = s == Sort::Q ? parse_q(text, sig) : parse_m(text, sig);
        ASSERT_TRUE(equal(f, g)) << text << " reparsed as " << print(g);
        EXPECT_EQ(print(g), text);
    }
}

TEST(Syntax, RandomSequentsRoundTrip)
{
    Rng rng(4);
    const Signature& sig = test_signature();
    for (int i = 0; i < 300; ++i) {
        Sequent s;
        s.side = coin(rng) ? Sort::Q : Sort::M;
        const std::size_t len = pick(rng, 4);
        for (std::size_t k = 0; k < len; ++k) {
            if (coin(rng, 0.2))
                s.ctx.push_back(Item::of_agent(random_agent(rng)));
            else
                s.ctx.push_back(Item::of(random_formula(rng, s.side == Sort::Q || coin(rng) ? Sort::Q : Sort::M, 2)));
        }
        s.concl = random_formula(rng, s.side, 3);
        const std::string text = print(s);
        const Sequent t = parse_sequent(text, sig);
        ASSERT_TRUE(equal(s, t)) << text << " reparsed as " << print(t);
    }
}

TEST(Syntax, PrecedenceAndAssociativity)
{
    const Signature& sig = test_signature();
    const F f = parse_q("p * q | p & q", sig);
    EXPECT_EQ(f->op, Op::Or);
    EXPECT_EQ(f->b->op, Op::And);
    const F g = parse_q("p * q * p", sig);
    ASSERT_EQ(g->op, Op::Seq);
    EXPECT_EQ(g->a->op, Op::Seq);
    const F h = parse_m("m . p . q", sig);
    EXPECT_EQ(h->op, Op::Update);
    EXPECT_EQ(h->a->op, Op::Update);
    EXPECT_THROW((void)parse_m("m . p * q", sig), ParseError);
    const F k = parse_m("[p]boxM[A](#f) | n", sig);
    EXPECT_EQ(k->op, Op::Or);
    EXPECT_EQ(k->a->op, Op::DynBox);
}

TEST(Syntax, SortInferenceWithoutSignature)
{
    const Sequent s = parse_sequent("x . y |-M [y]z");
    EXPECT_EQ(s.ctx[0].f->a->sort, Sort::M);
    EXPECT_EQ(s.ctx[0].f->b->sort, Sort::Q);
    EXPECT_EQ(s.concl->b->sort, Sort::M);
    const auto both = parse_sequents({"a, b |-M c", "b * d |-Q b"});
    EXPECT_EQ(both[0].ctx[1].f->sort, Sort::Q);
    EXPECT_EQ(both[0].ctx[0].f->sort, Sort::M);
}

TEST(Syntax, EmptyRightHandSideIsBottom)
{
    const Sequent s = parse_sequent("m, p |-M", test_signature());
    EXPECT_EQ(s.concl->op, Op::Bot);
    EXPECT_EQ(s.concl->sort, Sort::M);
}

TEST(Syntax, AgentsInContexts)
{
    const Sequent s = parse_sequent("m, p, @A |-M fM[A](m) . fQ[A](p)", test_signature());
    ASSERT_EQ(s.ctx.size(), 3U);
    EXPECT_TRUE(s.ctx[2].is_agent);
    EXPECT_EQ(s.ctx[2].agent, "A");
}

TEST(Syntax, ErrorsCarryColumns)
{
    const Signature& sig = test_signature();
    try {
        (void)parse_sequent("m, p |-M boxM[Z](m)", sig);
        FAIL() << "unknown agent accepted";
    } catch (const ParseError& e) {
        EXPECT_EQ(e.column(), 10U);
    }
    EXPECT_THROW((void)parse_sequent("m |-Q p", sig), ParseError);
    EXPECT_THROW((void)parse_q("p *", sig), ParseError);
    EXPECT_THROW((void)parse_q("(p", sig), ParseError);
    EXPECT_THROW((void)parse_m("#g", sig), ParseError);
    EXPECT_THROW((void)parse_m("m . n", sig), ParseError);
    EXPECT_THROW((void)parse_sequent("m |- m", sig), ParseError);
    EXPECT_THROW((void)parse_sequent("p, m |-Q p", sig), ParseError);
}

TEST(Syntax, SizeDepthAndSubformulas)
{
    const F f = parse_m("[p * q](m & #f)", test_signature());
    EXPECT_EQ(formula_size(f), 7U);
    EXPECT_EQ(formula_depth(f), 3U);
    std::vector<F> subs;
    subformulas(f, subs);
    EXPECT_EQ(subs.size(), 7U);
    Signature sig;
    collect_signature(f, sig);
    EXPECT_EQ(sig.qvars, (std::set<std::string>{"p", "q"}));
    EXPECT_EQ(sig.facts, (std::set<std::string>{"f"}));
}
