#include "support.hpp"

#include <gtest/gtest.h>

using namespace epiq;
using namespace epiq::testing;

namespace {

Lattice diamond()
{
    // bot < a, b, c < top
    return Lattice::from_order({"bot", "a", "b", "c", "top"}, {{0, 1}, {0, 2}, {0, 3}, {1, 4}, {2, 4}, {3, 4}});
}

Lattice pentagon()
{
    // bot < a < b < top, bot < c < top
    return Lattice::from_order({"bot", "a", "b", "c", "top"}, {{0, 1}, {1, 2}, {2, 4}, {0, 3}, {3, 4}});
}

// Least upper bound by scanning all upper bounds.
Element brute_join(const Lattice& L, Element x, Element y)
{
    const auto els = L.elements();
    for (Element u : els) {
        if (!L.leq(x, u) || !L.leq(y, u))
            continue;
        bool least = true;
        for (Element v : els)
            if (L.leq(x, v) && L.leq(y, v) && !L.leq(u, v))
                least = false;
        if (least)
            return u;
    }
    ADD_FAILURE() << "no join";
    return 0;
}

Element brute_meet(const Lattice& L, Element x, Element y)
{
    const auto els = L.elements();
    for (Element u : els) {
        if (!L.leq(u, x) || !L.leq(u, y))
            continue;
        bool greatest = true;
        for (Element v : els)
            if (L.leq(v, x) && L.leq(v, y) && !L.leq(v, u))
                greatest = false;
        if (greatest)
            return u;
    }
    ADD_FAILURE() << "no meet";
    return 0;
}

} // namespace

TEST(Lattice, ExplicitJoinsAndMeetsMatchOrder)
{
    for (const Lattice& L : {diamond(), pentagon()}) {
        for (Element x : L.elements())
            for (Element y : L.elements()) {
                EXPECT_EQ(L.join(x, y), brute_join(L, x, y));
                EXPECT_EQ(L.meet(x, y), brute_meet(L, x, y));
            }
        EXPECT_EQ(L.label(L.bottom()), "bot");
        EXPECT_EQ(L.label(L.top()), "top");
    }
}

TEST(Lattice, RandomDownsetLatticesAgreeWithSetOperations)
{
    Rng rng(7);
    for (int i = 0; i < 30; ++i) {
        const DownsetLattice d = random_downsets(rng);
        const Lattice& L = *d.lat;
        for (Element x : L.elements())
            for (Element y : L.elements()) {
                EXPECT_EQ(d.sets[L.join(x, y)], d.sets[x] | d.sets[y]);
                EXPECT_EQ(d.sets[L.meet(x, y)], d.sets[x] & d.sets[y]);
            }
        EXPECT_TRUE(is_distributive(L));
    }
}

TEST(Lattice, RejectsNonLattices)
{
    // two maximal elements
    EXPECT_THROW(Lattice::from_order({"bot", "a", "b"}, {{0, 1}, {0, 2}}), LatticeError);
    // a cycle breaks antisymmetry
    EXPECT_THROW(Lattice::from_order({"a", "b"}, {{0, 1}, {1, 0}}), LatticeError);
    // a, b have two minimal upper bounds c, d
    EXPECT_THROW(Lattice::from_order({"bot", "a", "b", "c", "d", "top"},
                                     {{0, 1}, {0, 2}, {1, 3}, {2, 3}, {1, 4}, {2, 4}, {3, 5}, {4, 5}}),
                 LatticeError);
}

TEST(Lattice, DistributivityOfSmallLattices)
{
    EXPECT_FALSE(is_distributive(diamond()));
    EXPECT_FALSE(is_distributive(pentagon()));
    EXPECT_TRUE(is_distributive(powerset_lattice(3)));
}

TEST(Lattice, PowersetIsIntensional)
{
    const Lattice P = Lattice::powerset(40);
    EXPECT_EQ(P.atom_count(), 40U);
    EXPECT_FALSE(P.enumerable());
    EXPECT_EQ(P.join(0b101, 0b110), 0b111U);
    EXPECT_EQ(P.meet(0b101, 0b110), 0b100U);
    EXPECT_EQ(P.top(), (Element{1} << 40) - 1);
    EXPECT_THROW((void)P.elements(), LatticeError);
    EXPECT_THROW(Lattice::powerset(64), LatticeError);
}

TEST(Lattice, AtomsAndComplements)
{
    const Lattice D = diamond();
    EXPECT_EQ(atoms(D).size(), 3U);
    EXPECT_TRUE(is_atomistic(D));
    EXPECT_EQ(complements(D, *D.find("a")).size(), 2U);
    const Lattice N = pentagon();
    EXPECT_FALSE(is_atomistic(N));
    // in the pentagon, c has the two complements a and b
    EXPECT_EQ(complements(N, *N.find("c")).size(), 2U);
    const Lattice P = powerset_lattice(3);
    EXPECT_EQ(complements(P, 0b011), std::vector<Element>{0b100});
}

TEST(Lattice, RightAdjointMatchesBruteForce)
{
    Rng rng(11);
    for (int i = 0; i < 30; ++i) {
        const DownsetLattice d = random_downsets(rng);
        const auto f = LatticeMap::from_table(d.lat, d.lat, as_ids(d, random_endomap(rng, d)));
        ASSERT_TRUE(is_join_preserving(f));
        const LatticeMap g = right_adjoint(f);
        const Lattice& L = *d.lat;
        for (Element a : L.elements())
            for (Element b : L.elements())
                EXPECT_EQ(L.leq(f(a), b), L.leq(a, g(b)));
    }
}

TEST(Lattice, RightAdjointNeedsJoinPreservation)
{
    auto L = std::make_shared<const Lattice>(diamond());
    // constant top does not preserve bottom
    const auto f = LatticeMap::from_table(L, L, std::vector<Element>(5, L->top()));
    EXPECT_FALSE(is_join_preserving(f));
    EXPECT_THROW(right_adjoint(f), LatticeError);
}

TEST(Lattice, AtomicMapsOnLargePowersets)
{
    auto P = std::make_shared<const Lattice>(Lattice::powerset(50));
    std::vector<Element> images(50);
    for (std::size_t i = 0; i < 50; ++i)
        images[i] = Element{1} << ((i + 1) % 50);
    const auto rot = LatticeMap::from_atom_images(P, P, images);
    EXPECT_EQ(rot(0b11), 0b110U);
    EXPECT_EQ(right_adjoint_at(rot, 0b110), 0b11U);
    EXPECT_EQ(rot(Element{1} << 49), 1U);
}

TEST(Lattice, DownsetOfElement)
{
    const Lattice N = pentagon();
    const auto ds = downset(N, *N.find("b"));
    EXPECT_EQ(ds.size(), 3U);
}
