#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "coverlab/errors.hpp"
#include "coverlab/group_action.hpp"
#include "coverlab/rng.hpp"

using namespace coverlab;

TEST_CASE("symmetric and cyclic actions") {
    GroupAction s3 = GroupAction::symmetric(3);
    CHECK(s3.order() == 6);
    CHECK(s3.fixity() == 1);
    CHECK(s3.faithful());
    CHECK_FALSE(s3.free());

    GroupAction s2 = GroupAction::symmetric(2);
    CHECK(s2.order() == 2);
    CHECK(s2.fixity() == 0);
    CHECK(s2.free());

    GroupAction c4 = GroupAction::cyclic(4);
    CHECK(c4.order() == 4);
    CHECK(c4.fixity() == 0);  // regular action
    CHECK(c4.free());

    for (int t = 3; t <= 5; ++t)
        CHECK(GroupAction::symmetric(t).fixity() == t - 2);
}

TEST_CASE("closure of a transposition") {
    GroupAction g = GroupAction::closure({{1, 0, 2}});
    CHECK(g.order() == 2);
    CHECK(g.fixity() == 1);
}

TEST_CASE("closure guard and validation") {
    Perm swap01 = {1, 0, 2, 3};
    Perm cycle = {1, 2, 3, 0};
    CHECK_THROWS_AS(GroupAction::closure({swap01, cycle}, 5), CapacityError);
    CHECK_THROWS_AS(GroupAction::closure({}), ValidationError);
    CHECK_THROWS_AS(GroupAction::closure({{0, 0, 1}}), ValidationError);
    CHECK_THROWS_AS(GroupAction::closure({{0, 1}, {0, 1, 2}}), ValidationError);
}

TEST_CASE("trivial group has no fixity") {
    GroupAction triv = GroupAction::closure({perm_identity(3)});
    CHECK(triv.order() == 1);
    CHECK_THROWS_AS(triv.fixity(), ValidationError);
}

TEST_CASE("group axioms on sampled triples") {
    Rng rng(99);
    for (const GroupAction& g :
         {GroupAction::symmetric(4), GroupAction::cyclic(6),
          GroupAction::closure({{1, 0, 2, 3}, {0, 1, 3, 2}})}) {
        CHECK(g.index_of(perm_identity(g.set_size())) == g.identity());
        for (int trial = 0; trial < 200; ++trial) {
            int a = static_cast<int>(rng.below(g.order()));
            int b = static_cast<int>(rng.below(g.order()));
            int c = static_cast<int>(rng.below(g.order()));
            CHECK(g.mul(g.mul(a, b), c) == g.mul(a, g.mul(b, c)));
            CHECK(g.mul(a, g.inv(a)) == g.identity());
            CHECK(g.mul(g.inv(a), a) == g.identity());
            // the table matches composition of image lists
            CHECK(g.element(g.mul(a, b)) == perm_compose(g.element(a), g.element(b)));
        }
    }
}

TEST_CASE("fix counts are conjugation invariant") {
    Rng rng(7);
    GroupAction g = GroupAction::symmetric(5);
    for (int trial = 0; trial < 300; ++trial) {
        int a = static_cast<int>(rng.below(g.order()));
        int h = static_cast<int>(rng.below(g.order()));
        int conj = g.mul(h, g.mul(a, g.inv(h)));
        CHECK(g.fix_count(conj) == g.fix_count(a));
    }
}

TEST_CASE("element order is deterministic") {
    GroupAction a = GroupAction::symmetric(4);
    GroupAction b = GroupAction::symmetric(4);
    REQUIRE(a.order() == b.order());
    for (int i = 0; i < a.order(); ++i) CHECK(a.element(i) == b.element(i));
    // identity first, then breadth-first layers
    CHECK(a.element(0) == perm_identity(4));
}

TEST_CASE("apply matches the image list") {
    GroupAction g = GroupAction::symmetric(3);
    for (int e = 0; e < g.order(); ++e)
        for (int s = 0; s < 3; ++s) CHECK(g.apply(e, s) == g.element(e)[s]);
}
