#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "coverlab/errors.hpp"
#include "coverlab/expansion.hpp"
#include "test_util.hpp"

using namespace coverlab;
using namespace testutil;

namespace {

SimplicialComplex triangle() { return SimplicialComplex::from_facets({{0, 1, 2}}); }
SimplicialComplex delta3() { return SimplicialComplex::from_facets({{0, 1, 2, 3}}); }

// h1 from first principles: full unpruned enumeration, definitional norms,
// cosystole as a minimum over the filtered cocycle set.
Rat oracle_h1(const SimplicialComplex& x, const GroupAction& g) {
    auto cocycles = oracle_cocycles(x, g);
    Rat best;
    bool first = true;
    for (auto& val : all_cochains(x, g)) {
        Cochain1 phi(x, g, val);
        Rat num = oracle_d1_norm(phi);
        if (num == Rat(0)) continue;
        Rat dmin;
        bool dfirst = true;
        for (auto& z : cocycles) {
            Rat d = oracle_dist(phi, Cochain1(x, g, z));
            if (dfirst || d < dmin) { dmin = d; dfirst = false; }
        }
        Rat ratio = num / dmin;
        if (first || ratio < best) { best = ratio; first = false; }
    }
    return best;
}

Cochain1 indicator(const SimplicialComplex& x, const GroupAction& g,
                   std::vector<std::pair<VertexId, VertexId>> edges, int value = 1) {
    Cochain1 phi(x, g);
    for (auto [u, v] : edges)
        phi.set_edge(x.edge_index(std::min(u, v), std::max(u, v)), value);
    return phi;
}

} // namespace

TEST_CASE("h1 of the single triangle") {
    SimplicialComplex tri = triangle();
    GroupAction z2 = GroupAction::symmetric(2);
    GroupAction s3 = GroupAction::symmetric(3);

    ExpansionReport rz = h1_exact(tri, z2);
    CHECK(rz.h1 == Rat(3));
    CHECK(rz.h1 == oracle_h1(tri, z2));
    CHECK(rz.h1 >= Rat(3, 1));  // n/(n-2) at n=3

    ExpansionReport rs = h1_exact(tri, s3);
    CHECK(rs.h1 == Rat(3));
    CHECK(rs.h1 == oracle_h1(tri, s3));

    // witness attains the minimum and is not a cocycle
    CHECK_FALSE(is_cocycle(rs.witness));
    CHECK(oracle_d1_norm(rs.witness) /
              cosystolic_norm_exact(rs.witness).distance == Rat(3));
}

TEST_CASE("h1 of the tetrahedron boundary data") {
    SimplicialComplex d3 = delta3();
    GroupAction z2 = GroupAction::symmetric(2);
    ExpansionReport r = h1_exact(d3, z2);
    CHECK(r.h1 == Rat(3));  // the 64-cochain oracle confirms the hand analysis
    CHECK(r.h1 == oracle_h1(d3, z2));
    CHECK(r.h1 >= Rat(2));  // n/(n-2) at n=4
    // gauge pruning: 2^(6-3) cochains scanned instead of 2^6
    CHECK(r.cochains_scanned == 8);
    CHECK(r.cocycles == 8);
}

TEST_CASE("gauge pruning agrees with the unpruned oracle") {
    GroupAction z2 = GroupAction::symmetric(2);
    GroupAction s3 = GroupAction::symmetric(3);
    GroupAction c3 = GroupAction::cyclic(3);

    // two facets sharing an edge
    SimplicialComplex bowtie = SimplicialComplex::from_facets({{0, 1, 2}, {1, 2, 3}});
    CHECK(h1_exact(bowtie, z2).h1 == oracle_h1(bowtie, z2));
    CHECK(h1_exact(bowtie, c3).h1 == oracle_h1(bowtie, c3));
    CHECK(h1_exact(triangle(), s3).h1 == oracle_h1(triangle(), s3));

    // a closed surface: the boundary of the octahedron
    SimplicialComplex oct = SimplicialComplex::from_facets(
        {{0, 2, 4}, {0, 4, 3}, {0, 3, 5}, {0, 5, 2},
         {1, 2, 4}, {1, 4, 3}, {1, 3, 5}, {1, 5, 2}});
    CHECK(h1_exact(oct, z2).h1 == oracle_h1(oct, z2));
}

TEST_CASE("h1 is invariant under relabeling and realization") {
    GroupAction z2 = GroupAction::symmetric(2);
    SimplicialComplex d3 = delta3();
    SimplicialComplex relabeled = SimplicialComplex::from_facets({{7, 3, 5, 1}});
    CHECK(h1_exact(d3, z2).h1 == h1_exact(relabeled, z2).h1);

    GroupAction z2gen = GroupAction::closure({{1, 0}}, 10, "gen:1,0");
    CHECK(h1_exact(d3, z2).h1 == h1_exact(d3, z2gen).h1);
}

TEST_CASE("h1 is the minimum of the per-cochain ratio") {
    SimplicialComplex d3 = delta3();
    GroupAction z2 = GroupAction::symmetric(2);
    Rat h = h1_exact(d3, z2).h1;
    Rng rng(23);
    for (int trial = 0; trial < 50; ++trial) {
        Cochain1 phi = random_cochain(d3, z2, rng);
        if (is_cocycle(phi)) continue;
        Rat ratio = oracle_d1_norm(phi) / cosystolic_norm_exact(phi).distance;
        CHECK(h <= ratio);
    }

    // the profile table lists every visited non-cocycle and attains h1
    ExpansionReport rep = h1_exact_serial(d3, z2, {}, true);
    CHECK(rep.table.size() == 7);  // 8 gauge classes, one of them cocycles
    Rat least = rep.table[0].ratio;
    for (const auto& row : rep.table) {
        CHECK(row.ratio == row.d1norm / row.cosystole);
        CHECK(rep.h1 <= row.ratio);
        least = std::min(least, row.ratio);
    }
    CHECK(least == rep.h1);
}

TEST_CASE("degenerate and guarded inputs") {
    GroupAction z2 = GroupAction::symmetric(2);
    SimplicialComplex graph = SimplicialComplex::from_facets({{0, 1}, {1, 2}});
    CHECK_THROWS_AS(h1_exact(graph, z2), ValidationError);

    SimplicialComplex d3 = delta3();
    SearchLimits tiny;
    tiny.max_states = 2;
    CHECK_THROWS_AS(h1_exact(d3, GroupAction::symmetric(3), tiny), CapacityError);
}

TEST_CASE("sandwich certificates") {
    SimplicialComplex tri = triangle();
    GroupAction z2 = GroupAction::symmetric(2);
    GroupAction s3 = GroupAction::symmetric(3);

    SandwichCertificate zero = verify_sandwich(Cochain1(tri, z2));
    CHECK(zero.lower == Rat(0));
    CHECK(zero.m == Rat(0));
    CHECK(zero.upper == Rat(0));
    CHECK(zero.holds);

    Cochain1 phi(tri, s3);
    phi.set_edge(tri.edge_index(0, 1), s3.index_of({1, 0, 2}));
    SandwichCertificate tr = verify_sandwich(phi);
    CHECK(tr.lower == Rat(2, 3));
    CHECK(tr.m == Rat(2, 3));
    CHECK(tr.upper == Rat(1));
    CHECK(tr.holds);

    SandwichCertificate fr = verify_sandwich(indicator(tri, z2, {{0, 1}}));
    CHECK(fr.lower == Rat(1));
    CHECK(fr.m == Rat(1));
    CHECK(fr.upper == Rat(1));
    CHECK(fr.holds);
}

TEST_CASE("main theorem chain on desk instances") {
    SimplicialComplex tri = triangle();
    SimplicialComplex d3 = delta3();
    GroupAction z2 = GroupAction::symmetric(2);
    GroupAction s3 = GroupAction::symmetric(3);

    StabilityChainReport a = verify_stability_chain(tri, z2);
    CHECK(a.two_over_s_h1 == Rat(3));
    CHECK(a.lower == Rat(3));
    CHECK(a.c == Rat(3));
    CHECK(a.h1 == Rat(3));
    CHECK(a.chain_holds);

    StabilityChainReport b = verify_stability_chain(tri, s3);
    CHECK(b.two_over_s_h1 == Rat(2));
    CHECK(b.lower == Rat(2));
    CHECK(b.c == Rat(2));  // the lower bound is tight here
    CHECK(b.h1 == Rat(3));
    CHECK(b.chain_holds);

    StabilityChainReport c = verify_stability_chain(d3, z2);
    CHECK(c.c == c.h1);  // free actions collapse stability to expansion
    CHECK(c.chain_holds);
}

TEST_CASE("nearest cocycle bound") {
    SimplicialComplex tri = triangle();
    GroupAction z2 = GroupAction::symmetric(2);

    NearestCocycleReport trivial = nearest_cocycle_bound_check(Cochain1(tri, z2));
    CHECK(trivial.distance == Rat(0));
    CHECK(trivial.holds);

    NearestCocycleReport tight = nearest_cocycle_bound_check(indicator(tri, z2, {{0, 1}}));
    CHECK(tight.distance == Rat(1, 3));
    CHECK(tight.bound == Rat(1, 3));
    CHECK(tight.holds);
    CHECK(tight.exact);

    NearestCocycleReport with = nearest_cocycle_bound_check_with(
        indicator(tri, z2, {{0, 1}}), Rat(1, 9), Rat(1, 3));
    CHECK(with.bound == Rat(9));
    CHECK(with.holds);
    CHECK_FALSE(with.exact);
}
