#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>

#include "coverlab/cochain.hpp"
#include "coverlab/errors.hpp"
#include "test_util.hpp"

using namespace coverlab;
using namespace testutil;

namespace {

SimplicialComplex triangle() { return SimplicialComplex::from_facets({{0, 1, 2}}); }
SimplicialComplex delta3() { return SimplicialComplex::from_facets({{0, 1, 2, 3}}); }

Cochain1 indicator(const SimplicialComplex& x, const GroupAction& g,
                   std::vector<std::pair<VertexId, VertexId>> edges, int value = 1) {
    Cochain1 phi(x, g);
    for (auto [u, v] : edges)
        phi.set_edge(x.edge_index(std::min(u, v), std::max(u, v)), value);
    return phi;
}

Cochain0 pointwise_mul(const Cochain0& a, const Cochain0& b) {
    const GroupAction& g = a.group();
    std::vector<int> v(a.values().size());
    for (std::size_t i = 0; i < v.size(); ++i)
        v[i] = g.mul(a.at_position(static_cast<int>(i)), b.at_position(static_cast<int>(i)));
    return Cochain0(a.complex(), g, v);
}

} // namespace

TEST_CASE("d0 examples") {
    SimplicialComplex d3 = delta3();
    GroupAction z2 = GroupAction::symmetric(2);

    Cochain0 trivial(d3, z2);
    CHECK(norm1(d0(trivial)) == Rat(0));

    // psi = swap at vertex 0: support is the star edges of 0
    Cochain0 psi(d3, z2, {1, 0, 0, 0});
    Cochain1 b = d0(psi);
    CHECK(b.at(0, 1) == 1);
    CHECK(b.at(0, 2) == 1);
    CHECK(b.at(0, 3) == 1);
    CHECK(b.at(1, 2) == 0);
    CHECK(norm1(b) == Rat(3, 6));

    // right multiplication by a constant leaves d0 unchanged
    Rng rng(3);
    GroupAction s3 = GroupAction::symmetric(3);
    for (int trial = 0; trial < 50; ++trial) {
        Cochain0 a = random_cochain0(d3, s3, rng);
        int gconst = static_cast<int>(rng.below(s3.order()));
        std::vector<int> shifted(a.values());
        for (auto& v : shifted) v = s3.mul(v, gconst);
        CHECK(d0(a) == d0(Cochain0(d3, s3, shifted)));
    }
}

TEST_CASE("d1 examples and permutation invariance") {
    SimplicialComplex tri = triangle();
    GroupAction z2 = GroupAction::symmetric(2);

    Cochain1 triv(tri, z2);
    CHECK(d1(triv).violated.empty());

    Cochain1 phi = indicator(tri, z2, {{0, 1}});
    TriangleDefect td = d1(phi);
    CHECK(td.violated == std::vector<int>{0});
    CHECK(td.value[0] == 1);  // the swap

    SimplicialComplex d3 = delta3();
    Cochain1 phi2 = indicator(d3, z2, {{0, 1}});
    TriangleDefect td2 = d1(phi2);
    // triangles 012 and 013 contain edge 01; canonical triangle order is
    // 012, 013, 023, 123
    CHECK(td2.violated == std::vector<int>{0, 1});

    // whether d1 vanishes is independent of the vertex ordering
    Rng rng(17);
    GroupAction s3 = GroupAction::symmetric(3);
    for (int trial = 0; trial < 100; ++trial) {
        Cochain1 p = random_cochain(d3, s3, rng);
        for (const Simplex& t : d3.faces(2)) {
            int abc[3] = {t[0], t[1], t[2]};
            std::sort(abc, abc + 3);
            bool base = s3.is_identity(
                s3.mul(p.at(abc[0], abc[1]),
                       s3.mul(p.at(abc[1], abc[2]), p.at(abc[2], abc[0]))));
            do {
                bool perm = s3.is_identity(
                    s3.mul(p.at(abc[0], abc[1]),
                           s3.mul(p.at(abc[1], abc[2]), p.at(abc[2], abc[0]))));
                CHECK(perm == base);
            } while (std::next_permutation(abc, abc + 3));
        }
    }
}

TEST_CASE("cocycles and coboundaries") {
    SimplicialComplex d3 = delta3();
    GroupAction s3 = GroupAction::symmetric(3);
    Rng rng(29);

    for (int trial = 0; trial < 100; ++trial) {
        Cochain1 b = d0(random_cochain0(d3, s3, rng));
        CHECK(is_cocycle(b));  // d1 d0 = 1
    }

    // the same on random pure complexes
    for (int trial = 0; trial < 30; ++trial) {
        std::set<std::vector<VertexId>> facets;
        int nv = 5 + static_cast<int>(rng.below(3));
        int nf = 2 + static_cast<int>(rng.below(5));
        while (static_cast<int>(facets.size()) < nf) {
            std::set<VertexId> f;
            while (static_cast<int>(f.size()) < 3)
                f.insert(static_cast<VertexId>(rng.below(nv)));
            facets.insert(std::vector<VertexId>(f.begin(), f.end()));
        }
        SimplicialComplex x = SimplicialComplex::from_facets(
            std::vector<std::vector<VertexId>>(facets.begin(), facets.end()));
        CHECK(is_cocycle(d0(random_cochain0(x, s3, rng))));
    }

    GroupAction z2 = GroupAction::symmetric(2);
    CHECK_FALSE(is_cocycle(indicator(triangle(), z2, {{0, 1}})));
    CHECK(is_cocycle(Cochain1(d3, z2)));
}

TEST_CASE("cocycles strictly contain coboundaries without simple connectivity") {
    // the hollow triangle has no 2-faces, so every cochain is a cocycle,
    // while coboundaries form a proper subset
    SimplicialComplex hollow = SimplicialComplex::from_facets({{0, 1}, {1, 2}, {0, 2}});
    GroupAction z2 = GroupAction::symmetric(2);
    auto zs = enumerate_cocycles(hollow, z2);
    auto bs = enumerate_coboundaries(hollow, z2);
    CHECK(zs.size() == 8);
    CHECK(bs.size() == 4);
    for (auto& b : bs) CHECK(std::binary_search(zs.begin(), zs.end(), b));
}

TEST_CASE("group action on cochains") {
    SimplicialComplex d3 = delta3();
    GroupAction s3 = GroupAction::symmetric(3);
    Rng rng(31);

    for (int trial = 0; trial < 50; ++trial) {
        Cochain1 phi = random_cochain(d3, s3, rng);
        Cochain0 one(d3, s3);
        CHECK(act(one, phi) == phi);

        // psi.1 = d0 psi
        Cochain0 psi = random_cochain0(d3, s3, rng);
        CHECK(act(psi, Cochain1(d3, s3)) == d0(psi));

        // group action law
        Cochain0 psi2 = random_cochain0(d3, s3, rng);
        CHECK(act(psi2, act(psi, phi)) == act(pointwise_mul(psi2, psi), phi));

        // Z^1 is invariant
        Cochain1 z = d0(psi);
        CHECK(is_cocycle(act(psi2, z)));
    }
}

TEST_CASE("norms and distances") {
    SimplicialComplex d3 = delta3();
    GroupAction z2 = GroupAction::symmetric(2);

    Cochain1 phi = indicator(d3, z2, {{0, 1}});
    Cochain1 zero(d3, z2);
    CHECK(dist1(phi, phi) == Rat(0));
    CHECK(dist1(phi, zero) == Rat(1, 6));
    CHECK(norm1(zero) == Rat(0));

    // metric properties on random triples
    Rng rng(41);
    GroupAction s3 = GroupAction::symmetric(3);
    for (int trial = 0; trial < 100; ++trial) {
        Cochain1 a = random_cochain(d3, s3, rng);
        Cochain1 b = random_cochain(d3, s3, rng);
        Cochain1 c = random_cochain(d3, s3, rng);
        CHECK(dist1(a, b) == dist1(b, a));
        CHECK(dist1(a, c) <= dist1(a, b) + dist1(b, c));
        CHECK((dist1(a, b) == Rat(0)) == (a == b));
        CHECK(dist1(a, b) == oracle_dist(a, b));
    }

    SimplicialComplex other = SimplicialComplex::from_facets({{0, 1, 2}});
    CHECK_THROWS_AS(dist1(phi, Cochain1(other, z2)), ValidationError);
}

TEST_CASE("cochain norms bundle") {
    SimplicialComplex d3 = delta3();
    GroupAction z2 = GroupAction::symmetric(2);
    Cochain1 phi = indicator(d3, z2, {{0, 1}});
    CochainNorms ns = cochain_norms(phi);
    CHECK(ns.norm == Rat(1, 6));
    CHECK(ns.d1norm == Rat(2, 4));
    CHECK(ns.support_edges.size() == 1);
    CHECK(ns.support_triangles.size() == 2);
    CHECK(ns.d1norm == oracle_d1_norm(phi));
}

TEST_CASE("cocycle enumeration matches the oracle") {
    SimplicialComplex tri = triangle();
    SimplicialComplex d3 = delta3();
    GroupAction z2 = GroupAction::symmetric(2);
    GroupAction s3 = GroupAction::symmetric(3);

    CHECK(enumerate_cocycles(tri, z2) == oracle_cocycles(tri, z2));
    CHECK(enumerate_cocycles(tri, s3) == oracle_cocycles(tri, s3));
    CHECK(enumerate_cocycles(d3, z2) == oracle_cocycles(d3, z2));
    CHECK(enumerate_cocycles(d3, s3) == oracle_cocycles(d3, s3));

    CHECK(enumerate_cocycles(tri, s3).size() == 36);
    CHECK(enumerate_cocycles(d3, z2).size() == 8);

    // simply connected: cocycles are exactly the coboundaries
    CHECK(enumerate_cocycles(d3, z2) == enumerate_coboundaries(d3, z2));
    CHECK(enumerate_cocycles(tri, s3) == enumerate_coboundaries(tri, s3));
    CHECK(enumerate_coboundaries(d3, s3).size() == 216);  // |G|^(V-1)

    SearchLimits tiny;
    tiny.max_states = 3;
    CHECK_THROWS_AS(enumerate_cocycles(d3, s3, tiny), CapacityError);
    CHECK_THROWS_AS(enumerate_coboundaries(d3, s3, tiny), CapacityError);
}

TEST_CASE("cosystolic norm against brute force") {
    SimplicialComplex tri = triangle();
    SimplicialComplex d3 = delta3();
    GroupAction z2 = GroupAction::symmetric(2);
    GroupAction s3 = GroupAction::symmetric(3);

    // frozen examples
    Cochain1 one_edge = indicator(tri, z2, {{0, 1}});
    CosystoleResult r1 = cosystolic_norm_exact(one_edge);
    CHECK(r1.distance == Rat(1, 3));

    Cochain1 two_edges = indicator(d3, z2, {{0, 1}});
    two_edges.set_edge(d3.edge_index(2, 3), 1);
    CosystoleResult r2 = cosystolic_norm_exact(two_edges);
    CHECK(r2.distance == Rat(2, 6));

    // any cocycle has norm zero and is its own witness
    Rng rng(53);
    for (int trial = 0; trial < 20; ++trial) {
        Cochain1 z = d0(random_cochain0(d3, s3, rng));
        CosystoleResult r = cosystolic_norm_exact(z);
        CHECK(r.distance == Rat(0));
        CHECK(r.witness == z);
    }

    // randomized agreement with the oracle, both search routes
    for (int trial = 0; trial < 25; ++trial) {
        Cochain1 phi = random_cochain(d3, z2, rng);
        OracleCosystole oc = oracle_cosystole(phi);
        CosystoleResult generic = cosystolic_norm_exact(phi, false);
        CosystoleResult simply = cosystolic_norm_exact(phi, true);
        CHECK(generic.distance == oc.distance);
        CHECK(simply.distance == oc.distance);
        CHECK(generic.witness.values() == oc.witness);
        CHECK(simply.witness.values() == oc.witness);
        CHECK((cosystolic_norm_exact(phi).distance == Rat(0)) == is_cocycle(phi));
    }
    for (int trial = 0; trial < 10; ++trial) {
        Cochain1 phi = random_cochain(tri, s3, rng);
        OracleCosystole oc = oracle_cosystole(phi);
        CosystoleResult generic = cosystolic_norm_exact(phi, false);
        CHECK(generic.distance == oc.distance);
        CHECK(generic.witness.values() == oc.witness);
    }
}

TEST_CASE("holonomy") {
    SimplicialComplex tri = triangle();
    GroupAction z2 = GroupAction::symmetric(2);

    Cochain1 triv(tri, z2);
    CHECK(holonomy(triv, {0, 1, 2, 0}) == z2.identity());

    Cochain1 phi = indicator(tri, z2, {{0, 1}});
    CHECK(holonomy(phi, {0, 1, 2, 0}) == 1);
    CHECK_FALSE(d1(phi).violated.empty());

    // coboundaries telescope along every loop
    SimplicialComplex d3 = delta3();
    GroupAction s3 = GroupAction::symmetric(3);
    Rng rng(61);
    for (int trial = 0; trial < 50; ++trial) {
        Cochain1 b = d0(random_cochain0(d3, s3, rng));
        std::vector<VertexId> loop = {0, 1, 2, 0, 3, 1, 0};
        CHECK(holonomy(b, loop) == s3.identity());
    }

    CHECK_THROWS_AS(holonomy(phi, {0, 1, 3}), ValidationError);
    // repeated vertices contribute identity steps
    CHECK(holonomy(phi, {0, 0, 1, 1, 2, 0}) == 1);
}

TEST_CASE("pairwise orbit test") {
    SimplicialComplex tri = triangle();
    GroupAction z2 = GroupAction::symmetric(2);
    Rng rng(71);
    for (int trial = 0; trial < 10; ++trial) {
        Cochain1 phi = random_cochain(tri, z2, rng);
        Cochain0 psi = random_cochain0(tri, z2, rng);
        CHECK(orbit_equal(phi, act(psi, phi)));
    }
    // a cocycle is never in the orbit of a non-cocycle
    Cochain1 noncocycle = indicator(tri, z2, {{0, 1}});
    CHECK_FALSE(orbit_equal(noncocycle, Cochain1(tri, z2)));

    SearchLimits tiny;
    tiny.max_states = 2;
    CHECK_THROWS_AS(orbit_equal(noncocycle, noncocycle, tiny), CapacityError);
}
