#pragma once

// Brute-force oracles shared by the test suites. Everything here computes
// from first principles (full enumeration, definitional norms) and stays
// independent of the search kernels it is used to check.

#include <vector>

#include "coverlab/cochain.hpp"
#include "coverlab/group_action.hpp"
#include "coverlab/rational.hpp"
#include "coverlab/rng.hpp"
#include "coverlab/simplicial_complex.hpp"

namespace testutil {

using namespace coverlab;

inline long long pow_ll(long long b, int e) {
    long long r = 1;
    while (e-- > 0) r *= b;
    return r;
}

/// Every cochain as an edge-value vector, lexicographic order.
inline std::vector<std::vector<int>> all_cochains(const SimplicialComplex& x,
                                                  const GroupAction& g) {
    const int ne = static_cast<int>(x.faces(1).size());
    const long long total = pow_ll(g.order(), ne);
    std::vector<std::vector<int>> out;
    out.reserve(total);
    std::vector<int> val(ne, 0);
    for (long long idx = 0; idx < total; ++idx) {
        long long rem = idx;
        for (int i = ne - 1; i >= 0; --i) {
            val[i] = static_cast<int>(rem % g.order());
            rem /= g.order();
        }
        out.push_back(val);
    }
    return out;
}

/// d1 via the definitional ordered product on each triangle.
inline bool oracle_is_cocycle(const Cochain1& phi) {
    const SimplicialComplex& x = phi.complex();
    const GroupAction& g = phi.group();
    if (x.dim() < 2) return true;
    for (const Simplex& t : x.faces(2)) {
        int d = g.mul(phi.at(t[0], t[1]),
                      g.mul(phi.at(t[1], t[2]), phi.at(t[2], t[0])));
        if (!g.is_identity(d)) return false;
    }
    return true;
}

inline Rat oracle_d1_norm(const Cochain1& phi) {
    const SimplicialComplex& x = phi.complex();
    const GroupAction& g = phi.group();
    Rat total(0);
    if (x.dim() < 2) return total;
    for (const Simplex& t : x.faces(2)) {
        int d = g.mul(phi.at(t[0], t[1]),
                      g.mul(phi.at(t[1], t[2]), phi.at(t[2], t[0])));
        if (!g.is_identity(d)) total += x.weight(t);
    }
    return total;
}

inline Rat oracle_dist(const Cochain1& a, const Cochain1& b) {
    const SimplicialComplex& x = a.complex();
    Rat total(0);
    const auto& edges = x.faces(1);
    for (int e = 0; e < static_cast<int>(edges.size()); ++e)
        if (a.at_edge(e) != b.at_edge(e)) total += x.weight(edges[e]);
    return total;
}

/// Z^1 by filtering the full cochain space.
inline std::vector<std::vector<int>> oracle_cocycles(const SimplicialComplex& x,
                                                     const GroupAction& g) {
    std::vector<std::vector<int>> out;
    for (auto& val : all_cochains(x, g)) {
        Cochain1 phi(x, g, val);
        if (oracle_is_cocycle(phi)) out.push_back(val);
    }
    return out;
}

struct OracleCosystole {
    Rat distance;
    std::vector<int> witness;  // lexicographically least minimizer
};

inline OracleCosystole oracle_cosystole(const Cochain1& phi) {
    const SimplicialComplex& x = phi.complex();
    const GroupAction& g = phi.group();
    OracleCosystole best;
    bool first = true;
    for (auto& z : oracle_cocycles(x, g)) {
        Rat d = oracle_dist(phi, Cochain1(x, g, z));
        if (first || d < best.distance ||
            (d == best.distance && z < best.witness)) {
            best.distance = d;
            best.witness = z;
            first = false;
        }
    }
    return best;
}

inline Cochain1 random_cochain(const SimplicialComplex& x, const GroupAction& g,
                               Rng& rng) {
    std::vector<int> val(x.dim() >= 1 ? x.faces(1).size() : 0);
    for (auto& v : val) v = static_cast<int>(rng.below(g.order()));
    return Cochain1(x, g, val);
}

inline Cochain0 random_cochain0(const SimplicialComplex& x, const GroupAction& g,
                                Rng& rng) {
    std::vector<int> val(x.num_vertices());
    for (auto& v : val) v = static_cast<int>(rng.below(g.order()));
    return Cochain0(x, g, val);
}

} // namespace testutil
