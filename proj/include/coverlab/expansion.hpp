#pragma once

#include "coverlab/cochain.hpp"
#include "coverlab/cover.hpp"
#include "coverlab/group_action.hpp"
#include "coverlab/rational.hpp"
#include "coverlab/simplicial_complex.hpp"

namespace coverlab {

struct ExpansionProfileRow {
    std::vector<int> values;  // edge values, gauge-normalized
    Rat d1norm;
    Rat cosystole;
    Rat ratio;
};

struct ExpansionReport {
    Rat h1;
    Cochain1 witness;  // gauge-normalized: identity on a spanning forest
    long long cochains_scanned = 0;
    long long cocycles = 0;
    double wall_ms = 0.0;
    std::vector<ExpansionProfileRow> table;  // filled only on request
};

/// Exact h_1(X;G): minimum of ||d1 phi|| / ||phi||_csy over non-cocycles.
/// Enumerates cochains up to the C^0 gauge (spanning-forest edges pinned to
/// the identity), which visits every orbit; both sides of the ratio are
/// orbit invariants. OpenMP-parallel, deterministic reduction.
ExpansionReport h1_exact(const SimplicialComplex& x, const GroupAction& g,
                         const SearchLimits& limits = {}, int threads = 0);

/// Single-loop reference implementation, kept for testing and benchmarks.
/// with_table additionally records one profile row per non-cocycle visited.
ExpansionReport h1_exact_serial(const SimplicialComplex& x, const GroupAction& g,
                                const SearchLimits& limits = {},
                                bool with_table = false);

struct SandwichCertificate {
    Rat lower;  // (1 - Fix/|S|) * ||d1 phi||
    Rat m;      // deficiency of the lift
    Rat upper;  // ||d1 phi||
    bool holds = false;
};

/// Checks (1 - Fix/|S|) ||d1 phi|| <= m(Y_phi) <= ||d1 phi|| exactly.
SandwichCertificate verify_sandwich(const Cochain1& phi);

struct StabilityChainReport {
    Rat two_over_s_h1;  // (2/|S|)  * h1
    Rat lower;          // (1-Fix/|S|) * h1
    Rat c;              // cover stability
    Rat h1;
    bool faithful = false;
    bool chain_holds = false;
};

/// Evaluates the chain (2/|S|) h1 <= (1-Fix/|S|) h1 <= c <= h1 on one
/// instance.
StabilityChainReport verify_stability_chain(const SimplicialComplex& x, const GroupAction& g,
                                      const SearchLimits& limits = {}, int threads = 0);

struct NearestCocycleReport {
    Rat distance;   // to the exact nearest cocycle, or a decoder candidate
    Rat bound;      // m(Y_phi) / ((1-Fix/|S|) h1)
    bool exact = false;
    bool holds = false;
};

/// Verifies dist(phi, Z^1) <= m(Y_phi) / ((1-Fix/|S|) h1) with the exact
/// nearest cocycle found by search.
NearestCocycleReport nearest_cocycle_bound_check(const Cochain1& phi,
                                                 bool simply_connected = false,
                                                 const SearchLimits& limits = {},
                                                 int threads = 0);

/// Same check with an externally supplied h1 lower bound and candidate
/// distance (e.g. from the lattice decoder) when exact search is infeasible.
NearestCocycleReport nearest_cocycle_bound_check_with(const Cochain1& phi,
                                                      const Rat& h1_lower_bound,
                                                      const Rat& candidate_distance);

} // namespace coverlab
