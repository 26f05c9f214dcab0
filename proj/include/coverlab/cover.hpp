#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "coverlab/cochain.hpp"
#include "coverlab/group_action.hpp"
#include "coverlab/rational.hpp"
#include "coverlab/simplicial_complex.hpp"

namespace coverlab {

/// A t-to-1 surjective simplicial map onto a base complex, represented
/// through its edge cochain. Vertex [u,s] of the total complex gets id
/// position(u)*t + s; the projection drops the fiber coordinate.
class NearCover {
public:
    const SimplicialComplex& base() const { return *base_; }
    const GroupAction& action() const { return *action_; }
    const SimplicialComplex& total() const { return total_; }
    const Cochain1& cochain() const { return cochain_; }

    int fiber_size() const { return action_->set_size(); }
    VertexId total_vertex(int base_pos, int s) const {
        return base_pos * fiber_size() + s;
    }
    int base_position_of(VertexId y) const { return y / fiber_size(); }
    int fiber_index_of(VertexId y) const { return y % fiber_size(); }

private:
    friend NearCover lift_complex(const Cochain1& phi);
    NearCover(const SimplicialComplex& base, const GroupAction& action, Cochain1 phi,
              SimplicialComplex total)
        : base_(&base), action_(&action), cochain_(std::move(phi)),
          total_(std::move(total)) {}

    const SimplicialComplex* base_;
    const GroupAction* action_;
    Cochain1 cochain_;
    SimplicialComplex total_;
};

/// Y_phi: vertices X(0) x S; a face lifts over s iff the cochain is
/// consistent on all of its vertex pairs. The stored matching convention is
/// g_uv(fiber index over v) = fiber index over u with g_uv = phi(u,v).
NearCover lift_complex(const Cochain1& phi);

/// Matchings read back from the edges of the total complex.
Cochain1 extract_cochain(const NearCover& cover);

/// True iff the projection restricts to an isomorphism on every star.
bool covers_every_star(const NearCover& cover);

struct DeficiencyReport {
    Rat m;
    std::vector<std::pair<std::string, Rat>> local;  // per total-complex vertex
    std::vector<int> violated_triangles;             // base triangle indexes
};

/// Deficiency computed two independent ways (definition over uncovered
/// link edges, and the fix-count identity); throws ConsistencyError if
/// they ever disagree.
DeficiencyReport deficiency_exact(const NearCover& cover);

Rat cover_distance(const NearCover& a, const NearCover& b);

struct TriangleTestResult {
    long long samples = 0;
    std::uint64_t seed = 0;
    long long failures = 0;
    double failure_frequency = 0.0;
    double standard_error = 0.0;      // sqrt(p(1-p)/N) at the empirical p
    Rat exact_violation_weight;       // sum of c_X over violated triangles
    int shards = 0;
};

/// Samples triangles with probability c_X (uniform facet, then a uniform
/// triangle inside it) and checks that the fiber consists of |S| disjoint
/// triangles. Sampling is sharded with per-shard derived seeds, so the
/// result depends only on (seed, samples), not on the thread count.
TriangleTestResult triangle_test(const NearCover& cover, long long samples,
                                 std::uint64_t seed, int threads = 0);

struct StabilityResult {
    Rat c;                 // min over non-covers of deficiency / distance
    Cochain1 witness;      // lexicographically least minimizer
    long long cochains_scanned = 0;
    long long cocycles = 0;
    double wall_ms = 0.0;
};

/// c(X;G,S) by exhaustive enumeration of all |G|^|E| cochains. The
/// denominator is the cosystolic norm, computed against the full cocycle
/// set. OpenMP-parallel over index ranges; deterministic reduction.
StabilityResult cover_stability_exact(const SimplicialComplex& x, const GroupAction& g,
                                      const SearchLimits& limits = {}, int threads = 0);

/// Single-loop reference implementation, kept for testing and benchmarks.
StabilityResult cover_stability_exact_serial(const SimplicialComplex& x,
                                             const GroupAction& g,
                                             const SearchLimits& limits = {});

} // namespace coverlab
