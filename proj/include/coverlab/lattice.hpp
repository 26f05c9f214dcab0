#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "coverlab/cochain.hpp"
#include "coverlab/rational.hpp"
#include "coverlab/rng.hpp"
#include "coverlab/simplicial_complex.hpp"

namespace coverlab {

/// Finite ranked lattice with explicit join/meet tables and atom lists.
struct GeometricLattice {
    std::vector<int> rank;                       // per element
    int bottom = -1;
    int top = -1;
    std::vector<int> atoms;                      // element ids of rank 1
    std::vector<std::vector<int>> join_tab;
    std::vector<std::vector<int>> meet_tab;
    std::vector<std::vector<int>> atoms_below;   // per element: atom list indexes
    std::vector<std::string> labels;             // canonical token per element

    int size() const { return static_cast<int>(rank.size()); }
    int join(int a, int b) const { return join_tab[a][b]; }
    int meet(int a, int b) const { return meet_tab[a][b]; }
    bool leq(int a, int b) const { return meet_tab[a][b] == a; }
    bool comparable(int a, int b) const { return leq(a, b) || leq(b, a); }
    int atom_element(int atom_idx) const { return atoms[atom_idx]; }
};

/// Subsets of {0..num_atoms-1}; rank = cardinality.
GeometricLattice boolean_lattice(int num_atoms);

/// 4x4 matrix over F_q, row major.
using Mat4 = std::array<std::array<std::uint8_t, 4>, 4>;

/// The lattice of linear subspaces of F_q^4 (q in {2,3}), with the vector
/// arithmetic needed for GL_4-induced atom orderings. Subspaces are element
/// ids in the lattice; each stores its sorted member-vector list and a
/// reduced-row-echelon label.
class SubspaceLattice {
public:
    static SubspaceLattice build(int q);

    const GeometricLattice& lattice() const { return lat_; }
    int q() const { return q_; }
    int num_vectors() const { return nvec_; }

    // F_q^4 arithmetic on vector indexes (base-q digit encoding).
    int vec_add(int a, int b) const;
    int vec_scale(int c, int a) const;
    int mat_apply(const Mat4& m, int v) const;
    bool mat_invert(const Mat4& m, Mat4& out) const;
    Mat4 mat_identity() const;
    Mat4 mat_mul(const Mat4& a, const Mat4& b) const;

    /// Image subspace under an invertible matrix.
    int map_element(const Mat4& m, int elem) const;
    /// Atom index whose subspace contains the given nonzero vector.
    int atom_of_vector(int v) const;
    /// Canonical representative vector of an atom.
    int atom_rep(int atom_idx) const { return atom_rep_[atom_idx]; }

    /// All of GL_4(F_q) in canonical row-choice order. Guarded to q=2.
    std::vector<Mat4> enumerate_gl() const;
    long long gl_order() const;
    Mat4 random_invertible(Rng& rng) const;

    /// Parse an RREF label ("0100.0011") back to an element id; -1 if the
    /// token does not name a subspace of this lattice.
    int parse_label(const std::string& token) const;

private:
    int q_ = 0;
    int nvec_ = 0;
    GeometricLattice lat_;
    std::vector<std::vector<int>> members_;  // per element, sorted vector ids
    std::vector<int> atom_rep_;
    std::unordered_map<std::string, int> member_key_to_elem_;

    std::string member_key(const std::vector<int>& members) const;
};

/// The order complex of the proper part of a lattice, together with the
/// element<->vertex correspondence. Vertex ids ascend with rank.
struct OrderComplex {
    GeometricLattice lattice;
    SimplicialComplex complex;
    std::vector<int> vertex_of_element;  // -1 for bottom and top
    std::vector<int> element_of_vertex;
};

OrderComplex order_complex(const GeometricLattice& l);

/// One linear order on the atoms: rank_of_atom[i] is the position of atom i.
struct AtomOrdering {
    std::vector<int> rank_of_atom;
};

/// A weighted family of atom orderings. Empty mu means uniform weights.
struct OrderingScheme {
    std::vector<AtomOrdering> orders;
    std::vector<Rat> mu;
    std::string mode = "explicit";  // "exact" | "sampled" | "explicit"
    std::uint64_t seed = 0;

    bool uniform() const { return mu.empty(); }
    Rat weight(int i) const {
        return uniform() ? Rat(1, static_cast<long long>(orders.size())) : mu[i];
    }
};

/// Ordering induced by s: a before a' iff s^-1 a precedes s^-1 a' in the
/// canonical atom order.
AtomOrdering ordering_from_matrix(const SubspaceLattice& sl, const Mat4& s);

OrderingScheme gl_exact_scheme(const SubspaceLattice& sl);
OrderingScheme gl_sampled_scheme(const SubspaceLattice& sl, long long samples,
                                 std::uint64_t seed);

/// a(s): the order-minimal atom. Returns an atom index.
int min_atom(const OrderComplex& oc, const AtomOrdering& o);
/// b(s,u): the order-minimal atom below the given element.
int min_atom_below(const OrderComplex& oc, const AtomOrdering& o, int elem);

/// The correction 0-cochain psi_s(u) = phi(a, a v b) phi(a v b, b) phi(b, u)
/// with a = a(s), b = b(s,u); degenerate steps contribute the identity.
Cochain0 psi_correction(const OrderComplex& oc, const Cochain1& phi,
                        const AtomOrdering& o);

/// The filling disc of an edge: a small verified-collapsible subcomplex of
/// the order complex containing the correction cycle.
struct FillingDisc {
    std::array<int, 8> cycle;                   // lattice elements, x7 == x0
    std::vector<std::array<int, 3>> triangles;  // chains, sorted by rank
    std::vector<std::array<int, 2>> edges;      // disc edges incl. cycle edges
};

/// Builds the canonical disc for the edge with the given index, collapsing
/// degeneracies. Verifies that every kept triangle is a chain, that the
/// disc contains the cycle, has at most 9 triangles, and collapses to a
/// point; any failure is a construction error.
FillingDisc filling(const OrderComplex& oc, const AtomOrdering& o, int edge_index);

/// Greedy free-pair collapse on a tiny 2-complex given by triangles plus
/// extra edges; true iff it reduces to a single vertex.
bool collapses_to_point(const std::vector<std::array<int, 3>>& triangles,
                        const std::vector<std::array<int, 2>>& edges);

struct DeltaReport {
    std::vector<Rat> per_order;  // delta_s(tau) for each ordering
    Rat mean;
};

/// delta_s(tau) for one triangle across a scheme, plus the weighted mean.
DeltaReport delta(const OrderComplex& oc, const OrderingScheme& scheme,
                  int triangle_index);

struct GammaTable {
    std::vector<Rat> delta_mean;      // per triangle of the order complex
    Rat gamma;                        // max over triangles
    long long memberships = 0;        // #{(s, uv, tau) : tau in Y_s(uv)}
    long long orders = 0;
    double wall_ms = 0.0;
};

/// Mean delta per triangle over the whole scheme. OpenMP-parallel over
/// orderings with exact per-thread accumulators; results are independent of
/// the thread count.
GammaTable gamma_table(const OrderComplex& oc, const OrderingScheme& scheme,
                       int threads = 0);
/// Single-loop reference implementation, kept for testing and benchmarks.
GammaTable gamma_table_serial(const OrderComplex& oc, const OrderingScheme& scheme);

struct GammaCertificate {
    int q = 0;
    Rat gamma;
    Rat h1_lower_bound;
    std::string mode;
    long long samples = 0;
    std::uint64_t seed = 0;
    double wall_ms = 0.0;
};

/// gamma = max_tau E_s[delta_s(tau)] for the spherical building A_3(F_q),
/// with the certificate h1 >= 1/gamma. Exact mode enumerates GL_4(F_2);
/// it is a capacity error for q=3.
GammaCertificate gamma_certificate(const SubspaceLattice& sl, const OrderComplex& oc,
                                   const std::string& mode, long long samples,
                                   std::uint64_t seed, int threads = 0);

struct DecodeResult {
    Cochain1 candidate;        // best coboundary d0(psi_s^-1)
    Rat distance;              // dist(phi, candidate) == ||(psi_s).phi||
    long long best_order = -1;
    long long claim_checks = 0;
    double wall_ms = 0.0;
};

/// For each ordering, the coboundary d0(psi_s^-1) is a cocycle candidate at
/// distance ||(psi_s).phi|| from phi; returns the best one. Each nonzero
/// corrected edge is checked against the cycle-holonomy identity and the
/// simply-connected claim (a violated triangle must exist in its disc).
DecodeResult decode(const OrderComplex& oc, const Cochain1& phi,
                    const OrderingScheme& scheme, int threads = 0);
DecodeResult decode_serial(const OrderComplex& oc, const Cochain1& phi,
                           const OrderingScheme& scheme);

} // namespace coverlab
