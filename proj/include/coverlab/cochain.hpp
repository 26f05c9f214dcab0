#pragma once

#include <vector>

#include "coverlab/group_action.hpp"
#include "coverlab/rational.hpp"
#include "coverlab/simplicial_complex.hpp"

namespace coverlab {

/// G-valued function on the vertices, stored by vertex position.
class Cochain0 {
public:
    Cochain0(const SimplicialComplex& x, const GroupAction& g)
        : x_(&x), g_(&g), val_(x.num_vertices(), g.identity()) {}
    Cochain0(const SimplicialComplex& x, const GroupAction& g, std::vector<int> values);

    const SimplicialComplex& complex() const { return *x_; }
    const GroupAction& group() const { return *g_; }
    int at_vertex(VertexId v) const { return val_[x_->vertex_position(v)]; }
    int at_position(int pos) const { return val_[pos]; }
    const std::vector<int>& values() const { return val_; }

    Cochain0 pointwise_inverse() const;

private:
    const SimplicialComplex* x_;
    const GroupAction* g_;
    std::vector<int> val_;
};

/// Antisymmetric G-valued edge labeling: the value on (u,v) with u<v is
/// stored; reading the reversed orientation yields the inverse.
class Cochain1 {
public:
    Cochain1(const SimplicialComplex& x, const GroupAction& g)
        : x_(&x), g_(&g),
          val_(x.dim() >= 1 ? x.faces(1).size() : 0, g.identity()) {}
    Cochain1(const SimplicialComplex& x, const GroupAction& g, std::vector<int> edge_values);

    const SimplicialComplex& complex() const { return *x_; }
    const GroupAction& group() const { return *g_; }

    int at(VertexId u, VertexId v) const;
    int at_edge(int edge_idx) const { return val_[edge_idx]; }
    void set_edge(int edge_idx, int g) { val_[edge_idx] = g; }
    const std::vector<int>& values() const { return val_; }

    bool operator==(const Cochain1& o) const { return val_ == o.val_; }

private:
    const SimplicialComplex* x_;
    const GroupAction* g_;
    std::vector<int> val_;  // by edge index in X(1) canonical order
};

/// d0 psi (u,v) = psi(u) psi(v)^-1.
Cochain1 d0(const Cochain0& psi);

/// Representative d1 values on canonical vertex order plus the violated set.
struct TriangleDefect {
    std::vector<int> value;     // per triangle index
    std::vector<int> violated;  // triangle indices with value != 1
};
TriangleDefect d1(const Cochain1& phi);

bool is_cocycle(const Cochain1& phi);

/// (psi.phi)(u,v) = psi(u) phi(u,v) psi(v)^-1.
Cochain1 act(const Cochain0& psi, const Cochain1& phi);

Rat norm1(const Cochain1& phi);
Rat d1_norm(const Cochain1& phi);
Rat dist1(const Cochain1& a, const Cochain1& b);

struct CochainNorms {
    Rat norm;
    Rat d1norm;
    std::vector<int> support_edges;
    std::vector<int> support_triangles;
};
CochainNorms cochain_norms(const Cochain1& phi);

/// Ordered product of phi along a closed vertex path. Steps between equal
/// vertices contribute the identity; a step between distinct non-adjacent
/// vertices is a path error.
int holonomy(const Cochain1& phi, const std::vector<VertexId>& loop);

struct SearchLimits {
    long long max_states = 100000000;
};

/// All 1-cocycles as edge-value vectors in canonical edge order,
/// lexicographically sorted. Depth-first assignment over an edge order
/// that closes triangles as early as possible, with forced-value
/// propagation. Guarded by limits.max_states.
std::vector<std::vector<int>> enumerate_cocycles(const SimplicialComplex& x,
                                                 const GroupAction& g,
                                                 const SearchLimits& limits = {});

/// All coboundaries d0(psi), enumerated with psi pinned to the identity on
/// one vertex per connected component. Equals Z^1 when the complex is
/// simply connected.
std::vector<std::vector<int>> enumerate_coboundaries(const SimplicialComplex& x,
                                                     const GroupAction& g,
                                                     const SearchLimits& limits = {});

struct CosystoleResult {
    Rat distance;
    Cochain1 witness;           // nearest cocycle, lex-least among minimizers
    long long cocycles_scanned = 0;
};

/// Exact distance from phi to Z^1. When the caller asserts the complex is
/// simply connected the search runs over coboundaries instead of the
/// generic cocycle enumeration.
CosystoleResult cosystolic_norm_exact(const Cochain1& phi,
                                      bool simply_connected = false,
                                      const SearchLimits& limits = {});

/// Pairwise H^1 orbit test: exists psi in C^0 with psi.phi1 == phi2.
/// Brute force over |G|^|V| assignments, guarded.
bool orbit_equal(const Cochain1& phi1, const Cochain1& phi2,
                 const SearchLimits& limits = {});

} // namespace coverlab
