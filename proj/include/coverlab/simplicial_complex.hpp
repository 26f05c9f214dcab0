#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "coverlab/rational.hpp"

namespace coverlab {

using VertexId = int;

/// A face: strictly sorted vertex ids, equality is set equality.
class Simplex {
public:
    Simplex() = default;
    /// Sorts the vertices; rejects repeated ids.
    explicit Simplex(std::vector<VertexId> verts);

    int dim() const { return static_cast<int>(verts_.size()) - 1; }
    std::size_t size() const { return verts_.size(); }
    VertexId operator[](std::size_t i) const { return verts_[i]; }
    const std::vector<VertexId>& vertices() const { return verts_; }

    bool contains(VertexId v) const;
    bool contains_all(const Simplex& other) const;
    bool intersects(const Simplex& other) const;
    Simplex united(const Simplex& other) const;

    bool operator==(const Simplex& o) const { return verts_ == o.verts_; }
    bool operator<(const Simplex& o) const { return verts_ < o.verts_; }

    std::size_t hash() const;

private:
    std::vector<VertexId> verts_;
};

struct SimplexHash {
    std::size_t operator()(const Simplex& s) const { return s.hash(); }
};

/// Finite simplicial complex with the facet-incidence probability weights.
///
/// Faces are stored per dimension in lexicographic order; lookups go through
/// per-dimension hash indexes. Instances are immutable after construction and
/// safe to share across threads.
class SimplicialComplex {
public:
    /// Downward closure of the given facets. Keeps duplicates out, records
    /// purity and the weight numerators when the complex is pure.
    static SimplicialComplex from_facets(const std::vector<std::vector<VertexId>>& facets);

    /// n: the complex is (n-1)-dimensional.
    int n() const { return n_; }
    int dim() const { return n_ - 1; }
    bool pure() const { return pure_; }

    /// f_k for k = 0..dim.
    const std::vector<long long>& f_vector() const { return f_vector_; }
    long long num_vertices() const { return f_vector_[0]; }

    /// All k-faces in canonical (lexicographic) order.
    const std::vector<Simplex>& faces(int k) const;
    const std::vector<Simplex>& facets() const { return facets_; }

    bool has_face(const Simplex& s) const;
    /// Position of s within faces(s.dim()), or -1.
    int face_index(const Simplex& s) const;
    int edge_index(VertexId u, VertexId v) const;

    /// Dense position of a vertex id within the canonical vertex order.
    int vertex_position(VertexId v) const;
    VertexId vertex_at(int pos) const { return faces(0)[pos][0]; }

    /// st(X, tau): every face whose union with tau is a face.
    std::vector<Simplex> star(const Simplex& tau) const;
    /// lk(X, tau) as a complex on the vertices disjoint from tau.
    SimplicialComplex link(const Simplex& tau) const;

    /// c_X(sigma) = #facets containing sigma / (binom(n,|sigma|) * f_{n-1}).
    Rat weight(const Simplex& sigma) const;
    /// Numerator of weight(sigma): the number of top faces containing sigma.
    long long top_count(int k, int face_idx) const;
    /// Common denominator of all k-face weights: binom(n,k+1) * f_{n-1}.
    long long weight_denominator(int k) const;

    /// Edge indexes of ({u,v},{v,w},{u,w}) for triangle index ti with u<v<w.
    const std::array<int, 3>& triangle_edges(int ti) const { return tri_edges_[ti]; }

    /// Optional external names; defaults to the decimal vertex id.
    std::string label(VertexId v) const;
    void set_labels(std::vector<std::string> labels_by_position);

    bool same_shape_as(const SimplicialComplex& other) const;

private:
    void require_pure(const char* op) const;

    int n_ = 0;
    bool pure_ = true;
    std::vector<long long> f_vector_;
    std::vector<std::vector<Simplex>> faces_;  // [dim][i]
    std::vector<std::unordered_map<Simplex, int, SimplexHash>> index_;
    std::vector<Simplex> facets_;
    std::unordered_map<VertexId, int> vertex_pos_;
    std::vector<std::vector<long long>> top_count_;  // [dim][i], pure only
    std::vector<std::array<int, 3>> tri_edges_;
    std::vector<std::string> labels_;  // by vertex position; may be empty
};

long long binomial(int n, int k);

/// True iff the vertex map (a-vertex position -> b-vertex id) is a bijection
/// carrying faces to faces in both directions.
bool is_simplicial_isomorphism(const SimplicialComplex& a, const SimplicialComplex& b,
                               const std::vector<VertexId>& image_of_position);

} // namespace coverlab
