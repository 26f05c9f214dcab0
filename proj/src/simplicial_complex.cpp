#include "coverlab/simplicial_complex.hpp"

#include <algorithm>
#include <set>

#include "coverlab/errors.hpp"

namespace coverlab {

long long binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    long long r = 1;
    for (int i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
    return r;
}

Simplex::Simplex(std::vector<VertexId> verts) : verts_(std::move(verts)) {
    std::sort(verts_.begin(), verts_.end());
    if (std::adjacent_find(verts_.begin(), verts_.end()) != verts_.end())
        throw ValidationError("simplex has a repeated vertex");
}

bool Simplex::contains(VertexId v) const {
    return std::binary_search(verts_.begin(), verts_.end(), v);
}

bool Simplex::contains_all(const Simplex& other) const {
    return std::includes(verts_.begin(), verts_.end(),
                         other.verts_.begin(), other.verts_.end());
}

bool Simplex::intersects(const Simplex& other) const {
    auto a = verts_.begin();
    auto b = other.verts_.begin();
    while (a != verts_.end() && b != other.verts_.end()) {
        if (*a < *b) ++a;
        else if (*b < *a) ++b;
        else return true;
    }
    return false;
}

Simplex Simplex::united(const Simplex& other) const {
    std::vector<VertexId> out;
    out.reserve(verts_.size() + other.verts_.size());
    std::set_union(verts_.begin(), verts_.end(),
                   other.verts_.begin(), other.verts_.end(),
                   std::back_inserter(out));
    Simplex s;
    s.verts_ = std::move(out);
    return s;
}

std::size_t Simplex::hash() const {
    std::size_t h = 0x9e3779b97f4a7c15ULL ^ verts_.size();
    for (VertexId v : verts_) {
        h ^= static_cast<std::size_t>(v) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return h;
}

SimplicialComplex SimplicialComplex::from_facets(
    const std::vector<std::vector<VertexId>>& facet_input) {
    if (facet_input.empty()) throw ValidationError("facet list is empty");

    // Downward closure via subset enumeration of each facet.
    std::vector<std::set<Simplex>> by_dim;
    for (const auto& raw : facet_input) {
        if (raw.empty()) throw ValidationError("empty facet");
        Simplex top(raw);  // throws on duplicate vertices
        int nv = static_cast<int>(top.size());
        if (static_cast<int>(by_dim.size()) < nv) by_dim.resize(nv);
        for (std::uint32_t mask = 1; mask < (1u << nv); ++mask) {
            std::vector<VertexId> sub;
            for (int i = 0; i < nv; ++i)
                if (mask & (1u << i)) sub.push_back(top[i]);
            by_dim[sub.size() - 1].insert(Simplex(std::move(sub)));
        }
    }

    SimplicialComplex x;
    x.n_ = static_cast<int>(by_dim.size());
    x.faces_.resize(x.n_);
    x.index_.resize(x.n_);
    x.f_vector_.resize(x.n_);
    for (int k = 0; k < x.n_; ++k) {
        x.faces_[k].assign(by_dim[k].begin(), by_dim[k].end());
        x.f_vector_[k] = static_cast<long long>(x.faces_[k].size());
        for (int i = 0; i < static_cast<int>(x.faces_[k].size()); ++i)
            x.index_[k].emplace(x.faces_[k][i], i);
    }
    for (int i = 0; i < static_cast<int>(x.faces_[0].size()); ++i)
        x.vertex_pos_.emplace(x.faces_[0][i][0], i);

    // Maximal faces, and purity: every maximal face has top dimension.
    x.pure_ = true;
    for (int k = 0; k < x.n_; ++k) {
        for (const Simplex& s : x.faces_[k]) {
            bool maximal = true;
            for (int kk = k + 1; kk < x.n_ && maximal; ++kk)
                for (const Simplex& t : x.faces_[kk])
                    if (t.contains_all(s)) { maximal = false; break; }
            if (maximal) {
                x.facets_.push_back(s);
                if (k != x.n_ - 1) x.pure_ = false;
            }
        }
    }
    std::sort(x.facets_.begin(), x.facets_.end());

    if (x.pure_) {
        x.top_count_.resize(x.n_);
        for (int k = 0; k < x.n_; ++k)
            x.top_count_[k].assign(x.faces_[k].size(), 0);
        for (const Simplex& top : x.faces_[x.n_ - 1]) {
            int nv = static_cast<int>(top.size());
            for (std::uint32_t mask = 1; mask < (1u << nv); ++mask) {
                std::vector<VertexId> sub;
                for (int i = 0; i < nv; ++i)
                    if (mask & (1u << i)) sub.push_back(top[i]);
                Simplex s(std::move(sub));
                x.top_count_[s.dim()][x.face_index(s)] += 1;
            }
        }
    }

    if (x.n_ >= 3) {
        x.tri_edges_.resize(x.faces_[2].size());
        for (int ti = 0; ti < static_cast<int>(x.faces_[2].size()); ++ti) {
            const Simplex& t = x.faces_[2][ti];
            x.tri_edges_[ti] = {x.edge_index(t[0], t[1]),
                                x.edge_index(t[1], t[2]),
                                x.edge_index(t[0], t[2])};
        }
    }
    return x;
}

const std::vector<Simplex>& SimplicialComplex::faces(int k) const {
    if (k < 0 || k >= n_)
        throw ValidationError("face dimension " + std::to_string(k) + " out of range");
    return faces_[k];
}

bool SimplicialComplex::has_face(const Simplex& s) const {
    return face_index(s) >= 0;
}

int SimplicialComplex::face_index(const Simplex& s) const {
    int k = s.dim();
    if (k < 0 || k >= n_) return -1;
    auto it = index_[k].find(s);
    return it == index_[k].end() ? -1 : it->second;
}

int SimplicialComplex::edge_index(VertexId u, VertexId v) const {
    return face_index(Simplex({u, v}));
}

int SimplicialComplex::vertex_position(VertexId v) const {
    auto it = vertex_pos_.find(v);
    if (it == vertex_pos_.end())
        throw ValidationError("vertex " + std::to_string(v) + " is not in the complex");
    return it->second;
}

std::vector<Simplex> SimplicialComplex::star(const Simplex& tau) const {
    if (!has_face(tau)) throw ValidationError("star: not a face of the complex");
    std::vector<Simplex> out;
    for (int k = 0; k < n_; ++k)
        for (const Simplex& s : faces_[k])
            if (has_face(s.united(tau))) out.push_back(s);
    return out;
}

SimplicialComplex SimplicialComplex::link(const Simplex& tau) const {
    if (!has_face(tau)) throw ValidationError("link: not a face of the complex");
    std::vector<std::vector<VertexId>> link_faces;
    for (int k = 0; k < n_; ++k)
        for (const Simplex& s : faces_[k])
            if (!s.intersects(tau) && has_face(s.united(tau)))
                link_faces.push_back(s.vertices());
    if (link_faces.empty())
        throw ValidationError("link: empty link");
    return from_facets(link_faces);
}

void SimplicialComplex::require_pure(const char* op) const {
    if (!pure_)
        throw ValidationError(std::string(op) + ": complex is not pure");
}

Rat SimplicialComplex::weight(const Simplex& sigma) const {
    require_pure("weight");
    int idx = face_index(sigma);
    if (idx < 0) throw ValidationError("weight: not a face of the complex");
    return Rat(top_count_[sigma.dim()][idx], weight_denominator(sigma.dim()));
}

long long SimplicialComplex::top_count(int k, int face_idx) const {
    require_pure("top_count");
    return top_count_[k][face_idx];
}

long long SimplicialComplex::weight_denominator(int k) const {
    require_pure("weight_denominator");
    return binomial(n_, k + 1) * f_vector_[n_ - 1];
}

std::string SimplicialComplex::label(VertexId v) const {
    int pos = vertex_position(v);
    if (pos < static_cast<int>(labels_.size())) return labels_[pos];
    return std::to_string(v);
}

void SimplicialComplex::set_labels(std::vector<std::string> labels_by_position) {
    if (static_cast<long long>(labels_by_position.size()) != f_vector_[0])
        throw ValidationError("label count does not match vertex count");
    labels_ = std::move(labels_by_position);
}

bool SimplicialComplex::same_shape_as(const SimplicialComplex& other) const {
    if (n_ != other.n_ || f_vector_ != other.f_vector_) return false;
    for (int k = 0; k < n_; ++k)
        if (faces_[k] != other.faces_[k]) return false;
    return true;
}

bool is_simplicial_isomorphism(const SimplicialComplex& a, const SimplicialComplex& b,
                               const std::vector<VertexId>& image_of_position) {
    if (a.n() != b.n()) return false;
    if (a.f_vector() != b.f_vector()) return false;
    if (static_cast<long long>(image_of_position.size()) != a.num_vertices())
        return false;
    std::vector<VertexId> sorted = image_of_position;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return false;
    for (int k = 0; k < a.n(); ++k) {
        for (const Simplex& f : a.faces(k)) {
            std::vector<VertexId> img;
            img.reserve(f.size());
            for (std::size_t i = 0; i < f.size(); ++i)
                img.push_back(image_of_position[a.vertex_position(f[i])]);
            if (!b.has_face(Simplex(std::move(img)))) return false;
        }
    }
    return true;
}

} // namespace coverlab
