#include "coverlab/lattice.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include "coverlab/errors.hpp"

namespace coverlab {

namespace {

void fill_atoms_below(GeometricLattice& l) {
    l.atoms_below.assign(l.size(), {});
    for (int e = 0; e < l.size(); ++e)
        for (int ai = 0; ai < static_cast<int>(l.atoms.size()); ++ai)
            if (l.leq(l.atoms[ai], e)) l.atoms_below[e].push_back(ai);
}

} // namespace

GeometricLattice boolean_lattice(int num_atoms) {
    if (num_atoms < 1 || num_atoms > 20)
        throw ValidationError("boolean lattice: atom count out of range");
    const int m = 1 << num_atoms;
    std::vector<int> masks(m);
    for (int i = 0; i < m; ++i) masks[i] = i;
    std::sort(masks.begin(), masks.end(), [](int a, int b) {
        int pa = __builtin_popcount(static_cast<unsigned>(a));
        int pb = __builtin_popcount(static_cast<unsigned>(b));
        return pa != pb ? pa < pb : a < b;
    });
    std::vector<int> elem_of_mask(m);
    for (int e = 0; e < m; ++e) elem_of_mask[masks[e]] = e;

    GeometricLattice l;
    l.rank.resize(m);
    l.join_tab.assign(m, std::vector<int>(m));
    l.meet_tab.assign(m, std::vector<int>(m));
    l.labels.resize(m);
    for (int e = 0; e < m; ++e) {
        l.rank[e] = __builtin_popcount(static_cast<unsigned>(masks[e]));
        l.labels[e] = "s" + std::to_string(masks[e]);
        if (l.rank[e] == 1) l.atoms.push_back(e);
    }
    l.bottom = elem_of_mask[0];
    l.top = elem_of_mask[m - 1];
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b) {
            l.join_tab[a][b] = elem_of_mask[masks[a] | masks[b]];
            l.meet_tab[a][b] = elem_of_mask[masks[a] & masks[b]];
        }
    fill_atoms_below(l);
    return l;
}

// --- subspace lattice of F_q^4 ------------------------------------------

namespace {

// digit i of a vector index is coordinate i
inline int vdigit(int v, int i, int q) {
    static const int pw2[5] = {1, 2, 4, 8, 16};
    static const int pw3[5] = {1, 3, 9, 27, 81};
    return (v / (q == 2 ? pw2[i] : pw3[i])) % q;
}

inline int vcompose(const int d[4], int q) {
    int v = 0, p = 1;
    for (int i = 0; i < 4; ++i) {
        v += d[i] * p;
        p *= q;
    }
    return v;
}

// Span closure of a set of vectors; returns the sorted member list.
std::vector<int> span_members(const std::vector<int>& gens, int q, int nvec,
                              int (*add)(int, int, int), int (*smul)(int, int, int)) {
    std::vector<char> in(static_cast<std::size_t>(nvec), 0);
    in[0] = 1;
    std::vector<int> mem = {0};
    for (int g : gens) {
        if (in[g]) continue;
        std::vector<int> cur = mem;
        for (int w : cur)
            for (int c = 1; c < q; ++c) {
                int u = add(w, smul(c, g, q), q);
                if (!in[u]) {
                    in[u] = 1;
                    mem.push_back(u);
                }
            }
    }
    std::sort(mem.begin(), mem.end());
    return mem;
}

int raw_add(int a, int b, int q) {
    int d[4];
    for (int i = 0; i < 4; ++i) d[i] = (vdigit(a, i, q) + vdigit(b, i, q)) % q;
    return vcompose(d, q);
}

int raw_smul(int c, int a, int q) {
    int d[4];
    for (int i = 0; i < 4; ++i) d[i] = (c * vdigit(a, i, q)) % q;
    return vcompose(d, q);
}

// RREF label of a subspace from any spanning set; rows joined by '.'.
std::string rref_label(const std::vector<int>& members, int q) {
    if (members.size() <= 1) return "0";
    std::vector<std::array<int, 4>> rows;
    for (int v : members) {
        if (v == 0) continue;
        std::array<int, 4> r;
        for (int i = 0; i < 4; ++i) r[i] = vdigit(v, i, q);
        rows.push_back(r);
    }
    // Gauss-Jordan to reduced row echelon form over F_q (q prime).
    auto inv_mod = [&](int a) {
        for (int x = 1; x < q; ++x)
            if (a * x % q == 1) return x;
        return 0;
    };
    std::vector<std::array<int, 4>> basis;
    std::size_t done = 0;
    for (int col = 0; col < 4; ++col) {
        std::size_t pivot = done;
        while (pivot < rows.size() && rows[pivot][col] == 0) ++pivot;
        if (pivot == rows.size()) continue;
        std::swap(rows[done], rows[pivot]);
        int f = inv_mod(rows[done][col]);
        for (int i = 0; i < 4; ++i) rows[done][i] = rows[done][i] * f % q;
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (r == done || rows[r][col] == 0) continue;
            int m = rows[r][col];
            for (int i = 0; i < 4; ++i)
                rows[r][i] = ((rows[r][i] - m * rows[done][i]) % q + q) % q;
        }
        ++done;
    }
    rows.resize(done);
    std::string out;
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (r) out += '.';
        for (int i = 0; i < 4; ++i) out += static_cast<char>('0' + rows[r][i]);
    }
    return out;
}

} // namespace

std::string SubspaceLattice::member_key(const std::vector<int>& members) const {
    std::string key;
    key.reserve(members.size());
    for (int v : members) key += static_cast<char>(v);
    return key;
}

SubspaceLattice SubspaceLattice::build(int q) {
    if (q != 2 && q != 3)
        throw CapacityError("subspace lattice supports q in {2,3}");
    SubspaceLattice sl;
    sl.q_ = q;
    sl.nvec_ = q * q * q * q;

    // All subspaces, level by level.
    std::set<std::vector<int>> seen;
    std::vector<std::vector<int>> levels[5];
    levels[0].push_back({0});
    seen.insert({0});
    for (int k = 0; k < 4; ++k) {
        for (const auto& mem : levels[k]) {
            for (int v = 1; v < sl.nvec_; ++v) {
                if (std::binary_search(mem.begin(), mem.end(), v)) continue;
                std::vector<int> gens = mem;
                gens.push_back(v);
                std::vector<int> bigger = span_members(gens, q, sl.nvec_, raw_add, raw_smul);
                if (seen.insert(bigger).second) levels[k + 1].push_back(bigger);
            }
        }
    }

    // Canonical element order: by (rank, member list).
    for (int k = 0; k <= 4; ++k) {
        std::sort(levels[k].begin(), levels[k].end());
        for (auto& mem : levels[k]) {
            sl.lat_.rank.push_back(k);
            sl.members_.push_back(mem);
        }
    }
    const int m = sl.lat_.size();
    for (int e = 0; e < m; ++e)
        sl.member_key_to_elem_.emplace(sl.member_key(sl.members_[e]), e);

    sl.lat_.bottom = 0;
    sl.lat_.top = m - 1;
    sl.lat_.labels.resize(m);
    for (int e = 0; e < m; ++e) sl.lat_.labels[e] = rref_label(sl.members_[e], q);
    for (int e = 0; e < m; ++e)
        if (sl.lat_.rank[e] == 1) {
            sl.lat_.atoms.push_back(e);
            sl.atom_rep_.push_back(sl.members_[e][1]);  // members_[e][0] == 0
        }

    sl.lat_.join_tab.assign(m, std::vector<int>(m));
    sl.lat_.meet_tab.assign(m, std::vector<int>(m));
    for (int a = 0; a < m; ++a) {
        for (int b = a; b < m; ++b) {
            std::vector<int> uni = sl.members_[a];
            uni.insert(uni.end(), sl.members_[b].begin(), sl.members_[b].end());
            std::vector<int> jm = span_members(uni, q, sl.nvec_, raw_add, raw_smul);
            std::vector<int> mm;
            std::set_intersection(sl.members_[a].begin(), sl.members_[a].end(),
                                  sl.members_[b].begin(), sl.members_[b].end(),
                                  std::back_inserter(mm));
            int j = sl.member_key_to_elem_.at(sl.member_key(jm));
            int mt = sl.member_key_to_elem_.at(sl.member_key(mm));
            sl.lat_.join_tab[a][b] = sl.lat_.join_tab[b][a] = j;
            sl.lat_.meet_tab[a][b] = sl.lat_.meet_tab[b][a] = mt;
        }
    }
    fill_atoms_below(sl.lat_);
    return sl;
}

int SubspaceLattice::vec_add(int a, int b) const { return raw_add(a, b, q_); }
int SubspaceLattice::vec_scale(int c, int a) const { return raw_smul(c, a, q_); }

int SubspaceLattice::mat_apply(const Mat4& m, int v) const {
    int d[4], r[4];
    for (int i = 0; i < 4; ++i) d[i] = vdigit(v, i, q_);
    for (int j = 0; j < 4; ++j) {
        int acc = 0;
        for (int i = 0; i < 4; ++i) acc += m[j][i] * d[i];
        r[j] = acc % q_;
    }
    return vcompose(r, q_);
}

Mat4 SubspaceLattice::mat_identity() const {
    Mat4 m{};
    for (int i = 0; i < 4; ++i) m[i][i] = 1;
    return m;
}

Mat4 SubspaceLattice::mat_mul(const Mat4& a, const Mat4& b) const {
    Mat4 r{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            int acc = 0;
            for (int k = 0; k < 4; ++k) acc += a[i][k] * b[k][j];
            r[i][j] = static_cast<std::uint8_t>(acc % q_);
        }
    return r;
}

bool SubspaceLattice::mat_invert(const Mat4& m, Mat4& out) const {
    int a[4][8];
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            a[i][j] = m[i][j] % q_;
            a[i][j + 4] = (i == j) ? 1 : 0;
        }
    auto inv_mod = [&](int x) {
        for (int y = 1; y < q_; ++y)
            if (x * y % q_ == 1) return y;
        return 0;
    };
    int row = 0;
    for (int col = 0; col < 4; ++col) {
        int pivot = row;
        while (pivot < 4 && a[pivot][col] == 0) ++pivot;
        if (pivot == 4) return false;
        for (int j = 0; j < 8; ++j) std::swap(a[row][j], a[pivot][j]);
        int f = inv_mod(a[row][col]);
        for (int j = 0; j < 8; ++j) a[row][j] = a[row][j] * f % q_;
        for (int r = 0; r < 4; ++r) {
            if (r == row || a[r][col] == 0) continue;
            int fac = a[r][col];
            for (int j = 0; j < 8; ++j)
                a[r][j] = ((a[r][j] - fac * a[row][j]) % q_ + q_) % q_;
        }
        ++row;
    }
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) out[i][j] = static_cast<std::uint8_t>(a[i][j + 4]);
    return true;
}

int SubspaceLattice::map_element(const Mat4& m, int elem) const {
    std::vector<int> img;
    img.reserve(members_[elem].size());
    for (int v : members_[elem]) img.push_back(mat_apply(m, v));
    std::sort(img.begin(), img.end());
    auto it = member_key_to_elem_.find(member_key(img));
    if (it == member_key_to_elem_.end())
        throw ValidationError("matrix image is not a subspace: matrix not invertible?");
    return it->second;
}

int SubspaceLattice::atom_of_vector(int v) const {
    if (v <= 0 || v >= nvec_)
        throw ValidationError("atom_of_vector: not a nonzero vector");
    for (int ai = 0; ai < static_cast<int>(atom_rep_.size()); ++ai) {
        int e = lat_.atoms[ai];
        if (std::binary_search(members_[e].begin(), members_[e].end(), v)) return ai;
    }
    throw ConsistencyError("nonzero vector lies in no atom");
}

long long SubspaceLattice::gl_order() const {
    long long n = nvec_;
    long long p1 = 1, qq = 1;
    long long total = 1;
    (void)p1;
    for (int i = 0; i < 4; ++i) {
        total *= (n - qq);
        qq *= q_;
    }
    return total;
}

std::vector<Mat4> SubspaceLattice::enumerate_gl() const {
    if (q_ != 2)
        throw CapacityError("exact GL enumeration is limited to q=2");
    std::vector<Mat4> out;
    out.reserve(static_cast<std::size_t>(gl_order()));
    // Choose rows one at a time, skipping the span of the earlier rows.
    std::vector<int> rows(4);
    std::function<void(int, const std::vector<int>&)> rec =
        [&](int k, const std::vector<int>& span) {
            if (k == 4) {
                Mat4 m{};
                for (int i = 0; i < 4; ++i)
                    for (int j = 0; j < 4; ++j)
                        m[i][j] = static_cast<std::uint8_t>(vdigit(rows[i], j, q_));
                out.push_back(m);
                return;
            }
            for (int v = 1; v < nvec_; ++v) {
                if (std::binary_search(span.begin(), span.end(), v)) continue;
                rows[k] = v;
                std::vector<int> gens = span;
                gens.push_back(v);
                rec(k + 1, span_members(gens, q_, nvec_, raw_add, raw_smul));
            }
        };
    rec(0, {0});
    return out;
}

Mat4 SubspaceLattice::random_invertible(Rng& rng) const {
    for (;;) {
        Mat4 m;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j)
                m[i][j] = static_cast<std::uint8_t>(rng.below(q_));
        Mat4 inv;
        if (mat_invert(m, inv)) return m;
    }
}

int SubspaceLattice::parse_label(const std::string& token) const {
    if (token == "0") return lat_.bottom;
    std::vector<int> gens;
    int d[4];
    int pos = 0;
    for (std::size_t i = 0; i <= token.size(); ++i) {
        if (i == token.size() || token[i] == '.') {
            if (pos != 4) return -1;
            gens.push_back(vcompose(d, q_));
            pos = 0;
            continue;
        }
        char c = token[i];
        if (c < '0' || c >= '0' + q_) return -1;
        if (pos >= 4) return -1;
        d[pos++] = c - '0';
    }
    if (gens.empty()) return -1;
    std::vector<int> mem = span_members(gens, q_, nvec_, raw_add, raw_smul);
    auto it = member_key_to_elem_.find(member_key(mem));
    return it == member_key_to_elem_.end() ? -1 : it->second;
}

// --- order complex -------------------------------------------------------

OrderComplex order_complex(const GeometricLattice& l) {
    OrderComplex oc;
    oc.lattice = l;
    oc.vertex_of_element.assign(l.size(), -1);
    for (int e = 0; e < l.size(); ++e) {
        if (e == l.bottom || e == l.top) continue;
        oc.vertex_of_element[e] = static_cast<int>(oc.element_of_vertex.size());
        oc.element_of_vertex.push_back(e);
    }
    if (oc.element_of_vertex.empty())
        throw ValidationError("order complex: no proper elements");

    // All chains of proper elements; from_facets keeps the maximal ones.
    std::vector<std::vector<VertexId>> chains;
    std::vector<int> chain;
    std::function<void(int)> extend = [&](int last) {
        std::vector<VertexId> ids;
        ids.reserve(chain.size());
        for (int e : chain) ids.push_back(oc.vertex_of_element[e]);
        chains.push_back(std::move(ids));
        for (int e = last + 1; e < l.size(); ++e) {
            if (e == l.bottom || e == l.top) continue;
            if (!l.leq(chain.back(), e) || e == chain.back()) continue;
            chain.push_back(e);
            extend(e);
            chain.pop_back();
        }
    };
    for (int e = 0; e < l.size(); ++e) {
        if (e == l.bottom || e == l.top) continue;
        chain = {e};
        extend(e);
    }
    oc.complex = SimplicialComplex::from_facets(chains);
    std::vector<std::string> labels;
    labels.reserve(oc.element_of_vertex.size());
    for (int e : oc.element_of_vertex) labels.push_back(l.labels[e]);
    oc.complex.set_labels(std::move(labels));
    return oc;
}

// --- orderings -----------------------------------------------------------

AtomOrdering ordering_from_matrix(const SubspaceLattice& sl, const Mat4& s) {
    Mat4 sinv;
    if (!sl.mat_invert(s, sinv))
        throw ValidationError("ordering_from_matrix: matrix is not invertible");
    const auto& atoms = sl.lattice().atoms;
    AtomOrdering o;
    o.rank_of_atom.resize(atoms.size());
    for (int ai = 0; ai < static_cast<int>(atoms.size()); ++ai)
        o.rank_of_atom[ai] = sl.atom_of_vector(sl.mat_apply(sinv, sl.atom_rep(ai)));
    return o;
}

OrderingScheme gl_exact_scheme(const SubspaceLattice& sl) {
    OrderingScheme scheme;
    scheme.mode = "exact";
    for (const Mat4& s : sl.enumerate_gl())
        scheme.orders.push_back(ordering_from_matrix(sl, s));
    return scheme;
}

OrderingScheme gl_sampled_scheme(const SubspaceLattice& sl, long long samples,
                                 std::uint64_t seed) {
    if (samples < 1) throw ValidationError("sampled scheme: samples must be >= 1");
    OrderingScheme scheme;
    scheme.mode = "sampled";
    scheme.seed = seed;
    Rng rng(seed);
    for (long long i = 0; i < samples; ++i)
        scheme.orders.push_back(ordering_from_matrix(sl, sl.random_invertible(rng)));
    return scheme;
}

int min_atom(const OrderComplex& oc, const AtomOrdering& o) {
    if (o.rank_of_atom.size() != oc.lattice.atoms.size())
        throw ValidationError("ordering does not match the lattice atom count");
    int best = 0;
    for (int ai = 1; ai < static_cast<int>(o.rank_of_atom.size()); ++ai)
        if (o.rank_of_atom[ai] < o.rank_of_atom[best]) best = ai;
    return best;
}

int min_atom_below(const OrderComplex& oc, const AtomOrdering& o, int elem) {
    const auto& below = oc.lattice.atoms_below[elem];
    if (below.empty())
        throw ConsistencyError("element has no atom below it");
    int best = below[0];
    for (std::size_t i = 1; i < below.size(); ++i)
        if (o.rank_of_atom[below[i]] < o.rank_of_atom[best]) best = below[i];
    return best;
}

Cochain0 psi_correction(const OrderComplex& oc, const Cochain1& phi,
                        const AtomOrdering& o) {
    const GeometricLattice& l = oc.lattice;
    if (l.rank[l.top] < 3)
        throw ValidationError("psi correction needs a lattice of rank >= 3");
    const GroupAction& g = phi.group();
    const int a2 = l.atom_element(min_atom(oc, o));
    std::vector<int> values(oc.element_of_vertex.size(), g.identity());
    for (std::size_t vtx = 0; vtx < oc.element_of_vertex.size(); ++vtx) {
        int u = oc.element_of_vertex[vtx];
        int b = l.atom_element(min_atom_below(oc, o, u));
        int j = l.join(a2, b);
        int path[4] = {a2, j, b, u};
        int acc = g.identity();
        for (int step = 0; step < 3; ++step) {
            if (path[step] == path[step + 1]) continue;
            acc = g.mul(acc, phi.at(oc.vertex_of_element[path[step]],
                                    oc.vertex_of_element[path[step + 1]]));
        }
        values[vtx] = acc;
    }
    return Cochain0(oc.complex, g, std::move(values));
}

} // namespace coverlab
