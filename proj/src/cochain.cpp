#include "coverlab/cochain.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

#include "coverlab/errors.hpp"

namespace coverlab {

Cochain0::Cochain0(const SimplicialComplex& x, const GroupAction& g, std::vector<int> values)
    : x_(&x), g_(&g), val_(std::move(values)) {
    if (static_cast<long long>(val_.size()) != x.num_vertices())
        throw ValidationError("cochain0: value count does not match vertex count");
}

Cochain0 Cochain0::pointwise_inverse() const {
    std::vector<int> v(val_.size());
    for (std::size_t i = 0; i < val_.size(); ++i) v[i] = g_->inv(val_[i]);
    return Cochain0(*x_, *g_, std::move(v));
}

Cochain1::Cochain1(const SimplicialComplex& x, const GroupAction& g, std::vector<int> edge_values)
    : x_(&x), g_(&g), val_(std::move(edge_values)) {
    std::size_t edges = x.dim() >= 1 ? x.faces(1).size() : 0;
    if (val_.size() != edges)
        throw ValidationError("cochain1: value count does not match edge count");
}

int Cochain1::at(VertexId u, VertexId v) const {
    int e = x_->edge_index(std::min(u, v), std::max(u, v));
    if (e < 0) throw ValidationError("cochain1: {u,v} is not an edge");
    return u < v ? val_[e] : g_->inv(val_[e]);
}

Cochain1 d0(const Cochain0& psi) {
    const SimplicialComplex& x = psi.complex();
    const GroupAction& g = psi.group();
    Cochain1 out(x, g);
    if (x.dim() < 1) return out;
    const auto& edges = x.faces(1);
    for (int e = 0; e < static_cast<int>(edges.size()); ++e) {
        int pu = psi.at_vertex(edges[e][0]);
        int pv = psi.at_vertex(edges[e][1]);
        out.set_edge(e, g.mul(pu, g.inv(pv)));
    }
    return out;
}

TriangleDefect d1(const Cochain1& phi) {
    const SimplicialComplex& x = phi.complex();
    const GroupAction& g = phi.group();
    TriangleDefect out;
    if (x.dim() < 2) return out;
    const int nt = static_cast<int>(x.faces(2).size());
    out.value.resize(nt);
    for (int ti = 0; ti < nt; ++ti) {
        const auto& e = x.triangle_edges(ti);
        // phi(u,v) phi(v,w) phi(w,u) on the canonical order u<v<w
        int v = g.mul(phi.at_edge(e[0]), g.mul(phi.at_edge(e[1]), g.inv(phi.at_edge(e[2]))));
        out.value[ti] = v;
        if (!g.is_identity(v)) out.violated.push_back(ti);
    }
    return out;
}

bool is_cocycle(const Cochain1& phi) {
    return d1(phi).violated.empty();
}

Cochain1 act(const Cochain0& psi, const Cochain1& phi) {
    const SimplicialComplex& x = phi.complex();
    const GroupAction& g = phi.group();
    Cochain1 out(x, g);
    if (x.dim() < 1) return out;
    const auto& edges = x.faces(1);
    for (int e = 0; e < static_cast<int>(edges.size()); ++e) {
        int pu = psi.at_vertex(edges[e][0]);
        int pv = psi.at_vertex(edges[e][1]);
        out.set_edge(e, g.mul(pu, g.mul(phi.at_edge(e), g.inv(pv))));
    }
    return out;
}

Rat norm1(const Cochain1& phi) {
    const SimplicialComplex& x = phi.complex();
    if (x.dim() < 1) return Rat(0);
    long long num = 0;
    for (std::size_t e = 0; e < phi.values().size(); ++e)
        if (!phi.group().is_identity(phi.at_edge(static_cast<int>(e))))
            num += x.top_count(1, static_cast<int>(e));
    return Rat(num, x.weight_denominator(1));
}

Rat d1_norm(const Cochain1& phi) {
    const SimplicialComplex& x = phi.complex();
    if (x.dim() < 2) return Rat(0);
    TriangleDefect td = d1(phi);
    long long num = 0;
    for (int ti : td.violated) num += x.top_count(2, ti);
    return Rat(num, x.weight_denominator(2));
}

Rat dist1(const Cochain1& a, const Cochain1& b) {
    const SimplicialComplex& x = a.complex();
    if (!x.same_shape_as(b.complex()) || a.group().order() != b.group().order())
        throw ValidationError("dist1: cochains live on different complexes or groups");
    if (x.dim() < 1) return Rat(0);
    long long num = 0;
    for (std::size_t e = 0; e < a.values().size(); ++e)
        if (a.values()[e] != b.values()[e]) num += x.top_count(1, static_cast<int>(e));
    return Rat(num, x.weight_denominator(1));
}

CochainNorms cochain_norms(const Cochain1& phi) {
    const SimplicialComplex& x = phi.complex();
    CochainNorms out;
    long long enum_ = 0;
    for (std::size_t e = 0; e < phi.values().size(); ++e)
        if (!phi.group().is_identity(phi.at_edge(static_cast<int>(e)))) {
            out.support_edges.push_back(static_cast<int>(e));
            enum_ += x.top_count(1, static_cast<int>(e));
        }
    out.norm = x.dim() >= 1 ? Rat(enum_, x.weight_denominator(1)) : Rat(0);
    if (x.dim() >= 2) {
        TriangleDefect td = d1(phi);
        long long tnum = 0;
        for (int ti : td.violated) tnum += x.top_count(2, ti);
        out.support_triangles = td.violated;
        out.d1norm = Rat(tnum, x.weight_denominator(2));
    } else {
        out.d1norm = Rat(0);
    }
    return out;
}

int holonomy(const Cochain1& phi, const std::vector<VertexId>& loop) {
    const GroupAction& g = phi.group();
    if (loop.size() < 2) return g.identity();
    int acc = g.identity();
    for (std::size_t i = 0; i + 1 < loop.size(); ++i) {
        if (loop[i] == loop[i + 1]) continue;
        acc = g.mul(acc, phi.at(loop[i], loop[i + 1]));
    }
    return acc;
}

namespace {

// Edge assignment order that adds vertices one at a time, so each edge to a
// new vertex closes its triangles with already-assigned edges immediately.
std::vector<int> dfs_edge_order(const SimplicialComplex& x) {
    const auto& edges = x.faces(1);
    std::vector<int> order(edges.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        auto ka = std::make_pair(edges[a][1], edges[a][0]);
        auto kb = std::make_pair(edges[b][1], edges[b][0]);
        return ka < kb;
    });
    return order;
}

struct TriangleCloser {
    int role;      // which of (uv, vw, uw) is being assigned
    int e_a, e_b;  // the two already-assigned edge indexes
};

// For each position in the assignment order, the triangles completed there.
std::vector<std::vector<TriangleCloser>> closers_by_position(
    const SimplicialComplex& x, const std::vector<int>& order) {
    std::vector<int> pos_of_edge(x.faces(1).size());
    for (int p = 0; p < static_cast<int>(order.size()); ++p) pos_of_edge[order[p]] = p;
    std::vector<std::vector<TriangleCloser>> out(order.size());
    if (x.dim() < 2) return out;
    for (int ti = 0; ti < static_cast<int>(x.faces(2).size()); ++ti) {
        const auto& te = x.triangle_edges(ti);
        int p0 = pos_of_edge[te[0]], p1 = pos_of_edge[te[1]], p2 = pos_of_edge[te[2]];
        int pmax = std::max({p0, p1, p2});
        TriangleCloser c;
        if (pmax == p0) { c.role = 0; c.e_a = te[1]; c.e_b = te[2]; }
        else if (pmax == p1) { c.role = 1; c.e_a = te[0]; c.e_b = te[2]; }
        else { c.role = 2; c.e_a = te[0]; c.e_b = te[1]; }
        out[pmax].push_back(c);
    }
    return out;
}

// Value forced on the closing edge by d1 == 1 on (u<v<w): m(uv) m(vw) = m(uw).
int forced_value(const GroupAction& g, const TriangleCloser& c,
                 const std::vector<int>& val) {
    switch (c.role) {
        case 0: return g.mul(val[c.e_b], g.inv(val[c.e_a]));  // m(uv) = m(uw) m(vw)^-1
        case 1: return g.mul(g.inv(val[c.e_a]), val[c.e_b]);  // m(vw) = m(uv)^-1 m(uw)
        default: return g.mul(val[c.e_a], val[c.e_b]);        // m(uw) = m(uv) m(vw)
    }
}

// Streams every cocycle's edge-value vector, in DFS discovery order.
void for_each_cocycle(const SimplicialComplex& x, const GroupAction& g,
                      const SearchLimits& limits,
                      const std::function<void(const std::vector<int>&)>& fn) {
    if (x.dim() < 1) {
        fn({});
        return;
    }
    const int ne = static_cast<int>(x.faces(1).size());
    std::vector<int> order = dfs_edge_order(x);
    auto closers = closers_by_position(x, order);

    std::vector<int> val(ne, g.identity());
    long long states = 0;

    struct Frame { int next_candidate; };
    std::vector<Frame> stack(ne + 1);
    int depth = 0;
    stack[0] = {0};
    while (depth >= 0) {
        if (depth == ne) {
            fn(val);
            --depth;
            continue;
        }
        Frame& fr = stack[depth];
        int e = order[depth];
        const auto& cls = closers[depth];
        if (!cls.empty()) {
            if (fr.next_candidate > 0) { --depth; continue; }
            fr.next_candidate = 1;
            if (++states > limits.max_states)
                throw CapacityError("cocycle enumeration exceeds the state guard");
            int fv = forced_value(g, cls[0], val);
            bool ok = true;
            for (std::size_t i = 1; i < cls.size(); ++i)
                if (forced_value(g, cls[i], val) != fv) { ok = false; break; }
            if (!ok) { --depth; continue; }
            val[e] = fv;
            ++depth;
            stack[depth] = {0};
            continue;
        }
        if (fr.next_candidate >= g.order()) { --depth; continue; }
        if (++states > limits.max_states)
            throw CapacityError("cocycle enumeration exceeds the state guard");
        val[e] = fr.next_candidate++;
        ++depth;
        stack[depth] = {0};
    }
}

// Streams d0(psi) over psi pinned to the identity on one vertex per
// connected component; hits each coboundary exactly once.
void for_each_coboundary(const SimplicialComplex& x, const GroupAction& g,
                         const SearchLimits& limits,
                         const std::function<void(const std::vector<int>&)>& fn) {
    const int nv = static_cast<int>(x.num_vertices());
    std::vector<int> comp(nv, -1);
    int ncomp = 0;
    for (int start = 0; start < nv; ++start) {
        if (comp[start] >= 0) continue;
        comp[start] = ncomp;
        std::vector<int> bfs = {start};
        while (!bfs.empty()) {
            int p = bfs.back();
            bfs.pop_back();
            if (x.dim() >= 1) {
                VertexId pv = x.vertex_at(p);
                for (const Simplex& e : x.faces(1)) {
                    if (!e.contains(pv)) continue;
                    VertexId other = e[0] == pv ? e[1] : e[0];
                    int q = x.vertex_position(other);
                    if (comp[q] < 0) { comp[q] = ncomp; bfs.push_back(q); }
                }
            }
        }
        ++ncomp;
    }
    std::vector<int> free_pos;
    {
        std::vector<bool> seen_comp(ncomp, false);
        for (int p = 0; p < nv; ++p) {
            if (!seen_comp[comp[p]]) seen_comp[comp[p]] = true;
            else free_pos.push_back(p);
        }
    }

    double total = 1;
    for (std::size_t i = 0; i < free_pos.size(); ++i) {
        total *= g.order();
        if (total > static_cast<double>(limits.max_states))
            throw CapacityError("coboundary enumeration exceeds the state guard");
    }
    long long count = 1;
    for (std::size_t i = 0; i < free_pos.size(); ++i) count *= g.order();

    std::vector<int> psi(nv, g.identity());
    for (long long idx = 0; idx < count; ++idx) {
        long long rem = idx;
        for (std::size_t i = 0; i < free_pos.size(); ++i) {
            psi[free_pos[i]] = static_cast<int>(rem % g.order());
            rem /= g.order();
        }
        fn(d0(Cochain0(x, g, psi)).values());
    }
}

} // namespace

std::vector<std::vector<int>> enumerate_cocycles(const SimplicialComplex& x,
                                                 const GroupAction& g,
                                                 const SearchLimits& limits) {
    std::vector<std::vector<int>> out;
    for_each_cocycle(x, g, limits, [&](const std::vector<int>& v) { out.push_back(v); });
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<std::vector<int>> enumerate_coboundaries(const SimplicialComplex& x,
                                                     const GroupAction& g,
                                                     const SearchLimits& limits) {
    std::vector<std::vector<int>> out;
    for_each_coboundary(x, g, limits, [&](const std::vector<int>& v) { out.push_back(v); });
    std::sort(out.begin(), out.end());
    return out;
}

CosystoleResult cosystolic_norm_exact(const Cochain1& phi, bool simply_connected,
                                      const SearchLimits& limits) {
    const SimplicialComplex& x = phi.complex();
    const GroupAction& g = phi.group();

    long long best_num = -1;
    std::vector<int> best;
    long long scanned = 0;
    auto consider = [&](const std::vector<int>& z) {
        ++scanned;
        long long num = 0;
        for (std::size_t e = 0; e < z.size(); ++e)
            if (z[e] != phi.values()[e]) num += x.top_count(1, static_cast<int>(e));
        if (best_num < 0 || num < best_num || (num == best_num && z < best)) {
            best_num = num;
            best = z;
        }
    };
    if (simply_connected)
        for_each_coboundary(x, g, limits, consider);
    else
        for_each_cocycle(x, g, limits, consider);

    if (scanned == 0) throw ConsistencyError("Z^1 enumeration returned nothing");
    return CosystoleResult{Rat(best_num, x.dim() >= 1 ? x.weight_denominator(1) : 1),
                           Cochain1(x, g, best), scanned};
}

bool orbit_equal(const Cochain1& phi1, const Cochain1& phi2, const SearchLimits& limits) {
    const SimplicialComplex& x = phi1.complex();
    const GroupAction& g = phi1.group();
    if (!x.same_shape_as(phi2.complex()))
        throw ValidationError("orbit_equal: different complexes");
    const long long nv = x.num_vertices();
    double total = 1;
    for (long long i = 0; i < nv; ++i) {
        total *= g.order();
        if (total > static_cast<double>(limits.max_states))
            throw CapacityError("orbit search exceeds the state guard");
    }
    long long count = 1;
    for (long long i = 0; i < nv; ++i) count *= g.order();
    std::vector<int> psi(nv, g.identity());
    for (long long idx = 0; idx < count; ++idx) {
        long long rem = idx;
        for (long long i = 0; i < nv; ++i) {
            psi[i] = static_cast<int>(rem % g.order());
            rem /= g.order();
        }
        if (act(Cochain0(x, g, psi), phi1) == phi2) return true;
    }
    return false;
}

} // namespace coverlab
