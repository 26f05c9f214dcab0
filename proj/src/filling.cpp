#include <algorithm>
#include <chrono>
#include <map>
#include <set>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "coverlab/errors.hpp"
#include "coverlab/lattice.hpp"

namespace coverlab {

namespace {

int resolve_threads(int threads) {
#ifdef _OPENMP
    if (threads > 0) return threads;
    return omp_get_max_threads();
#else
    (void)threads;
    return 1;
#endif
}

} // namespace

bool collapses_to_point(const std::vector<std::array<int, 3>>& triangles,
                        const std::vector<std::array<int, 2>>& edges) {
    // Local dense relabeling.
    std::vector<int> verts;
    for (const auto& t : triangles) verts.insert(verts.end(), t.begin(), t.end());
    for (const auto& e : edges) verts.insert(verts.end(), e.begin(), e.end());
    std::sort(verts.begin(), verts.end());
    verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
    if (verts.empty()) return false;
    auto vid = [&](int x) {
        return static_cast<int>(std::lower_bound(verts.begin(), verts.end(), x) -
                                verts.begin());
    };

    std::set<std::pair<int, int>> edge_set;
    auto add_edge = [&](int a, int b) {
        edge_set.emplace(std::min(vid(a), vid(b)), std::max(vid(a), vid(b)));
    };
    for (const auto& e : edges) add_edge(e[0], e[1]);
    std::vector<std::array<int, 3>> tris;
    for (const auto& t : triangles) {
        add_edge(t[0], t[1]);
        add_edge(t[1], t[2]);
        add_edge(t[0], t[2]);
        std::array<int, 3> lt = {vid(t[0]), vid(t[1]), vid(t[2])};
        std::sort(lt.begin(), lt.end());
        tris.push_back(lt);
    }

    // Collapse triangles through free edges.
    std::vector<char> tri_alive(tris.size(), 1);
    auto tri_edges_of = [&](const std::array<int, 3>& t) {
        return std::array<std::pair<int, int>, 3>{
            std::make_pair(t[0], t[1]), std::make_pair(t[1], t[2]),
            std::make_pair(t[0], t[2])};
    };
    bool progress = true;
    int alive = static_cast<int>(tris.size());
    while (alive > 0 && progress) {
        progress = false;
        std::map<std::pair<int, int>, std::vector<int>> incident;
        for (std::size_t i = 0; i < tris.size(); ++i) {
            if (!tri_alive[i]) continue;
            for (const auto& e : tri_edges_of(tris[i])) incident[e].push_back(static_cast<int>(i));
        }
        for (const auto& e : edge_set) {
            auto it = incident.find(e);
            if (it == incident.end() || it->second.size() != 1) continue;
            tri_alive[it->second[0]] = 0;
            --alive;
            edge_set.erase(e);
            progress = true;
            break;
        }
    }
    if (alive > 0) return false;

    // The 1-skeleton that remains must collapse to a point: it is a tree.
    std::vector<int> degree(verts.size(), 0);
    for (const auto& e : edge_set) {
        ++degree[e.first];
        ++degree[e.second];
    }
    bool progress1 = true;
    std::size_t edges_left = edge_set.size();
    std::vector<char> vertex_alive(verts.size(), 1);
    while (edges_left > 0 && progress1) {
        progress1 = false;
        for (auto it = edge_set.begin(); it != edge_set.end(); ++it) {
            int a = it->first, b = it->second;
            if (degree[a] == 1 || degree[b] == 1) {
                int leaf = degree[a] == 1 ? a : b;
                vertex_alive[leaf] = 0;
                --degree[a];
                --degree[b];
                edge_set.erase(it);
                --edges_left;
                progress1 = true;
                break;
            }
        }
    }
    if (edges_left > 0) return false;
    int remaining = 0;
    for (char v : vertex_alive) remaining += v;
    return remaining == 1;
}

FillingDisc filling(const OrderComplex& oc, const AtomOrdering& o, int edge_index) {
    const GeometricLattice& l = oc.lattice;
    if (l.rank[l.top] < 4)
        throw ValidationError("filling discs need a lattice of rank >= 4");
    const Simplex& e = oc.complex.faces(1)[edge_index];
    const int v0 = oc.element_of_vertex[e[0]];
    const int v1 = oc.element_of_vertex[e[1]];

    const int a0 = l.atom_element(min_atom_below(oc, o, v0));
    const int a1 = l.atom_element(min_atom_below(oc, o, v1));
    const int a2 = l.atom_element(min_atom(oc, o));
    const int j01 = l.join(a0, a1);
    const int j02 = l.join(a0, a2);
    const int j12 = l.join(a1, a2);
    const int w = l.join(j01, a2);

    FillingDisc disc;
    disc.cycle = {a2, j02, a0, v0, v1, a1, j12, a2};

    const std::array<std::array<int, 3>, 9> raw = {{{a1, j12, w},
                                                    {a2, j12, w},
                                                    {a2, j02, w},
                                                    {a0, j02, w},
                                                    {a0, j01, w},
                                                    {a1, j01, w},
                                                    {a0, j01, v1},
                                                    {a1, j01, v1},
                                                    {a0, v0, v1}}};
    std::set<std::array<int, 3>> kept;
    for (const auto& t : raw) {
        std::array<int, 3> s = t;
        std::sort(s.begin(), s.end(),
                  [&](int a, int b) { return l.rank[a] < l.rank[b]; });
        if (s[0] == s[1] || s[1] == s[2] || s[0] == s[2]) continue;  // merged
        if (!l.leq(s[0], s[1]) || !l.leq(s[1], s[2])) continue;      // non-chain
        kept.insert(s);
    }
    disc.triangles.assign(kept.begin(), kept.end());
    if (disc.triangles.size() > 9)
        throw ConsistencyError("filling disc exceeds 9 triangles");

    // Verify every kept triangle really is a chain of proper elements.
    for (const auto& t : disc.triangles) {
        for (int x : t)
            if (x == l.bottom || x == l.top)
                throw ConsistencyError("filling triangle leaves the proper part");
        if (!(l.leq(t[0], t[1]) && l.leq(t[1], t[2]) && l.leq(t[0], t[2])))
            throw ConsistencyError("filling triangle is not a chain");
    }

    std::set<std::array<int, 2>> edge_set;
    auto push_edge = [&](int a, int b) {
        if (a == b) return;
        if (l.rank[a] > l.rank[b]) std::swap(a, b);
        if (!l.leq(a, b)) throw ConsistencyError("filling edge is not a chain");
        edge_set.insert({a, b});
    };
    for (const auto& t : disc.triangles) {
        push_edge(t[0], t[1]);
        push_edge(t[1], t[2]);
        push_edge(t[0], t[2]);
    }
    for (int i = 0; i < 7; ++i) push_edge(disc.cycle[i], disc.cycle[i + 1]);
    disc.edges.assign(edge_set.begin(), edge_set.end());

    if (!collapses_to_point(disc.triangles, disc.edges))
        throw ConsistencyError("filling disc does not collapse to a point");
    return disc;
}

namespace {

// Triangle index of a chain triple within the order complex.
int triangle_index_of(const OrderComplex& oc, const std::array<int, 3>& t) {
    Simplex s({oc.vertex_of_element[t[0]], oc.vertex_of_element[t[1]],
               oc.vertex_of_element[t[2]]});
    int idx = oc.complex.face_index(s);
    if (idx < 0) throw ConsistencyError("filling triangle is not a face");
    return idx;
}

struct OrderScan {
    // b(s,u) per lattice element, a(s), ready for per-edge disc builds.
    std::vector<int> b_of_elem;
    int a_of_s = -1;
};

} // namespace

DeltaReport delta(const OrderComplex& oc, const OrderingScheme& scheme,
                  int triangle_index) {
    const SimplicialComplex& cx = oc.complex;
    if (cx.dim() < 2) throw ValidationError("delta: the order complex has no triangles");
    if (triangle_index < 0 || triangle_index >= static_cast<int>(cx.faces(2).size()))
        throw ValidationError("delta: triangle index out of range");
    const long long d1den = cx.weight_denominator(1);
    const long long d2den = cx.weight_denominator(2);
    const Rat ctau = Rat(cx.top_count(2, triangle_index), d2den);

    DeltaReport rep;
    rep.mean = Rat(0);
    const int ne = static_cast<int>(cx.faces(1).size());
    for (std::size_t i = 0; i < scheme.orders.size(); ++i) {
        Rat ds(0);
        for (int e = 0; e < ne; ++e) {
            FillingDisc disc = filling(oc, scheme.orders[i], e);
            for (const auto& t : disc.triangles) {
                if (triangle_index_of(oc, t) == triangle_index) {
                    ds += Rat(cx.top_count(1, e), d1den) / ctau;
                    break;
                }
            }
        }
        rep.per_order.push_back(ds);
        rep.mean += scheme.weight(static_cast<int>(i)) * ds;
    }
    return rep;
}

namespace {

struct GammaAccum {
    std::vector<long long> int_acc;  // uniform weights
    std::vector<Rat> rat_acc;        // general weights
    long long memberships = 0;

    void init(int nt, bool uniform) {
        if (uniform) int_acc.assign(nt, 0);
        else rat_acc.assign(nt, Rat(0));
    }
    void merge(const GammaAccum& o) {
        memberships += o.memberships;
        for (std::size_t i = 0; i < int_acc.size(); ++i) int_acc[i] += o.int_acc[i];
        for (std::size_t i = 0; i < rat_acc.size(); ++i) rat_acc[i] += o.rat_acc[i];
    }
};

// One ordering's contribution: for every edge, every triangle of its disc
// picks up that edge's weight.
void gamma_scan_order(const OrderComplex& oc, const OrderingScheme& scheme, int i,
                      GammaAccum& acc) {
    const SimplicialComplex& cx = oc.complex;
    const long long d1den = cx.weight_denominator(1);
    const int ne = static_cast<int>(cx.faces(1).size());
    const bool uniform = scheme.uniform();
    for (int e = 0; e < ne; ++e) {
        FillingDisc disc = filling(oc, scheme.orders[i], e);
        for (const auto& t : disc.triangles) {
            int ti = triangle_index_of(oc, t);
            ++acc.memberships;
            if (uniform) acc.int_acc[ti] += cx.top_count(1, e);
            else acc.rat_acc[ti] += scheme.weight(i) * Rat(cx.top_count(1, e), d1den);
        }
    }
}

GammaTable gamma_finish(const OrderComplex& oc, const OrderingScheme& scheme,
                        const GammaAccum& acc, double wall_ms) {
    const SimplicialComplex& cx = oc.complex;
    const int nt = static_cast<int>(cx.faces(2).size());
    const long long d1den = cx.weight_denominator(1);
    const long long d2den = cx.weight_denominator(2);
    const long long n = static_cast<long long>(scheme.orders.size());
    GammaTable table;
    table.delta_mean.resize(nt);
    for (int ti = 0; ti < nt; ++ti) {
        Rat ctau(cx.top_count(2, ti), d2den);
        if (scheme.uniform())
            table.delta_mean[ti] = Rat(acc.int_acc[ti], d1den * n) / ctau;
        else
            table.delta_mean[ti] = acc.rat_acc[ti] / ctau;
    }
    table.gamma = Rat(0);
    for (const Rat& d : table.delta_mean) table.gamma = std::max(table.gamma, d);
    table.memberships = acc.memberships;
    table.orders = n;
    table.wall_ms = wall_ms;
    return table;
}

void gamma_validate(const OrderComplex& oc, const OrderingScheme& scheme) {
    if (oc.complex.dim() < 2)
        throw ValidationError("gamma: the order complex has no triangles");
    if (scheme.orders.empty())
        throw ValidationError("gamma: the ordering scheme is empty");
    if (!scheme.uniform()) {
        if (scheme.mu.size() != scheme.orders.size())
            throw ValidationError("gamma: weight count mismatch");
        Rat total(0);
        for (const Rat& w : scheme.mu) total += w;
        if (total != Rat(1))
            throw ValidationError("gamma: weights must sum to 1");
    }
}

} // namespace

GammaTable gamma_table_serial(const OrderComplex& oc, const OrderingScheme& scheme) {
    auto t0 = std::chrono::steady_clock::now();
    gamma_validate(oc, scheme);
    GammaAccum acc;
    acc.init(static_cast<int>(oc.complex.faces(2).size()), scheme.uniform());
    for (std::size_t i = 0; i < scheme.orders.size(); ++i)
        gamma_scan_order(oc, scheme, static_cast<int>(i), acc);
    double ms = std::chrono::duration<double, std::milli>(
                    std::chrono::steady_clock::now() - t0).count();
    return gamma_finish(oc, scheme, acc, ms);
}

GammaTable gamma_table(const OrderComplex& oc, const OrderingScheme& scheme,
                       int threads) {
    auto t0 = std::chrono::steady_clock::now();
    gamma_validate(oc, scheme);
    const int nt = static_cast<int>(oc.complex.faces(2).size());
    const long long n = static_cast<long long>(scheme.orders.size());
    GammaAccum acc;
    acc.init(nt, scheme.uniform());
#ifdef _OPENMP
#pragma omp parallel num_threads(resolve_threads(threads))
    {
        GammaAccum local;
        local.init(nt, scheme.uniform());
#pragma omp for schedule(dynamic, 16) nowait
        for (long long i = 0; i < n; ++i)
            gamma_scan_order(oc, scheme, static_cast<int>(i), local);
#pragma omp critical
        acc.merge(local);
    }
#else
    for (long long i = 0; i < n; ++i)
        gamma_scan_order(oc, scheme, static_cast<int>(i), acc);
#endif
    double ms = std::chrono::duration<double, std::milli>(
                    std::chrono::steady_clock::now() - t0).count();
    return gamma_finish(oc, scheme, acc, ms);
}

GammaCertificate gamma_certificate(const SubspaceLattice& sl, const OrderComplex& oc,
                                   const std::string& mode, long long samples,
                                   std::uint64_t seed, int threads) {
    OrderingScheme scheme;
    if (mode == "exact") {
        scheme = gl_exact_scheme(sl);
    } else if (mode == "sampled") {
        scheme = gl_sampled_scheme(sl, samples, seed);
    } else {
        throw ValidationError("gamma mode must be exact or sampled");
    }
    GammaTable table = gamma_table(oc, scheme, threads);
    GammaCertificate cert;
    cert.q = sl.q();
    cert.gamma = table.gamma;
    cert.h1_lower_bound = table.gamma == Rat(0) ? Rat(0) : Rat(1) / table.gamma;
    cert.mode = scheme.mode;
    cert.samples = table.orders;
    cert.seed = seed;
    cert.wall_ms = table.wall_ms;
    return cert;
}

// --- decoder ---------------------------------------------------------------

namespace {

struct DecodeScan {
    long long dist_num = -1;
    long long order = -1;
    long long claim_checks = 0;

    void consider(long long num, long long idx) {
        if (dist_num < 0 || num < dist_num || (num == dist_num && idx < order)) {
            dist_num = num;
            order = idx;
        }
    }
    void merge(const DecodeScan& o) {
        claim_checks += o.claim_checks;
        if (o.dist_num >= 0) consider(o.dist_num, o.order);
    }
};

long long decode_one_order(const OrderComplex& oc, const Cochain1& phi,
                           const AtomOrdering& o, long long* claim_checks) {
    const SimplicialComplex& cx = oc.complex;
    const GroupAction& g = phi.group();
    Cochain0 psi = psi_correction(oc, phi, o);
    Cochain1 corrected = act(psi, phi);

    long long num = 0;
    const int ne = static_cast<int>(cx.faces(1).size());
    for (int e = 0; e < ne; ++e) {
        if (g.is_identity(corrected.at_edge(e))) continue;
        num += cx.top_count(1, e);

        // Claim instance: the corrected value equals the cycle holonomy, and
        // some triangle of the disc must be violated.
        FillingDisc disc = filling(oc, o, e);
        std::vector<VertexId> loop;
        for (int i = 0; i < 8; ++i)
            loop.push_back(oc.vertex_of_element[disc.cycle[i]]);
        if (holonomy(phi, loop) != corrected.at_edge(e))
            throw ConsistencyError("cycle holonomy does not match the corrected edge");
        bool violated = false;
        for (const auto& t : disc.triangles) {
            VertexId x = oc.vertex_of_element[t[0]];
            VertexId y = oc.vertex_of_element[t[1]];
            VertexId z = oc.vertex_of_element[t[2]];
            int d = g.mul(phi.at(x, y), g.mul(phi.at(y, z), phi.at(z, x)));
            if (!g.is_identity(d)) { violated = true; break; }
        }
        if (!violated)
            throw ConsistencyError("nontrivial cycle holonomy with no violated triangle");
        ++*claim_checks;
    }

    // The candidate coboundary d0(psi^-1) sits at exactly this distance.
    Cochain1 candidate = d0(psi.pointwise_inverse());
    long long check = 0;
    for (int e = 0; e < ne; ++e)
        if (candidate.at_edge(e) != phi.at_edge(e)) check += cx.top_count(1, e);
    if (check != num)
        throw ConsistencyError("candidate distance does not match the corrected norm");
    return num;
}

DecodeResult decode_finish(const OrderComplex& oc, const Cochain1& phi,
                           const OrderingScheme& scheme, const DecodeScan& best,
                           double wall_ms) {
    if (best.dist_num < 0)
        throw ValidationError("decode: the ordering scheme is empty");
    Cochain0 psi = psi_correction(oc, phi, scheme.orders[best.order]);
    DecodeResult res{d0(psi.pointwise_inverse()),
                     Rat(best.dist_num, oc.complex.weight_denominator(1)),
                     best.order, best.claim_checks, wall_ms};
    return res;
}

} // namespace

DecodeResult decode_serial(const OrderComplex& oc, const Cochain1& phi,
                           const OrderingScheme& scheme) {
    auto t0 = std::chrono::steady_clock::now();
    DecodeScan best;
    for (std::size_t i = 0; i < scheme.orders.size(); ++i) {
        long long num = decode_one_order(oc, phi, scheme.orders[i], &best.claim_checks);
        best.consider(num, static_cast<long long>(i));
    }
    double ms = std::chrono::duration<double, std::milli>(
                    std::chrono::steady_clock::now() - t0).count();
    return decode_finish(oc, phi, scheme, best, ms);
}

DecodeResult decode(const OrderComplex& oc, const Cochain1& phi,
                    const OrderingScheme& scheme, int threads) {
    auto t0 = std::chrono::steady_clock::now();
    const long long n = static_cast<long long>(scheme.orders.size());
    DecodeScan best;
#ifdef _OPENMP
#pragma omp parallel num_threads(resolve_threads(threads))
    {
        DecodeScan local;
#pragma omp for schedule(dynamic, 4) nowait
        for (long long i = 0; i < n; ++i) {
            long long num =
                decode_one_order(oc, phi, scheme.orders[i], &local.claim_checks);
            local.consider(num, i);
        }
#pragma omp critical
        best.merge(local);
    }
#else
    for (long long i = 0; i < n; ++i) {
        long long num = decode_one_order(oc, phi, scheme.orders[i], &best.claim_checks);
        best.consider(num, i);
    }
#endif
    double ms = std::chrono::duration<double, std::milli>(
                    std::chrono::steady_clock::now() - t0).count();
    return decode_finish(oc, phi, scheme, best, ms);
}

} // namespace coverlab
