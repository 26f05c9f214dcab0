#include "coverlab/expansion.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <numeric>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "coverlab/errors.hpp"

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

struct RatioBest {
    long long num = -1;
    long long den = -1;
    long long index = -1;

    bool better(long long n, long long d, long long idx) const {
        if (num < 0) return true;
        __int128 lhs = static_cast<__int128>(n) * den;
        __int128 rhs = static_cast<__int128>(num) * d;
        if (lhs != rhs) return lhs < rhs;
        return idx < index;
    }
    void consider(long long n, long long d, long long idx) {
        if (better(n, d, idx)) { num = n; den = d; index = idx; }
    }
    void merge(const RatioBest& o) {
        if (o.num >= 0) consider(o.num, o.den, o.index);
    }
};

struct H1Context {
    const SimplicialComplex* x;
    const GroupAction* g;
    std::vector<std::vector<int>> cocycles;
    std::vector<long long> tri_cnt;
    std::vector<long long> edge_cnt;
    std::vector<int> free_edges;  // non-forest edges, canonical order
    long long total = 0;
    int ne = 0;
    int nt = 0;
};

// Spanning forest over the canonical edge order; the complement is the set
// of gauge-free edges.
std::vector<int> gauge_free_edges(const SimplicialComplex& x) {
    const auto& edges = x.faces(1);
    const int nv = static_cast<int>(x.num_vertices());
    std::vector<int> parent(nv);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int a) {
        while (parent[a] != a) a = parent[a] = parent[parent[a]];
        return a;
    };
    std::vector<int> free_edges;
    for (int e = 0; e < static_cast<int>(edges.size()); ++e) {
        int a = find(x.vertex_position(edges[e][0]));
        int b = find(x.vertex_position(edges[e][1]));
        if (a == b) free_edges.push_back(e);
        else parent[a] = b;
    }
    return free_edges;
}

H1Context h1_setup(const SimplicialComplex& x, const GroupAction& g,
                   const SearchLimits& limits) {
    if (x.dim() < 2)
        throw ValidationError("h1: the complex has no triangles");
    H1Context ctx;
    ctx.x = &x;
    ctx.g = &g;
    ctx.ne = static_cast<int>(x.faces(1).size());
    ctx.nt = static_cast<int>(x.faces(2).size());
    ctx.free_edges = gauge_free_edges(x);
    double total = 1;
    for (std::size_t i = 0; i < ctx.free_edges.size(); ++i) {
        total *= g.order();
        if (total > static_cast<double>(limits.max_states))
            throw CapacityError("h1 exceeds the enumeration guard");
    }
    ctx.total = 1;
    for (std::size_t i = 0; i < ctx.free_edges.size(); ++i) ctx.total *= g.order();
    ctx.cocycles = enumerate_cocycles(x, g, limits);
    ctx.tri_cnt.resize(ctx.nt);
    for (int ti = 0; ti < ctx.nt; ++ti) ctx.tri_cnt[ti] = x.top_count(2, ti);
    ctx.edge_cnt.resize(ctx.ne);
    for (int e = 0; e < ctx.ne; ++e) ctx.edge_cnt[e] = x.top_count(1, e);
    return ctx;
}

void decode_free(long long idx, int radix, const std::vector<int>& free_edges,
                 std::vector<int>& val) {
    for (int i = static_cast<int>(free_edges.size()) - 1; i >= 0; --i) {
        val[free_edges[i]] = static_cast<int>(idx % radix);
        idx /= radix;
    }
}

long long d1_numerator(const H1Context& ctx, const std::vector<int>& val) {
    const GroupAction& g = *ctx.g;
    long long num = 0;
    for (int ti = 0; ti < ctx.nt; ++ti) {
        const auto& te = ctx.x->triangle_edges(ti);
        int d = g.mul(val[te[0]], g.mul(val[te[1]], g.inv(val[te[2]])));
        if (!g.is_identity(d)) num += ctx.tri_cnt[ti];
    }
    return num;
}

long long cosystole_numerator(const H1Context& ctx, const std::vector<int>& val) {
    long long best = -1;
    for (const auto& z : ctx.cocycles) {
        long long num = 0;
        for (int e = 0; e < ctx.ne; ++e)
            if (z[e] != val[e]) num += ctx.edge_cnt[e];
        if (best < 0 || num < best) best = num;
    }
    return best;
}

ExpansionReport h1_finish(const H1Context& ctx, const RatioBest& best, double wall_ms) {
    if (best.num < 0)
        throw ValidationError("h1: every cochain is a cocycle");
    const SimplicialComplex& x = *ctx.x;
    const GroupAction& g = *ctx.g;
    std::vector<int> val(ctx.ne, g.identity());
    decode_free(best.index, g.order(), ctx.free_edges, val);
    return ExpansionReport{Rat(best.num, x.weight_denominator(2)) /
                               Rat(best.den, x.weight_denominator(1)),
                           Cochain1(x, g, val), ctx.total,
                           static_cast<long long>(ctx.cocycles.size()), wall_ms};
}

} // namespace

ExpansionReport h1_exact_serial(const SimplicialComplex& x, const GroupAction& g,
                                const SearchLimits& limits, bool with_table) {
    auto t0 = std::chrono::steady_clock::now();
    H1Context ctx = h1_setup(x, g, limits);
    RatioBest best;
    std::vector<ExpansionProfileRow> table;
    std::vector<int> val(ctx.ne, g.identity());
    for (long long idx = 0; idx < ctx.total; ++idx) {
        decode_free(idx, g.order(), ctx.free_edges, val);
        long long n = d1_numerator(ctx, val);
        if (n == 0) continue;
        long long c = cosystole_numerator(ctx, val);
        best.consider(n, c, idx);
        if (with_table) {
            ExpansionProfileRow row;
            row.values = val;
            row.d1norm = Rat(n, x.weight_denominator(2));
            row.cosystole = Rat(c, x.weight_denominator(1));
            row.ratio = row.d1norm / row.cosystole;
            table.push_back(std::move(row));
        }
    }
    double ms = std::chrono::duration<double, std::milli>(
                    std::chrono::steady_clock::now() - t0).count();
    ExpansionReport rep = h1_finish(ctx, best, ms);
    rep.table = std::move(table);
    return rep;
}

ExpansionReport h1_exact(const SimplicialComplex& x, const GroupAction& g,
                         const SearchLimits& limits, int threads) {
    auto t0 = std::chrono::steady_clock::now();
    H1Context ctx = h1_setup(x, g, limits);
    RatioBest best;
#ifdef _OPENMP
#pragma omp parallel num_threads(resolve_threads(threads))
    {
        RatioBest local;
        std::vector<int> val(ctx.ne, ctx.g->identity());
#pragma omp for schedule(static) nowait
        for (long long idx = 0; idx < ctx.total; ++idx) {
            decode_free(idx, ctx.g->order(), ctx.free_edges, val);
            long long n = d1_numerator(ctx, val);
            if (n == 0) continue;
            local.consider(n, cosystole_numerator(ctx, val), idx);
        }
#pragma omp critical
        best.merge(local);
    }
#else
    std::vector<int> val(ctx.ne, g.identity());
    for (long long idx = 0; idx < ctx.total; ++idx) {
        decode_free(idx, g.order(), ctx.free_edges, val);
        long long n = d1_numerator(ctx, val);
        if (n == 0) continue;
        best.consider(n, cosystole_numerator(ctx, val), idx);
    }
#endif
    double ms = std::chrono::duration<double, std::milli>(
                    std::chrono::steady_clock::now() - t0).count();
    return h1_finish(ctx, best, ms);
}

SandwichCertificate verify_sandwich(const Cochain1& phi) {
    const GroupAction& g = phi.group();
    const int t = g.set_size();
    Rat d1n = d1_norm(phi);
    Rat m = deficiency_exact(lift_complex(phi)).m;
    SandwichCertificate cert;
    cert.upper = d1n;
    cert.lower = Rat(t - g.fixity(), t) * d1n;
    cert.m = m;
    cert.holds = cert.lower <= m && m <= cert.upper;
    return cert;
}

StabilityChainReport verify_stability_chain(const SimplicialComplex& x, const GroupAction& g,
                                      const SearchLimits& limits, int threads) {
    StabilityChainReport rep;
    ExpansionReport h = h1_exact(x, g, limits, threads);
    StabilityResult s = cover_stability_exact(x, g, limits, threads);
    const int t = g.set_size();
    rep.h1 = h.h1;
    rep.c = s.c;
    rep.two_over_s_h1 = Rat(2, t) * h.h1;
    rep.lower = Rat(t - g.fixity(), t) * h.h1;
    rep.faithful = g.faithful();
    rep.chain_holds = rep.two_over_s_h1 <= rep.lower && rep.lower <= rep.c &&
                      rep.c <= rep.h1;
    return rep;
}

namespace {

NearestCocycleReport nearest_report_common(const Cochain1& phi, Rat dist,
                                           Rat h1v, bool exact) {
    const GroupAction& g = phi.group();
    const int t = g.set_size();
    Rat m = deficiency_exact(lift_complex(phi)).m;
    NearestCocycleReport rep;
    rep.distance = dist;
    rep.exact = exact;
    Rat denom = Rat(t - g.fixity(), t) * h1v;
    if (denom == Rat(0))
        throw ValidationError("nearest cocycle bound: vanishing denominator");
    rep.bound = m / denom;
    rep.holds = rep.distance <= rep.bound;
    return rep;
}

} // namespace

NearestCocycleReport nearest_cocycle_bound_check(const Cochain1& phi,
                                                 bool simply_connected,
                                                 const SearchLimits& limits,
                                                 int threads) {
    CosystoleResult csy = cosystolic_norm_exact(phi, simply_connected, limits);
    ExpansionReport h = h1_exact(phi.complex(), phi.group(), limits, threads);
    return nearest_report_common(phi, csy.distance, h.h1, true);
}

NearestCocycleReport nearest_cocycle_bound_check_with(const Cochain1& phi,
                                                      const Rat& h1_lower_bound,
                                                      const Rat& candidate_distance) {
    return nearest_report_common(phi, candidate_distance, h1_lower_bound, false);
}

} // namespace coverlab
