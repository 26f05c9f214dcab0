#include "coverlab/cover.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <set>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "coverlab/errors.hpp"
#include "coverlab/rng.hpp"

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

NearCover lift_complex(const Cochain1& phi) {
    const SimplicialComplex& x = phi.complex();
    const GroupAction& g = phi.group();
    if (!x.pure()) throw ValidationError("lift: base complex must be pure");
    const int t = g.set_size();
    const int nv = static_cast<int>(x.num_vertices());

    std::vector<std::vector<VertexId>> lifted;
    std::vector<int> fiber(8);
    for (int k = 0; k <= x.dim(); ++k) {
        for (const Simplex& f : x.faces(k)) {
            const int m = static_cast<int>(f.size());
            fiber.resize(m);
            for (int s = 0; s < t; ++s) {
                fiber[0] = s;
                for (int i = 1; i < m; ++i)
                    fiber[i] = g.apply(phi.at(f[i], f[0]), s);
                bool ok = true;
                for (int i = 0; i < m && ok; ++i)
                    for (int j = i + 1; j < m; ++j)
                        if (fiber[i] != g.apply(phi.at(f[i], f[j]), fiber[j])) {
                            ok = false;
                            break;
                        }
                if (!ok) continue;
                std::vector<VertexId> yface(m);
                for (int i = 0; i < m; ++i)
                    yface[i] = x.vertex_position(f[i]) * t + fiber[i];
                lifted.push_back(std::move(yface));
            }
        }
    }

    SimplicialComplex y = SimplicialComplex::from_facets(lifted);
    std::vector<std::string> labels(static_cast<std::size_t>(nv) * t);
    for (int p = 0; p < nv; ++p)
        for (int s = 0; s < t; ++s)
            labels[static_cast<std::size_t>(p) * t + s] =
                x.label(x.vertex_at(p)) + "@" + std::to_string(s);
    y.set_labels(std::move(labels));
    return NearCover(x, g, phi, std::move(y));
}

Cochain1 extract_cochain(const NearCover& cover) {
    const SimplicialComplex& x = cover.base();
    const GroupAction& g = cover.action();
    const int t = cover.fiber_size();
    if (x.dim() < 1) return Cochain1(x, g);

    const int ne = static_cast<int>(x.faces(1).size());
    std::vector<Perm> matching(ne, Perm(t, 255));
    for (const Simplex& ye : cover.total().faces(1)) {
        int pu = cover.base_position_of(ye[0]), su = cover.fiber_index_of(ye[0]);
        int pv = cover.base_position_of(ye[1]), sv = cover.fiber_index_of(ye[1]);
        VertexId u = x.vertex_at(pu), v = x.vertex_at(pv);
        int e = x.edge_index(std::min(u, v), std::max(u, v));
        if (e < 0) throw ConsistencyError("total-complex edge projects outside the base");
        // canonical orientation u<v: g_uv(fiber over v) = fiber over u
        if (u < v) matching[e][sv] = static_cast<std::uint8_t>(su);
        else matching[e][su] = static_cast<std::uint8_t>(sv);
    }
    std::vector<int> values(ne);
    for (int e = 0; e < ne; ++e) {
        if (!perm_is_valid(matching[e]))
            throw ConsistencyError("edge fiber is not a perfect matching");
        int idx = g.index_of(matching[e]);
        if (idx < 0) throw ConsistencyError("edge matching is not realized by the group");
        values[e] = idx;
    }
    return Cochain1(x, g, std::move(values));
}

bool covers_every_star(const NearCover& cover) {
    const SimplicialComplex& x = cover.base();
    const SimplicialComplex& y = cover.total();
    for (const Simplex& yv : y.faces(0)) {
        VertexId u = x.vertex_at(cover.base_position_of(yv[0]));
        std::vector<Simplex> ystar = y.star(yv);
        std::vector<Simplex> xstar = x.star(Simplex({u}));
        if (ystar.size() != xstar.size()) return false;
        std::set<Simplex> projected;
        for (const Simplex& f : ystar) {
            std::vector<VertexId> base;
            base.reserve(f.size());
            for (std::size_t i = 0; i < f.size(); ++i)
                base.push_back(x.vertex_at(cover.base_position_of(f[i])));
            projected.insert(Simplex(std::move(base)));
        }
        if (projected.size() != ystar.size()) return false;
        for (const Simplex& f : xstar)
            if (!projected.count(f)) return false;
    }
    return true;
}

DeficiencyReport deficiency_exact(const NearCover& cover) {
    const SimplicialComplex& x = cover.base();
    const GroupAction& g = cover.action();
    const Cochain1& phi = cover.cochain();
    const int t = cover.fiber_size();
    const int nv = static_cast<int>(x.num_vertices());

    DeficiencyReport rep;

    // Links of base vertices, by vertex position.
    std::vector<SimplicialComplex> links;
    links.reserve(nv);
    for (int p = 0; p < nv; ++p)
        links.push_back(x.link(Simplex({x.vertex_at(p)})));

    // Path (a): definition. Which link edges are covered above each vertex
    // of the total complex.
    const SimplicialComplex& y = cover.total();
    std::vector<std::set<std::pair<VertexId, VertexId>>> covered(
        static_cast<std::size_t>(nv) * t);
    if (y.dim() >= 2) {
        for (const Simplex& yt : y.faces(2)) {
            VertexId b0 = x.vertex_at(cover.base_position_of(yt[0]));
            VertexId b1 = x.vertex_at(cover.base_position_of(yt[1]));
            VertexId b2 = x.vertex_at(cover.base_position_of(yt[2]));
            covered[yt[0]].emplace(std::min(b1, b2), std::max(b1, b2));
            covered[yt[1]].emplace(std::min(b0, b2), std::max(b0, b2));
            covered[yt[2]].emplace(std::min(b0, b1), std::max(b0, b1));
        }
    }
    Rat m_a(0);
    for (int p = 0; p < nv; ++p) {
        const SimplicialComplex& lk = links[p];
        VertexId u = x.vertex_at(p);
        Rat cu = x.weight(Simplex({u}));
        for (int s = 0; s < t; ++s) {
            Rat mu(0);
            if (lk.dim() >= 1) {
                for (const Simplex& e : lk.faces(1)) {
                    if (!covered[cover.total_vertex(p, s)].count({e[0], e[1]}))
                        mu += lk.weight(e);
                }
            }
            rep.local.emplace_back(x.label(u) + "@" + std::to_string(s), mu);
            m_a += cu * mu / t;
        }
    }

    // Path (b): the fix-count identity over links.
    Rat m_b(0);
    for (int p = 0; p < nv; ++p) {
        const SimplicialComplex& lk = links[p];
        if (lk.dim() < 1) continue;
        VertexId u = x.vertex_at(p);
        Rat cu = x.weight(Simplex({u}));
        Rat inner(0);
        for (const Simplex& e : lk.faces(1)) {
            int d = g.mul(phi.at(u, e[0]), g.mul(phi.at(e[0], e[1]), phi.at(e[1], u)));
            inner += Rat(t - g.fix_count(d)) * lk.weight(e);
        }
        m_b += cu * inner / t;
    }

    if (m_a != m_b)
        throw ConsistencyError("deficiency paths disagree: " + rat_str(m_a) +
                               " vs " + rat_str(m_b));
    rep.m = m_a;

    if (x.dim() >= 2) {
        TriangleDefect td = d1(phi);
        for (int ti = 0; ti < static_cast<int>(td.value.size()); ++ti)
            if (g.fix_count(td.value[ti]) < t) rep.violated_triangles.push_back(ti);
    }
    return rep;
}

Rat cover_distance(const NearCover& a, const NearCover& b) {
    if (!a.base().same_shape_as(b.base()) ||
        a.action().set_size() != b.action().set_size() ||
        a.action().order() != b.action().order())
        throw ValidationError("cover_distance: different base complexes or actions");
    return dist1(a.cochain(), b.cochain());
}

TriangleTestResult triangle_test(const NearCover& cover, long long samples,
                                 std::uint64_t seed, int threads) {
    if (samples < 1) throw ValidationError("triangle_test: samples must be >= 1");
    const SimplicialComplex& x = cover.base();
    const GroupAction& g = cover.action();
    if (x.dim() < 2) throw ValidationError("triangle_test: base has no triangles");

    const int t = cover.fiber_size();
    TriangleDefect td = d1(cover.cochain());
    std::vector<char> violated(td.value.size());
    Rat exact(0);
    for (std::size_t ti = 0; ti < td.value.size(); ++ti) {
        violated[ti] = g.fix_count(td.value[ti]) < t;
        if (violated[ti]) exact += x.weight(x.faces(2)[ti]);
    }

    const auto& tops = x.faces(x.dim());
    const int n = x.n();
    const long long comb = binomial(n, 3);

    const long long shard_size = 4096;
    const int shards = static_cast<int>((samples + shard_size - 1) / shard_size);
    long long failures = 0;

#ifdef _OPENMP
#pragma omp parallel for reduction(+ : failures) schedule(dynamic) \
    num_threads(resolve_threads(threads))
#endif
    for (int shard = 0; shard < shards; ++shard) {
        Rng rng(Rng::derive(seed, static_cast<std::uint64_t>(shard)));
        long long count = std::min(shard_size, samples - shard * shard_size);
        long long local = 0;
        for (long long i = 0; i < count; ++i) {
            const Simplex& top = tops[rng.below(tops.size())];
            long long c = static_cast<long long>(rng.below(comb));
            // unrank the c-th 3-subset of {0..n-1} in lexicographic order
            int idx[3];
            int v = 0;
            for (int pick = 0; pick < 3; ++pick) {
                for (;; ++v) {
                    long long block = binomial(n - 1 - v, 2 - pick);
                    if (c < block) break;
                    c -= block;
                }
                idx[pick] = v++;
            }
            Simplex tri({top[idx[0]], top[idx[1]], top[idx[2]]});
            if (violated[x.face_index(tri)]) ++local;
        }
        failures += local;
    }

    TriangleTestResult res;
    res.samples = samples;
    res.seed = seed;
    res.failures = failures;
    res.failure_frequency = static_cast<double>(failures) / static_cast<double>(samples);
    double p = res.failure_frequency;
    res.standard_error = std::sqrt(p * (1 - p) / static_cast<double>(samples));
    res.exact_violation_weight = exact;
    res.shards = shards;
    return res;
}

namespace {

struct RatioBest {
    long long num = -1;   // deficiency (or d1 norm) numerator
    long long den = -1;   // cosystole numerator
    long long index = -1; // enumeration index of the witness

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

// Big-endian mixed-radix decode: ascending index is ascending lexicographic
// edge-value order.
void decode_values(long long idx, int radix, std::vector<int>& out) {
    for (int i = static_cast<int>(out.size()) - 1; i >= 0; --i) {
        out[i] = static_cast<int>(idx % radix);
        idx /= radix;
    }
}

struct StabilityContext {
    const SimplicialComplex* x;
    const GroupAction* g;
    std::vector<std::vector<int>> cocycles;
    std::vector<long long> tri_cnt;
    std::vector<long long> edge_cnt;
    long long total = 0;
    int ne = 0;
    int nt = 0;
};

StabilityContext stability_setup(const SimplicialComplex& x, const GroupAction& g,
                                 const SearchLimits& limits) {
    if (x.dim() < 2)
        throw ValidationError("cover stability: base complex has no triangles");
    StabilityContext ctx;
    ctx.x = &x;
    ctx.g = &g;
    ctx.ne = static_cast<int>(x.faces(1).size());
    ctx.nt = static_cast<int>(x.faces(2).size());
    double total = 1;
    for (int i = 0; i < ctx.ne; ++i) {
        total *= g.order();
        if (total > static_cast<double>(limits.max_states))
            throw CapacityError("cover stability exceeds the enumeration guard");
    }
    ctx.total = 1;
    for (int i = 0; i < ctx.ne; ++i) ctx.total *= g.order();
    ctx.cocycles = enumerate_cocycles(x, g, limits);
    ctx.tri_cnt.resize(ctx.nt);
    for (int ti = 0; ti < ctx.nt; ++ti) ctx.tri_cnt[ti] = x.top_count(2, ti);
    ctx.edge_cnt.resize(ctx.ne);
    for (int e = 0; e < ctx.ne; ++e) ctx.edge_cnt[e] = x.top_count(1, e);
    return ctx;
}

// Deficiency numerator over denominator D2*t: sum of per-triangle
// top-counts times (t - fix(d1 phi)).
long long deficiency_numerator(const StabilityContext& ctx, const std::vector<int>& val) {
    const GroupAction& g = *ctx.g;
    const int t = g.set_size();
    long long num = 0;
    for (int ti = 0; ti < ctx.nt; ++ti) {
        const auto& te = ctx.x->triangle_edges(ti);
        int d = g.mul(val[te[0]], g.mul(val[te[1]], g.inv(val[te[2]])));
        num += ctx.tri_cnt[ti] * (t - g.fix_count(d));
    }
    return num;
}

long long cosystole_numerator(const StabilityContext& ctx, const std::vector<int>& val) {
    long long best = -1;
    for (const auto& z : ctx.cocycles) {
        long long num = 0;
        for (int e = 0; e < ctx.ne; ++e)
            if (z[e] != val[e]) num += ctx.edge_cnt[e];
        if (best < 0 || num < best) best = num;
    }
    return best;
}

StabilityResult stability_finish(const StabilityContext& ctx, const RatioBest& best,
                                 double wall_ms) {
    if (best.num < 0)
        throw ValidationError("cover stability: every map is a genuine cover");
    const SimplicialComplex& x = *ctx.x;
    const GroupAction& g = *ctx.g;
    std::vector<int> val(ctx.ne);
    decode_values(best.index, g.order(), val);
    StabilityResult res{
        Rat(best.num, x.weight_denominator(2) * g.set_size()) /
            Rat(best.den, x.weight_denominator(1)),
        Cochain1(x, g, val), ctx.total,
        static_cast<long long>(ctx.cocycles.size()), wall_ms};
    return res;
}

} // namespace

StabilityResult cover_stability_exact_serial(const SimplicialComplex& x,
                                             const GroupAction& g,
                                             const SearchLimits& limits) {
    auto t0 = std::chrono::steady_clock::now();
    StabilityContext ctx = stability_setup(x, g, limits);
    RatioBest best;
    std::vector<int> val(ctx.ne);
    for (long long idx = 0; idx < ctx.total; ++idx) {
        decode_values(idx, g.order(), val);
        long long m = deficiency_numerator(ctx, val);
        if (m == 0) continue;
        best.consider(m, cosystole_numerator(ctx, val), idx);
    }
    double ms = std::chrono::duration<double, std::milli>(
                    std::chrono::steady_clock::now() - t0).count();
    return stability_finish(ctx, best, ms);
}

StabilityResult cover_stability_exact(const SimplicialComplex& x, const GroupAction& g,
                                      const SearchLimits& limits, int threads) {
    auto t0 = std::chrono::steady_clock::now();
    StabilityContext ctx = stability_setup(x, g, limits);
    RatioBest best;
#ifdef _OPENMP
#pragma omp parallel num_threads(resolve_threads(threads))
    {
        RatioBest local;
        std::vector<int> val(ctx.ne);
#pragma omp for schedule(static) nowait
        for (long long idx = 0; idx < ctx.total; ++idx) {
            decode_values(idx, g.order(), val);
            long long m = deficiency_numerator(ctx, val);
            if (m == 0) continue;
            local.consider(m, cosystole_numerator(ctx, val), idx);
        }
#pragma omp critical
        best.merge(local);
    }
#else
    std::vector<int> val(ctx.ne);
    for (long long idx = 0; idx < ctx.total; ++idx) {
        decode_values(idx, g.order(), val);
        long long m = deficiency_numerator(ctx, val);
        if (m == 0) continue;
        best.consider(m, cosystole_numerator(ctx, val), idx);
    }
#endif
    double ms = std::chrono::duration<double, std::milli>(
                    std::chrono::steady_clock::now() - t0).count();
    return stability_finish(ctx, best, ms);
}

} // namespace coverlab
