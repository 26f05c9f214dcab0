// Benchmarks the OpenMP kernels against their serial reference
// implementations and verifies that both return identical results.

#include <chrono>
#include <cstdio>
#include <string>

#include "CLI11.hpp"

#include "coverlab/cover.hpp"
#include "coverlab/expansion.hpp"
#include "coverlab/lattice.hpp"

using namespace coverlab;

namespace {

double now_ms() {
    return std::chrono::duration<double, std::milli>(
               std::chrono::steady_clock::now().time_since_epoch())
        .count();
}

void row(const char* kernel, double serial_ms, double parallel_ms, bool equal) {
    std::printf("%-22s %10.1f ms %10.1f ms   x%.2f   results %s\n", kernel,
                serial_ms, parallel_ms, serial_ms / parallel_ms,
                equal ? "equal" : "DIFFER");
}

SimplicialComplex octahedron() {
    return SimplicialComplex::from_facets({{0, 2, 4}, {0, 4, 3}, {0, 3, 5},
                                           {0, 5, 2}, {1, 2, 4}, {1, 4, 3},
                                           {1, 3, 5}, {1, 5, 2}});
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"serial vs OpenMP kernel benchmark"};
    long long gamma_samples = 1024;
    long long decode_orders = 512;
    int threads = 0;
    app.add_option("--gamma-samples", gamma_samples);
    app.add_option("--decode-orders", decode_orders);
    app.add_option("--threads", threads);
    CLI11_PARSE(app, argc, argv);

    std::printf("%-22s %13s %13s\n", "kernel", "serial", "openmp");

    {
        SimplicialComplex oct = octahedron();
        GroupAction c3 = GroupAction::cyclic(3);
        double t0 = now_ms();
        ExpansionReport serial = h1_exact_serial(oct, c3);
        double t1 = now_ms();
        ExpansionReport par = h1_exact(oct, c3, {}, threads);
        double t2 = now_ms();
        row("h1 octahedron cyc:3", t1 - t0, t2 - t1,
            serial.h1 == par.h1 && serial.witness == par.witness);
    }
    {
        SimplicialComplex tri = SimplicialComplex::from_facets({{0, 1, 2}});
        GroupAction s4 = GroupAction::symmetric(4);
        double t0 = now_ms();
        StabilityResult serial = cover_stability_exact_serial(tri, s4);
        double t1 = now_ms();
        StabilityResult par = cover_stability_exact(tri, s4, {}, threads);
        double t2 = now_ms();
        row("stability tri sym:4", t1 - t0, t2 - t1,
            serial.c == par.c && serial.witness == par.witness);
    }
    {
        SubspaceLattice sl = SubspaceLattice::build(2);
        OrderComplex oc = order_complex(sl.lattice());
        OrderingScheme scheme = gl_sampled_scheme(sl, gamma_samples, 11);
        double t0 = now_ms();
        GammaTable serial = gamma_table_serial(oc, scheme);
        double t1 = now_ms();
        GammaTable par = gamma_table(oc, scheme, threads);
        double t2 = now_ms();
        row("gamma A3(F2)", t1 - t0, t2 - t1,
            serial.gamma == par.gamma && serial.delta_mean == par.delta_mean);
    }
    {
        SubspaceLattice sl = SubspaceLattice::build(2);
        OrderComplex oc = order_complex(sl.lattice());
        GroupAction z2 = GroupAction::symmetric(2);
        Rng rng(17);
        std::vector<int> chi(oc.complex.num_vertices());
        for (auto& v : chi) v = static_cast<int>(rng.below(2));
        Cochain1 phi = d0(Cochain0(oc.complex, z2, chi));
        for (int e : {5, 50, 150, 250}) phi.set_edge(e, 1 - phi.at_edge(e));
        OrderingScheme scheme = gl_sampled_scheme(sl, decode_orders, 23);
        double t0 = now_ms();
        DecodeResult serial = decode_serial(oc, phi, scheme);
        double t1 = now_ms();
        DecodeResult par = decode(oc, phi, scheme, threads);
        double t2 = now_ms();
        row("decode A3(F2)", t1 - t0, t2 - t1,
            serial.distance == par.distance && serial.candidate == par.candidate);
    }
    return 0;
}
