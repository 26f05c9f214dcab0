// coverlab: near-covers of simplicial complexes, cosystolic expansion, and
// the spherical-building certificate, behind one command-line tool.
//
// Exit codes: 0 success, 2 validation error, 3 capacity error, 64 usage.

#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "coverlab/cover.hpp"
#include "coverlab/errors.hpp"
#include "coverlab/expansion.hpp"
#include "coverlab/io.hpp"
#include "coverlab/lattice.hpp"

using json = nlohmann::json;
using namespace coverlab;

namespace {

constexpr const char* kVersion = "0.1.0";
constexpr std::uint64_t kDefaultSeed = 1729;

struct Options {
    std::string complex_path;
    std::string cochain_path;
    std::string group_spec;
    std::string out_path;
    std::string mode = "sampled";
    int set_size = 0;
    int q = 2;
    int threads = 0;
    long long samples = 10000;
    long long orderings = 200;
    long long max_enum = 100000000;
    std::uint64_t seed = kDefaultSeed;
    bool stable_output = false;
};

json rat_json(const Rat& r) {
    return json{{"num", r.numerator()}, {"den", r.denominator()}};
}

json cochain_json(const Cochain1& phi) {
    const SimplicialComplex& x = phi.complex();
    const GroupAction& g = phi.group();
    json edges = json::array();
    if (x.dim() >= 1) {
        const auto& es = x.faces(1);
        for (int e = 0; e < static_cast<int>(es.size()); ++e) {
            if (g.is_identity(phi.at_edge(e))) continue;
            edges.push_back(json{{"u", x.label(es[e][0])},
                                 {"v", x.label(es[e][1])},
                                 {"image", perm_to_string(g.element(phi.at_edge(e)))}});
        }
    }
    return json{{"group", g.name()}, {"edges", edges}};
}

json fvector_json(const SimplicialComplex& x) {
    json f = json::array();
    for (long long v : x.f_vector()) f.push_back(v);
    return f;
}

SearchLimits limits_of(const Options& opt) {
    SearchLimits lim;
    lim.max_states = opt.max_enum;
    return lim;
}

// Cochains keep references to their complex and group, so both must stay
// put in the caller's frame for as long as the cochain is used.
GroupAction group_from_cochain_header(const Options& opt, const CochainData& data) {
    GroupAction g = parse_group_spec(data.group_spec, opt.max_enum);
    if (opt.set_size != 0 && opt.set_size != g.set_size())
        throw ValidationError("--set-size " + std::to_string(opt.set_size) +
                              " does not match the group degree " +
                              std::to_string(g.set_size()));
    return g;
}

void emit(const json& report, const Options& opt) {
    if (opt.out_path.empty()) {
        std::cout << report.dump(2) << "\n";
    } else {
        std::ofstream out(opt.out_path);
        if (!out) throw ValidationError("cannot write report: " + opt.out_path);
        out << report.dump(2) << "\n";
    }
}

json base_report(const std::string& subcommand, const Options& opt) {
    json config{{"subcommand", subcommand},
                {"threads", opt.threads},
                {"max_enum", opt.max_enum}};
    if (!opt.complex_path.empty()) config["complex"] = opt.complex_path;
    if (!opt.cochain_path.empty()) config["cochain"] = opt.cochain_path;
    if (!opt.group_spec.empty()) config["group"] = opt.group_spec;
    return json{{"tool", "coverlab"}, {"version", kVersion}, {"config", config}};
}

int run_info(const Options& opt) {
    SimplicialComplex x = read_complex_path(opt.complex_path);
    json rep = base_report("info", opt);
    rep["f_vector"] = fvector_json(x);
    rep["n"] = x.n();
    rep["dimension"] = x.dim();
    rep["pure"] = x.pure();
    rep["facets"] = static_cast<long long>(x.facets().size());
    emit(rep, opt);
    return 0;
}

int run_weights(const Options& opt) {
    SimplicialComplex x = read_complex_path(opt.complex_path);
    if (!x.pure()) throw ValidationError("weights: complex is not pure");
    json rep = base_report("weights", opt);
    json dims = json::array();
    for (int k = 0; k <= x.dim(); ++k) {
        json faces = json::array();
        const auto& fs = x.faces(k);
        for (int i = 0; i < static_cast<int>(fs.size()); ++i) {
            json verts = json::array();
            for (std::size_t j = 0; j < fs[i].size(); ++j)
                verts.push_back(x.label(fs[i][j]));
            faces.push_back(json{{"face", verts}, {"num", x.top_count(k, i)}});
        }
        dims.push_back(json{{"k", k},
                            {"denominator", x.weight_denominator(k)},
                            {"faces", faces}});
    }
    rep["weights"] = dims;
    emit(rep, opt);
    return 0;
}

int run_lift(const Options& opt) {
    SimplicialComplex x = read_complex_path(opt.complex_path);
    CochainData data = read_cochain_path(opt.cochain_path);
    GroupAction g = group_from_cochain_header(opt, data);
    Cochain1 phi = instantiate_cochain(data, x, g);
    NearCover cover = lift_complex(phi);
    DeficiencyReport def = deficiency_exact(cover);
    json rep = base_report("lift", opt);
    rep["total_f_vector"] = fvector_json(cover.total());
    rep["m_num"] = def.m.numerator();
    rep["m_den"] = def.m.denominator();
    if (!opt.out_path.empty()) {
        write_complex_path(opt.out_path, cover.total());
        rep["written"] = opt.out_path;
        std::cout << rep.dump(2) << "\n";
    } else {
        emit(rep, opt);
    }
    return 0;
}

int run_deficiency(const Options& opt) {
    SimplicialComplex x = read_complex_path(opt.complex_path);
    CochainData data = read_cochain_path(opt.cochain_path);
    GroupAction g = group_from_cochain_header(opt, data);
    Cochain1 phi = instantiate_cochain(data, x, g);
    NearCover cover = lift_complex(phi);
    DeficiencyReport def = deficiency_exact(cover);
    json rep = base_report("deficiency", opt);
    rep["m_num"] = def.m.numerator();
    rep["m_den"] = def.m.denominator();
    json local = json::array();
    for (const auto& [label, mu] : def.local)
        local.push_back(json{{"vertex", label}, {"mu", rat_json(mu)}});
    rep["local"] = local;
    json violated = json::array();
    for (int ti : def.violated_triangles) {
        const Simplex& t = x.faces(2)[ti];
        violated.push_back(json::array({x.label(t[0]), x.label(t[1]), x.label(t[2])}));
    }
    rep["violated_triangles"] = violated;
    emit(rep, opt);
    return 0;
}

int run_test(const Options& opt) {
    SimplicialComplex x = read_complex_path(opt.complex_path);
    CochainData data = read_cochain_path(opt.cochain_path);
    GroupAction g = group_from_cochain_header(opt, data);
    Cochain1 phi = instantiate_cochain(data, x, g);
    NearCover cover = lift_complex(phi);
    TriangleTestResult res = triangle_test(cover, opt.samples, opt.seed, opt.threads);
    json rep = base_report("test", opt);
    rep["samples"] = res.samples;
    rep["seed"] = res.seed;
    rep["failures"] = res.failures;
    rep["failure_frequency"] = res.failure_frequency;
    rep["standard_error"] = res.standard_error;
    rep["exact_num"] = res.exact_violation_weight.numerator();
    rep["exact_den"] = res.exact_violation_weight.denominator();
    rep["shards"] = res.shards;
    emit(rep, opt);
    return 0;
}

int run_h1(const Options& opt) {
    SimplicialComplex x = read_complex_path(opt.complex_path);
    GroupAction g = parse_group_spec(opt.group_spec, opt.max_enum);
    ExpansionReport res = h1_exact(x, g, limits_of(opt), opt.threads);
    json rep = base_report("h1", opt);
    rep["h1_num"] = res.h1.numerator();
    rep["h1_den"] = res.h1.denominator();
    rep["witness_cochain"] = cochain_json(res.witness);
    rep["cochains_scanned"] = res.cochains_scanned;
    rep["cocycles"] = res.cocycles;
    if (!opt.stable_output) rep["wall_time_ms"] = res.wall_ms;
    emit(rep, opt);
    return 0;
}

int run_stability(const Options& opt) {
    SimplicialComplex x = read_complex_path(opt.complex_path);
    GroupAction g = parse_group_spec(opt.group_spec, opt.max_enum);
    StabilityResult res = cover_stability_exact(x, g, limits_of(opt), opt.threads);
    json rep = base_report("stability", opt);
    rep["c_num"] = res.c.numerator();
    rep["c_den"] = res.c.denominator();
    rep["witness_cochain"] = cochain_json(res.witness);
    rep["cochains_scanned"] = res.cochains_scanned;
    rep["cocycles"] = res.cocycles;
    if (!opt.stable_output) rep["wall_time_ms"] = res.wall_ms;
    emit(rep, opt);
    return 0;
}

int run_verify(const Options& opt) {
    json rep = base_report("verify", opt);
    if (!opt.cochain_path.empty()) {
        SimplicialComplex x = read_complex_path(opt.complex_path);
        CochainData data = read_cochain_path(opt.cochain_path);
        GroupAction g = group_from_cochain_header(opt, data);
        Cochain1 phi = instantiate_cochain(data, x, g);
        SandwichCertificate cert = verify_sandwich(phi);
        rep["kind"] = "sandwich";
        rep["lower"] = rat_json(cert.lower);
        rep["m"] = rat_json(cert.m);
        rep["upper"] = rat_json(cert.upper);
        rep["holds"] = cert.holds;
    } else {
        if (opt.group_spec.empty())
            throw ValidationError("verify needs --group (chain mode) or --cochain (sandwich mode)");
        SimplicialComplex x = read_complex_path(opt.complex_path);
        GroupAction g = parse_group_spec(opt.group_spec, opt.max_enum);
        StabilityChainReport mt = verify_stability_chain(x, g, limits_of(opt), opt.threads);
        rep["kind"] = "stability-chain";
        rep["two_over_s_h1"] = rat_json(mt.two_over_s_h1);
        rep["lower"] = rat_json(mt.lower);
        rep["c"] = rat_json(mt.c);
        rep["h1"] = rat_json(mt.h1);
        rep["faithful"] = mt.faithful;
        rep["chain_holds"] = mt.chain_holds;
    }
    emit(rep, opt);
    return 0;
}

int run_building(const Options& opt) {
    SubspaceLattice sl = SubspaceLattice::build(opt.q);
    OrderComplex oc = order_complex(sl.lattice());
    json rep = base_report("building", opt);
    rep["q"] = opt.q;
    rep["f_vector"] = fvector_json(oc.complex);
    if (opt.out_path.empty())
        throw ValidationError("building requires --out <file>");
    write_complex_path(opt.out_path, oc.complex);
    rep["written"] = opt.out_path;
    std::cout << rep.dump(2) << "\n";
    return 0;
}

int run_gamma(const Options& opt) {
    SubspaceLattice sl = SubspaceLattice::build(opt.q);
    OrderComplex oc = order_complex(sl.lattice());
    GammaCertificate cert =
        gamma_certificate(sl, oc, opt.mode, opt.samples, opt.seed, opt.threads);
    json rep = base_report("gamma", opt);
    rep["q"] = cert.q;
    rep["gamma_num"] = cert.gamma.numerator();
    rep["gamma_den"] = cert.gamma.denominator();
    rep["h1_lower_bound"] = rat_json(cert.h1_lower_bound);
    rep["mode"] = cert.mode;
    rep["samples"] = cert.samples;
    rep["seed"] = cert.seed;
    if (!opt.stable_output) rep["wall_time_ms"] = cert.wall_ms;
    emit(rep, opt);
    return 0;
}

int run_decode(const Options& opt) {
    SimplicialComplex file_cx = read_complex_path(opt.complex_path);

    // Vertex tokens encode subspaces; q is inferred unless given.
    int q = opt.q;
    if (q == 0) {
        q = 2;
        for (const Simplex& v : file_cx.faces(0))
            for (char c : file_cx.label(v[0]))
                if (c == '2') q = 3;
    }
    SubspaceLattice sl = SubspaceLattice::build(q);
    OrderComplex oc = order_complex(sl.lattice());

    if (file_cx.f_vector() != oc.complex.f_vector())
        throw ValidationError("complex file does not match the A3(F_q) building");
    std::vector<int> canon_of_file(file_cx.num_vertices(), -1);
    for (const Simplex& v : file_cx.faces(0)) {
        int elem = sl.parse_label(file_cx.label(v[0]));
        if (elem < 0 || oc.vertex_of_element[elem] < 0)
            throw ValidationError("vertex token is not a proper subspace: " +
                                  file_cx.label(v[0]));
        canon_of_file[file_cx.vertex_position(v[0])] = oc.vertex_of_element[elem];
    }
    for (const Simplex& f : file_cx.facets()) {
        std::vector<VertexId> mapped;
        for (std::size_t i = 0; i < f.size(); ++i)
            mapped.push_back(canon_of_file[file_cx.vertex_position(f[i])]);
        if (!oc.complex.has_face(Simplex(mapped)))
            throw ValidationError("complex file does not match the A3(F_q) building");
    }

    CochainData data = read_cochain_path(opt.cochain_path);
    GroupAction g = parse_group_spec(data.group_spec, opt.max_enum);
    Cochain1 phi_file = instantiate_cochain(data, file_cx, g);
    Cochain1 phi(oc.complex, g);
    const auto& edges = oc.complex.faces(1);
    std::vector<int> file_of_canon(oc.complex.num_vertices());
    for (int p = 0; p < static_cast<int>(file_cx.num_vertices()); ++p)
        file_of_canon[canon_of_file[p]] = file_cx.vertex_at(p);
    for (int e = 0; e < static_cast<int>(edges.size()); ++e) {
        VertexId fu = file_of_canon[edges[e][0]];
        VertexId fv = file_of_canon[edges[e][1]];
        phi.set_edge(e, phi_file.at(fu, fv));
    }

    OrderingScheme scheme = gl_sampled_scheme(sl, opt.orderings, opt.seed);
    DecodeResult res = decode(oc, phi, scheme, opt.threads);
    Rat noise = d1_norm(phi);

    json rep = base_report("decode", opt);
    rep["q"] = q;
    rep["orderings"] = opt.orderings;
    rep["seed"] = opt.seed;
    rep["distance"] = rat_json(res.distance);
    rep["d1_norm"] = rat_json(noise);
    rep["within_9x"] = res.distance <= Rat(9) * noise;
    rep["candidate"] = cochain_json(res.candidate);
    rep["best_order"] = res.best_order;
    rep["claim_checks"] = res.claim_checks;
    if (!opt.stable_output) rep["wall_time_ms"] = res.wall_ms;
    emit(rep, opt);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"coverlab: near-covers, cosystolic expansion, and building certificates"};
    app.require_subcommand(1);
    Options opt;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--out", opt.out_path, "write the JSON report (or file payload) here");
        sub->add_option("--threads", opt.threads, "worker threads (0 = all)");
        sub->add_option("--max-enum", opt.max_enum, "state-visit guard for searches");
        sub->add_flag("--stable-output", opt.stable_output,
                      "omit wall-time fields for byte-stable reports");
    };

    CLI::App* info = app.add_subcommand("info", "f-vector and purity of a complex");
    info->add_option("--complex", opt.complex_path)->required();
    add_common(info);

    CLI::App* weights = app.add_subcommand("weights", "exact face weights");
    weights->add_option("--complex", opt.complex_path)->required();
    add_common(weights);

    CLI::App* lift = app.add_subcommand("lift", "build the total complex of a cochain");
    lift->add_option("--complex", opt.complex_path)->required();
    lift->add_option("--cochain", opt.cochain_path)->required();
    lift->add_option("--set-size", opt.set_size, "must equal the group degree");
    add_common(lift);

    CLI::App* deficiency = app.add_subcommand("deficiency", "exact deficiency of a lift");
    deficiency->add_option("--complex", opt.complex_path)->required();
    deficiency->add_option("--cochain", opt.cochain_path)->required();
    deficiency->add_option("--set-size", opt.set_size);
    add_common(deficiency);

    CLI::App* test = app.add_subcommand("test", "randomized triangle test");
    test->add_option("--complex", opt.complex_path)->required();
    test->add_option("--cochain", opt.cochain_path)->required();
    test->add_option("--set-size", opt.set_size);
    test->add_option("--samples", opt.samples);
    test->add_option("--seed", opt.seed);
    add_common(test);

    CLI::App* h1 = app.add_subcommand("h1", "exact cosystolic expansion");
    h1->add_option("--complex", opt.complex_path)->required();
    h1->add_option("--group", opt.group_spec)->required();
    add_common(h1);

    CLI::App* stability = app.add_subcommand("stability", "exact cover stability");
    stability->add_option("--complex", opt.complex_path)->required();
    stability->add_option("--group", opt.group_spec)->required();
    add_common(stability);

    CLI::App* verify = app.add_subcommand(
        "verify", "main-theorem chain, or the sandwich for one cochain");
    verify->add_option("--complex", opt.complex_path)->required();
    verify->add_option("--group", opt.group_spec);
    verify->add_option("--cochain", opt.cochain_path);
    add_common(verify);

    CLI::App* building = app.add_subcommand("building", "emit the A3(F_q) order complex");
    building->add_option("--q", opt.q)->required();
    add_common(building);

    CLI::App* gamma = app.add_subcommand("gamma", "filling certificate for A3(F_q)");
    gamma->add_option("--q", opt.q)->required();
    gamma->add_option("--mode", opt.mode, "exact or sampled");
    gamma->add_option("--samples", opt.samples);
    gamma->add_option("--seed", opt.seed);
    add_common(gamma);

    CLI::App* decode = app.add_subcommand("decode", "nearest-cocycle decoder on a building");
    decode->add_option("--complex", opt.complex_path)->required();
    decode->add_option("--cochain", opt.cochain_path)->required();
    decode->add_option("--orderings", opt.orderings);
    decode->add_option("--seed", opt.seed);
    decode->add_option("--q", opt.q)->default_val(0);
    add_common(decode);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 64;
    }

    try {
        if (info->parsed()) return run_info(opt);
        if (weights->parsed()) return run_weights(opt);
        if (lift->parsed()) return run_lift(opt);
        if (deficiency->parsed()) return run_deficiency(opt);
        if (test->parsed()) return run_test(opt);
        if (h1->parsed()) return run_h1(opt);
        if (stability->parsed()) return run_stability(opt);
        if (verify->parsed()) return run_verify(opt);
        if (building->parsed()) return run_building(opt);
        if (gamma->parsed()) return run_gamma(opt);
        if (decode->parsed()) return run_decode(opt);
        return 64;
    } catch (const CapacityError& e) {
        std::cerr << "capacity error: " << e.what() << "\n";
        return 3;
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
}
