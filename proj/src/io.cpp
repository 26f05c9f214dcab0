#include "coverlab/io.hpp"

#include <fstream>
#include <sstream>
#include <unordered_map>

#include "coverlab/errors.hpp"

namespace coverlab {

SimplicialComplex read_complex(std::istream& in) {
    std::unordered_map<std::string, VertexId> intern;
    std::vector<std::string> tokens_by_id;
    std::vector<std::vector<VertexId>> facets;
    std::string line;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        std::istringstream ls(line);
        std::vector<VertexId> facet;
        std::string tok;
        while (ls >> tok) {
            auto it = intern.find(tok);
            if (it == intern.end()) {
                it = intern.emplace(tok, static_cast<VertexId>(tokens_by_id.size())).first;
                tokens_by_id.push_back(tok);
            }
            facet.push_back(it->second);
        }
        if (!facet.empty()) facets.push_back(std::move(facet));
    }
    if (facets.empty()) throw ValidationError("complex file has no facets");
    SimplicialComplex x = SimplicialComplex::from_facets(facets);
    x.set_labels(std::move(tokens_by_id));
    return x;
}

SimplicialComplex read_complex_path(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open complex file: " + path);
    return read_complex(in);
}

void write_complex(std::ostream& out, const SimplicialComplex& x) {
    for (const Simplex& f : x.facets()) {
        for (std::size_t i = 0; i < f.size(); ++i) {
            if (i) out << ' ';
            out << x.label(f[i]);
        }
        out << '\n';
    }
}

void write_complex_path(const std::string& path, const SimplicialComplex& x) {
    std::ofstream out(path);
    if (!out) throw ValidationError("cannot write complex file: " + path);
    write_complex(out, x);
}

Perm parse_perm(const std::string& text) {
    Perm p;
    std::string num;
    for (std::size_t i = 0; i <= text.size(); ++i) {
        if (i == text.size() || text[i] == ',') {
            if (num.empty()) throw ValidationError("bad permutation: " + text);
            int v = std::stoi(num);
            if (v < 0 || v > 254) throw ValidationError("bad permutation image: " + num);
            p.push_back(static_cast<std::uint8_t>(v));
            num.clear();
        } else if (text[i] >= '0' && text[i] <= '9') {
            num += text[i];
        } else {
            throw ValidationError("bad permutation: " + text);
        }
    }
    if (!perm_is_valid(p)) throw ValidationError("not a permutation: " + text);
    return p;
}

std::string perm_to_string(const Perm& p) {
    std::string out;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(p[i]);
    }
    return out;
}

GroupAction parse_group_spec(const std::string& spec, long long max_elements) {
    auto colon = spec.find(':');
    if (colon == std::string::npos)
        throw ValidationError("group spec must be sym:t, cyc:t or gen:...: " + spec);
    std::string kind = spec.substr(0, colon);
    std::string rest = spec.substr(colon + 1);
    if (kind == "sym") return GroupAction::symmetric(std::stoi(rest));
    if (kind == "cyc") return GroupAction::cyclic(std::stoi(rest));
    if (kind == "gen") {
        std::vector<Perm> gens;
        std::string cur;
        for (std::size_t i = 0; i <= rest.size(); ++i) {
            if (i == rest.size() || rest[i] == ';') {
                if (!cur.empty()) gens.push_back(parse_perm(cur));
                cur.clear();
            } else {
                cur += rest[i];
            }
        }
        return GroupAction::closure(gens, max_elements, spec);
    }
    throw ValidationError("unknown group kind: " + kind);
}

CochainData read_cochain(std::istream& in) {
    CochainData data;
    std::string line;
    bool have_group = false;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        std::istringstream ls(line);
        std::string first;
        if (!(ls >> first)) continue;
        if (!have_group) {
            if (first != "group")
                throw ValidationError("cochain file must start with a group line");
            if (!(ls >> data.group_spec))
                throw ValidationError("group line is missing the spec");
            have_group = true;
            continue;
        }
        CochainData::Entry e;
        e.u = first;
        std::string image;
        if (!(ls >> e.v >> image))
            throw ValidationError("cochain line needs: u v image-list");
        e.image = parse_perm(image);
        data.entries.push_back(std::move(e));
    }
    if (!have_group) throw ValidationError("cochain file has no group line");
    return data;
}

CochainData read_cochain_path(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open cochain file: " + path);
    return read_cochain(in);
}

void write_cochain(std::ostream& out, const Cochain1& phi) {
    const SimplicialComplex& x = phi.complex();
    const GroupAction& g = phi.group();
    out << "group " << g.name() << '\n';
    if (x.dim() < 1) return;
    const auto& edges = x.faces(1);
    for (int e = 0; e < static_cast<int>(edges.size()); ++e) {
        if (g.is_identity(phi.at_edge(e))) continue;
        out << x.label(edges[e][0]) << ' ' << x.label(edges[e][1]) << ' '
            << perm_to_string(g.element(phi.at_edge(e))) << '\n';
    }
}

void write_cochain_path(const std::string& path, const Cochain1& phi) {
    std::ofstream out(path);
    if (!out) throw ValidationError("cannot write cochain file: " + path);
    write_cochain(out, phi);
}

Cochain1 instantiate_cochain(const CochainData& data, const SimplicialComplex& x,
                             const GroupAction& g) {
    std::unordered_map<std::string, VertexId> id_of_label;
    for (const Simplex& v : x.faces(0)) id_of_label.emplace(x.label(v[0]), v[0]);

    Cochain1 phi(x, g);
    std::vector<char> assigned(x.dim() >= 1 ? x.faces(1).size() : 0, 0);
    for (const auto& e : data.entries) {
        auto iu = id_of_label.find(e.u);
        auto iv = id_of_label.find(e.v);
        if (iu == id_of_label.end() || iv == id_of_label.end())
            throw ValidationError("cochain references unknown vertex: " + e.u + " " + e.v);
        VertexId u = iu->second, v = iv->second;
        int idx = x.edge_index(std::min(u, v), std::max(u, v));
        if (idx < 0)
            throw ValidationError("cochain references a non-edge: " + e.u + " " + e.v);
        if (static_cast<int>(e.image.size()) != g.set_size())
            throw ValidationError("cochain image acts on the wrong set size");
        int gi = g.index_of(e.image);
        if (gi < 0)
            throw ValidationError("cochain image is not a group element: " +
                                  perm_to_string(e.image));
        int value = u < v ? gi : g.inv(gi);
        if (assigned[idx] && phi.at_edge(idx) != value)
            throw ValidationError("edge listed twice with inconsistent values: " +
                                  e.u + " " + e.v);
        assigned[idx] = 1;
        phi.set_edge(idx, value);
    }
    return phi;
}

} // namespace coverlab
