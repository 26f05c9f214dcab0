#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "coverlab/cochain.hpp"
#include "coverlab/group_action.hpp"
#include "coverlab/simplicial_complex.hpp"

namespace coverlab {

/// Complex file: UTF-8 text, '#' starts a comment, each non-empty line is a
/// facet of whitespace-separated vertex tokens. Tokens are interned to dense
/// ids in order of first appearance and kept as labels.
SimplicialComplex read_complex(std::istream& in);
SimplicialComplex read_complex_path(const std::string& path);
void write_complex(std::ostream& out, const SimplicialComplex& x);
void write_complex_path(const std::string& path, const SimplicialComplex& x);

/// Group spec strings: "sym:t", "cyc:t", or "gen:<perm>;<perm>;..." with
/// permutations written as image lists like "2,0,1".
GroupAction parse_group_spec(const std::string& spec, long long max_elements = 1000000);

Perm parse_perm(const std::string& text);
std::string perm_to_string(const Perm& p);

/// Cochain file: a header line "group <spec>", then lines "u v <image-list>"
/// meaning phi(u,v); unlisted edges default to the identity.
struct CochainData {
    std::string group_spec;
    struct Entry {
        std::string u, v;
        Perm image;
    };
    std::vector<Entry> entries;
};

CochainData read_cochain(std::istream& in);
CochainData read_cochain_path(const std::string& path);
void write_cochain(std::ostream& out, const Cochain1& phi);
void write_cochain_path(const std::string& path, const Cochain1& phi);

/// Resolve tokens against the complex labels and build the cochain. Listing
/// an edge twice with inconsistent values is an error.
Cochain1 instantiate_cochain(const CochainData& data, const SimplicialComplex& x,
                             const GroupAction& g);

} // namespace coverlab
