#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sstream>

#include "coverlab/errors.hpp"
#include "coverlab/io.hpp"

using namespace coverlab;

TEST_CASE("complex files: comments, interning, labels") {
    std::istringstream in(
        "# a tetrahedron plus a tail\n"
        "a b c d\n"
        "\n"
        "d e  # trailing comment\n");
    SimplicialComplex x = read_complex(in);
    CHECK(x.f_vector() == std::vector<long long>{5, 7, 4, 1});
    CHECK_FALSE(x.pure());
    CHECK(x.label(0) == "a");
    CHECK(x.label(4) == "e");

    std::ostringstream out;
    write_complex(out, x);
    std::istringstream back(out.str());
    SimplicialComplex y = read_complex(back);
    CHECK(y.f_vector() == x.f_vector());

    std::istringstream empty("# nothing\n");
    CHECK_THROWS_AS(read_complex(empty), ValidationError);
    std::istringstream dup("a a b\n");
    CHECK_THROWS_AS(read_complex(dup), ValidationError);
}

TEST_CASE("group specs") {
    CHECK(parse_group_spec("sym:3").order() == 6);
    CHECK(parse_group_spec("cyc:5").order() == 5);
    CHECK(parse_group_spec("gen:1,0,2;0,2,1").order() == 6);
    CHECK(parse_group_spec("gen:1,2,0").order() == 3);
    CHECK_THROWS_AS(parse_group_spec("nope"), ValidationError);
    CHECK_THROWS_AS(parse_group_spec("zzz:3"), ValidationError);
    CHECK_THROWS_AS(parse_group_spec("gen:0,0,1"), ValidationError);
}

TEST_CASE("permutation text round trip") {
    Perm p = parse_perm("2,0,1");
    CHECK(p == Perm{2, 0, 1});
    CHECK(perm_to_string(p) == "2,0,1");
    CHECK_THROWS_AS(parse_perm("2,,1"), ValidationError);
    CHECK_THROWS_AS(parse_perm("a,b"), ValidationError);
}

TEST_CASE("cochain files") {
    std::istringstream cx("0 1 2\n");
    SimplicialComplex x = read_complex(cx);

    std::istringstream in(
        "# one swapped edge\n"
        "group sym:2\n"
        "0 1 1,0\n");
    CochainData data = read_cochain(in);
    CHECK(data.group_spec == "sym:2");
    REQUIRE(data.entries.size() == 1);

    GroupAction g = parse_group_spec(data.group_spec);
    Cochain1 phi = instantiate_cochain(data, x, g);
    CHECK(phi.at(0, 1) == 1);
    CHECK(phi.at(1, 0) == 1);  // the swap is its own inverse
    CHECK(phi.at(1, 2) == 0);

    // unlisted edges default to identity; writing drops them again
    std::ostringstream out;
    write_cochain(out, phi);
    std::istringstream back(out.str());
    Cochain1 again = instantiate_cochain(read_cochain(back), x, g);
    CHECK(again == phi);
}

TEST_CASE("cochain files store orientation correctly") {
    std::istringstream cx("0 1 2\n");
    SimplicialComplex x = read_complex(cx);
    GroupAction c3 = parse_group_spec("cyc:3");

    // value listed on the reversed orientation is stored as the inverse
    std::istringstream in("group cyc:3\n1 0 1,2,0\n");
    Cochain1 phi = instantiate_cochain(read_cochain(in), x, c3);
    CHECK(phi.at(1, 0) == c3.index_of({1, 2, 0}));
    CHECK(phi.at(0, 1) == c3.inv(c3.index_of({1, 2, 0})));

    // consistent double listing is fine
    std::istringstream twice("group cyc:3\n0 1 1,2,0\n1 0 2,0,1\n");
    CHECK(instantiate_cochain(read_cochain(twice), x, c3).at(0, 1) ==
          c3.index_of({1, 2, 0}));

    // inconsistent double listing is an error
    std::istringstream bad("group cyc:3\n0 1 1,2,0\n1 0 1,2,0\n");
    CHECK_THROWS_AS(instantiate_cochain(read_cochain(bad), x, c3), ValidationError);
}

TEST_CASE("cochain files are validated") {
    std::istringstream cx("0 1 2\n");
    SimplicialComplex x = read_complex(cx);
    GroupAction z2 = parse_group_spec("sym:2");

    std::istringstream noheader("0 1 1,0\n");
    CHECK_THROWS_AS(read_cochain(noheader), ValidationError);

    std::istringstream unknown_vertex("group sym:2\n0 9 1,0\n");
    CHECK_THROWS_AS(instantiate_cochain(read_cochain(unknown_vertex), x, z2),
                    ValidationError);

    std::istringstream wrong_degree("group sym:2\n0 1 1,2,0\n");
    CHECK_THROWS_AS(instantiate_cochain(read_cochain(wrong_degree), x, z2),
                    ValidationError);

    // cyc:3 does not contain a transposition
    GroupAction c3 = parse_group_spec("cyc:3");
    std::istringstream not_member("group cyc:3\n0 1 1,0,2\n");
    CHECK_THROWS_AS(instantiate_cochain(read_cochain(not_member), x, c3),
                    ValidationError);
}
