#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>
#include <sstream>

#include "bchc/lattice.hpp"

using namespace bchc;

namespace {
CellComplex make(int L, bool allow_l1 = false) {
    LatticeSpec spec;
    spec.L = L;
    spec.allow_multigraph = allow_l1;
    return build_lattice(spec);
}
}  // namespace

TEST_CASE("counts at L = 2 and L = 3") {
    for (int L : {2, 3}) {
        const CellComplex cx = make(L);
        const std::size_t L3 = std::size_t(L) * L * L;
        CHECK(cx.V() == 12 * L3);
        CHECK(cx.E() == 24 * L3);
        CHECK(cx.F() == 14 * L3);
        CHECK(cx.C() == 2 * L3);
        CHECK(cx.n_type(PauliType::X) == 4 * L3);
        CHECK(cx.n_type(PauliType::Y) == 6 * L3);
        CHECK(cx.n_type(PauliType::Z) == 4 * L3);
        CHECK(long(cx.V()) - long(cx.E()) + long(cx.F()) - long(cx.C()) == 0);
    }
}

TEST_CASE("full validation passes at L = 2, 3") {
    for (int L : {2, 3}) {
        const ValidationReport rep = validate_complex(make(L));
        for (const auto& c : rep.checks) {
            INFO(c.name, ": ", c.detail);
            CHECK(c.passed);
        }
    }
}

TEST_CASE("guards on lattice size") {
    LatticeSpec bad;
    bad.L = 0;
    CHECK_THROWS_AS(build_lattice(bad), std::invalid_argument);
    bad.L = -3;
    CHECK_THROWS_AS(build_lattice(bad), std::invalid_argument);
    bad.L = 1;
    CHECK_THROWS_AS(build_lattice(bad), std::invalid_argument);
    bad.allow_multigraph = true;
    CHECK_NOTHROW(build_lattice(bad));
}

TEST_CASE("L = 1 multigraph keeps the counting invariants") {
    const CellComplex cx = make(1, true);
    CHECK(cx.multigraph);
    CHECK(cx.V() == 12);
    CHECK(cx.E() == 24);
    CHECK(cx.F() == 14);
    CHECK(cx.C() == 2);
    const ValidationReport rep = validate_complex(cx);
    CHECK(rep.find("counts")->passed);
    CHECK(rep.find("edge_face_triple")->passed);
    CHECK(rep.find("vertex_face_census")->passed);
    // wrapped overlaps break the single-vertex rule at L = 1
    CHECK_FALSE(rep.find("same_type_overlap")->passed);
}

TEST_CASE("a retyped hexagon is caught by the overlap checks") {
    CellComplex cx = make(2);
    std::size_t hex = 0;
    while (cx.faces[hex].type != PauliType::X) ++hex;
    cx.faces[hex].type = PauliType::Z;
    const ValidationReport rep = validate_complex(cx);
    CHECK_FALSE(rep.all_passed());
    const bool overlap_ok = rep.find("same_type_overlap")->passed &&
                            rep.find("cross_type_overlap")->passed;
    CHECK_FALSE(overlap_ok);
}

TEST_CASE("adjacent cross-type hexagons share exactly one edge") {
    const CellComplex cx = make(2);
    // every edge carries one X, one Y, one Z face; the X and Z hexagons
    // through it meet at its two endpoints
    for (std::size_t e = 0; e < cx.E(); ++e) {
        const auto& fl = cx.edge_faces[e];
        REQUIRE(fl.size() == 3);
        std::set<char> types;
        for (int fi : fl) types.insert(type_letter(cx.faces[std::size_t(fi)].type));
        CHECK(types == std::set<char>{'X', 'Y', 'Z'});
    }
}

TEST_CASE("dual graph is 14-regular with one bond per face") {
    const CellComplex cx = make(2);
    const DualIsingGraph g = build_dual_graph(cx);
    CHECK(g.n_sites == 16);
    CHECK(g.bonds.size() == cx.F());
    for (const auto& nb : g.neighbors) CHECK(nb.size() == 14);
    // per site: 8 hexagon bonds + 6 square bonds
    std::vector<int> hexes(std::size_t(g.n_sites), 0), squares(std::size_t(g.n_sites), 0);
    for (std::size_t b = 0; b < g.bonds.size(); ++b) {
        const bool sq = g.bond_type[b] == PauliType::Y;
        for (int s : {g.bonds[b][0], g.bonds[b][1]})
            (sq ? squares : hexes)[std::size_t(s)]++;
    }
    for (int s = 0; s < g.n_sites; ++s) {
        CHECK(hexes[std::size_t(s)] == 8);
        CHECK(squares[std::size_t(s)] == 6);
    }
}

TEST_CASE("export is deterministic and hashes stably") {
    const CellComplex a = make(2), b = make(2);
    CHECK(a.hash() == b.hash());
    std::ostringstream ja, jb, ca;
    export_complex(a, "json", ja);
    export_complex(b, "json", jb);
    CHECK(ja.str() == jb.str());
    export_complex(a, "csv", ca);
    CHECK(ca.str().substr(0, 17) == "kind,id,type,data");
    CHECK_THROWS_AS(export_complex(a, "xml", ja), std::invalid_argument);
}
