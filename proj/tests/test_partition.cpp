#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <map>

#include "bchc/errors.hpp"
#include "bchc/partition.hpp"

using namespace bchc;

namespace {

CellComplex make(int L, bool allow_l1 = false) {
    LatticeSpec spec;
    spec.L = L;
    spec.allow_multigraph = allow_l1;
    return build_lattice(spec);
}

// Brute-force oracle at L = 1: walk all 2^F face subsets, keep those whose
// plaquette product is a scalar, and classify from scratch. Entirely
// independent of the kernel-basis Gray enumeration it checks.
struct BruteClassSums {
    std::map<int, double> weight_by_class[4];
    std::uint64_t counts[4] = {0, 0, 0, 0};
    std::uint64_t type_unions = 0;
};

BruteClassSums brute_force_kernel(const CellComplex& cx, const StabilizerCode& code) {
    BruteClassSums out;
    const std::size_t F = cx.F();
    const int nX = int(cx.n_type(PauliType::X));
    const int nY = int(cx.n_type(PauliType::Y));
    const int nZ = int(cx.n_type(PauliType::Z));
    for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << F); ++mask) {
        PauliOperator prod = PauliOperator::identity(code.n);
        for (std::size_t f = 0; f < F; ++f)
            if (mask & (std::uint64_t(1) << f)) prod = multiply(prod, code.generators[f]);
        if (!prod.is_identity()) continue;
        int nx = 0, ny = 0, nz = 0;
        std::vector<int> edge_count(cx.E(), 0);
        for (std::size_t f = 0; f < F; ++f)
            if (mask & (std::uint64_t(1) << f)) {
                switch (cx.faces[f].type) {
                    case PauliType::X: ++nx; break;
                    case PauliType::Y: ++ny; break;
                    case PauliType::Z: ++nz; break;
                }
                for (int e : cx.faces[f].edges) ++edge_count[std::size_t(e)];
            }
        bool edge_even = true;
        for (int c : edge_count)
            if (c % 2) edge_even = false;
        const bool empty = (mask == 0);
        const bool type_union = !empty && (nx == 0 || nx == nX) && (ny == 0 || ny == nY) &&
                                (nz == 0 || nz == nZ);
        int cls;
        if (empty)
            cls = 0;
        else if (edge_even)
            cls = 1;
        else if (type_union)
            cls = 2;
        else
            cls = 3;
        out.counts[cls]++;
        if (type_union) out.type_unions++;
        out.weight_by_class[cls][nx + ny + nz]++;
    }
    return out;
}

double brute_sum(const BruteClassSums& b, int cls, double alpha) {
    double s = 0;
    for (const auto& [w, cnt] : b.weight_by_class[cls]) s += cnt * std::pow(alpha, w);
    return s;
}

}  // namespace

TEST_CASE("partition params and dual coupling") {
    CHECK_THROWS_AS(PartitionParams(0.0), std::invalid_argument);
    CHECK_THROWS_AS(PartitionParams(-0.3), std::invalid_argument);
    CHECK(PartitionParams(0.6).alpha == doctest::Approx(std::tanh(0.6)).epsilon(1e-15));

    CHECK(dual_coupling(0.5) == doctest::Approx(0.38596841645265236).epsilon(1e-14));
    CHECK_THROWS_AS(dual_coupling(0.0), std::invalid_argument);
    // self-dual point: btilde(x*) = x* at x* = ln(1 + sqrt 2)/2
    const double xstar = 0.44068679350977151;
    CHECK(dual_coupling(xstar) == doctest::Approx(xstar).epsilon(1e-14));
    // btilde -> 0 as betaJ grows
    CHECK(dual_coupling(8.0) < 1e-6);
}

TEST_CASE("kernel scan matches the brute-force oracle at L = 1") {
    const CellComplex cx = make(1, true);
    const StabilizerCode code = build_code(cx);
    const BruteClassSums oracle = brute_force_kernel(cx, code);
    CHECK(oracle.counts[0] == 1);
    CHECK(oracle.counts[1] == 15);
    CHECK(oracle.counts[2] == 4);
    CHECK(oracle.counts[3] == 12);
    CHECK(oracle.type_unions == 7);

    const KernelScan scan = scan_kernel(code, cx);
    CHECK(scan.dim == 5);
    for (int c = 0; c < 4; ++c) CHECK(scan.class_counts[std::size_t(c)] == oracle.counts[c]);
    CHECK(scan.type_union_count == 7);

    for (double bJ : {0.3, 0.6, 0.9}) {
        const PartitionParams p(bJ);
        const ReducedPartitionSum s = reduced_quantum_sum(scan, p);
        CHECK(s.surface_part ==
              doctest::Approx(brute_sum(oracle, 0, p.alpha) + brute_sum(oracle, 1, p.alpha))
                  .epsilon(1e-13));
        CHECK(s.pure_type_part == doctest::Approx(brute_sum(oracle, 2, p.alpha)).epsilon(1e-13));
        CHECK(s.cross_part == doctest::Approx(brute_sum(oracle, 3, p.alpha)).epsilon(1e-13));
    }
}

TEST_CASE("kernel stream at L = 1 visits every element once") {
    const CellComplex cx = make(1, true);
    const StabilizerCode code = build_code(cx);
    std::size_t count = 0, pure = 0, unions = 0;
    enumerate_kernel(code, cx, [&](const KernelElementView& v) {
        ++count;
        if (v.cls == KernelClass::PureType) ++pure;
        if (v.type_union) ++unions;
    });
    CHECK(count == 32);
    CHECK(pure == 4);
    CHECK(unions == 7);  // X, Y, Z and the three double unions plus XYZ
}

TEST_CASE("class counts and reduced sums at L = 2") {
    const CellComplex cx = make(2);
    const StabilizerCode code = build_code(cx);
    const KernelScan scan = scan_kernel(code, cx);
    CHECK(scan.dim == 19);
    CHECK(scan.class_counts[0] == 1);
    CHECK(scan.class_counts[1] == (1u << 18) - 1);  // edge-even subsets
    CHECK(scan.class_counts[2] == 4);               // X, Y, Z, XYZ unions
    CHECK(scan.class_counts[3] == (1u << 18) - 4);
    CHECK(scan.type_union_count == 7);
    // the 16 single cells are the lightest closed surfaces
    CHECK(scan.at(KernelClass::ClosedSurface, 4, 6, 4) == 16);

    const PartitionParams p(0.6);
    const ReducedPartitionSum s = reduced_quantum_sum(scan, p);
    CHECK(s.surface_part == doctest::Approx(1.00268001471005).epsilon(1e-9));
    CHECK(s.total == doctest::Approx(s.surface_part + s.pure_type_part + s.cross_part)
                         .epsilon(1e-14));

    // alpha -> 0: only the empty subset survives
    const ReducedPartitionSum cold = reduced_quantum_sum(scan, PartitionParams(1e-8));
    CHECK(cold.total == doctest::Approx(1.0).epsilon(1e-12));

    // identity with the independently enumerated gauge-theory sum
    const auto igt = igt_weight_hist(cx);
    for (double bJ : {0.3, 0.45, 0.6, 0.75, 0.9, 1.05, 1.2}) {
        const PartitionParams q(bJ);
        const double lhs = reduced_quantum_sum(scan, q).surface_part;
        const double rhs = hist_weight_sum(igt, q.alpha);
        CHECK(std::fabs(lhs - rhs) / rhs < 1e-13);
    }
}

TEST_CASE("gauge-theory and trivial-sector histograms") {
    const CellComplex cx = make(2);
    const auto igt = igt_weight_hist(cx);
    const auto trivial = trivial_sector_hist(cx);
    std::uint64_t igt_total = 0, trivial_total = 0;
    for (auto c : igt) igt_total += c;
    for (auto c : trivial) trivial_total += c;
    CHECK(igt_total == (1u << 18));      // dimension C + 2
    CHECK(trivial_total == (1u << 15));  // dimension C - 1
    CHECK(igt[0] == 1);
    CHECK(trivial[14] == 16);  // one boundary per cell
    CHECK(igt[14] == 16);
    // cell-generated surfaces sit inside the full closed-surface space
    for (std::size_t w = 0; w < 22; ++w) CHECK(igt[w] == trivial[w]);
}

TEST_CASE("exact Ising enumeration") {
    // two sites, one bond: Z = 2 e^bt + 2 e^-bt
    DualIsingGraph toy;
    toy.n_sites = 2;
    toy.bonds = {{0, 1}};
    toy.bond_type = {PauliType::Y};
    toy.neighbors = {{1}, {0}};
    const IsingExact ex = exact_ising_enumeration(toy);
    for (double bt : {0.2, 0.7, 1.3}) {
        const double want = 2 * std::exp(bt) + 2 * std::exp(-bt);
        CHECK(ex.z(bt) == doctest::Approx(want).epsilon(1e-14));
        CHECK(ex.mean_energy(bt) == doctest::Approx(-std::tanh(bt)).epsilon(1e-12));
    }

    const CellComplex cx = make(2);
    const IsingExact full = exact_ising_enumeration(build_dual_graph(cx));
    CHECK(full.n_sites == 16);
    CHECK(full.n_bonds == 112);
    CHECK(full.log_z(0.0) == doctest::Approx(16 * std::log(2.0)).epsilon(1e-14));
    CHECK(full.z(0.1) > 0);
}

TEST_CASE("sector-exact duality at L = 2") {
    const CellComplex cx = make(2);
    std::vector<double> grid;
    for (int i = 0; i < 10; ++i) grid.push_back(0.3 + 0.1 * i);
    const auto rows = verify_sector_duality(cx, grid);
    REQUIRE(rows.size() == 10);
    for (const auto& r : rows) {
        CHECK(std::fabs(r.rel_err) < 1e-12);
        CHECK(r.sector_ratio >= 1.0);
    }
    // the sector discrepancy grows with betaJ and vanishes toward betaJ -> 0
    for (std::size_t i = 0; i + 1 < rows.size(); ++i)
        CHECK(rows[i].sector_ratio <= rows[i + 1].sector_ratio);
    CHECK(rows.front().sector_ratio - 1.0 < 1e-9);
    CHECK(rows.back().sector_ratio == doctest::Approx(3.6755424464).epsilon(1e-6));
}

TEST_CASE("cross-term bound") {
    const CellComplex cx = make(2);
    const StabilizerCode code = build_code(cx);
    const KernelScan scan = scan_kernel(code, cx);

    const BoundParams bp = BoundParams::from_decimal("0.04", "0.60");
    CHECK(bp.p1 == 1);
    CHECK(bp.q1 == 25);
    CHECK(bp.p2 == 3);
    CHECK(bp.q2 == 5);
    const BoundReport rep = verify_cross_term_bound(scan, bp);
    CHECK(rep.all_hold);
    CHECK(rep.checks == 3u * (1u << 18));
    CHECK(rep.violations == 0);
    CHECK(rep.min_slack == 0.0);  // the type-double unions saturate it for i = y
    CHECK(rep.tight_i == 'y');

    const BoundReport bad = verify_cross_term_bound(scan, BoundParams::from_decimal("0.99", "0.99"));
    CHECK_FALSE(bad.all_hold);
    CHECK(bad.violations > 0);
    CHECK(bad.min_slack < 0.0);

    CHECK_THROWS_AS(BoundParams::from_decimal("1.2", "0.5"), std::invalid_argument);
    CHECK_THROWS_AS(BoundParams::from_decimal("abc", "0.5"), std::invalid_argument);
    const BoundParams fd = BoundParams::from_double(0.04, 0.6);
    CHECK(fd.p1 == 1);
    CHECK(fd.q1 == 25);
}

TEST_CASE("dominance of the closed-surface sum") {
    const auto rows = dominance_report({1, 2}, {0.8});
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].L == 1);
    CHECK(rows[1].L == 2);
    CHECK(rows[0].ratio > rows[1].ratio);  // corrections shrink with volume

    // weak coupling kills the corrections; strong coupling saturates them
    const double bJ_half = std::atanh(0.5);
    const auto weak = dominance_report({2}, {bJ_half});
    CHECK(weak[0].ratio < 1e-6);
    const double bJ_hot = std::atanh(0.999);
    const auto hot = dominance_report({2}, {bJ_hot});
    CHECK(std::fabs(hot[0].ratio - 1.0) < 0.05);
}

TEST_CASE("enumeration guards") {
    CHECK(predicted_kernel_dim(2) == 19);
    CHECK(predicted_kernel_dim(9) == 1461);
    const CellComplex cx3 = make(3);
    const StabilizerCode code3 = build_code(cx3);
    CHECK_THROWS_AS(scan_kernel(code3, cx3), GuardError);
    CHECK_THROWS_AS(igt_weight_hist(cx3), GuardError);
    CHECK_THROWS_AS(trivial_sector_hist(cx3), GuardError);
    CHECK_THROWS_AS(exact_ising_enumeration(build_dual_graph(cx3)), GuardError);
}

TEST_CASE("histogram scans are reproducible") {
    const CellComplex cx = make(2);
    const StabilizerCode code = build_code(cx);
    const KernelScan a = scan_kernel(code, cx);
    const KernelScan b = scan_kernel(code, cx);
    CHECK(a.hist == b.hist);
    const ReducedPartitionSum s1 = reduced_quantum_sum(a, PartitionParams(0.7));
    const ReducedPartitionSum s2 = reduced_quantum_sum(b, PartitionParams(0.7));
    CHECK(s1.total == s2.total);  // bitwise: fixed summation order
}
