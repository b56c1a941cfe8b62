#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "bchc/code.hpp"
#include "bchc/lattice.hpp"

namespace bchc {

inline constexpr std::size_t kKernelDimGuard = 24;
inline constexpr std::size_t kIsingSiteGuard = 24;

struct PartitionParams {
    double betaJ = 0.0;
    double alpha = 0.0;  // tanh(betaJ)
    explicit PartitionParams(double bJ);
};

// Dual coupling of the strong-weak map: -1/2 ln tanh(betaJ).
double dual_coupling(double betaJ);

enum class KernelClass : std::uint8_t { Empty = 0, ClosedSurface = 1, PureType = 2, Cross = 3 };

struct KernelElementView {
    const BitVec& faces;
    int nx = 0, ny = 0, nz = 0;
    KernelClass cls = KernelClass::Empty;
    bool type_union = false;  // nonempty union of complete type classes
};

// Aggregate of one full kernel enumeration: counts of elements per
// (class, nx, ny, nz). Weight sums for any alpha derive from this exactly.
struct KernelScan {
    std::size_t dim = 0;
    int nX = 0, nY = 0, nZ = 0;
    std::array<std::uint64_t, 4> class_counts{};
    std::uint64_t type_union_count = 0;
    std::vector<std::uint64_t> hist;  // [cls][nx][ny][nz], dense

    std::uint64_t& at(KernelClass c, int nx, int ny, int nz);
    std::uint64_t at(KernelClass c, int nx, int ny, int nz) const;
};

// Visits all 2^dim kernel subsets exactly once (Gray-code order).
// Throws GuardError when the kernel dimension exceeds kKernelDimGuard.
void enumerate_kernel(const StabilizerCode& code, const CellComplex& cx,
                      const std::function<void(const KernelElementView&)>& visit);

KernelScan scan_kernel(const StabilizerCode& code, const CellComplex& cx);

struct ReducedPartitionSum {
    double betaJ = 0, alpha = 0;
    double total = 0;          // sum over the kernel of alpha^A
    double surface_part = 0;   // edge-even subsets, empty included
    double pure_type_part = 0; // type-complete unions with odd edge incidence: X, Y, Z, XYZ
    double cross_part = 0;     // remainder
    double pure_formula = 0;   // (1+a^nx)(1+a^ny)(1+a^nz) - 1, for comparison
};

ReducedPartitionSum reduced_quantum_sum(const KernelScan& scan, const PartitionParams& p);

// Weight histogram of all edge-even face subsets (kernel of the face-to-edge
// boundary matrix), enumerated independently of the stabilizer kernel.
std::vector<std::uint64_t> igt_weight_hist(const CellComplex& cx);
double reduced_igt_sum(const CellComplex& cx, const PartitionParams& p);
double hist_weight_sum(const std::vector<std::uint64_t>& hist, double alpha);

// Weight histogram of the cell-generated (homologically trivial) surfaces.
std::vector<std::uint64_t> trivial_sector_hist(const CellComplex& cx);

// Exact enumeration of the dual Ising model: counts of configurations per
// bond sum B = sum_bonds s_i s_j. Throws GuardError above kIsingSiteGuard.
struct IsingExact {
    int n_sites = 0, n_bonds = 0;
    std::vector<std::uint64_t> counts;  // index (B + n_bonds) / 2
    double log_z(double dual_betaJ) const;
    double z(double dual_betaJ) const;
    double mean_energy(double dual_betaJ) const;      // E = -B
    double energy_variance(double dual_betaJ) const;
};

IsingExact exact_ising_enumeration(const DualIsingGraph& dual);

struct SectorDualityRow {
    double betaJ = 0, dual_betaJ = 0;
    double trivial_sum = 0;   // sum over cell-generated surfaces of alpha^A
    double ising_side = 0;    // Z_Ising(btilde) e^{-btilde F} / 2
    double rel_err = 0;
    double full_sum = 0;      // all edge-even subsets
    double sector_ratio = 0;  // full / trivial, >= 1
};

std::vector<SectorDualityRow> verify_sector_duality(const CellComplex& cx,
                                                    const std::vector<double>& betaJ_grid);

// Epsilon pair held exactly as reduced fractions so that zero-slack cases
// are decided without rounding.
struct BoundParams {
    std::int64_t p1 = 0, q1 = 1, p2 = 0, q2 = 1;
    static BoundParams from_decimal(const std::string& eps1, const std::string& eps2);
    static BoundParams from_double(double eps1, double eps2);
    double eps1() const { return double(p1) / double(q1); }
    double eps2() const { return double(p2) / double(q2); }
};

struct BoundReport {
    bool all_hold = false;
    std::uint64_t checks = 0;      // 3 per closed-surface element (empty included)
    std::uint64_t violations = 0;  // (element, i) pairs that fail
    double min_slack = 0;
    char tight_i = 0;
    std::array<int, 3> tight_counts{};  // (nx, ny, nz) of a tightest element
};

// Checks A_c + n_i - 2 n_i^c >= eps1 A_c + eps2 n_i for every edge-even
// element and every i in {x,y,z}, in exact integer arithmetic.
BoundReport verify_cross_term_bound(const KernelScan& scan, const BoundParams& bp);

struct DominanceRow {
    int L = 0;
    double betaJ = 0, alpha = 0;
    double surface = 0, pure_plus_cross = 0, ratio = 0;
};

// (pure + cross) / surface across lattice sizes; L = 1 runs in multigraph mode.
std::vector<DominanceRow> dominance_report(const std::vector<int>& sizes,
                                           const std::vector<double>& betaJs);

std::size_t predicted_kernel_dim(int L);  // 2L^3 + 3

}  // namespace bchc
