#include "bchc/partition.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "bchc/errors.hpp"

namespace bchc {

namespace {

struct Kahan {
    long double sum = 0, comp = 0;
    void add(long double v) {
        const long double y = v - comp;
        const long double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
};

std::vector<long double> alpha_powers(double alpha, std::size_t max_exp) {
    std::vector<long double> pw(max_exp + 1);
    pw[0] = 1.0L;
    for (std::size_t i = 1; i <= max_exp; ++i) pw[i] = pw[i - 1] * (long double)alpha;
    return pw;
}

}  // namespace

PartitionParams::PartitionParams(double bJ) : betaJ(bJ), alpha(std::tanh(bJ)) {
    if (!(bJ > 0)) throw std::invalid_argument("betaJ must be positive");
}

double dual_coupling(double betaJ) {
    if (!(betaJ > 0)) throw std::invalid_argument("betaJ must be positive");
    return -0.5 * std::log(std::tanh(betaJ));
}

std::size_t predicted_kernel_dim(int L) {
    return 2 * std::size_t(L) * std::size_t(L) * std::size_t(L) + 3;
}

std::uint64_t& KernelScan::at(KernelClass c, int nx, int ny, int nz) {
    return hist[std::size_t(((int(c) * (nX + 1) + nx) * (nY + 1) + ny) * (nZ + 1) + nz)];
}
std::uint64_t KernelScan::at(KernelClass c, int nx, int ny, int nz) const {
    return hist[std::size_t(((int(c) * (nX + 1) + nx) * (nY + 1) + ny) * (nZ + 1) + nz)];
}

void enumerate_kernel(const StabilizerCode& code, const CellComplex& cx,
                      const std::function<void(const KernelElementView&)>& visit) {
    const std::size_t dim = code.kernel.size();
    if (dim > kKernelDimGuard) {
        std::ostringstream os;
        os << "kernel dimension " << dim << " exceeds the enumeration guard "
           << kKernelDimGuard;
        throw GuardError(os.str());
    }
    const std::size_t F = cx.F();
    const int nX = int(cx.n_type(PauliType::X));
    const int nY = int(cx.n_type(PauliType::Y));
    const int nZ = int(cx.n_type(PauliType::Z));

    std::vector<std::vector<int>> basis_faces(dim);
    for (std::size_t b = 0; b < dim; ++b)
        for (std::size_t f = 0; f < F; ++f)
            if (code.kernel[b].get(f)) basis_faces[b].push_back(int(f));

    BitVec S(F), parity(cx.E());
    long odd_edges = 0;
    int nx = 0, ny = 0, nz = 0;

    auto classify = [&]() {
        KernelElementView v{S, nx, ny, nz, KernelClass::Cross, false};
        const bool empty = (nx == 0 && ny == 0 && nz == 0);
        v.type_union = !empty && (nx == 0 || nx == nX) && (ny == 0 || ny == nY) &&
                       (nz == 0 || nz == nZ);
        if (empty)
            v.cls = KernelClass::Empty;
        else if (odd_edges == 0)
            v.cls = KernelClass::ClosedSurface;
        else if (v.type_union)
            v.cls = KernelClass::PureType;
        return v;
    };

    visit(classify());
    const std::uint64_t total = std::uint64_t(1) << dim;
    for (std::uint64_t g = 1; g < total; ++g) {
        const std::size_t b = std::size_t(std::countr_zero(g));
        for (int f : basis_faces[b]) {
            const bool entering = !S.get(std::size_t(f));
            S.flip(std::size_t(f));
            const int d = entering ? 1 : -1;
            switch (cx.faces[std::size_t(f)].type) {
                case PauliType::X: nx += d; break;
                case PauliType::Y: ny += d; break;
                case PauliType::Z: nz += d; break;
            }
            for (int e : cx.faces[std::size_t(f)].edges) {
                parity.flip(std::size_t(e));
                odd_edges += parity.get(std::size_t(e)) ? 1 : -1;
            }
        }
        visit(classify());
    }
}

KernelScan scan_kernel(const StabilizerCode& code, const CellComplex& cx) {
    KernelScan scan;
    scan.dim = code.kernel.size();
    scan.nX = int(cx.n_type(PauliType::X));
    scan.nY = int(cx.n_type(PauliType::Y));
    scan.nZ = int(cx.n_type(PauliType::Z));
    scan.hist.assign(std::size_t(4) * (scan.nX + 1) * (scan.nY + 1) * (scan.nZ + 1), 0);
    enumerate_kernel(code, cx, [&](const KernelElementView& v) {
        ++scan.class_counts[std::size_t(v.cls)];
        if (v.type_union) ++scan.type_union_count;
        ++scan.at(v.cls, v.nx, v.ny, v.nz);
    });
    return scan;
}

ReducedPartitionSum reduced_quantum_sum(const KernelScan& scan, const PartitionParams& p) {
    ReducedPartitionSum out;
    out.betaJ = p.betaJ;
    out.alpha = p.alpha;
    const auto pw = alpha_powers(p.alpha, std::size_t(scan.nX + scan.nY + scan.nZ));
    Kahan sums[4];
    for (int c = 0; c < 4; ++c)
        for (int nx = 0; nx <= scan.nX; ++nx)
            for (int ny = 0; ny <= scan.nY; ++ny)
                for (int nz = 0; nz <= scan.nZ; ++nz) {
                    const std::uint64_t cnt = scan.at(KernelClass(c), nx, ny, nz);
                    if (cnt) sums[c].add((long double)cnt * pw[std::size_t(nx + ny + nz)]);
                }
    const long double empty = sums[0].sum;
    out.surface_part = double(empty + sums[1].sum);
    out.pure_type_part = double(sums[2].sum);
    out.cross_part = double(sums[3].sum);
    Kahan tot;
    tot.add(empty);
    tot.add(sums[1].sum);
    tot.add(sums[2].sum);
    tot.add(sums[3].sum);
    out.total = double(tot.sum);
    const long double ax = pw[std::size_t(scan.nX)], ay = pw[std::size_t(scan.nY)],
                      az = pw[std::size_t(scan.nZ)];
    out.pure_formula = double((1 + ax) * (1 + ay) * (1 + az) - 1);
    return out;
}

namespace {

// Gray-code walk over a face-subset basis, recording a weight histogram.
std::vector<std::uint64_t> weight_hist_of_span(const CellComplex& cx,
                                               const std::vector<BitVec>& basis,
                                               const char* what) {
    if (basis.size() > kKernelDimGuard) {
        std::ostringstream os;
        os << what << " dimension " << basis.size() << " exceeds the enumeration guard "
           << kKernelDimGuard;
        throw GuardError(os.str());
    }
    const std::size_t F = cx.F();
    std::vector<std::vector<int>> basis_faces(basis.size());
    for (std::size_t b = 0; b < basis.size(); ++b)
        for (std::size_t f = 0; f < F; ++f)
            if (basis[b].get(f)) basis_faces[b].push_back(int(f));
    std::vector<std::uint64_t> hist(F + 1, 0);
    BitVec S(F);
    long w = 0;
    ++hist[0];
    const std::uint64_t total = std::uint64_t(1) << basis.size();
    for (std::uint64_t g = 1; g < total; ++g) {
        const std::size_t b = std::size_t(std::countr_zero(g));
        for (int f : basis_faces[b]) {
            const bool entering = !S.get(std::size_t(f));
            S.flip(std::size_t(f));
            w += entering ? 1 : -1;
        }
        ++hist[std::size_t(w)];
    }
    return hist;
}

}  // namespace

std::vector<std::uint64_t> igt_weight_hist(const CellComplex& cx) {
    BinaryMatrix boundary(cx.E());
    for (const Face& f : cx.faces) {
        BitVec r(cx.E());
        for (int e : f.edges) r.flip(std::size_t(e));
        boundary.add_row(std::move(r));
    }
    return weight_hist_of_span(cx, kernel_basis(boundary), "closed-surface space");
}

std::vector<std::uint64_t> trivial_sector_hist(const CellComplex& cx) {
    BinaryMatrix cell_rows(cx.F());
    for (const Cell& cell : cx.cells) {
        BitVec r(cx.F());
        for (int fi : cell.faces) r.flip(std::size_t(fi));
        cell_rows.add_row(std::move(r));
    }
    return weight_hist_of_span(cx, rref(cell_rows).rows, "cell-boundary space");
}

double hist_weight_sum(const std::vector<std::uint64_t>& hist, double alpha) {
    const auto pw = alpha_powers(alpha, hist.size() - 1);
    Kahan s;
    for (std::size_t w = 0; w < hist.size(); ++w)
        if (hist[w]) s.add((long double)hist[w] * pw[w]);
    return double(s.sum);
}

double reduced_igt_sum(const CellComplex& cx, const PartitionParams& p) {
    return hist_weight_sum(igt_weight_hist(cx), p.alpha);
}

IsingExact exact_ising_enumeration(const DualIsingGraph& dual) {
    if (std::size_t(dual.n_sites) > kIsingSiteGuard) {
        std::ostringstream os;
        os << "site count " << dual.n_sites << " exceeds the enumeration guard "
           << kIsingSiteGuard;
        throw GuardError(os.str());
    }
    for (const auto& b : dual.bonds)
        if (b[0] == b[1])
            throw std::invalid_argument("dual Ising enumeration requires L >= 2 (self bond)");
    IsingExact out;
    out.n_sites = dual.n_sites;
    out.n_bonds = int(dual.bonds.size());
    out.counts.assign(std::size_t(out.n_bonds) + 1, 0);

    std::vector<int> s(std::size_t(dual.n_sites), 1);
    long B = out.n_bonds;
    ++out.counts[std::size_t((B + out.n_bonds) / 2)];
    const std::uint64_t total = std::uint64_t(1) << dual.n_sites;
    for (std::uint64_t g = 1; g < total; ++g) {
        const std::size_t k = std::size_t(std::countr_zero(g));
        long h = 0;
        for (int j : dual.neighbors[k]) h += s[std::size_t(j)];
        B -= 2 * s[k] * h;
        s[k] = -s[k];
        ++out.counts[std::size_t((B + out.n_bonds) / 2)];
    }
    return out;
}

double IsingExact::log_z(double bt) const {
    long double m = -1e30L;
    for (std::size_t i = 0; i < counts.size(); ++i)
        if (counts[i]) m = std::max(m, (long double)bt * (long double)(2 * long(i) - n_bonds));
    Kahan s;
    for (std::size_t i = 0; i < counts.size(); ++i)
        if (counts[i]) {
            const long double B = (long double)(2 * long(i) - n_bonds);
            s.add((long double)counts[i] * expl((long double)bt * B - m));
        }
    return double(m + logl(s.sum));
}

double IsingExact::z(double bt) const { return double(expl((long double)log_z(bt))); }

double IsingExact::mean_energy(double bt) const {
    long double m = -1e30L;
    for (std::size_t i = 0; i < counts.size(); ++i)
        if (counts[i]) m = std::max(m, (long double)bt * (long double)(2 * long(i) - n_bonds));
    Kahan zs, es;
    for (std::size_t i = 0; i < counts.size(); ++i)
        if (counts[i]) {
            const long double B = (long double)(2 * long(i) - n_bonds);
            const long double w = (long double)counts[i] * expl((long double)bt * B - m);
            zs.add(w);
            es.add(w * (-B));
        }
    return double(es.sum / zs.sum);
}

double IsingExact::energy_variance(double bt) const {
    long double m = -1e30L;
    for (std::size_t i = 0; i < counts.size(); ++i)
        if (counts[i]) m = std::max(m, (long double)bt * (long double)(2 * long(i) - n_bonds));
    Kahan zs, es, e2s;
    for (std::size_t i = 0; i < counts.size(); ++i)
        if (counts[i]) {
            const long double B = (long double)(2 * long(i) - n_bonds);
            const long double w = (long double)counts[i] * expl((long double)bt * B - m);
            zs.add(w);
            es.add(w * (-B));
            e2s.add(w * B * B);
        }
    const long double e = es.sum / zs.sum;
    return double(e2s.sum / zs.sum - e * e);
}

std::vector<SectorDualityRow> verify_sector_duality(const CellComplex& cx,
                                                    const std::vector<double>& betaJ_grid) {
    const auto trivial = trivial_sector_hist(cx);
    const auto full = igt_weight_hist(cx);
    const IsingExact ising = exact_ising_enumeration(build_dual_graph(cx));
    const double Fcount = double(cx.F());

    std::vector<SectorDualityRow> rows;
    for (double bJ : betaJ_grid) {
        const PartitionParams p(bJ);
        SectorDualityRow r;
        r.betaJ = bJ;
        r.dual_betaJ = dual_coupling(bJ);
        r.trivial_sum = hist_weight_sum(trivial, p.alpha);
        r.ising_side =
            double(expl((long double)ising.log_z(r.dual_betaJ) -
                        (long double)r.dual_betaJ * (long double)Fcount - logl(2.0L)));
        r.rel_err = (r.trivial_sum - r.ising_side) / r.ising_side;
        r.full_sum = hist_weight_sum(full, p.alpha);
        r.sector_ratio = r.full_sum / r.trivial_sum;
        rows.push_back(r);
    }
    return rows;
}

BoundParams BoundParams::from_decimal(const std::string& e1, const std::string& e2) {
    auto parse = [](const std::string& s) -> std::pair<std::int64_t, std::int64_t> {
        std::int64_t num = 0, den = 1;
        std::size_t i = 0;
        bool neg = false;
        if (i < s.size() && (s[i] == '+' || s[i] == '-')) neg = (s[i++] == '-');
        bool digits = false;
        for (; i < s.size() && s[i] >= '0' && s[i] <= '9'; ++i) {
            num = num * 10 + (s[i] - '0');
            digits = true;
        }
        if (i < s.size() && s[i] == '.') {
            ++i;
            for (; i < s.size() && s[i] >= '0' && s[i] <= '9'; ++i) {
                num = num * 10 + (s[i] - '0');
                den *= 10;
                digits = true;
            }
        }
        long expo = 0;
        if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
            ++i;
            bool eneg = false;
            if (i < s.size() && (s[i] == '+' || s[i] == '-')) eneg = (s[i++] == '-');
            long ev = 0;
            for (; i < s.size() && s[i] >= '0' && s[i] <= '9'; ++i) ev = ev * 10 + (s[i] - '0');
            expo = eneg ? -ev : ev;
        }
        if (!digits || i != s.size()) throw std::invalid_argument("bad decimal: " + s);
        for (; expo > 0; --expo) num *= 10;
        for (; expo < 0; ++expo) den *= 10;
        const std::int64_t g = std::gcd(num, den);
        if (g > 1) {
            num /= g;
            den /= g;
        }
        return {neg ? -num : num, den};
    };
    BoundParams bp;
    std::tie(bp.p1, bp.q1) = parse(e1);
    std::tie(bp.p2, bp.q2) = parse(e2);
    if (!(bp.p1 > 0 && bp.p1 < bp.q1) || !(bp.p2 > 0 && bp.p2 < bp.q2))
        throw std::invalid_argument("epsilons must lie strictly between 0 and 1");
    return bp;
}

BoundParams BoundParams::from_double(double e1, double e2) {
    char b1[32], b2[32];
    std::snprintf(b1, sizeof b1, "%.12g", e1);
    std::snprintf(b2, sizeof b2, "%.12g", e2);
    return from_decimal(b1, b2);
}

BoundReport verify_cross_term_bound(const KernelScan& scan, const BoundParams& bp) {
    BoundReport rep;
    rep.all_hold = true;
    const int ntot[3] = {scan.nX, scan.nY, scan.nZ};
    __int128 min_scaled = 0;
    bool have_min = false;
    const __int128 qq = __int128(bp.q1) * bp.q2;

    for (int c : {int(KernelClass::Empty), int(KernelClass::ClosedSurface)})
        for (int nx = 0; nx <= scan.nX; ++nx)
            for (int ny = 0; ny <= scan.nY; ++ny)
                for (int nz = 0; nz <= scan.nZ; ++nz) {
                    const std::uint64_t cnt = scan.at(KernelClass(c), nx, ny, nz);
                    if (!cnt) continue;
                    const int A = nx + ny + nz;
                    const int nic[3] = {nx, ny, nz};
                    for (int i = 0; i < 3; ++i) {
                        rep.checks += cnt;
                        const long lhs = A + ntot[i] - 2 * nic[i];
                        const __int128 scaled = qq * lhs - __int128(bp.p1) * bp.q2 * A -
                                                __int128(bp.p2) * bp.q1 * ntot[i];
                        if (scaled < 0) {
                            rep.violations += cnt;
                            rep.all_hold = false;
                        }
                        if (!have_min || scaled < min_scaled) {
                            min_scaled = scaled;
                            have_min = true;
                            rep.tight_i = "xyz"[i];
                            rep.tight_counts = {nx, ny, nz};
                        }
                    }
                }
    rep.min_slack = double((long double)min_scaled / (long double)qq);
    return rep;
}

std::vector<DominanceRow> dominance_report(const std::vector<int>& sizes,
                                           const std::vector<double>& betaJs) {
    std::vector<DominanceRow> rows;
    for (int L : sizes) {
        LatticeSpec spec;
        spec.L = L;
        spec.allow_multigraph = true;
        const CellComplex cx = build_lattice(spec);
        const StabilizerCode code = build_code(cx);
        const KernelScan scan = scan_kernel(code, cx);
        for (double bJ : betaJs) {
            const PartitionParams p(bJ);
            const ReducedPartitionSum s = reduced_quantum_sum(scan, p);
            DominanceRow r;
            r.L = L;
            r.betaJ = bJ;
            r.alpha = p.alpha;
            r.surface = s.surface_part;
            r.pure_plus_cross = s.pure_type_part + s.cross_part;
            r.ratio = r.pure_plus_cross / r.surface;
            rows.push_back(r);
        }
    }
    return rows;
}

}  // namespace bchc
