#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "bchc/excitations.hpp"
#include "bchc/montecarlo.hpp"
#include "bchc/partition.hpp"

namespace py = pybind11;
using namespace bchc;

namespace {

CellComplex make(int L, bool allow_l1) {
    LatticeSpec spec;
    spec.L = L;
    spec.allow_multigraph = allow_l1;
    return build_lattice(spec);
}

py::dict analyze(int L, bool allow_l1) {
    const CellComplex cx = make(L, allow_l1);
    const StabilizerCode code = build_code(cx);
    const RelationCensus census = relation_census(code);
    py::dict d;
    d["L"] = L;
    d["V"] = cx.V();
    d["E"] = cx.E();
    d["F"] = cx.F();
    d["C"] = cx.C();
    d["n_x"] = cx.n_type(PauliType::X);
    d["n_y"] = cx.n_type(PauliType::Y);
    d["n_z"] = cx.n_type(PauliType::Z);
    d["rank"] = code.rank;
    d["kernel_dim"] = code.kernel.size();
    d["k"] = code.k();
    d["minus_identity_free"] = verify_no_minus_identity(code);
    d["cell_boundary_dim"] = census.cell_boundary_dim;
    d["closed_surface_dim"] = census.closed_surface_dim;
    return d;
}

py::list validate(int L, bool allow_l1) {
    const ValidationReport rep = validate_complex(make(L, allow_l1));
    py::list out;
    for (const auto& c : rep.checks) {
        py::dict d;
        d["name"] = c.name;
        d["passed"] = c.passed;
        d["detail"] = c.detail;
        out.append(d);
    }
    return out;
}

py::dict logicals(int L, const std::string& direction) {
    const CellComplex cx = make(L, false);
    const GeometricLogical g = geometric_logicals(cx, direction.at(0));
    py::dict d;
    d["direction"] = direction;
    d["surface"] = g.surface_op.to_string();
    d["string"] = g.string_op.to_string();
    d["string_letters"] = g.letters;
    d["path_vertices"] = g.path_vertices;
    d["anticommute"] = !commutes(g.surface_op, g.string_op);
    return d;
}

py::list scan(int L, const std::string& kind, const std::string& direction) {
    const CellComplex cx = make(L, false);
    const StabilizerCode code = build_code(cx);
    const ScanKind k = (kind == "string") ? ScanKind::String : ScanKind::Surface;
    py::list out;
    for (const auto& r : barrier_scan(code, k, default_scan_sizes(cx, k), direction.at(0))) {
        py::dict d;
        d["size"] = r.size;
        d["perimeter"] = r.perimeter;
        d["weight"] = r.weight;
        d["energy"] = r.energy;
        out.append(d);
    }
    return out;
}

py::dict decompose(int L, double betaJ, bool allow_l1) {
    const CellComplex cx = make(L, allow_l1);
    const StabilizerCode code = build_code(cx);
    const KernelScan sc = scan_kernel(code, cx);
    const ReducedPartitionSum s = reduced_quantum_sum(sc, PartitionParams(betaJ));
    py::dict d;
    d["betaJ"] = s.betaJ;
    d["alpha"] = s.alpha;
    d["total"] = s.total;
    d["surface"] = s.surface_part;
    d["pure"] = s.pure_type_part;
    d["cross"] = s.cross_part;
    d["pure_formula_7term"] = s.pure_formula;
    d["igt_sum"] = reduced_igt_sum(cx, PartitionParams(betaJ));
    return d;
}

py::list duality_grid(int L, const std::vector<double>& grid) {
    const CellComplex cx = make(L, false);
    py::list out;
    for (const auto& r : verify_sector_duality(cx, grid)) {
        py::dict d;
        d["betaJ"] = r.betaJ;
        d["dual_betaJ"] = r.dual_betaJ;
        d["trivial_sum"] = r.trivial_sum;
        d["ising_side"] = r.ising_side;
        d["rel_err"] = r.rel_err;
        d["full_sum"] = r.full_sum;
        d["sector_ratio"] = r.sector_ratio;
        out.append(d);
    }
    return out;
}

py::dict bound_check(int L, const std::string& eps1, const std::string& eps2) {
    const CellComplex cx = make(L, false);
    const StabilizerCode code = build_code(cx);
    const BoundReport rep =
        verify_cross_term_bound(scan_kernel(code, cx), BoundParams::from_decimal(eps1, eps2));
    py::dict d;
    d["all_hold"] = rep.all_hold;
    d["checks"] = rep.checks;
    d["violations"] = rep.violations;
    d["min_slack"] = rep.min_slack;
    d["tight_i"] = std::string(1, rep.tight_i);
    d["tight_counts"] = rep.tight_counts;
    return d;
}

py::list mc_run(int L, const std::vector<double>& grid, long sweeps, long therm, int interval,
                std::uint64_t seed, int replicates, int threads) {
    const CellComplex cx = make(L, false);
    const DualIsingGraph dual = build_dual_graph(cx);
    MCConfig cfg;
    cfg.L = L;
    cfg.grid = grid;
    cfg.sweeps = sweeps;
    cfg.thermalization = therm;
    cfg.interval = interval;
    cfg.seed = seed;
    cfg.replicates = replicates;
    cfg.threads = threads;
    py::list out;
    for (const auto& o : run_ising_mc(dual, cfg)) {
        py::dict d;
        d["dual_betaJ"] = o.dual_betaJ;
        d["E_mean"] = o.e_mean;
        d["E_err"] = o.e_err;
        d["Cv"] = o.cv;
        d["Cv_err"] = o.cv_err;
        d["m_abs"] = o.m_abs;
        d["binder"] = o.binder;
        d["acceptance"] = o.acceptance;
        out.append(d);
    }
    return out;
}

py::dict ising_exact(int L, const std::vector<double>& couplings) {
    const CellComplex cx = make(L, false);
    const IsingExact ex = exact_ising_enumeration(build_dual_graph(cx));
    py::dict d;
    d["n_sites"] = ex.n_sites;
    d["n_bonds"] = ex.n_bonds;
    py::list rows;
    for (double bt : couplings) {
        py::dict r;
        r["dual_betaJ"] = bt;
        r["log_z"] = ex.log_z(bt);
        r["E_mean"] = ex.mean_energy(bt);
        r["E_var"] = ex.energy_variance(bt);
        rows.append(r);
    }
    d["rows"] = rows;
    return d;
}

}  // namespace

PYBIND11_MODULE(bchc, m) {
    m.doc() = "non-CSS plaquette stabilizer model on the bitruncated cubic honeycomb: "
              "exact GF(2) code analysis, reduced partition sums, Ising duality, and "
              "dual-lattice Monte Carlo";

    m.def("analyze", &analyze, py::arg("L"), py::arg("allow_l1") = false,
          "lattice counts, stabilizer rank/kernel, and the encoded-qubit count");
    m.def("validate", &validate, py::arg("L"), py::arg("allow_l1") = false);
    m.def("logicals", &logicals, py::arg("L"), py::arg("direction") = "z");
    m.def("scan", &scan, py::arg("L"), py::arg("kind") = "string", py::arg("direction") = "z");
    m.def("decompose", &decompose, py::arg("L"), py::arg("betaJ"),
          py::arg("allow_l1") = false);
    m.def("duality_grid", &duality_grid, py::arg("L"), py::arg("grid"));
    m.def("bound_check", &bound_check, py::arg("L"), py::arg("eps1") = "0.04",
          py::arg("eps2") = "0.6");
    m.def("dual_coupling", &dual_coupling, py::arg("betaJ"));
    m.def("quantum_coupling", &map_to_quantum_coupling, py::arg("dual_betaJ"));
    m.def("mc_run", &mc_run, py::arg("L"), py::arg("grid"), py::arg("sweeps") = 20000,
          py::arg("therm") = 5000, py::arg("interval") = 2, py::arg("seed") = 7,
          py::arg("replicates") = 1, py::arg("threads") = 1);
    m.def("ising_exact", &ising_exact, py::arg("L"), py::arg("couplings"));
}
