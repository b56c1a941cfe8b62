// bchc: build and interrogate the truncated-octahedron plaquette model,
// evaluate its exact reduced partition sums, verify the Ising duality, and
// run the dual-model Monte Carlo.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "bchc/errors.hpp"
#include "bchc/excitations.hpp"
#include "bchc/manifest.hpp"
#include "bchc/montecarlo.hpp"
#include "bchc/partition.hpp"
#include "bchc/verify.hpp"

using nlohmann::json;

namespace {

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::vector<double> parse_grid(const std::string& s) {
    // lo:hi:count
    double lo = 0, hi = 0;
    int count = 0;
    if (std::sscanf(s.c_str(), "%lf:%lf:%d", &lo, &hi, &count) != 3 || count < 1)
        throw CLI::ValidationError("grid", "expected lo:hi:count");
    std::vector<double> g;
    if (count == 1) {
        g.push_back(lo);
        return g;
    }
    for (int i = 0; i < count; ++i) g.push_back(lo + (hi - lo) * double(i) / double(count - 1));
    return g;
}

bchc::CellComplex make_complex(int L, bool allow_l1, double J = 1.0) {
    bchc::LatticeSpec spec;
    spec.L = L;
    spec.J = J;
    spec.allow_multigraph = allow_l1;
    return bchc::build_lattice(spec);
}

struct Output {
    std::string path;  // empty = stdout
    void write(const std::string& payload, bchc::RunManifest manifest, double wall) const {
        if (path.empty()) {
            std::cout << payload;
            return;
        }
        std::ofstream os(path, std::ios::binary);
        if (!os) throw std::runtime_error("cannot open output file " + path);
        os << payload;
        manifest.wall_seconds = wall;
        manifest.write_alongside(path);
    }
};

int default_threads() {
    if (const char* env = std::getenv("BCHC_THREADS")) {
        const int v = std::atoi(env);
        if (v >= 1) return v;
    }
    return 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"stabilizer model on the bitruncated cubic honeycomb"};
    app.fallthrough();  // accept global flags after subcommand names
    app.set_config("--config", "", "read defaults from a key=value file");
    int threads = default_threads();
    app.add_option("--threads", threads, "worker count for parallel sections")
        ->capture_default_str();

    // ---- lattice ----
    auto* lat = app.add_subcommand("lattice", "build and export the cell complex");
    auto* lat_export = lat->add_subcommand("export", "write the complex deterministically");
    int le_L = 2;
    bool le_l1 = false;
    std::string le_format = "json", le_out;
    lat_export->add_option("--L", le_L, "cubic periods per axis")->required();
    lat_export->add_flag("--allow-l1", le_l1, "permit the L = 1 multigraph");
    lat_export->add_option("--format", le_format)->check(CLI::IsMember({"json", "csv"}));
    lat_export->add_option("--out", le_out, "output file (default stdout)");
    auto* lat_validate = lat->add_subcommand("validate", "audit the complex invariants");
    int lv_L = 2;
    bool lv_l1 = false;
    lat_validate->add_option("--L", lv_L)->required();
    lat_validate->add_flag("--allow-l1", lv_l1);

    // ---- code ----
    auto* code_cmd = app.add_subcommand("code", "stabilizer code analysis");
    auto* code_analyze = code_cmd->add_subcommand("analyze", "counts, rank, kernel, k");
    int ca_L = 2;
    bool ca_l1 = false;
    code_analyze->add_option("--L", ca_L)->required();
    code_analyze->add_flag("--allow-l1", ca_l1);
    auto* code_logicals = code_cmd->add_subcommand("logicals", "geometric logical operators");
    int cl_L = 2;
    std::string cl_dir = "z";
    code_logicals->add_option("--L", cl_L)->required();
    code_logicals->add_option("--dir", cl_dir)->check(CLI::IsMember({"x", "y", "z"}));

    // ---- excite ----
    auto* excite = app.add_subcommand("excite", "excitation experiments");
    auto* ex_scan = excite->add_subcommand("scan", "syndrome weight vs error size");
    int es_L = 3;
    std::string es_kind = "string", es_dir = "z", es_out;
    ex_scan->add_option("--kind", es_kind)->check(CLI::IsMember({"string", "surface"}));
    ex_scan->add_option("--L", es_L)->required();
    ex_scan->add_option("--dir", es_dir)->check(CLI::IsMember({"x", "y", "z"}));
    ex_scan->add_option("--out", es_out, "output CSV (default stdout)");
    auto* ex_braid = excite->add_subcommand("braid", "linked / unlinked braiding phases");
    int eb_L = 2;
    ex_braid->add_option("--L", eb_L)->required();

    // ---- exact ----
    auto* exact = app.add_subcommand("exact", "exact kernel enumeration");
    auto* ex_dec = exact->add_subcommand("decompose", "reduced partition sum by class");
    int ed_L = 2;
    bool ed_l1 = false;
    double ed_betaJ = 0.6;
    ex_dec->add_option("--L", ed_L)->required();
    ex_dec->add_option("--betaJ", ed_betaJ)->required();
    ex_dec->add_flag("--allow-l1", ed_l1);
    auto* ex_dual = exact->add_subcommand("duality", "sector-exact duality check");
    int eu_L = 2;
    std::string eu_grid = "0.3:1.2:10", eu_out;
    ex_dual->add_option("--L", eu_L)->required();
    ex_dual->add_option("--betaJ-grid", eu_grid, "lo:hi:count");
    ex_dual->add_option("--out", eu_out, "output CSV (default stdout)");
    auto* ex_bound = exact->add_subcommand("bound", "cross-term inequality check");
    int ebd_L = 2;
    std::string ebd_e1 = "0.04", ebd_e2 = "0.6";
    ex_bound->add_option("--L", ebd_L)->required();
    ex_bound->add_option("--eps1", ebd_e1)->required();
    ex_bound->add_option("--eps2", ebd_e2)->required();

    // ---- mc ----
    auto* mc = app.add_subcommand("mc", "Metropolis sampling of the dual Ising model");
    auto* mc_run = mc->add_subcommand("run", "sample a coupling grid");
    int mr_L = 4;
    std::string mr_grid = "0.06:0.12:13", mr_out;
    long mr_sweeps = 20000, mr_therm = 5000;
    int mr_interval = 2, mr_replicates = 1;
    std::uint64_t mr_seed = 7;
    mc_run->add_option("--L", mr_L)->required();
    mc_run->add_option("--grid", mr_grid, "lo:hi:count");
    mc_run->add_option("--sweeps", mr_sweeps);
    mc_run->add_option("--therm", mr_therm);
    mc_run->add_option("--interval", mr_interval);
    mc_run->add_option("--replicates", mr_replicates);
    mc_run->add_option("--seed", mr_seed);
    mc_run->add_option("--out", mr_out, "output CSV (default stdout)");
    auto* mc_crit = mc->add_subcommand("critical", "locate the transition from run CSVs");
    std::string mcc_in;
    mc_crit->add_option("--in", mcc_in, "comma-separated mc run CSVs")->required();

    // ---- verify-all ----
    auto* verify = app.add_subcommand("verify-all", "run the acceptance checks");
    int va_L = 2;
    bool va_full = false;
    std::uint64_t va_seed = 7;
    verify->add_option("--L", va_L, "base exact size; the criteria pin L = 2 (plus 3, 4, 6)")
        ->check(CLI::IsMember({2}));
    verify->add_flag("--full", va_full, "include the L=4/6 Monte Carlo scaling check");
    verify->add_option("--seed", va_seed);

    app.require_subcommand(1);
    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    const auto t0 = std::chrono::steady_clock::now();
    auto wall = [&] {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    };

    try {
        if (*lat_export) {
            const auto cx = make_complex(le_L, le_l1);
            std::ostringstream body;
            bchc::export_complex(cx, le_format, body);
            bchc::RunManifest m;
            m.command = "lattice export";
            m.parameters = {{"L", le_L}, {"format", le_format}, {"allow_l1", le_l1}};
            m.lattice_hash = cx.hash();
            m.has_lattice_hash = true;
            Output{le_out}.write(body.str(), m, wall());
        } else if (*lat_validate) {
            const auto cx = make_complex(lv_L, lv_l1);
            const auto rep = bchc::validate_complex(cx);
            json j;
            j["L"] = lv_L;
            j["all_passed"] = rep.all_passed();
            j["checks"] = json::array();
            for (const auto& c : rep.checks)
                j["checks"].push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
            std::cout << j.dump(2) << "\n";
            return rep.all_passed() ? 0 : 1;
        } else if (*code_analyze) {
            const auto cx = make_complex(ca_L, ca_l1);
            const auto code = bchc::build_code(cx);
            json j;
            j["L"] = ca_L;
            j["V"] = cx.V();
            j["E"] = cx.E();
            j["F"] = cx.F();
            j["C"] = cx.C();
            j["n_x"] = cx.n_type(bchc::PauliType::X);
            j["n_y"] = cx.n_type(bchc::PauliType::Y);
            j["n_z"] = cx.n_type(bchc::PauliType::Z);
            j["rank"] = code.rank;
            j["kernel_dim"] = code.kernel.size();
            j["k"] = code.k();
            j["ground_space_dim"] = (1u << code.k());
            j["minus_identity_free"] = bchc::verify_no_minus_identity(code);
            const auto census = bchc::relation_census(code);
            j["census"] = {{"cell_boundary_dim", census.cell_boundary_dim},
                           {"closed_surface_dim", census.closed_surface_dim},
                           {"noncontractible_classes", census.noncontractible_classes},
                           {"type_relation_outside_surfaces",
                            census.type_relation_outside_surfaces}};
            std::cout << j.dump(2) << "\n";
        } else if (*code_logicals) {
            const auto cx = make_complex(cl_L, false);
            const auto g = bchc::geometric_logicals(cx, cl_dir[0]);
            json j;
            j["L"] = cl_L;
            j["direction"] = cl_dir;
            j["surface"] = g.surface_op.to_string();
            j["string"] = g.string_op.to_string();
            j["string_letters"] = g.letters;
            j["path_vertices"] = g.path_vertices;
            j["layer_squares"] = g.layer_squares;
            j["anticommute"] = !bchc::commutes(g.surface_op, g.string_op);
            std::cout << j.dump(2) << "\n";
        } else if (*ex_scan) {
            const auto cx = make_complex(es_L, false);
            const auto code = bchc::build_code(cx);
            const auto kind =
                es_kind == "string" ? bchc::ScanKind::String : bchc::ScanKind::Surface;
            const auto rows =
                bchc::barrier_scan(code, kind, bchc::default_scan_sizes(cx, kind), es_dir[0]);
            std::ostringstream body;
            body << "size,perimeter,weight,energy\n";
            for (const auto& r : rows)
                body << r.size << "," << r.perimeter << "," << r.weight << ","
                     << fmt17(r.energy) << "\n";
            bchc::RunManifest m;
            m.command = "excite scan";
            m.parameters = {{"L", es_L}, {"kind", es_kind}, {"dir", es_dir}};
            m.lattice_hash = cx.hash();
            m.has_lattice_hash = true;
            Output{es_out}.write(body.str(), m, wall());
        } else if (*ex_braid) {
            const auto cx = make_complex(eb_L, false);
            const auto code = bchc::build_code(cx);
            const auto g = bchc::geometric_logicals(cx, 'z');
            bchc::ErrorOperator loop;
            loop.op = g.string_op;
            const auto linked =
                bchc::truncated_surface(cx, 'z', bchc::rect_region(cx, 'z', 1, 1));
            const int far_sq = cx.face_id(cx.wrap({4, 4, 2}));
            const auto unlinked = bchc::truncated_surface(cx, 'z', {far_sq});
            bchc::ErrorOperator doubled;
            doubled.op = g.string_op;
            for (std::size_t i = 0; i < g.path_vertices.size(); ++i) {
                bchc::Coord c = cx.vertices[std::size_t(g.path_vertices[i])];
                const int v = cx.vertex_id(cx.wrap({c[0] + 4, c[1], c[2]}));
                bchc::multiply_letter(doubled.op, std::size_t(v), g.letters[i]);
            }
            const int sq0 = cx.face_id(cx.wrap({0, 0, 2}));
            const int sq1 = cx.face_id(cx.wrap({4, 0, 2}));
            const auto two_sq = bchc::truncated_surface(cx, 'z', {sq0, sq1});
            json j;
            j["L"] = eb_L;
            j["linked"] = bchc::braiding_phase(code, loop, linked);
            j["unlinked"] = bchc::braiding_phase(code, loop, unlinked);
            j["doubly_linked"] = bchc::braiding_phase(code, doubled, two_sq);
            std::cout << j.dump(2) << "\n";
        } else if (*ex_dec) {
            if (bchc::predicted_kernel_dim(ed_L) > bchc::kKernelDimGuard) {
                std::ostringstream os;
                os << "kernel dimension " << bchc::predicted_kernel_dim(ed_L)
                   << " exceeds the enumeration guard " << bchc::kKernelDimGuard;
                throw bchc::GuardError(os.str());
            }
            const auto cx = make_complex(ed_L, ed_l1);
            const auto code = bchc::build_code(cx);
            const auto scan = bchc::scan_kernel(code, cx);
            const bchc::PartitionParams p(ed_betaJ);
            const auto sum = bchc::reduced_quantum_sum(scan, p);
            json j;
            j["L"] = ed_L;
            j["betaJ"] = sum.betaJ;
            j["alpha"] = sum.alpha;
            j["total"] = sum.total;
            j["surface"] = sum.surface_part;
            j["pure"] = sum.pure_type_part;
            j["cross"] = sum.cross_part;
            j["pure_formula_7term"] = sum.pure_formula;
            j["counts"] = {{"empty", scan.class_counts[0]},
                           {"closed_surface", scan.class_counts[1]},
                           {"pure_type", scan.class_counts[2]},
                           {"cross", scan.class_counts[3]},
                           {"type_unions", scan.type_union_count}};
            std::cout << j.dump(2) << "\n";
        } else if (*ex_dual) {
            if (bchc::predicted_kernel_dim(eu_L) > bchc::kKernelDimGuard) {
                std::ostringstream os;
                os << "kernel dimension " << bchc::predicted_kernel_dim(eu_L)
                   << " exceeds the enumeration guard " << bchc::kKernelDimGuard;
                throw bchc::GuardError(os.str());
            }
            const auto cx = make_complex(eu_L, false);
            const auto rows = bchc::verify_sector_duality(cx, parse_grid(eu_grid));
            std::ostringstream body;
            body << "betaJ,dual_betaJ,trivial_sum,ising_side,rel_err,full_sum,sector_ratio\n";
            for (const auto& r : rows)
                body << fmt17(r.betaJ) << "," << fmt17(r.dual_betaJ) << ","
                     << fmt17(r.trivial_sum) << "," << fmt17(r.ising_side) << ","
                     << fmt17(r.rel_err) << "," << fmt17(r.full_sum) << ","
                     << fmt17(r.sector_ratio) << "\n";
            bchc::RunManifest m;
            m.command = "exact duality";
            m.parameters = {{"L", eu_L}, {"betaJ_grid", eu_grid}};
            m.lattice_hash = cx.hash();
            m.has_lattice_hash = true;
            Output{eu_out}.write(body.str(), m, wall());
        } else if (*ex_bound) {
            if (bchc::predicted_kernel_dim(ebd_L) > bchc::kKernelDimGuard) {
                std::ostringstream os;
                os << "kernel dimension " << bchc::predicted_kernel_dim(ebd_L)
                   << " exceeds the enumeration guard " << bchc::kKernelDimGuard;
                throw bchc::GuardError(os.str());
            }
            const auto cx = make_complex(ebd_L, false);
            const auto code = bchc::build_code(cx);
            const auto scan = bchc::scan_kernel(code, cx);
            const auto bp = bchc::BoundParams::from_decimal(ebd_e1, ebd_e2);
            const auto rep = bchc::verify_cross_term_bound(scan, bp);
            json j;
            j["L"] = ebd_L;
            j["eps1"] = bp.eps1();
            j["eps2"] = bp.eps2();
            j["all_hold"] = rep.all_hold;
            j["checks"] = rep.checks;
            j["violations"] = rep.violations;
            j["min_slack"] = rep.min_slack;
            j["tight_i"] = std::string(1, rep.tight_i);
            j["tight_counts"] = rep.tight_counts;
            std::cout << j.dump(2) << "\n";
            return rep.all_hold ? 0 : 1;
        } else if (*mc_run) {
            const auto cx = make_complex(mr_L, false);
            const auto dual = bchc::build_dual_graph(cx);
            bchc::MCConfig cfg;
            cfg.L = mr_L;
            cfg.grid = parse_grid(mr_grid);
            cfg.sweeps = mr_sweeps;
            cfg.thermalization = mr_therm;
            cfg.interval = mr_interval;
            cfg.seed = mr_seed;
            cfg.replicates = mr_replicates;
            cfg.threads = threads;
            const auto obs = bchc::run_ising_mc(dual, cfg);
            std::ostringstream body;
            body << "dual_betaJ,E_mean,E_err,Cv,Cv_err,m_abs,binder\n";
            for (const auto& o : obs)
                body << fmt17(o.dual_betaJ) << "," << fmt17(o.e_mean) << ","
                     << fmt17(o.e_err) << "," << fmt17(o.cv) << "," << fmt17(o.cv_err)
                     << "," << fmt17(o.m_abs) << "," << fmt17(o.binder) << "\n";
            bchc::RunManifest m;
            m.command = "mc run";
            m.parameters = {{"L", mr_L},          {"grid", mr_grid},
                            {"sweeps", mr_sweeps}, {"therm", mr_therm},
                            {"interval", mr_interval}, {"replicates", mr_replicates},
                            {"n_sites", dual.n_sites}};
            m.seed = mr_seed;
            m.has_seed = true;
            m.lattice_hash = cx.hash();
            m.has_lattice_hash = true;
            Output{mr_out}.write(body.str(), m, wall());
        } else if (*mc_crit) {
            std::vector<bchc::SizeResult> results;
            std::stringstream list(mcc_in);
            std::string path;
            while (std::getline(list, path, ',')) {
                std::ifstream is(path);
                if (!is) throw std::runtime_error("cannot open " + path);
                std::ifstream ms(path + ".manifest.json");
                if (!ms)
                    throw std::runtime_error("missing manifest " + path +
                                             ".manifest.json (needed for L)");
                json mj;
                ms >> mj;
                bchc::SizeResult r;
                r.L = mj["parameters"]["L"].get<int>();
                std::string line;
                std::getline(is, line);  // header
                while (std::getline(is, line)) {
                    if (line.empty()) continue;
                    double bt, e, ee, cv, cve, mab, bnd;
                    if (std::sscanf(line.c_str(), "%lf,%lf,%lf,%lf,%lf,%lf,%lf", &bt, &e,
                                    &ee, &cv, &cve, &mab, &bnd) != 7)
                        throw std::runtime_error("malformed row in " + path);
                    r.grid.push_back(bt);
                    r.cv.push_back(cv);
                    r.cv_err.push_back(cve);
                    r.binder.push_back(bnd);
                }
                results.push_back(std::move(r));
            }
            const auto est = bchc::locate_transition(results);
            json j;
            j["dual_betaJc"] = est.dual_betaJc;
            j["betaJc_quantum"] = est.quantum_betaJc;
            j["uncertainty"] = est.uncertainty;
            j["sizes"] = est.sizes;
            j["peak_position"] = est.peak_position;
            j["peak_height"] = est.peak_height;
            j["binder_crossing"] = est.binder_crossing;
            std::cout << j.dump(2) << "\n";
        } else if (*verify) {
            bchc::VerifyOptions opts;
            opts.with_scaling = va_full;
            opts.threads = threads;
            opts.seed = va_seed;
            const auto rows = bchc::run_acceptance(opts);
            bchc::print_results(rows, std::cout);
            return bchc::all_passed(rows) ? 0 : 1;
        }
    } catch (const bchc::GuardError& e) {
        std::cerr << "guard violation: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
