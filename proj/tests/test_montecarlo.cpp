#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "bchc/errors.hpp"
#include "bchc/montecarlo.hpp"
#include "bchc/partition.hpp"

using namespace bchc;

namespace {

CellComplex make(int L) {
    LatticeSpec spec;
    spec.L = L;
    return build_lattice(spec);
}

DualIsingGraph toy_pair() {
    DualIsingGraph g;
    g.n_sites = 2;
    g.bonds = {{0, 1}};
    g.bond_type = {PauliType::Y};
    g.neighbors = {{1}, {0}};
    return g;
}

}  // namespace

TEST_CASE("counter rng streams") {
    CounterRng a(CounterRng::derive(7, 2, 0, 0));
    CounterRng b(CounterRng::derive(7, 2, 0, 0));
    CounterRng c(CounterRng::derive(7, 2, 1, 0));
    bool all_equal = true, any_equal_c = false;
    for (int i = 0; i < 100; ++i) {
        const std::uint64_t va = a.next_u64(), vb = b.next_u64(), vc = c.next_u64();
        all_equal = all_equal && (va == vb);
        any_equal_c = any_equal_c || (va == vc);
        CHECK(CounterRng(1).uniform() >= 0.0);
    }
    CHECK(all_equal);
    CHECK_FALSE(any_equal_c);
}

TEST_CASE("two-site chain obeys detailed balance") {
    const DualIsingGraph toy = toy_pair();
    MCConfig cfg;
    cfg.L = 0;
    cfg.grid = {0.6};
    cfg.sweeps = 120000;
    cfg.thermalization = 2000;
    cfg.interval = 1;
    cfg.seed = 3;
    const auto obs = run_ising_mc(toy, cfg);
    REQUIRE(obs.size() == 1);

    // equilibrium occupancy ratio pi(aligned)/pi(opposed) = e^{2 bt}
    std::size_t aligned = 0, opposed = 0, a2o = 0, o2a = 0;
    const auto& e = obs[0].energy;
    for (std::size_t i = 0; i < e.size(); ++i) {
        (e[i] < 0 ? aligned : opposed)++;
        if (i) {
            if (e[i - 1] < 0 && e[i] > 0) ++a2o;
            if (e[i - 1] > 0 && e[i] < 0) ++o2a;
        }
    }
    const double ratio = double(aligned) / double(opposed);
    CHECK(ratio == doctest::Approx(std::exp(2 * 0.6)).epsilon(0.05));
    // fluxes between the two classes balance in equilibrium
    CHECK(std::fabs(double(a2o) - double(o2a)) <= 3.0 * std::sqrt(double(a2o + o2a)));
    // and the mean energy matches the closed form -tanh(bt)
    CHECK(obs[0].e_mean == doctest::Approx(-std::tanh(0.6)).epsilon(0.02));
}

TEST_CASE("infinite temperature accepts everything") {
    const CellComplex cx = make(2);
    const DualIsingGraph dual = build_dual_graph(cx);
    MCConfig cfg;
    cfg.L = 2;
    cfg.grid = {0.0};
    cfg.sweeps = 4000;
    cfg.thermalization = 500;
    cfg.interval = 1;
    cfg.seed = 11;
    const auto obs = run_ising_mc(dual, cfg);
    CHECK(obs[0].acceptance == 1.0);
    // signed magnetization fluctuates around zero
    double m = 0;
    for (double v : obs[0].mag) m += v;
    m /= double(obs[0].mag.size());
    double var = 0;
    for (double v : obs[0].mag) var += (v - m) * (v - m);
    var /= double(obs[0].mag.size());
    CHECK(std::fabs(m) <= 3.0 * std::sqrt(var / double(obs[0].mag.size())) + 1e-3);
}

TEST_CASE("ordered phase saturates the magnetization") {
    const CellComplex cx = make(2);
    const DualIsingGraph dual = build_dual_graph(cx);
    MCConfig cfg;
    cfg.L = 2;
    cfg.grid = {1.0};
    cfg.sweeps = 4000;
    cfg.thermalization = 1000;
    cfg.seed = 5;
    const auto obs = run_ising_mc(dual, cfg);
    CHECK(1.0 - obs[0].m_abs <= std::max(0.01, 3.0 * obs[0].m_abs_err));
}

TEST_CASE("mean energy agrees with exact enumeration at L = 2") {
    const CellComplex cx = make(2);
    const DualIsingGraph dual = build_dual_graph(cx);
    const IsingExact exact = exact_ising_enumeration(dual);
    MCConfig cfg;
    cfg.L = 2;
    cfg.grid = {0.05, 0.10, 0.15};
    cfg.sweeps = 12000;
    cfg.thermalization = 3000;
    cfg.interval = 2;
    cfg.seed = 1;
    cfg.replicates = 2;
    const auto obs = run_ising_mc(dual, cfg);
    for (const auto& o : obs) {
        const double ex = exact.mean_energy(o.dual_betaJ);
        INFO("bt=", o.dual_betaJ, " mc=", o.e_mean, " exact=", ex, " err=", o.e_err);
        CHECK(o.e_err > 0);
        CHECK(std::fabs(o.e_mean - ex) <= 3.0 * o.e_err);
    }
}

TEST_CASE("runs are reproducible and independent of worker count") {
    const CellComplex cx = make(2);
    const DualIsingGraph dual = build_dual_graph(cx);
    MCConfig cfg;
    cfg.L = 2;
    cfg.grid = {0.08, 0.12};
    cfg.sweeps = 2000;
    cfg.thermalization = 500;
    cfg.seed = 42;
    cfg.replicates = 2;
    cfg.threads = 1;
    const auto a = run_ising_mc(dual, cfg);
    cfg.threads = 4;
    const auto b = run_ising_mc(dual, cfg);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].energy == b[i].energy);
        CHECK(a[i].mag == b[i].mag);
        CHECK(a[i].cv == b[i].cv);
    }
}

TEST_CASE("config validation") {
    const DualIsingGraph toy = toy_pair();
    MCConfig cfg;
    cfg.grid = {0.1};
    cfg.sweeps = 100;
    cfg.thermalization = 200;
    CHECK_THROWS_AS(run_ising_mc(toy, cfg), std::invalid_argument);
    cfg.thermalization = 10;
    cfg.grid = {-0.1};
    CHECK_THROWS_AS(run_ising_mc(toy, cfg), std::invalid_argument);
}

TEST_CASE("transition location on synthetic data") {
    SizeResult r4, r6;
    r4.L = 4;
    r6.L = 6;
    for (int i = 0; i <= 10; ++i) {
        const double x = 0.05 + 0.01 * i;
        r4.grid.push_back(x);
        r6.grid.push_back(x);
        const double peak4 = 1.0 - 30.0 * (x - 0.10) * (x - 0.10);
        const double peak6 = 2.0 - 80.0 * (x - 0.10) * (x - 0.10);
        r4.cv.push_back(peak4);
        r6.cv.push_back(peak6);
        r4.cv_err.push_back(0.01);
        r6.cv_err.push_back(0.01);
        r4.binder.push_back(0.5 - 2.0 * (x - 0.10));
        r6.binder.push_back(0.5 - 4.0 * (x - 0.10));
    }
    const TransitionEstimate est = locate_transition({r4, r6});
    CHECK(est.peak_position[0] == doctest::Approx(0.10).epsilon(1e-9));
    CHECK(est.peak_position[1] == doctest::Approx(0.10).epsilon(1e-9));
    CHECK(est.peak_height[1] > est.peak_height[0]);
    CHECK(est.dual_betaJc == doctest::Approx(0.10).epsilon(1e-9));
    CHECK(est.binder_crossing == doctest::Approx(0.10).epsilon(1e-9));
    CHECK(est.quantum_betaJc ==
          doctest::Approx(map_to_quantum_coupling(0.10)).epsilon(1e-12));

    // flat series has no interior peak
    SizeResult flat = r4;
    for (auto& v : flat.cv) v = 0.0;
    CHECK_THROWS_AS(locate_transition({flat, r6}), GuardError);
}

TEST_CASE("duality round trip") {
    for (double x : {0.2, 0.5, 1.0}) {
        CHECK(map_to_quantum_coupling(dual_coupling(x)) == doctest::Approx(x).epsilon(1e-12));
        CHECK(dual_coupling(map_to_quantum_coupling(x)) == doctest::Approx(x).epsilon(1e-12));
    }
    CHECK_THROWS_AS(map_to_quantum_coupling(0.0), std::invalid_argument);
    // small dual coupling maps to strong quantum coupling
    CHECK(map_to_quantum_coupling(0.05) > map_to_quantum_coupling(0.5));
}

TEST_CASE("monte carlo refuses the multigraph dual") {
    LatticeSpec spec;
    spec.L = 1;
    spec.allow_multigraph = true;
    const CellComplex cx = build_lattice(spec);
    const DualIsingGraph dual = build_dual_graph(cx);
    MCConfig cfg;
    cfg.grid = {0.1};
    cfg.sweeps = 100;
    cfg.thermalization = 10;
    CHECK_THROWS_AS(run_ising_mc(dual, cfg), std::invalid_argument);
}
