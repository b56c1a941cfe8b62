#include "bchc/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "bchc/errors.hpp"

namespace bchc {

std::uint64_t CounterRng::mix(std::uint64_t v) {
    v += 0x9e3779b97f4a7c15ull;
    v = (v ^ (v >> 30)) * 0xbf58476d1ce4e5b9ull;
    v = (v ^ (v >> 27)) * 0x94d049bb133111ebull;
    return v ^ (v >> 31);
}

std::uint64_t CounterRng::derive(std::uint64_t master, std::uint64_t a, std::uint64_t b,
                                 std::uint64_t c) {
    std::uint64_t k = mix(master ^ 0x5851f42d4c957f2dull);
    k = mix(k ^ (a + 1) * 0xd1342543de82ef95ull);
    k = mix(k ^ (b + 1) * 0xaf251af3b0f025b5ull);
    k = mix(k ^ (c + 1) * 0x9e3779b97f4a7c15ull);
    return k;
}

namespace {

struct Moments {
    std::vector<double> e, e2, m_abs, m2, m4;
};

struct ChainResult {
    std::vector<double> energy, mag;
    long accepted = 0, proposed = 0;
};

ChainResult run_chain(const DualIsingGraph& dual, double bt, long sweeps, long therm,
                      int interval, std::uint64_t stream_key) {
    const int N = dual.n_sites;
    CounterRng rng(stream_key);
    std::vector<int8_t> s(std::size_t(N), int8_t{1});
    for (int i = 0; i < N; ++i) s[std::size_t(i)] = rng.uniform() < 0.5 ? 1 : -1;

    long B = 0;  // sum over bonds of s_i s_j
    for (const auto& b : dual.bonds) B += s[std::size_t(b[0])] * s[std::size_t(b[1])];
    long Ms = 0;
    for (int i = 0; i < N; ++i) Ms += s[std::size_t(i)];

    // dE = 2 s_i h_i with |s_i h_i| <= degree; table over positive s h
    int maxdeg = 0;
    for (const auto& nb : dual.neighbors) maxdeg = std::max<int>(maxdeg, int(nb.size()));
    std::vector<double> acc_table(std::size_t(maxdeg) + 1, 1.0);
    for (int d = 1; d <= maxdeg; ++d) acc_table[std::size_t(d)] = std::exp(-bt * 2.0 * d);

    ChainResult out;
    for (long sw = 0; sw < sweeps; ++sw) {
        for (int i = 0; i < N; ++i) {
            long h = 0;
            for (int j : dual.neighbors[std::size_t(i)]) h += s[std::size_t(j)];
            const long sh = long(s[std::size_t(i)]) * h;  // dE = 2 * sh
            ++out.proposed;
            bool accept;
            if (sh <= 0)
                accept = true;
            else
                accept = rng.uniform() < acc_table[std::size_t(sh)];
            if (accept) {
                B -= 2 * sh;
                Ms -= 2 * s[std::size_t(i)];
                s[std::size_t(i)] = -s[std::size_t(i)];
                ++out.accepted;
            }
        }
        if ((sw + 1) % 1000 == 0) {
            long chk = 0;  // incremental bond sum is exact integer arithmetic
            for (const auto& b : dual.bonds) chk += s[std::size_t(b[0])] * s[std::size_t(b[1])];
            if (chk != B) throw std::logic_error("cached energy diverged from recomputation");
        }
        if (sw >= therm && (sw - therm) % interval == 0) {
            out.energy.push_back(double(-B));
            out.mag.push_back(double(Ms) / double(N));
        }
    }
    return out;
}

double jackknife_err(const std::vector<double>& bins,
                     const std::vector<double>& bins2,  // may be empty
                     const std::vector<double>& bins3,  // may be empty
                     const std::function<double(double, double, double)>& stat) {
    const std::size_t nb = bins.size();
    if (nb < 2) return 0.0;
    auto mean_without = [&](const std::vector<double>& v, std::size_t skip) {
        double s = 0;
        for (std::size_t i = 0; i < v.size(); ++i)
            if (i != skip) s += v[i];
        return s / double(v.size() - 1);
    };
    std::vector<double> theta(nb);
    for (std::size_t i = 0; i < nb; ++i)
        theta[i] = stat(mean_without(bins, i), bins2.empty() ? 0 : mean_without(bins2, i),
                        bins3.empty() ? 0 : mean_without(bins3, i));
    double tm = 0;
    for (double t : theta) tm += t;
    tm /= double(nb);
    double var = 0;
    for (double t : theta) var += (t - tm) * (t - tm);
    var *= double(nb - 1) / double(nb);
    return std::sqrt(var);
}

std::vector<double> bin_means(const std::vector<double>& series, std::size_t nb) {
    std::vector<double> out(nb, 0.0);
    const std::size_t per = series.size() / nb;
    for (std::size_t b = 0; b < nb; ++b) {
        double s = 0;
        for (std::size_t i = b * per; i < (b + 1) * per; ++i) s += series[i];
        out[b] = s / double(per);
    }
    return out;
}

}  // namespace

std::vector<ObservableSeries> run_ising_mc(const DualIsingGraph& dual, const MCConfig& cfg) {
    if (cfg.sweeps <= cfg.thermalization || cfg.thermalization < 0)
        throw std::invalid_argument("sweeps must exceed thermalization >= 0");
    if (cfg.interval < 1) throw std::invalid_argument("measurement interval must be >= 1");
    if ((cfg.sweeps - cfg.thermalization + cfg.interval - 1) / cfg.interval < 4)
        throw std::invalid_argument("config yields fewer than 4 measurements per chain");
    if (cfg.replicates < 1) throw std::invalid_argument("replicates must be >= 1");
    for (double bt : cfg.grid)
        if (bt < 0) throw std::invalid_argument("grid couplings must be >= 0");
    for (const auto& b : dual.bonds)
        if (b[0] == b[1]) throw std::invalid_argument("Monte Carlo requires L >= 2 (self bond)");

    struct Task {
        std::size_t grid_idx;
        int replicate;
    };
    std::vector<Task> tasks;
    for (std::size_t gi = 0; gi < cfg.grid.size(); ++gi)
        for (int r = 0; r < cfg.replicates; ++r) tasks.push_back({gi, r});
    std::vector<ChainResult> chains(tasks.size());

    const int nthreads = std::max(1, cfg.threads);
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (;;) {
            const std::size_t t = next.fetch_add(1);
            if (t >= tasks.size()) return;
            const Task& tk = tasks[t];
            const std::uint64_t key = CounterRng::derive(cfg.seed, std::uint64_t(cfg.L),
                                                         tk.grid_idx, std::uint64_t(tk.replicate));
            chains[t] = run_chain(dual, cfg.grid[tk.grid_idx], cfg.sweeps, cfg.thermalization,
                                  cfg.interval, key);
        }
    };
    if (nthreads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int i = 0; i < nthreads; ++i) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    std::vector<ObservableSeries> out;
    for (std::size_t gi = 0; gi < cfg.grid.size(); ++gi) {
        ObservableSeries obs;
        obs.dual_betaJ = cfg.grid[gi];
        obs.n_sites = dual.n_sites;
        long acc = 0, prop = 0;
        for (std::size_t t = 0; t < tasks.size(); ++t) {
            if (tasks[t].grid_idx != gi) continue;
            const ChainResult& c = chains[t];
            obs.energy.insert(obs.energy.end(), c.energy.begin(), c.energy.end());
            obs.mag.insert(obs.mag.end(), c.mag.begin(), c.mag.end());
            acc += c.accepted;
            prop += c.proposed;
        }
        obs.acceptance = prop ? double(acc) / double(prop) : 0.0;

        const std::size_t n = obs.energy.size();
        const std::size_t nb = std::min<std::size_t>(20, std::max<std::size_t>(2, n / 2));
        Moments mm;
        std::vector<double> e2(n), mab(n), m2(n), m4(n);
        for (std::size_t i = 0; i < n; ++i) {
            e2[i] = obs.energy[i] * obs.energy[i];
            mab[i] = std::fabs(obs.mag[i]);
            m2[i] = obs.mag[i] * obs.mag[i];
            m4[i] = m2[i] * m2[i];
        }
        mm.e = bin_means(obs.energy, nb);
        mm.e2 = bin_means(e2, nb);
        mm.m_abs = bin_means(mab, nb);
        mm.m2 = bin_means(m2, nb);
        mm.m4 = bin_means(m4, nb);

        auto mean_of = [](const std::vector<double>& v) {
            double s = 0;
            for (double x : v) s += x;
            return s / double(v.size());
        };
        const double bt = obs.dual_betaJ;
        const double N = double(dual.n_sites);
        const double e_mean = mean_of(mm.e), e2_mean = mean_of(mm.e2);
        obs.e_mean = e_mean;
        obs.e_err = jackknife_err(mm.e, {}, {}, [](double a, double, double) { return a; });
        obs.cv = bt * bt * (e2_mean - e_mean * e_mean) / N;
        obs.cv_err = jackknife_err(mm.e, mm.e2, {}, [bt, N](double e, double ee, double) {
            return bt * bt * (ee - e * e) / N;
        });
        obs.m_abs = mean_of(mm.m_abs);
        obs.m_abs_err =
            jackknife_err(mm.m_abs, {}, {}, [](double a, double, double) { return a; });
        const double m2m = mean_of(mm.m2), m4m = mean_of(mm.m4);
        obs.binder = 1.0 - m4m / (3.0 * m2m * m2m);
        obs.binder_err = jackknife_err(mm.m2, mm.m4, {}, [](double a, double b, double) {
            return 1.0 - b / (3.0 * a * a);
        });
        out.push_back(std::move(obs));
    }
    return out;
}

TransitionEstimate locate_transition(const std::vector<SizeResult>& results) {
    if (results.size() < 2)
        throw std::invalid_argument("transition location needs at least two sizes");
    TransitionEstimate est;
    for (const SizeResult& r : results) {
        if (r.grid.size() < 3) throw std::invalid_argument("grid too short");
        std::size_t peak = 0;
        for (std::size_t i = 1; i < r.cv.size(); ++i)
            if (r.cv[i] > r.cv[peak]) peak = i;
        if (peak == 0 || peak + 1 == r.cv.size()) {
            std::ostringstream os;
            os << "specific-heat peak for L=" << r.L
               << " sits on the grid boundary; widen the grid";
            throw GuardError(os.str());
        }
        const double h = r.grid[peak + 1] - r.grid[peak];
        const double a = r.cv[peak - 1], b = r.cv[peak], c = r.cv[peak + 1];
        const double denom = a - 2 * b + c;
        auto vertex = [&](double bb) {
            const double d = a - 2 * bb + c;
            if (d >= 0) return r.grid[peak];  // flat or concave-up: stay on the grid point
            return r.grid[peak] + 0.5 * h * (a - c) / d;
        };
        const double pos = vertex(b);
        const double height = (denom < 0) ? b - 0.125 * (a - c) * (a - c) / denom : b;
        const double err = r.cv_err.empty() ? 0.0 : r.cv_err[peak];
        const double wiggle = std::fabs(vertex(b + err) - vertex(b - err));
        est.sizes.push_back(r.L);
        est.peak_position.push_back(pos);
        est.peak_height.push_back(height);
        est.peak_uncertainty.push_back(std::max(0.5 * h, wiggle));
    }

    double s = 0;
    for (double p : est.peak_position) s += p;
    est.dual_betaJc = s / double(est.peak_position.size());
    double spread = 0;
    for (double p : est.peak_position)
        spread = std::max(spread, std::fabs(p - est.dual_betaJc));
    double u = spread;
    for (double e : est.peak_uncertainty) u = std::max(u, e);
    est.uncertainty = u;
    est.quantum_betaJc = map_to_quantum_coupling(est.dual_betaJc);

    // Binder crossing of the first size pair, linearly interpolated
    est.binder_crossing = std::numeric_limits<double>::quiet_NaN();
    const SizeResult& r0 = results[0];
    const SizeResult& r1 = results[1];
    if (!r0.binder.empty() && r0.binder.size() == r1.binder.size() && r0.grid == r1.grid) {
        for (std::size_t i = 0; i + 1 < r0.grid.size(); ++i) {
            const double d0 = r0.binder[i] - r1.binder[i];
            const double d1 = r0.binder[i + 1] - r1.binder[i + 1];
            if (d0 == 0.0) {
                est.binder_crossing = r0.grid[i];
                break;
            }
            if (d0 * d1 < 0) {
                est.binder_crossing = r0.grid[i] + (r0.grid[i + 1] - r0.grid[i]) * d0 / (d0 - d1);
                break;
            }
        }
    }
    return est;
}

double map_to_quantum_coupling(double dual_betaJc) {
    if (!(dual_betaJc > 0)) throw std::invalid_argument("dual coupling must be positive");
    return std::atanh(std::exp(-2.0 * dual_betaJc));
}

}  // namespace bchc
