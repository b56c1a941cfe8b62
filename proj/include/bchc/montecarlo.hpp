#pragma once

#include <cstdint>
#include <vector>

#include "bchc/lattice.hpp"

namespace bchc {

// Counter-based stream: output j of stream (key) is mix(key + j * gamma).
// Streams for distinct (size, temperature, replicate) triples are derived
// from the master seed and never overlap by construction.
class CounterRng {
  public:
    explicit CounterRng(std::uint64_t key) : key_(key) {}
    static std::uint64_t mix(std::uint64_t v);
    static std::uint64_t derive(std::uint64_t master, std::uint64_t a, std::uint64_t b,
                                std::uint64_t c);
    std::uint64_t next_u64() { return mix(key_ + (++ctr_) * kGamma); }
    double uniform() { return double(next_u64() >> 11) * 0x1.0p-53; }

  private:
    static constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ull;
    std::uint64_t key_ = 0;
    std::uint64_t ctr_ = 0;
};

struct MCConfig {
    int L = 4;
    std::vector<double> grid;  // dual couplings, >= 0 (0 = infinite temperature)
    long sweeps = 20000;
    long thermalization = 5000;
    int interval = 2;
    std::uint64_t seed = 1;
    int replicates = 1;
    int threads = 1;
};

struct ObservableSeries {
    double dual_betaJ = 0;
    int n_sites = 0;
    std::vector<double> energy;  // per measurement, total energy
    std::vector<double> mag;     // per measurement, signed magnetization per site
    double acceptance = 0;

    double e_mean = 0, e_err = 0;        // per measurement mean of total E
    double cv = 0, cv_err = 0;           // btilde^2 Var(E) / N
    double m_abs = 0, m_abs_err = 0;
    double binder = 0, binder_err = 0;   // 1 - <m^4>/(3<m^2>^2)
};

// Single-flip Metropolis, sequential site order within a sweep. Deterministic
// for a given config; chains parallelize over (grid point, replicate).
std::vector<ObservableSeries> run_ising_mc(const DualIsingGraph& dual, const MCConfig& cfg);

struct SizeResult {
    int L = 0;
    std::vector<double> grid;
    std::vector<double> cv, cv_err;
    std::vector<double> binder;
};

struct TransitionEstimate {
    double dual_betaJc = 0;
    double uncertainty = 0;
    double quantum_betaJc = 0;
    std::vector<int> sizes;
    std::vector<double> peak_position;  // per size, parabola-refined
    std::vector<double> peak_height;
    std::vector<double> peak_uncertainty;
    double binder_crossing = 0;  // NaN when no crossing inside the grid
};

// Specific-heat peak per size plus a Binder-cumulant crossing cross-check.
// Throws GuardError when a peak sits on the grid boundary.
TransitionEstimate locate_transition(const std::vector<SizeResult>& results);

// Inverse of dual_coupling: betaJ = artanh(exp(-2 btilde)).
double map_to_quantum_coupling(double dual_betaJc);

}  // namespace bchc
