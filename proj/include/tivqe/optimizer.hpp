#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "tivqe/ansatz.hpp"
#include "tivqe/estimator.hpp"

namespace tivqe {

// One noisy objective evaluation: the estimated value and the shot-noise
// standard deviation the estimator quotes for it (0 for exact costs).
struct CostSample {
    double value = 0.0;
    double std = 0.0;
};

// theta is the full parameter vector, eval_index the global evaluation
// counter. Costs must be reproducible from (their own seed, eval_index).
using CostFunction =
    std::function<CostSample(const std::vector<double>&, uint64_t)>;

struct NelderMeadOptions {
    double reflection = 1.0;
    double expansion = 2.0;
    double contraction = 0.5;
    double shrink = 0.5;
    // edge length of the initial axis-aligned simplex, radians
    double initial_edge = 0.5;
    // stop once every vertex sits within this distance of the best one
    double simplex_tolerance = 1e-8;
    uint64_t max_evaluations = 2000;
};

// Additive positive perturbations drawn uniformly from [lo, hi] Hartree.
// Every ranking pass adds a fresh draw to each stored vertex value and a
// new evaluation competes with its own draw, so no vertex retains a lucky
// offset and the simplex keeps churning at the noise scale. The run keeps
// iterating until the rolling standard deviation of accepted values falls
// to the distribution mean (or the simplex collapses), then performs
// extra_iterations more simplex iterations whose evaluations are flagged
// as the sampling phase.
struct AnnealSchedule {
    double lo = 0.01;
    double hi = 0.08;
    int extra_iterations = 15;
    int window = 5;
    double mean() const { return 0.5 * (lo + hi); }
    double variance() const { return (hi - lo) * (hi - lo) / 12.0; }
};

struct OptimizerTrace {
    struct Entry {
        std::vector<double> theta;
        double energy = 0.0;        // cost value, without the perturbation
        double qpn_std = 0.0;
        double perturbation = 0.0;  // annealing offset the optimizer saw
        bool accepted = false;      // entered the simplex
        bool sampling_phase = false;
    };
    std::vector<Entry> entries;
    std::string terminal_reason;
    std::vector<double> terminal_theta;
    double terminal_energy = 0.0;
};

// Stream tag separating perturbation draws from cost sampling streams; a
// run seeded s takes draw k from Rng(s ^ kAnnealStream, k).
inline constexpr uint64_t kAnnealStream = 0x616e6e65616c;

// reduce an angle to [0, 2pi) for reporting; optimization runs unwrapped
double wrap_angle(double theta);

OptimizerTrace nelder_mead(const CostFunction& cost,
                           const std::vector<double>& theta0,
                           const NelderMeadOptions& options = {});

OptimizerTrace annealed_nelder_mead(const CostFunction& cost,
                                    const std::vector<double>& theta0,
                                    const AnnealSchedule& schedule,
                                    uint64_t seed,
                                    const NelderMeadOptions& options = {});

// A full variational run against one Hamiltonian: prepare the reference,
// apply the compiled ansatz rotations, then either evaluate expectations
// exactly (shots == 0) or sample every measurement setting.
struct VqeProblem {
    PauliSum hamiltonian;
    AnsatzSpec ansatz;
    std::vector<double> theta0;  // empty means all zeros
    NoiseModel noise{};
    uint64_t shots = 0;  // total across settings; 0 means exact expectations
    bool weighted_allocation = false;
    GateDurations durations{};
    uint64_t seed = 1;
};

struct OptimizerChoice {
    bool annealed = false;
    NelderMeadOptions nm{};
    AnnealSchedule schedule{};
};

OptimizerTrace vqe_run(const VqeProblem& problem,
                       const OptimizerChoice& choice = {});

}  // namespace tivqe
