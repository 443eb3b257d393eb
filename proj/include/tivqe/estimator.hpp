#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "tivqe/circuit.hpp"
#include "tivqe/pauli.hpp"
#include "tivqe/philox.hpp"
#include "tivqe/simulator.hpp"

namespace tivqe {

// One projective measurement basis together with the Hamiltonian terms it
// serves.  The basis is itself a Pauli string: the axis pinned on each
// measured qubit; unlisted qubits are read in Z but feed no term.
struct MeasurementSetting {
    PauliString basis;
    std::vector<std::pair<PauliString, double>> terms;
};

// Greedy first-fit grouping by descending |coefficient| into qubitwise
// compatible settings.  Every non-identity term lands in exactly one
// setting; the identity is left for the analytic offset.
std::vector<MeasurementSetting> plan_measurements(const PauliSum& h);

// Rotations mapping each pinned axis onto Z right before readout.
Circuit measurement_prefix(const MeasurementSetting& s,
                           const GateDurations& dur = {});

using Counts = std::map<uint64_t, uint64_t>;

// Projective samples of the rotated state in the computational basis.
Counts sample_counts(const Eigen::VectorXcd& psi,
                     const MeasurementSetting& s, uint64_t shots, Rng& rng);

// Same, with the analysis pulses subject to the noise model.
Counts sample_counts(const Eigen::MatrixXcd& rho,
                     const MeasurementSetting& s, int n_qubits,
                     const NoiseModel& noise, uint64_t shots, Rng& rng);

struct EnergyEstimate {
    double value = 0;
    double std = 0;
    // per-term sample means, aligned with the flattened plan order
    std::vector<std::pair<PauliString, double>> term_expectations;
    std::vector<uint64_t> shots_per_setting;
};

// Energy from per-setting counts: identity offset plus coefficient-weighted
// parity means.  Bit b reads +1 when clear and -1 when set.  The quoted std
// propagates per-term sample variances and, for terms sharing a setting,
// their sample covariances.
EnergyEstimate estimate(const PauliSum& h,
                        const std::vector<MeasurementSetting>& plan,
                        const std::vector<Counts>& counts);

// Infinite-shot limit: the exact expectation with zero spread.
EnergyEstimate exact_estimate(const Eigen::VectorXcd& psi, const PauliSum& h);
EnergyEstimate exact_estimate(const Eigen::MatrixXcd& rho, const PauliSum& h);

// Smallest per-setting repetition count r with
// sqrt(sum_t c_t^2 (1 - m_t^2) / r) <= target, taking m from
// `expectations` and 0 (worst case) where a term is missing.
uint64_t shots_for_accuracy(const PauliSum& h,
                            const std::map<PauliString, double>& expectations,
                            double target);

// Equal split by default; the weighted flag biases the same total toward
// settings with larger served |coefficient| mass.
std::vector<uint64_t> allocate_shots(
    const std::vector<MeasurementSetting>& plan, uint64_t per_setting,
    bool weighted = false);

}  // namespace tivqe
