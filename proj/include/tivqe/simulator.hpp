#pragma once

#include <cstdint>

#include <Eigen/Dense>

#include "tivqe/circuit.hpp"
#include "tivqe/pauli.hpp"

namespace tivqe {

// --- pure states -----------------------------------------------------------

Eigen::VectorXcd basis_state(uint64_t mask, int n_qubits);

void apply_gate(Eigen::VectorXcd& psi, const Gate& g, int n_qubits);
void apply_circuit(Eigen::VectorXcd& psi, const Circuit& c, int n_qubits);

Eigen::MatrixXcd gate_matrix(const Gate& g, int n_qubits);
Eigen::MatrixXcd circuit_matrix(const Circuit& c, int n_qubits);

// real part of <psi|H|psi>, exact for Hermitian sums
double expectation(const Eigen::VectorXcd& psi, const PauliSum& h);
Eigen::VectorXd basis_probabilities(const Eigen::VectorXcd& psi);

// --- noisy density evolution ----------------------------------------------

struct NoiseModel {
    enum class Kind { off, iid, collective };
    Kind kind = Kind::off;
    double t2_us = 40e3;       // dephasing time
    double ms_fidelity = 1.0;  // depolarizing strength on ms pulses

    // phase-flip probability for a gate of this length
    double dephasing_p(double duration_us) const;
};

constexpr int kDensityLimit = 8;

Eigen::MatrixXcd density_from_state(const Eigen::VectorXcd& psi);

// Unitary, then dephasing on every qubit (iid or the exact collective
// channel, scaled to an equal single-qubit marginal), then the uniform
// depolarizing channel on the support of ms pulses.
void apply_gate(Eigen::MatrixXcd& rho, const Gate& g, int n_qubits,
                const NoiseModel& noise);
void apply_circuit(Eigen::MatrixXcd& rho, const Circuit& c, int n_qubits,
                   const NoiseModel& noise);

// real part of tr(rho H), exact for Hermitian sums
double expectation(const Eigen::MatrixXcd& rho, const PauliSum& h);
Eigen::VectorXd basis_probabilities(const Eigen::MatrixXcd& rho);

}  // namespace tivqe
