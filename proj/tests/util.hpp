#pragma once

#include <string>

#include <Eigen/Dense>

#include "tivqe/pauli.hpp"
#include "tivqe/philox.hpp"

namespace tivqe::test {

inline std::string data_path(const std::string& name) {
    return std::string(TIVQE_DATA_DIR "/") + name;
}

inline double max_abs(const Eigen::MatrixXcd& m) {
    return m.cwiseAbs().maxCoeff();
}

// exp(-i theta H) for Hermitian H, via eigendecomposition
inline Eigen::MatrixXcd expi(const Eigen::MatrixXcd& h, double theta) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
    const Eigen::VectorXd& w = es.eigenvalues();
    Eigen::VectorXcd phases(w.size());
    for (Eigen::Index i = 0; i < w.size(); ++i)
        phases(i) = std::exp(cplx(0.0, -theta * w(i)));
    return es.eigenvectors() * phases.asDiagonal() *
           es.eigenvectors().adjoint();
}

inline PauliString random_pauli(Rng& rng, int n_qubits,
                                bool allow_identity = true) {
    for (;;) {
        std::vector<std::pair<int, Axis>> ops;
        for (int q = 0; q < n_qubits; ++q) {
            const uint32_t a = rng.next_u32() % 4;
            if (a != 0) ops.emplace_back(q, Axis(a));
        }
        if (allow_identity || !ops.empty())
            return PauliString(std::move(ops));
    }
}

inline PauliSum random_pauli_sum(Rng& rng, int n_qubits, int n_terms,
                                 bool hermitian = true) {
    PauliSum h;
    for (int t = 0; t < n_terms; ++t) {
        const double re = rng.uniform(-1.0, 1.0);
        const double im = hermitian ? 0.0 : rng.uniform(-1.0, 1.0);
        h.add(random_pauli(rng, n_qubits), cplx(re, im));
    }
    return h;
}

}  // namespace tivqe::test
