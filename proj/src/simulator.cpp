#include "tivqe/simulator.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace tivqe {

namespace {

void check_register(int n_qubits, int limit = kDenseLimit) {
    if (n_qubits <= 0 || n_qubits > limit)
        throw std::invalid_argument("register limited to 1.." +
                                    std::to_string(limit) + " qubits");
}

void check_gate(const Gate& g, int n_qubits) {
    if (!g.qubits.empty() && g.qubits.back() >= n_qubits)
        throw std::invalid_argument("qubit index exceeds register size");
}

// u acting on qubit q of psi
void apply_single(Eigen::VectorXcd& psi, int q,
                  const Eigen::Matrix2cd& u) {
    const int64_t stride = int64_t(1) << q;
    const int64_t dim = psi.size();
    for (int64_t base = 0; base < dim; base += 2 * stride)
        for (int64_t low = 0; low < stride; ++low) {
            const int64_t i0 = base + low;
            const int64_t i1 = i0 + stride;
            const cplx a = psi(i0), b = psi(i1);
            psi(i0) = u(0, 0) * a + u(0, 1) * b;
            psi(i1) = u(1, 0) * a + u(1, 1) * b;
        }
}

Eigen::Matrix2cd xy_matrix(double theta, double phase) {
    const double c = std::cos(theta / 2), s = std::sin(theta / 2);
    Eigen::Matrix2cd u;
    u(0, 0) = c;
    u(0, 1) = cplx(0, -1) * std::exp(cplx(0, -phase)) * s;
    u(1, 0) = cplx(0, -1) * std::exp(cplx(0, phase)) * s;
    u(1, 1) = c;
    return u;
}

const Eigen::Matrix2cd kHadamard = [] {
    Eigen::Matrix2cd h;
    const double r = 1.0 / std::sqrt(2.0);
    h << r, r, r, -r;
    return h;
}();

uint64_t subset_mask(const std::vector<int>& qubits) {
    uint64_t m = 0;
    for (int q : qubits) m |= uint64_t(1) << q;
    return m;
}

}  // namespace

Eigen::VectorXcd basis_state(uint64_t mask, int n_qubits) {
    check_register(n_qubits);
    const int64_t dim = int64_t(1) << n_qubits;
    if (int64_t(mask) >= dim)
        throw std::invalid_argument("basis mask exceeds register size");
    Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(dim);
    psi(int64_t(mask)) = 1.0;
    return psi;
}

void apply_gate(Eigen::VectorXcd& psi, const Gate& g, int n_qubits) {
    check_gate(g, n_qubits);
    const int64_t dim = psi.size();
    switch (g.kind) {
        case GateKind::rot_xy:
            apply_single(psi, g.qubits[0], xy_matrix(g.theta, g.phase));
            return;
        case GateKind::global_rot_xy: {
            const Eigen::Matrix2cd u = xy_matrix(g.theta, g.phase);
            for (int q = 0; q < n_qubits; ++q) apply_single(psi, q, u);
            return;
        }
        case GateKind::rot_z: {
            const int64_t bit = int64_t(1) << g.qubits[0];
            const cplx lo = std::exp(cplx(0, -g.theta / 2));
            const cplx hi = std::exp(cplx(0, g.theta / 2));
            for (int64_t i = 0; i < dim; ++i)
                psi(i) *= (i & bit) ? hi : lo;
            return;
        }
        case GateKind::addressed_pi: {
            const int64_t bit = int64_t(1) << g.qubits[0];
            for (int64_t i = 0; i < dim; ++i)
                if (i & bit) psi(i) = -psi(i);
            return;
        }
        case GateKind::ms: {
            // diagonal in the X basis: phases from the total spin
            // projection m over the subset
            const int k = int(g.qubits.size());
            for (int q : g.qubits) apply_single(psi, q, kHadamard);
            const uint64_t mask = subset_mask(g.qubits);
            for (int64_t i = 0; i < dim; ++i) {
                const int m = k - 2 * std::popcount(uint64_t(i) & mask);
                const double ang =
                    -(g.theta / 2) * double(m * m - k) / 2.0;
                psi(i) *= std::exp(cplx(0, ang));
            }
            for (int q : g.qubits) apply_single(psi, q, kHadamard);
            return;
        }
    }
    throw std::logic_error("bad gate kind");
}

void apply_circuit(Eigen::VectorXcd& psi, const Circuit& c, int n_qubits) {
    for (const Gate& g : c) apply_gate(psi, g, n_qubits);
}

Eigen::MatrixXcd gate_matrix(const Gate& g, int n_qubits) {
    check_register(n_qubits);
    const int64_t dim = int64_t(1) << n_qubits;
    Eigen::MatrixXcd u(dim, dim);
    for (int64_t col = 0; col < dim; ++col) {
        Eigen::VectorXcd psi = basis_state(uint64_t(col), n_qubits);
        apply_gate(psi, g, n_qubits);
        u.col(col) = psi;
    }
    return u;
}

Eigen::MatrixXcd circuit_matrix(const Circuit& c, int n_qubits) {
    check_register(n_qubits);
    const int64_t dim = int64_t(1) << n_qubits;
    Eigen::MatrixXcd u(dim, dim);
    for (int64_t col = 0; col < dim; ++col) {
        Eigen::VectorXcd psi = basis_state(uint64_t(col), n_qubits);
        apply_circuit(psi, c, n_qubits);
        u.col(col) = psi;
    }
    return u;
}

double expectation(const Eigen::VectorXcd& psi, const PauliSum& h) {
    const int64_t dim = psi.size();
    cplx out = 0.0;
    for (const auto& [s, c] : h) {
        cplx acc = 0.0;
        for (int64_t col = 0; col < dim; ++col) {
            if (psi(col) == cplx(0.0)) continue;
            auto [phase, row] = apply_to_basis(s, uint64_t(col));
            acc += std::conj(psi(int64_t(row))) * phase * psi(col);
        }
        out += c * acc;
    }
    return out.real();
}

Eigen::VectorXd basis_probabilities(const Eigen::VectorXcd& psi) {
    return psi.cwiseAbs2();
}

// --- noisy density evolution ----------------------------------------------

double NoiseModel::dephasing_p(double duration_us) const {
    return 1.0 - std::exp(-duration_us / t2_us);
}

Eigen::MatrixXcd density_from_state(const Eigen::VectorXcd& psi) {
    return psi * psi.adjoint();
}

namespace {

// rho *= factor^(bits differing between row and column)
void iid_dephase(Eigen::MatrixXcd& rho, double factor) {
    const int64_t dim = rho.rows();
    for (int64_t r = 0; r < dim; ++r)
        for (int64_t c = 0; c < dim; ++c) {
            const int d = std::popcount(uint64_t(r) ^ uint64_t(c));
            if (d) rho(r, c) *= std::pow(factor, d);
        }
}

// exact average over a shared Gaussian Z rotation with variance sigma2
void collective_dephase(Eigen::MatrixXcd& rho, double sigma2) {
    const int64_t dim = rho.rows();
    for (int64_t r = 0; r < dim; ++r)
        for (int64_t c = 0; c < dim; ++c) {
            const int d = std::popcount(uint64_t(r)) -
                          std::popcount(uint64_t(c));
            if (d) rho(r, c) *= std::exp(-sigma2 * double(d * d) / 2.0);
        }
}

// uniform depolarizing over the subset: with probability q the subset is
// replaced by the maximally mixed state
void depolarize_subset(Eigen::MatrixXcd& rho, uint64_t mask, int k,
                       double q) {
    const int64_t dim = rho.rows();
    const uint64_t rest = uint64_t(dim - 1) & ~mask;
    Eigen::MatrixXcd mixed = Eigen::MatrixXcd::Zero(dim, dim);
    // iterate basis pairs of the spectator bits
    for (uint64_t r = 0;; r = (r - rest) & rest) {
        for (uint64_t c = 0;; c = (c - rest) & rest) {
            cplx tr = 0.0;
            for (uint64_t s = 0;; s = (s - mask) & mask) {
                tr += rho(int64_t(r | s), int64_t(c | s));
                if (s == mask) break;
            }
            const cplx fill = tr / double(int64_t(1) << k);
            for (uint64_t s = 0;; s = (s - mask) & mask) {
                mixed(int64_t(r | s), int64_t(c | s)) = fill;
                if (s == mask) break;
            }
            if (c == rest) break;
        }
        if (r == rest) break;
    }
    rho = (1.0 - q) * rho + q * mixed;
}

}  // namespace

void apply_gate(Eigen::MatrixXcd& rho, const Gate& g, int n_qubits,
                const NoiseModel& noise) {
    check_register(n_qubits, kDensityLimit);
    check_gate(g, n_qubits);

    // U rho U^ via two column passes; no dense gate matrix is formed
    Eigen::MatrixXcd work = rho;
    for (int64_t col = 0; col < work.cols(); ++col) {
        Eigen::VectorXcd v = work.col(col);
        apply_gate(v, g, n_qubits);
        work.col(col) = v;
    }
    work.adjointInPlace();
    for (int64_t col = 0; col < work.cols(); ++col) {
        Eigen::VectorXcd v = work.col(col);
        apply_gate(v, g, n_qubits);
        work.col(col) = v;
    }
    rho = work.adjoint();

    if (noise.kind == NoiseModel::Kind::off) return;

    const double p_d = noise.dephasing_p(g.duration_us);
    const double coherence = 1.0 - 2.0 * p_d;
    if (noise.kind == NoiseModel::Kind::iid) {
        iid_dephase(rho, coherence);
    } else {
        if (coherence <= 0.0)
            throw std::invalid_argument(
                "gate too long for the collective channel calibration");
        // variance chosen so the single-qubit marginal matches the iid
        // factor for the same gate
        collective_dephase(rho, -2.0 * std::log(coherence));
    }

    if (g.kind == GateKind::ms && noise.ms_fidelity < 1.0) {
        const int k = int(g.qubits.size());
        const double pauli_count = std::pow(4.0, k);
        const double p =
            (1.0 - noise.ms_fidelity) * (pauli_count - 1) / (pauli_count - 2);
        const double q = p * pauli_count / (pauli_count - 1);
        depolarize_subset(rho, subset_mask(g.qubits), k, q);
    }
}

void apply_circuit(Eigen::MatrixXcd& rho, const Circuit& c, int n_qubits,
                   const NoiseModel& noise) {
    for (const Gate& g : c) apply_gate(rho, g, n_qubits, noise);
}

double expectation(const Eigen::MatrixXcd& rho, const PauliSum& h) {
    const int64_t dim = rho.rows();
    cplx out = 0.0;
    for (const auto& [s, c] : h) {
        cplx acc = 0.0;
        // tr(rho P) = sum_col <col| rho P |col>
        for (int64_t col = 0; col < dim; ++col) {
            auto [phase, row] = apply_to_basis(s, uint64_t(col));
            acc += rho(col, int64_t(row)) * phase;
        }
        out += c * acc;
    }
    return out.real();
}

Eigen::VectorXd basis_probabilities(const Eigen::MatrixXcd& rho) {
    return rho.diagonal().real();
}

}  // namespace tivqe
