#include "tivqe/circuit.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace tivqe {

namespace {

constexpr double kPi = 3.14159265358979323846;

void check_qubit(int q) {
    if (q < 0) throw std::invalid_argument("negative qubit index");
}

}  // namespace

Gate Gate::rot_xy(int q, double theta, double phase,
                  const GateDurations& dur) {
    check_qubit(q);
    return {GateKind::rot_xy, {q}, theta, phase, dur.addressed_us};
}

Gate Gate::global_rot_xy(double theta, double phase,
                         const GateDurations& dur) {
    return {GateKind::global_rot_xy, {}, theta, phase, dur.global_rot_us};
}

Gate Gate::rot_z(int q, double theta, const GateDurations& dur) {
    check_qubit(q);
    return {GateKind::rot_z, {q}, theta, 0.0, dur.addressed_us};
}

Gate Gate::addressed_pi(int q, const GateDurations& dur) {
    check_qubit(q);
    return {GateKind::addressed_pi, {q}, 0.0, 0.0, dur.addressed_us};
}

Gate Gate::ms(std::vector<int> qubits, double theta,
              const GateDurations& dur) {
    std::sort(qubits.begin(), qubits.end());
    if (qubits.size() < 2)
        throw std::invalid_argument("ms needs at least two qubits");
    if (qubits.front() < 0)
        throw std::invalid_argument("negative qubit index");
    if (std::adjacent_find(qubits.begin(), qubits.end()) != qubits.end())
        throw std::invalid_argument("duplicate qubit in ms subset");
    return {GateKind::ms, std::move(qubits), theta, 0.0, dur.ms_us};
}

double total_duration_us(const Circuit& c) {
    double t = 0.0;
    for (const Gate& g : c) t += g.duration_us;
    return t;
}

namespace {

// v with v^ T v = G for single-qubit axes; identity when T == G
Gate basis_change(int q, Axis t, Axis g, const GateDurations& dur) {
    const double h = kPi / 2;
    if (t == Axis::X && g == Axis::Y) return Gate::rot_z(q, -h, dur);
    if (t == Axis::X && g == Axis::Z) return Gate::rot_xy(q, h, h, dur);
    if (t == Axis::Y && g == Axis::X) return Gate::rot_z(q, h, dur);
    if (t == Axis::Y && g == Axis::Z) return Gate::rot_xy(q, -h, 0.0, dur);
    if (t == Axis::Z && g == Axis::X) return Gate::rot_xy(q, -h, h, dur);
    if (t == Axis::Z && g == Axis::Y) return Gate::rot_xy(q, h, 0.0, dur);
    throw std::logic_error("axes equal");
}

Gate inverse_rot(const Gate& g) {
    Gate inv = g;
    inv.theta = -inv.theta;
    return inv;
}

}  // namespace

Circuit compile_pauli_rotation(const PauliString& g, double theta,
                               const GateDurations& dur) {
    if (g.is_identity())
        throw std::invalid_argument("cannot compile the identity string");
    const auto& ops = g.ops();
    if (ops.size() == 1) {
        const auto [q, axis] = ops.front();
        switch (axis) {
            case Axis::X: return {Gate::rot_xy(q, 2 * theta, 0.0, dur)};
            case Axis::Y:
                return {Gate::rot_xy(q, 2 * theta, kPi / 2, dur)};
            case Axis::Z: return {Gate::rot_z(q, 2 * theta, dur)};
        }
    }

    const int k = int(ops.size());
    std::vector<int> support;
    for (const auto& [q, axis] : ops) support.push_back(q);
    const int target = support.front();

    // MS(support, pi/2) conjugation turns Z on the target into
    // s * P_target * prod X over the rest, with P and s fixed by k mod 4
    const Axis native_target = (k % 2 == 1) ? Axis::Z : Axis::Y;
    const double s = (k % 4 == 1 || k % 4 == 2) ? 1.0 : -1.0;

    Circuit pre;
    for (const auto& [q, axis] : ops) {
        const Axis native = (q == target) ? native_target : Axis::X;
        if (native != axis) pre.push_back(basis_change(q, native, axis, dur));
    }

    Circuit out = pre;
    out.push_back(Gate::ms(support, kPi / 2, dur));
    out.push_back(Gate::rot_z(target, 2 * s * theta, dur));
    out.push_back(Gate::ms(support, -kPi / 2, dur));
    for (auto it = pre.rbegin(); it != pre.rend(); ++it)
        out.push_back(inverse_rot(*it));
    return out;
}

Circuit refocus_ms(const Circuit& c, int n_qubits,
                   const GateDurations& dur) {
    Circuit out;
    for (const Gate& g : c) {
        if (!g.qubits.empty() && g.qubits.back() >= n_qubits)
            throw std::invalid_argument("qubit index exceeds register size");
        if (g.kind != GateKind::ms || int(g.qubits.size()) == n_qubits) {
            out.push_back(g);
            continue;
        }
        if (int(g.qubits.size()) != n_qubits - 1)
            throw std::invalid_argument(
                "refocusing echoes out exactly one qubit per pulse");
        int echo = -1;
        for (int q = 0, i = 0; q < n_qubits; ++q) {
            if (i < int(g.qubits.size()) && g.qubits[size_t(i)] == q) {
                ++i;
            } else {
                echo = q;
                break;
            }
        }
        std::vector<int> all(static_cast<size_t>(n_qubits), 0);
        for (int q = 0; q < n_qubits; ++q) all[size_t(q)] = q;
        out.push_back(Gate::ms(all, g.theta / 2, dur));
        out.push_back(Gate::addressed_pi(echo, dur));
        out.push_back(Gate::ms(all, g.theta / 2, dur));
        out.push_back(Gate::addressed_pi(echo, dur));
    }
    return out;
}

}  // namespace tivqe
