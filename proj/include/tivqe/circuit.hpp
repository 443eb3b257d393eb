#pragma once

#include <cstdint>
#include <vector>

#include "tivqe/pauli.hpp"

namespace tivqe {

// Defaults for noise scheduling; the paper-style trap gives only T2 and a
// cycle time, so these stay configuration rather than constants.
struct GateDurations {
    double ms_us = 100.0;
    double global_rot_us = 10.0;
    double addressed_us = 20.0;
};

enum class GateKind : uint8_t {
    rot_xy,         // exp(-i theta/2 (cos(phase) X + sin(phase) Y)), one qubit
    global_rot_xy,  // the same rotation on every qubit of the register
    rot_z,          // diag(e^{-i theta/2}, e^{+i theta/2})
    addressed_pi,   // Z exactly (no global phase)
    ms,             // exp(-i theta/2 sum_{i<j in qubits} X_i X_j)
};

struct Gate {
    GateKind kind;
    std::vector<int> qubits;  // sorted; empty for global_rot_xy
    double theta = 0.0;
    double phase = 0.0;  // xy-plane axis azimuth, rot_xy variants only
    double duration_us = 0.0;

    static Gate rot_xy(int q, double theta, double phase,
                       const GateDurations& dur = {});
    static Gate global_rot_xy(double theta, double phase,
                              const GateDurations& dur = {});
    static Gate rot_z(int q, double theta, const GateDurations& dur = {});
    static Gate addressed_pi(int q, const GateDurations& dur = {});
    static Gate ms(std::vector<int> qubits, double theta,
                   const GateDurations& dur = {});
};

using Circuit = std::vector<Gate>;

double total_duration_us(const Circuit& c);

// Gate list for exp(-i theta G), exact including global phase. Weight-1
// strings become one rotation; larger strings use an entangling sandwich:
// basis changes V, MS(support, pi/2), a Z rotation on the lowest support
// qubit, and the inverses. Rejects the identity string.
Circuit compile_pauli_rotation(const PauliString& g, double theta,
                               const GateDurations& dur = {});

// Rewrites each MS pulse on n-1 of the n qubits as two half-angle MS
// pulses over the full register straddled by echo pulses on the excluded
// qubit; the identity is exact with no global phase. MS pulses on the full
// register pass through; smaller subsets are rejected (one echo qubit per
// pulse). Other gates are untouched.
Circuit refocus_ms(const Circuit& c, int n_qubits,
                   const GateDurations& dur = {});

}  // namespace tivqe
