#pragma once

#include <map>
#include <string>
#include <vector>

#include "tivqe/fermion.hpp"
#include "tivqe/pauli.hpp"
#include "tivqe/transforms.hpp"

namespace tivqe {

// One coupled-cluster excitation between a set of occupied and a set of
// virtual spin orbitals.  The circuit implements the anti-Hermitian
// combination t - t^dagger of the excitation it describes.
struct ExcitationOperator {
    enum class Kind { single, double_ };

    Kind kind = Kind::single;
    std::vector<int> occupied;  // ascending
    std::vector<int> virtuals;  // ascending

    // canonical text of t with creation modes descending, e.g. "3^ 2^ 1 0";
    // doubles as the parameter identifier and the amplitude file key
    std::string descriptor() const;

    // t - t^dagger
    FermionSum anti_hermitian() const;
};

// All singles and doubles from modes [0, n_occupied) into
// [n_occupied, n_occupied + n_virtual), singles first.
std::vector<ExcitationOperator> uccsd_generators(int n_occupied,
                                                 int n_virtual);

// Amplitudes for `ops` in order, looked up by descriptor; a missing
// descriptor throws.
std::vector<double> align_amplitudes(
    const std::vector<ExcitationOperator>& ops,
    const std::map<std::string, double>& by_descriptor);

// Keeps ops[i] with |amplitudes[i]| >= threshold, order preserved.
std::vector<ExcitationOperator> screen(
    const std::vector<ExcitationOperator>& ops,
    const std::vector<double>& amplitudes, double threshold);

// Hermitian exponent G = i (t - t^dagger) mapped to qubits, so that the
// excitation unitary is exp(-i theta G).  Coefficients are real.
PauliSum excitation_exponent(const ExcitationOperator& op, int n_modes,
                             Mapping mapping);

// One circuit-ready parameter: rotation generated by a single Pauli string,
// exp(-i scale * theta * generator).
struct AnsatzEntry {
    std::string parameter;
    PauliString generator;
    double scale = 1.0;
    bool approximated = false;
};

struct AnsatzSpec {
    std::vector<AnsatzEntry> entries;
    uint64_t reference = 0;
    int n_qubits = 0;

    // rejects generators that leave the reference populations alone
    void add(AnsatzEntry entry);
};

// Collapses a commuting multi-term exponent to one representative string
// whose rotation acts on `reference` exactly like the full exponential.
// The representative is the lowest-weight term, ties broken by string
// order; the action match is verified numerically before returning.
// Exponents without the equal-action structure are rejected; use
// subterm_approximation for those.
AnsatzEntry reduce_on_reference(const PauliSum& exponent, uint64_t reference,
                                int n_qubits, const std::string& parameter);

// Keeps exactly the chosen term of the exponent as the generator with unit
// scale and marks the entry approximate.
AnsatzEntry subterm_approximation(const PauliSum& exponent,
                                  const PauliString& keep,
                                  const std::string& parameter);

// Default subterm choice: lowest weight, ties broken by string order.
PauliString min_weight_subterm(const PauliSum& exponent);

}  // namespace tivqe
