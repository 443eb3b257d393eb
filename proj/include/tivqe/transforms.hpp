#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "tivqe/fermion.hpp"
#include "tivqe/pauli.hpp"

namespace tivqe {

enum class Mapping { jw, bk };

// a^_p -> (X_p - i Y_p)/2 . Z_{p-1} ... Z_0
PauliSum jw_ladder(int mode, bool dagger);

// parent[j] of the Fenwick pairing over modes 0..n-1; the root n-1 has none
std::map<int, int> fenwick_parents(int n_modes);

// Per-mode index sets of the Fenwick encoding: update U(j) is the parent
// chain, parity P(j) covers the occupation parity of modes below j, flip
// F(j) is the direct children, remainder rho(j) is P(j) minus F(j). All
// sorted ascending.
struct BkSets {
    std::vector<std::vector<int>> update, parity, flip, remainder;
    int n_modes = 0;
};

BkSets bk_sets(int n_modes);

// a^_j = (c_j - i d_j)/2 with c_j = X_{U(j)} X_j Z_{P(j)} and
// d_j = X_{U(j)} Y_j Z_{rho(j)}
PauliSum bk_ladder(int mode, bool dagger, const BkSets& sets);

// occupation bitmask -> encoded qubit bitmask (subtree occupation parities)
uint64_t bk_encode(uint64_t occupation, int n_modes);

// Maps every ladder product and accumulates; pruned once at the end at the
// PauliSum tolerance.
PauliSum transform(const FermionSum& f, int n_modes, Mapping mapping);

// qubits the sum touches with Z at most, ascending
std::vector<int> iz_only_qubits(const PauliSum& h, int n_qubits);

struct TaperResult {
    PauliSum hamiltonian;
    std::map<int, int> removed;  // dropped qubit -> substituted Z eigenvalue
    std::map<int, int> relabel;  // retained old index -> compacted index
    uint64_t reference = 0;      // input reference mask, compacted
};

// Substitutes the reference-state Z eigenvalue on every I/Z-only qubit and
// compacts the remaining labels.
TaperResult taper(const PauliSum& h, int n_qubits, uint64_t reference);

// Drops terms acting with X or Y outside `support`; spectator Z factors
// stay in place for a later taper.
PauliSum restrict_support(const PauliSum& h, const std::vector<int>& support);

// Reuses a taper computed from one operator on another one living on the
// same source register, e.g. an excitation exponent sharing the
// Hamiltonian's symmetry sector.  Rejects sums with X or Y on a dropped
// qubit since those leave the sector.
PauliSum apply_taper(const PauliSum& h, const TaperResult& t);

}  // namespace tivqe
