#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace tivqe {

using cplx = std::complex<double>;

enum class Axis : uint8_t { X = 1, Y = 2, Z = 3 };

char axis_char(Axis a);
Axis axis_from_char(char c);

// Tensor product of single-qubit Paulis, stored sparsely as a sorted
// (qubit, axis) list. Unlisted qubits carry the identity; an empty list is
// the identity string.
class PauliString {
public:
    PauliString() = default;
    explicit PauliString(std::vector<std::pair<int, Axis>> ops);

    // "X0 Z1 Y2"; the empty string parses to the identity
    static PauliString from_text(const std::string& text);
    std::string text() const;

    bool is_identity() const { return ops_.empty(); }
    int weight() const { return int(ops_.size()); }
    int max_qubit() const { return ops_.empty() ? -1 : ops_.back().first; }
    const std::vector<std::pair<int, Axis>>& ops() const { return ops_; }

    // 0 when this string is identity on q
    uint8_t axis_on(int q) const;

    bool operator==(const PauliString& o) const { return ops_ == o.ops_; }
    bool operator!=(const PauliString& o) const { return ops_ != o.ops_; }
    // lexicographic by (qubit, axis); the canonical term order everywhere
    bool operator<(const PauliString& o) const { return ops_ < o.ops_; }

private:
    std::vector<std::pair<int, Axis>> ops_;
};

// phase * result == matrix product p*q; phase is one of {1, -1, i, -i}
std::pair<cplx, PauliString> multiply(const PauliString& p,
                                      const PauliString& q);

bool commutes(const PauliString& p, const PauliString& q);

// true iff on every qubit the strings agree or at least one is identity
bool qubitwise_commutes(const PauliString& p, const PauliString& q);

// Weighted sum of Pauli strings. Coefficients below the pruning tolerance
// are dropped on every mutation, so a stored term is always significant.
class PauliSum {
public:
    static constexpr double kPruneTol = 1e-10;

    using Terms = std::map<PauliString, cplx>;

    PauliSum() = default;
    explicit PauliSum(Terms terms);

    void add(const PauliString& s, cplx coeff);
    PauliSum& operator+=(const PauliSum& o);
    PauliSum& operator*=(cplx k);

    friend PauliSum operator+(PauliSum a, const PauliSum& b) {
        a += b;
        return a;
    }
    friend PauliSum operator*(const PauliSum& a, const PauliSum& b);
    friend PauliSum operator*(PauliSum a, cplx k) {
        a *= k;
        return a;
    }

    cplx coeff(const PauliString& s) const;
    size_t size() const { return terms_.size(); }
    bool empty() const { return terms_.empty(); }
    const Terms& terms() const { return terms_; }
    Terms::const_iterator begin() const { return terms_.begin(); }
    Terms::const_iterator end() const { return terms_.end(); }

    int max_qubit() const;
    bool is_hermitian(double tol = 1e-12) const;

private:
    Terms terms_;
};

// Dense Kronecker build with qubit 0 least significant. Rejects requests
// beyond the 12-qubit dense limit instead of truncating.
constexpr int kDenseLimit = 12;

Eigen::MatrixXcd to_matrix(const PauliString& s, int n_qubits);
Eigen::MatrixXcd to_matrix(const PauliSum& h, int n_qubits);

// frame * h * frame; term strings are unchanged, signs flip where the term
// anticommutes with the frame. Involution.
PauliSum conjugate_frame(const PauliSum& h, const PauliString& frame);

// P|basis> = phase |flipped basis>; bit i of the masks is qubit i
std::pair<cplx, uint64_t> apply_to_basis(const PauliString& p, uint64_t basis);

}  // namespace tivqe
