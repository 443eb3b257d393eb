#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "tivqe/pauli.hpp"

namespace tivqe {

struct LadderOp {
    int mode;
    bool create;
    auto operator<=>(const LadderOp&) const = default;
};

// Ordered product of ladder operators; the rightmost factor acts first.
// Text form lists modes with a trailing ^ on creations: "3^ 2^ 1 0".
class FermionTerm {
public:
    FermionTerm() = default;
    explicit FermionTerm(std::vector<LadderOp> ops);

    static FermionTerm from_text(const std::string& text);
    std::string text() const;

    bool is_identity() const { return ops_.empty(); }
    const std::vector<LadderOp>& ops() const { return ops_; }
    int max_mode() const;

    // reversed order with daggers flipped
    FermionTerm adjoint() const;

    bool operator==(const FermionTerm& o) const { return ops_ == o.ops_; }
    bool operator<(const FermionTerm& o) const { return ops_ < o.ops_; }

private:
    std::vector<LadderOp> ops_;
};

// Weighted sum of ladder products. Terms are kept exactly as written; equal
// op sequences merge, but no normal ordering is attempted.
class FermionSum {
public:
    static constexpr double kPruneTol = 1e-14;

    using Terms = std::map<FermionTerm, cplx>;

    FermionSum() = default;

    void add(const FermionTerm& t, cplx coeff);
    FermionSum& operator+=(const FermionSum& o);
    FermionSum& operator*=(cplx k);
    FermionSum adjoint() const;

    cplx coeff(const FermionTerm& t) const;
    size_t size() const { return terms_.size(); }
    bool empty() const { return terms_.empty(); }
    const Terms& terms() const { return terms_; }
    Terms::const_iterator begin() const { return terms_.begin(); }
    Terms::const_iterator end() const { return terms_.end(); }

    int max_mode() const;

private:
    Terms terms_;
};

struct BasisAction {
    double sign = 1.0;
    uint64_t mask = 0;
    bool vanished = false;
};

// Action on an occupation bitmask (mode p = bit p); the sign counts occupied
// modes below the acted mode at the moment each factor applies.
BasisAction apply_to_basis(const FermionTerm& t, uint64_t occupation);

// Dense Fock-space build with the same bit convention; rejects >12 modes.
Eigen::MatrixXcd to_matrix(const FermionSum& f, int n_modes);

}  // namespace tivqe
