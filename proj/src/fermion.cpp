#include "tivqe/fermion.hpp"

#include <bit>
#include <sstream>
#include <stdexcept>

namespace tivqe {

FermionTerm::FermionTerm(std::vector<LadderOp> ops) : ops_(std::move(ops)) {
    for (const auto& op : ops_)
        if (op.mode < 0) throw std::invalid_argument("negative mode index");
}

FermionTerm FermionTerm::from_text(const std::string& text) {
    std::vector<LadderOp> ops;
    std::istringstream in(text);
    std::string tok;
    while (in >> tok) {
        bool create = false;
        if (tok.back() == '^') {
            create = true;
            tok.pop_back();
        }
        size_t pos = 0;
        int mode = -1;
        try {
            mode = std::stoi(tok, &pos);
        } catch (const std::exception&) {
            throw std::invalid_argument("bad ladder token");
        }
        if (pos != tok.size() || mode < 0)
            throw std::invalid_argument("bad ladder token '" + tok + "'");
        ops.push_back({mode, create});
    }
    return FermionTerm(std::move(ops));
}

std::string FermionTerm::text() const {
    std::string out;
    for (const auto& op : ops_) {
        if (!out.empty()) out += ' ';
        out += std::to_string(op.mode);
        if (op.create) out += '^';
    }
    return out;
}

int FermionTerm::max_mode() const {
    int m = -1;
    for (const auto& op : ops_) m = std::max(m, op.mode);
    return m;
}

FermionTerm FermionTerm::adjoint() const {
    std::vector<LadderOp> rev(ops_.rbegin(), ops_.rend());
    for (auto& op : rev) op.create = !op.create;
    return FermionTerm(std::move(rev));
}

void FermionSum::add(const FermionTerm& t, cplx coeff) {
    auto [it, inserted] = terms_.try_emplace(t, coeff);
    if (!inserted) it->second += coeff;
    if (std::abs(it->second) < kPruneTol) terms_.erase(it);
}

FermionSum& FermionSum::operator+=(const FermionSum& o) {
    for (const auto& [t, c] : o.terms_) add(t, c);
    return *this;
}

FermionSum& FermionSum::operator*=(cplx k) {
    if (std::abs(k) == 0.0) {
        terms_.clear();
        return *this;
    }
    for (auto& [t, c] : terms_) c *= k;
    for (auto it = terms_.begin(); it != terms_.end();)
        it = std::abs(it->second) < kPruneTol ? terms_.erase(it)
                                              : std::next(it);
    return *this;
}

FermionSum FermionSum::adjoint() const {
    FermionSum out;
    for (const auto& [t, c] : terms_) out.add(t.adjoint(), std::conj(c));
    return out;
}

cplx FermionSum::coeff(const FermionTerm& t) const {
    auto it = terms_.find(t);
    return it == terms_.end() ? cplx(0.0) : it->second;
}

int FermionSum::max_mode() const {
    int m = -1;
    for (const auto& [t, c] : terms_) m = std::max(m, t.max_mode());
    return m;
}

BasisAction apply_to_basis(const FermionTerm& t, uint64_t occupation) {
    BasisAction a{1.0, occupation, false};
    for (auto it = t.ops().rbegin(); it != t.ops().rend(); ++it) {
        const uint64_t bit = uint64_t(1) << it->mode;
        if (bool(a.mask & bit) == it->create) {
            a.vanished = true;
            return a;
        }
        if (std::popcount(a.mask & (bit - 1)) & 1) a.sign = -a.sign;
        a.mask ^= bit;
    }
    return a;
}

Eigen::MatrixXcd to_matrix(const FermionSum& f, int n_modes) {
    if (n_modes <= 0 || n_modes > kDenseLimit)
        throw std::invalid_argument("dense build limited to 1.." +
                                    std::to_string(kDenseLimit) + " modes");
    if (f.max_mode() >= n_modes)
        throw std::invalid_argument("mode index exceeds register size");
    const int64_t dim = int64_t(1) << n_modes;
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
    for (const auto& [t, c] : f)
        for (int64_t col = 0; col < dim; ++col) {
            const BasisAction a = apply_to_basis(t, uint64_t(col));
            if (!a.vanished) m(int64_t(a.mask), col) += c * a.sign;
        }
    return m;
}

}  // namespace tivqe
