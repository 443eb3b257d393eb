#include "tivqe/pauli.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace tivqe {

char axis_char(Axis a) {
    switch (a) {
        case Axis::X: return 'X';
        case Axis::Y: return 'Y';
        case Axis::Z: return 'Z';
    }
    throw std::logic_error("bad axis");
}

Axis axis_from_char(char c) {
    switch (c) {
        case 'X': return Axis::X;
        case 'Y': return Axis::Y;
        case 'Z': return Axis::Z;
    }
    throw std::invalid_argument(std::string("bad axis character '") + c +
                                "'");
}

PauliString::PauliString(std::vector<std::pair<int, Axis>> ops)
    : ops_(std::move(ops)) {
    std::sort(ops_.begin(), ops_.end());
    for (size_t i = 0; i < ops_.size(); ++i) {
        if (ops_[i].first < 0)
            throw std::invalid_argument("negative qubit index");
        if (i > 0 && ops_[i].first == ops_[i - 1].first)
            throw std::invalid_argument("duplicate qubit in Pauli string");
    }
}

PauliString PauliString::from_text(const std::string& text) {
    std::vector<std::pair<int, Axis>> ops;
    std::istringstream in(text);
    std::string tok;
    while (in >> tok) {
        if (tok.size() < 2)
            throw std::invalid_argument("bad Pauli token '" + tok + "'");
        const Axis a = axis_from_char(tok[0]);
        size_t pos = 0;
        const int q = std::stoi(tok.substr(1), &pos);
        if (pos != tok.size() - 1 || q < 0)
            throw std::invalid_argument("bad Pauli token '" + tok + "'");
        ops.emplace_back(q, a);
    }
    return PauliString(std::move(ops));
}

std::string PauliString::text() const {
    std::string out;
    for (const auto& [q, a] : ops_) {
        if (!out.empty()) out += ' ';
        out += axis_char(a);
        out += std::to_string(q);
    }
    return out;
}

uint8_t PauliString::axis_on(int q) const {
    auto it = std::lower_bound(
        ops_.begin(), ops_.end(), q,
        [](const auto& p, int v) { return p.first < v; });
    if (it == ops_.end() || it->first != q) return 0;
    return uint8_t(it->second);
}

namespace {

// single-qubit product table: a*b = phase * c, indexed [a][b] with 0 = I
struct MulEntry {
    cplx phase;
    uint8_t axis;
};

const MulEntry kMul[4][4] = {
    {{1, 0}, {1, 1}, {1, 2}, {1, 3}},
    {{1, 1}, {1, 0}, {{0, 1}, 3}, {{0, -1}, 2}},
    {{1, 2}, {{0, -1}, 3}, {1, 0}, {{0, 1}, 1}},
    {{1, 3}, {{0, 1}, 2}, {{0, -1}, 1}, {1, 0}},
};

}  // namespace

std::pair<cplx, PauliString> multiply(const PauliString& p,
                                      const PauliString& q) {
    std::vector<std::pair<int, Axis>> out;
    out.reserve(p.ops().size() + q.ops().size());
    cplx phase = 1.0;
    auto pi = p.ops().begin(), pe = p.ops().end();
    auto qi = q.ops().begin(), qe = q.ops().end();
    while (pi != pe || qi != qe) {
        if (qi == qe || (pi != pe && pi->first < qi->first)) {
            out.push_back(*pi++);
        } else if (pi == pe || qi->first < pi->first) {
            out.push_back(*qi++);
        } else {
            const MulEntry& e = kMul[uint8_t(pi->second)][uint8_t(qi->second)];
            phase *= e.phase;
            if (e.axis != 0)
                out.emplace_back(pi->first, Axis(e.axis));
            ++pi;
            ++qi;
        }
    }
    return {phase, PauliString(std::move(out))};
}

bool commutes(const PauliString& p, const PauliString& q) {
    int anticommuting_overlaps = 0;
    auto pi = p.ops().begin(), pe = p.ops().end();
    auto qi = q.ops().begin(), qe = q.ops().end();
    while (pi != pe && qi != qe) {
        if (pi->first < qi->first) {
            ++pi;
        } else if (qi->first < pi->first) {
            ++qi;
        } else {
            if (pi->second != qi->second) ++anticommuting_overlaps;
            ++pi;
            ++qi;
        }
    }
    return anticommuting_overlaps % 2 == 0;
}

bool qubitwise_commutes(const PauliString& p, const PauliString& q) {
    auto pi = p.ops().begin(), pe = p.ops().end();
    auto qi = q.ops().begin(), qe = q.ops().end();
    while (pi != pe && qi != qe) {
        if (pi->first < qi->first) {
            ++pi;
        } else if (qi->first < pi->first) {
            ++qi;
        } else {
            if (pi->second != qi->second) return false;
            ++pi;
            ++qi;
        }
    }
    return true;
}

PauliSum::PauliSum(Terms terms) : terms_(std::move(terms)) {
    for (auto it = terms_.begin(); it != terms_.end();)
        it = std::abs(it->second) < kPruneTol ? terms_.erase(it)
                                              : std::next(it);
}

void PauliSum::add(const PauliString& s, cplx coeff) {
    auto [it, inserted] = terms_.try_emplace(s, coeff);
    if (!inserted) it->second += coeff;
    if (std::abs(it->second) < kPruneTol) terms_.erase(it);
}

PauliSum& PauliSum::operator+=(const PauliSum& o) {
    for (const auto& [s, c] : o.terms_) add(s, c);
    return *this;
}

PauliSum& PauliSum::operator*=(cplx k) {
    if (std::abs(k) == 0.0) {
        terms_.clear();
        return *this;
    }
    for (auto& [s, c] : terms_) c *= k;
    for (auto it = terms_.begin(); it != terms_.end();)
        it = std::abs(it->second) < kPruneTol ? terms_.erase(it)
                                              : std::next(it);
    return *this;
}

PauliSum operator*(const PauliSum& a, const PauliSum& b) {
    PauliSum out;
    for (const auto& [sa, ca] : a.terms_)
        for (const auto& [sb, cb] : b.terms_) {
            auto [phase, s] = multiply(sa, sb);
            out.add(s, phase * ca * cb);
        }
    return out;
}

cplx PauliSum::coeff(const PauliString& s) const {
    auto it = terms_.find(s);
    return it == terms_.end() ? cplx(0.0) : it->second;
}

int PauliSum::max_qubit() const {
    int m = -1;
    for (const auto& [s, c] : terms_) m = std::max(m, s.max_qubit());
    return m;
}

bool PauliSum::is_hermitian(double tol) const {
    for (const auto& [s, c] : terms_)
        if (std::abs(c.imag()) > tol) return false;
    return true;
}

namespace {

void check_dense(int n_qubits, int max_index) {
    if (n_qubits <= 0 || n_qubits > kDenseLimit)
        throw std::invalid_argument("dense build limited to 1.." +
                                    std::to_string(kDenseLimit) + " qubits");
    if (max_index >= n_qubits)
        throw std::invalid_argument("qubit index exceeds register size");
}

}  // namespace

std::pair<cplx, uint64_t> apply_to_basis(const PauliString& p,
                                         uint64_t basis) {
    cplx phase = 1.0;
    uint64_t out = basis;
    for (const auto& [q, a] : p.ops()) {
        const uint64_t bit = (basis >> q) & 1;
        switch (a) {
            case Axis::X:
                out ^= uint64_t(1) << q;
                break;
            case Axis::Y:
                out ^= uint64_t(1) << q;
                phase *= bit ? cplx(0, -1) : cplx(0, 1);
                break;
            case Axis::Z:
                if (bit) phase = -phase;
                break;
        }
    }
    return {phase, out};
}

Eigen::MatrixXcd to_matrix(const PauliString& s, int n_qubits) {
    check_dense(n_qubits, s.max_qubit());
    const int64_t dim = int64_t(1) << n_qubits;
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
    for (int64_t col = 0; col < dim; ++col) {
        auto [phase, row] = apply_to_basis(s, uint64_t(col));
        m(int64_t(row), col) = phase;
    }
    return m;
}

Eigen::MatrixXcd to_matrix(const PauliSum& h, int n_qubits) {
    check_dense(n_qubits, h.max_qubit());
    const int64_t dim = int64_t(1) << n_qubits;
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
    for (const auto& [s, c] : h)
        for (int64_t col = 0; col < dim; ++col) {
            auto [phase, row] = apply_to_basis(s, uint64_t(col));
            m(int64_t(row), col) += c * phase;
        }
    return m;
}

PauliSum conjugate_frame(const PauliSum& h, const PauliString& frame) {
    PauliSum out;
    for (const auto& [s, c] : h)
        out.add(s, commutes(s, frame) ? c : -c);
    return out;
}

}  // namespace tivqe
