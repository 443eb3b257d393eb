#include "tivqe/ansatz.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace tivqe {

namespace {

FermionTerm excitation_term(const ExcitationOperator& op) {
    std::vector<LadderOp> ops;
    for (auto it = op.virtuals.rbegin(); it != op.virtuals.rend(); ++it)
        ops.push_back({*it, true});
    for (auto it = op.occupied.rbegin(); it != op.occupied.rend(); ++it)
        ops.push_back({*it, false});
    return FermionTerm(std::move(ops));
}

// exp(-i theta H) |basis>, H Hermitian, dense
Eigen::VectorXcd expi_on_basis(const PauliSum& h, int n_qubits,
                               double theta, uint64_t basis) {
    const Eigen::MatrixXcd hm = to_matrix(h, n_qubits);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(hm);
    const Eigen::VectorXcd coeffs =
        es.eigenvectors().row(Eigen::Index(basis)).conjugate();
    Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(hm.rows());
    for (Eigen::Index k = 0; k < hm.rows(); ++k)
        psi += coeffs(k) * std::exp(cplx(0, -theta * es.eigenvalues()(k))) *
               es.eigenvectors().col(k);
    return psi;
}

}  // namespace

std::string ExcitationOperator::descriptor() const {
    return excitation_term(*this).text();
}

FermionSum ExcitationOperator::anti_hermitian() const {
    const FermionTerm t = excitation_term(*this);
    FermionSum out;
    out.add(t, 1.0);
    out.add(t.adjoint(), -1.0);
    return out;
}

std::vector<ExcitationOperator> uccsd_generators(int n_occupied,
                                                 int n_virtual) {
    if (n_occupied < 0 || n_virtual < 0)
        throw std::invalid_argument("negative orbital count");
    std::vector<ExcitationOperator> out;
    const int lo = n_occupied;
    const int hi = n_occupied + n_virtual;
    for (int o = 0; o < n_occupied; ++o)
        for (int v = lo; v < hi; ++v)
            out.push_back({ExcitationOperator::Kind::single, {o}, {v}});
    for (int o1 = 0; o1 < n_occupied; ++o1)
        for (int o2 = o1 + 1; o2 < n_occupied; ++o2)
            for (int v1 = lo; v1 < hi; ++v1)
                for (int v2 = v1 + 1; v2 < hi; ++v2)
                    out.push_back({ExcitationOperator::Kind::double_,
                                   {o1, o2},
                                   {v1, v2}});
    return out;
}

std::vector<double> align_amplitudes(
    const std::vector<ExcitationOperator>& ops,
    const std::map<std::string, double>& by_descriptor) {
    std::vector<double> out;
    out.reserve(ops.size());
    for (const ExcitationOperator& op : ops) {
        const auto it = by_descriptor.find(op.descriptor());
        if (it == by_descriptor.end())
            throw std::invalid_argument("no amplitude for " +
                                        op.descriptor());
        out.push_back(it->second);
    }
    return out;
}

std::vector<ExcitationOperator> screen(
    const std::vector<ExcitationOperator>& ops,
    const std::vector<double>& amplitudes, double threshold) {
    if (ops.size() != amplitudes.size())
        throw std::invalid_argument("amplitude list does not match ops");
    std::vector<ExcitationOperator> out;
    for (size_t i = 0; i < ops.size(); ++i)
        if (std::abs(amplitudes[i]) >= threshold) out.push_back(ops[i]);
    return out;
}

PauliSum excitation_exponent(const ExcitationOperator& op, int n_modes,
                             Mapping mapping) {
    PauliSum g = transform(op.anti_hermitian(), n_modes, mapping);
    g *= cplx(0, 1);
    return g;
}

void AnsatzSpec::add(AnsatzEntry entry) {
    if (entry.generator.max_qubit() >= n_qubits)
        throw std::invalid_argument("generator exceeds the register");
    if (!std::isfinite(entry.scale) || entry.scale == 0.0)
        throw std::invalid_argument("bad generator scale");
    bool flips = false;
    for (const auto& [q, a] : entry.generator.ops())
        if (a != Axis::Z) flips = true;
    if (!flips)
        throw std::invalid_argument(
            "generator does not change reference populations");
    entries.push_back(std::move(entry));
}

PauliString min_weight_subterm(const PauliSum& exponent) {
    if (exponent.begin() == exponent.end())
        throw std::invalid_argument("empty exponent");
    const PauliString* best = nullptr;
    for (const auto& [s, c] : exponent)
        if (!best || s.weight() < best->weight()) best = &s;
    return *best;
}

AnsatzEntry subterm_approximation(const PauliSum& exponent,
                                  const PauliString& keep,
                                  const std::string& parameter) {
    bool found = false;
    for (const auto& [s, c] : exponent)
        if (s == keep) found = true;
    if (!found)
        throw std::invalid_argument("kept term is not part of the exponent");
    return {parameter, keep, 1.0, true};
}

AnsatzEntry reduce_on_reference(const PauliSum& exponent, uint64_t reference,
                                int n_qubits, const std::string& parameter) {
    if (exponent.begin() == exponent.end())
        throw std::invalid_argument("empty exponent");

    std::vector<const PauliString*> strings;
    double max_coeff = 0;
    for (const auto& [s, c] : exponent) {
        strings.push_back(&s);
        max_coeff = std::max(max_coeff, std::abs(c));
    }
    for (size_t i = 0; i < strings.size(); ++i) {
        for (size_t j = i + 1; j < strings.size(); ++j)
            if (!commutes(*strings[i], *strings[j]))
                throw std::invalid_argument(
                    "exponent terms do not commute; use a subterm "
                    "approximation");
    }

    cplx w = 0;
    uint64_t flipped = reference;
    bool first = true;
    for (const auto& [s, c] : exponent) {
        if (std::abs(c.imag()) > 1e-10 * std::max(1.0, max_coeff))
            throw std::invalid_argument("exponent is not Hermitian");
        const auto [phase, m] = apply_to_basis(s, reference);
        if (m == reference)
            throw std::invalid_argument(
                "exponent term acts diagonally on the reference; use a "
                "subterm approximation");
        if (first) {
            flipped = m;
            first = false;
        } else if (m != flipped) {
            throw std::invalid_argument(
                "exponent terms reach different states from the reference; "
                "use a subterm approximation");
        }
        w += c * phase;
    }

    const PauliString rep = min_weight_subterm(exponent);
    const cplx rep_phase = apply_to_basis(rep, reference).first;
    const cplx scale = w / rep_phase;
    if (std::abs(scale.imag()) > 1e-10 * (1.0 + std::abs(scale)))
        throw std::invalid_argument(
            "exponent terms interfere on the reference; use a subterm "
            "approximation");

    AnsatzEntry entry{parameter, rep, scale.real(), false};

    // the closed form above is only trusted after a direct comparison
    PauliSum reduced;
    reduced.add(rep, entry.scale);
    for (const double theta : {0.234567, 1.1, 2.6}) {
        const Eigen::VectorXcd full =
            expi_on_basis(exponent, n_qubits, theta, reference);
        const Eigen::VectorXcd one =
            expi_on_basis(reduced, n_qubits, theta, reference);
        if ((full - one).norm() > 1e-10)
            throw std::logic_error(
                "reduced rotation does not reproduce the exponent action");
    }
    return entry;
}

}  // namespace tivqe
