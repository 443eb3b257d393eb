#include "tivqe/estimator.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

namespace tivqe {

namespace {

constexpr double kHalfPi = 1.57079632679489661923;

bool compatible(const PauliString& basis, const PauliString& term) {
    return qubitwise_commutes(basis, term);
}

PauliString merge_basis(const PauliString& basis, const PauliString& term) {
    std::map<int, Axis> axes;
    for (const auto& [q, a] : basis.ops()) axes[q] = a;
    for (const auto& [q, a] : term.ops()) axes[q] = a;
    std::vector<std::pair<int, Axis>> ops(axes.begin(), axes.end());
    return PauliString(std::move(ops));
}

int parity(uint64_t bits, uint64_t mask) {
    return (std::popcount(bits & mask) & 1) ? -1 : 1;
}

uint64_t support_mask(const PauliString& s) {
    uint64_t m = 0;
    for (const auto& [q, a] : s.ops()) m |= uint64_t(1) << q;
    return m;
}

Counts draw(const Eigen::VectorXd& probs, uint64_t shots, Rng& rng) {
    std::vector<double> cdf(size_t(probs.size()));
    double acc = 0;
    for (int64_t i = 0; i < probs.size(); ++i) {
        acc += std::max(0.0, probs(i));
        cdf[size_t(i)] = acc;
    }
    Counts out;
    for (uint64_t k = 0; k < shots; ++k) {
        const double u = rng.uniform(0.0, acc);
        const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
        const uint64_t b =
            uint64_t(std::min<ptrdiff_t>(it - cdf.begin(),
                                         ptrdiff_t(cdf.size()) - 1));
        ++out[b];
    }
    return out;
}

}  // namespace

std::vector<MeasurementSetting> plan_measurements(const PauliSum& h) {
    std::vector<std::pair<PauliString, double>> terms;
    for (const auto& [s, c] : h) {
        if (s.ops().empty()) continue;
        if (std::abs(c.imag()) > 1e-10 * std::max(1.0, std::abs(c)))
            throw std::invalid_argument("measurement plan needs a Hermitian sum");
        terms.emplace_back(s, c.real());
    }
    std::stable_sort(terms.begin(), terms.end(),
                     [](const auto& a, const auto& b) {
                         return std::abs(a.second) > std::abs(b.second);
                     });
    std::vector<MeasurementSetting> plan;
    for (const auto& [s, c] : terms) {
        bool placed = false;
        for (MeasurementSetting& setting : plan) {
            if (compatible(setting.basis, s)) {
                setting.basis = merge_basis(setting.basis, s);
                setting.terms.emplace_back(s, c);
                placed = true;
                break;
            }
        }
        if (!placed) plan.push_back({s, {{s, c}}});
    }
    return plan;
}

Circuit measurement_prefix(const MeasurementSetting& s,
                           const GateDurations& dur) {
    Circuit out;
    for (const auto& [q, a] : s.basis.ops()) {
        if (a == Axis::X)
            out.push_back(Gate::rot_xy(q, -kHalfPi, kHalfPi, dur));
        else if (a == Axis::Y)
            out.push_back(Gate::rot_xy(q, kHalfPi, 0.0, dur));
    }
    return out;
}

Counts sample_counts(const Eigen::VectorXcd& psi,
                     const MeasurementSetting& s, uint64_t shots, Rng& rng) {
    const int n = int(std::countr_zero(uint64_t(psi.size())));
    Eigen::VectorXcd rotated = psi;
    apply_circuit(rotated, measurement_prefix(s), n);
    return draw(basis_probabilities(rotated), shots, rng);
}

Counts sample_counts(const Eigen::MatrixXcd& rho,
                     const MeasurementSetting& s, int n_qubits,
                     const NoiseModel& noise, uint64_t shots, Rng& rng) {
    Eigen::MatrixXcd rotated = rho;
    apply_circuit(rotated, measurement_prefix(s), n_qubits, noise);
    return draw(basis_probabilities(rotated), shots, rng);
}

EnergyEstimate estimate(const PauliSum& h,
                        const std::vector<MeasurementSetting>& plan,
                        const std::vector<Counts>& counts) {
    if (counts.size() != plan.size())
        throw std::invalid_argument("one counts table per setting required");

    EnergyEstimate out;
    out.value = h.coeff(PauliString()).real();
    double var = 0;

    for (size_t i = 0; i < plan.size(); ++i) {
        const MeasurementSetting& setting = plan[i];
        const Counts& table = counts[i];
        uint64_t r = 0;
        for (const auto& [b, k] : table) r += k;
        if (r == 0)
            throw std::invalid_argument("empty counts for a setting");
        out.shots_per_setting.push_back(r);

        std::vector<uint64_t> masks;
        std::vector<double> means;
        for (const auto& [s, c] : setting.terms) {
            const uint64_t mask = support_mask(s);
            double m = 0;
            for (const auto& [b, k] : table)
                m += double(k) * parity(b, mask);
            m /= double(r);
            masks.push_back(mask);
            means.push_back(m);
            out.term_expectations.emplace_back(s, m);
            out.value += c * m;
        }
        // sample covariance of the parity means over the shared counts
        for (size_t t = 0; t < setting.terms.size(); ++t) {
            for (size_t u = 0; u < setting.terms.size(); ++u) {
                double joint = 0;
                for (const auto& [b, k] : table)
                    joint += double(k) * parity(b, masks[t] ^ masks[u]);
                joint /= double(r);
                const double cov =
                    (joint - means[t] * means[u]) / double(r);
                var += setting.terms[t].second * setting.terms[u].second *
                       cov;
            }
        }
    }
    out.std = std::sqrt(std::max(0.0, var));
    return out;
}

EnergyEstimate exact_estimate(const Eigen::VectorXcd& psi,
                              const PauliSum& h) {
    EnergyEstimate out;
    out.value = expectation(psi, h);
    for (const auto& [s, c] : h) {
        if (s.ops().empty()) continue;
        PauliSum one;
        one.add(s, 1.0);
        out.term_expectations.emplace_back(s, expectation(psi, one));
    }
    return out;
}

EnergyEstimate exact_estimate(const Eigen::MatrixXcd& rho,
                              const PauliSum& h) {
    EnergyEstimate out;
    out.value = expectation(rho, h);
    for (const auto& [s, c] : h) {
        if (s.ops().empty()) continue;
        PauliSum one;
        one.add(s, 1.0);
        out.term_expectations.emplace_back(s, expectation(rho, one));
    }
    return out;
}

uint64_t shots_for_accuracy(const PauliSum& h,
                            const std::map<PauliString, double>& expectations,
                            double target) {
    if (!(target > 0))
        throw std::invalid_argument("accuracy target must be positive");
    double weighted_var = 0;
    for (const auto& [s, c] : h) {
        if (s.ops().empty()) continue;
        double m = 0;
        const auto it = expectations.find(s);
        if (it != expectations.end()) m = it->second;
        weighted_var += std::norm(c) * (1.0 - m * m);
    }
    const double r = weighted_var / (target * target);
    if (!(r < 9e18)) throw std::invalid_argument("target unreachably tight");
    return std::max<uint64_t>(1, uint64_t(std::ceil(r)));
}

std::vector<uint64_t> allocate_shots(
    const std::vector<MeasurementSetting>& plan, uint64_t per_setting,
    bool weighted) {
    std::vector<uint64_t> out(plan.size(), per_setting);
    if (!weighted || plan.empty()) return out;

    const uint64_t total = per_setting * plan.size();
    std::vector<double> w(plan.size(), 0.0);
    double sum = 0;
    for (size_t i = 0; i < plan.size(); ++i) {
        for (const auto& [s, c] : plan[i].terms) w[i] += std::abs(c);
        sum += w[i];
    }
    if (sum <= 0) return out;

    // floor first, then hand the remainder to the largest fractions
    std::vector<double> frac(plan.size());
    uint64_t used = 0;
    for (size_t i = 0; i < plan.size(); ++i) {
        const double share = double(total) * w[i] / sum;
        out[i] = std::max<uint64_t>(1, uint64_t(share));
        frac[i] = share - double(uint64_t(share));
        used += out[i];
    }
    std::vector<size_t> order(plan.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(),
                     [&](size_t a, size_t b) { return frac[a] > frac[b]; });
    for (size_t k = 0; used < total; k = (k + 1) % order.size()) {
        ++out[order[k]];
        ++used;
    }
    return out;
}

}  // namespace tivqe
