#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "tivqe/circuit.hpp"
#include "tivqe/simulator.hpp"
#include "util.hpp"

using namespace tivqe;
using tivqe::test::expi;
using tivqe::test::max_abs;
using tivqe::test::random_pauli_sum;

namespace {
constexpr double kPi = 3.14159265358979323846;

Circuit random_circuit(Rng& rng, int n, int len) {
    Circuit c;
    for (int i = 0; i < len; ++i) {
        switch (rng.next_u32() % 4) {
            case 0:
                c.push_back(Gate::rot_xy(int(rng.next_u32() % n),
                                         rng.uniform(-kPi, kPi),
                                         rng.uniform(0, 2 * kPi)));
                break;
            case 1:
                c.push_back(Gate::rot_z(int(rng.next_u32() % n),
                                        rng.uniform(-kPi, kPi)));
                break;
            case 2: {
                if (n < 2) {
                    c.push_back(Gate::rot_z(0, rng.uniform(-kPi, kPi)));
                    break;
                }
                int a = int(rng.next_u32() % n);
                int b = int(rng.next_u32() % n);
                while (b == a) b = int(rng.next_u32() % n);
                c.push_back(
                    Gate::ms({a, b}, rng.uniform(-kPi, kPi)));
                break;
            }
            default:
                c.push_back(Gate::global_rot_xy(rng.uniform(-kPi, kPi),
                                                rng.uniform(0, 2 * kPi)));
                break;
        }
    }
    return c;
}

Eigen::VectorXcd random_state(Rng& rng, int n) {
    Eigen::VectorXcd psi(int64_t(1) << n);
    for (int64_t i = 0; i < psi.size(); ++i)
        psi(i) = cplx(rng.gaussian(), rng.gaussian());
    psi.normalize();
    return psi;
}
}  // namespace

TEST_CASE("basis states put the excitation where the mask says") {
    const Eigen::VectorXcd psi = basis_state(0b0101, 4);
    CHECK(psi.size() == 16);
    CHECK(std::abs(psi(5) - cplx(1, 0)) < 1e-15);
    CHECK(std::abs(psi.norm() - 1.0) < 1e-15);
}

TEST_CASE("gate application preserves norm and matches the matrices") {
    Rng rng(97, 0);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 1 + int(rng.next_u32() % 3);
        const Circuit c = random_circuit(rng, n, 6);
        const Eigen::VectorXcd psi = random_state(rng, n);

        Eigen::VectorXcd got = psi;
        apply_circuit(got, c, n);
        CHECK(std::abs(got.norm() - 1.0) < 1e-12);

        const Eigen::MatrixXcd u = circuit_matrix(c, n);
        CHECK(max_abs(Eigen::MatrixXcd(u * u.adjoint() -
                                       Eigen::MatrixXcd::Identity(
                                           u.rows(), u.cols()))) < 1e-12);
        CHECK(max_abs(Eigen::VectorXcd(got - u * psi)) < 1e-12);
    }
}

TEST_CASE("statevector expectations agree with dense algebra") {
    Rng rng(101, 0);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 1 + int(rng.next_u32() % 3);
        const PauliSum h = random_pauli_sum(rng, n, 6);
        const Eigen::VectorXcd psi = random_state(rng, n);
        const Eigen::MatrixXcd hm = to_matrix(h, n);
        const double want = (psi.adjoint() * hm * psi)(0).real();
        CHECK(expectation(psi, h) == doctest::Approx(want).epsilon(1e-10));
    }
}

TEST_CASE("basis probabilities are a distribution over outcomes") {
    Rng rng(103, 0);
    const Eigen::VectorXcd psi = random_state(rng, 3);
    const Eigen::VectorXd p = basis_probabilities(psi);
    CHECK(p.size() == 8);
    for (int64_t i = 0; i < p.size(); ++i) {
        CHECK(p(i) >= 0.0);
        CHECK(p(i) == doctest::Approx(std::norm(psi(i))));
    }
    CHECK(p.sum() == doctest::Approx(1.0));
}

TEST_CASE("noise free density evolution is plain conjugation") {
    Rng rng(107, 0);
    for (int trial = 0; trial < 10; ++trial) {
        const int n = 1 + int(rng.next_u32() % 3);
        const Circuit c = random_circuit(rng, n, 5);
        const Eigen::VectorXcd psi = random_state(rng, n);

        Eigen::MatrixXcd rho = density_from_state(psi);
        apply_circuit(rho, c, n, NoiseModel{});

        const Eigen::MatrixXcd u = circuit_matrix(c, n);
        const Eigen::MatrixXcd want =
            u * psi * psi.adjoint() * u.adjoint();
        CHECK(max_abs(Eigen::MatrixXcd(rho - want)) < 1e-12);

        const PauliSum h = random_pauli_sum(rng, n, 5);
        Eigen::VectorXcd evolved = psi;
        apply_circuit(evolved, c, n);
        CHECK(expectation(rho, h) ==
              doctest::Approx(expectation(evolved, h)).epsilon(1e-10));
    }
}

TEST_CASE("dephasing probability follows the exponential law") {
    NoiseModel nm;
    nm.kind = NoiseModel::Kind::iid;
    nm.t2_us = 40e3;
    CHECK(nm.dephasing_p(20e3) ==
          doctest::Approx(1.0 - std::exp(-0.5)).epsilon(1e-12));
    CHECK(nm.dephasing_p(0.0) == doctest::Approx(0.0));
}

TEST_CASE("uncorrelated dephasing scales coherences per differing qubit") {
    NoiseModel nm;
    nm.kind = NoiseModel::Kind::iid;
    nm.t2_us = 40e3;
    const GateDurations slow{100.0, 10.0, 20e3};
    const double p = nm.dephasing_p(20e3);
    const double f = 1.0 - 2.0 * p;

    // q0 in superposition, q1 excited: one differing qubit in the coherence
    Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(4);
    psi(0b10) = 1.0 / std::sqrt(2.0);
    psi(0b11) = 1.0 / std::sqrt(2.0);
    Eigen::MatrixXcd rho = density_from_state(psi);
    apply_circuit(rho, {Gate::rot_z(0, 0.0, slow)}, 2, nm);

    CHECK(std::abs(rho(2, 3) - cplx(0.5 * f, 0)) < 1e-12);
    CHECK(std::abs(rho(2, 2) - cplx(0.5, 0)) < 1e-12);
    CHECK(std::abs(rho.trace() - cplx(1, 0)) < 1e-12);

    // both qubits in superposition: the four site coherence decays twice
    Eigen::VectorXcd plus = Eigen::VectorXcd::Constant(4, 0.5);
    Eigen::MatrixXcd rho2 = density_from_state(plus);
    apply_circuit(rho2, {Gate::rot_z(0, 0.0, slow)}, 2, nm);
    CHECK(std::abs(rho2(0, 3) - cplx(0.25 * f * f, 0)) < 1e-12);
    CHECK(std::abs(rho2(0, 1) - cplx(0.25 * f, 0)) < 1e-12);
}

TEST_CASE("correlated dephasing matches the single qubit channel on one qubit") {
    NoiseModel iid;
    iid.kind = NoiseModel::Kind::iid;
    iid.t2_us = 40e3;
    NoiseModel col = iid;
    col.kind = NoiseModel::Kind::collective;

    const GateDurations slow{100.0, 10.0, 5e3};
    Rng rng(109, 0);
    const Eigen::VectorXcd psi = random_state(rng, 1);
    Eigen::MatrixXcd a = density_from_state(psi);
    Eigen::MatrixXcd b = a;
    apply_circuit(a, {Gate::rot_z(0, 0.4, slow)}, 1, iid);
    apply_circuit(b, {Gate::rot_z(0, 0.4, slow)}, 1, col);
    CHECK(max_abs(Eigen::MatrixXcd(a - b)) < 1e-12);
}

TEST_CASE("correlated dephasing spares balanced superpositions") {
    NoiseModel col;
    col.kind = NoiseModel::Kind::collective;
    col.t2_us = 40e3;
    const GateDurations slow{100.0, 10.0, 10e3};
    const Circuit idle = {Gate::rot_z(0, 0.0, slow)};

    Eigen::VectorXcd sheltered = Eigen::VectorXcd::Zero(4);
    sheltered(0b01) = 1.0 / std::sqrt(2.0);
    sheltered(0b10) = 1.0 / std::sqrt(2.0);
    Eigen::MatrixXcd rho = density_from_state(sheltered);
    const Eigen::MatrixXcd before = rho;
    apply_circuit(rho, idle, 2, col);
    CHECK(max_abs(Eigen::MatrixXcd(rho - before)) < 1e-12);

    Eigen::VectorXcd exposed = Eigen::VectorXcd::Zero(4);
    exposed(0b00) = 1.0 / std::sqrt(2.0);
    exposed(0b11) = 1.0 / std::sqrt(2.0);
    Eigen::MatrixXcd rho2 = density_from_state(exposed);
    apply_circuit(rho2, idle, 2, col);

    const double p = col.dephasing_p(10e3);
    const double sigma2 = -2.0 * std::log(1.0 - 2.0 * p);
    const double want = 0.5 * std::exp(-2.0 * sigma2);
    CHECK(std::abs(rho2(0, 3) - cplx(want, 0)) < 1e-12);
    CHECK(std::abs(rho2(0, 0) - cplx(0.5, 0)) < 1e-12);
}

TEST_CASE("correlated dephasing rejects fully scrambled coherence") {
    NoiseModel col;
    col.kind = NoiseModel::Kind::collective;
    col.t2_us = 10.0;
    Eigen::MatrixXcd rho = density_from_state(basis_state(0, 1));
    CHECK_THROWS_AS(apply_circuit(rho, {Gate::rot_z(0, 0.1)}, 1, col),
                    std::invalid_argument);
}

TEST_CASE("imperfect entangling pulses admix the maximally mixed state") {
    NoiseModel nm;
    nm.kind = NoiseModel::Kind::iid;
    nm.t2_us = 1e18;  // isolate the depolarizing part
    nm.ms_fidelity = 0.9;

    const Eigen::VectorXcd psi = basis_state(0, 2);
    Eigen::MatrixXcd rho = density_from_state(psi);
    const Circuit c = {Gate::ms({0, 1}, kPi / 2)};
    apply_circuit(rho, c, 2, nm);

    Eigen::VectorXcd ideal = psi;
    apply_circuit(ideal, c, 2);
    const double p = (1.0 - nm.ms_fidelity) * 15.0 / 14.0;
    const double q = p * 16.0 / 15.0;
    const Eigen::MatrixXcd want =
        (1.0 - q) * ideal * ideal.adjoint() +
        q * Eigen::MatrixXcd::Identity(4, 4) / 4.0;
    CHECK(max_abs(Eigen::MatrixXcd(rho - want)) < 1e-12);

    const double overlap = (ideal.adjoint() * rho * ideal)(0).real();
    CHECK(overlap == doctest::Approx(1.0 - q * 3.0 / 4.0).epsilon(1e-12));
    CHECK(overlap >= 1.0 - p * 14.0 / 15.0 - 1e-12);
}

TEST_CASE("subset depolarizing keeps spectators and the trace intact") {
    NoiseModel nm;
    nm.kind = NoiseModel::Kind::iid;
    nm.t2_us = 1e18;
    nm.ms_fidelity = 0.95;

    Rng rng(113, 0);
    const Eigen::VectorXcd psi = random_state(rng, 3);
    Eigen::MatrixXcd rho = density_from_state(psi);
    apply_circuit(rho, {Gate::ms({0, 2}, 0.8)}, 3, nm);

    CHECK(std::abs(rho.trace() - cplx(1, 0)) < 1e-12);
    CHECK(max_abs(Eigen::MatrixXcd(rho - rho.adjoint())) < 1e-12);

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho);
    CHECK(es.eigenvalues().minCoeff() > -1e-12);

    // the spectator marginal survives untouched
    Eigen::MatrixXcd ideal_rho = density_from_state(psi);
    apply_circuit(ideal_rho, {Gate::ms({0, 2}, 0.8)}, 3, NoiseModel{});
    Eigen::Matrix2cd marg = Eigen::Matrix2cd::Zero();
    Eigen::Matrix2cd marg_ideal = Eigen::Matrix2cd::Zero();
    for (int b1 = 0; b1 < 2; ++b1)
        for (int b1c = 0; b1c < 2; ++b1c)
            for (int rest = 0; rest < 4; ++rest) {
                const int r = ((rest & 2) << 1) | (b1 << 1) | (rest & 1);
                const int cc = ((rest & 2) << 1) | (b1c << 1) | (rest & 1);
                marg(b1, b1c) += rho(r, cc);
                marg_ideal(b1, b1c) += ideal_rho(r, cc);
            }
    CHECK(max_abs(Eigen::MatrixXcd(marg - marg_ideal)) < 1e-12);
}

TEST_CASE("noise only acts when a model is switched on") {
    NoiseModel off;
    off.ms_fidelity = 0.9;  // ignored while the channel kind is off
    Rng rng(127, 0);
    const Eigen::VectorXcd psi = random_state(rng, 2);
    Eigen::MatrixXcd rho = density_from_state(psi);
    const Circuit c = {Gate::ms({0, 1}, 0.6), Gate::rot_z(0, 0.3)};
    apply_circuit(rho, c, 2, off);
    const Eigen::MatrixXcd u = circuit_matrix(c, 2);
    CHECK(max_abs(Eigen::MatrixXcd(rho - u * psi * psi.adjoint() *
                                             u.adjoint())) < 1e-12);
}

TEST_CASE("density expectations agree with dense algebra") {
    Rng rng(131, 0);
    for (int trial = 0; trial < 10; ++trial) {
        const int n = 1 + int(rng.next_u32() % 2);
        const PauliSum h = random_pauli_sum(rng, n, 5);
        const Eigen::VectorXcd psi = random_state(rng, n);
        const Eigen::MatrixXcd rho = density_from_state(psi);
        const double want = (to_matrix(h, n) * rho).trace().real();
        CHECK(expectation(rho, h) == doctest::Approx(want).epsilon(1e-10));

        const Eigen::VectorXd probs = basis_probabilities(rho);
        for (int64_t i = 0; i < probs.size(); ++i)
            CHECK(probs(i) == doctest::Approx(std::norm(psi(i))));
    }
}

TEST_CASE("the density register refuses oversized problems") {
    Eigen::MatrixXcd rho =
        Eigen::MatrixXcd::Identity(512, 512) / 512.0;
    CHECK_THROWS_AS(apply_circuit(rho, {Gate::rot_z(0, 0.1)}, 9, NoiseModel{}),
                    std::invalid_argument);
}
