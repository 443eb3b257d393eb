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
using tivqe::test::random_pauli;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("gate factories validate their inputs") {
    CHECK_THROWS_AS(Gate::ms({0}, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(Gate::ms({1, 1}, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(Gate::rot_z(-1, 1.0), std::invalid_argument);
    const Gate g = Gate::ms({2, 0}, 0.5);
    CHECK(g.qubits == std::vector<int>{0, 2});
}

TEST_CASE("default durations follow the gate class") {
    CHECK(Gate::ms({0, 1}, 1.0).duration_us == 100.0);
    CHECK(Gate::global_rot_xy(1.0, 0.0).duration_us == 10.0);
    CHECK(Gate::rot_xy(0, 1.0, 0.0).duration_us == 20.0);
    CHECK(Gate::rot_z(0, 1.0).duration_us == 20.0);
    CHECK(Gate::addressed_pi(0).duration_us == 20.0);

    const GateDurations slow{200.0, 15.0, 30.0};
    CHECK(Gate::ms({0, 1}, 1.0, slow).duration_us == 200.0);
    CHECK(Gate::rot_z(0, 1.0, slow).duration_us == 30.0);

    const Circuit c = {Gate::ms({0, 1}, 1.0), Gate::rot_z(0, 1.0),
                       Gate::addressed_pi(1)};
    CHECK(total_duration_us(c) == 140.0);
}

TEST_CASE("single qubit rotations match their exponentials") {
    Rng rng(61, 0);
    for (int trial = 0; trial < 20; ++trial) {
        const double theta = rng.uniform(-2 * kPi, 2 * kPi);
        const double phase = rng.uniform(0, 2 * kPi);

        const Eigen::MatrixXcd x = to_matrix(PauliString::from_text("X0"), 1);
        const Eigen::MatrixXcd y = to_matrix(PauliString::from_text("Y0"), 1);
        const Eigen::MatrixXcd z = to_matrix(PauliString::from_text("Z0"), 1);

        CHECK(max_abs(gate_matrix(Gate::rot_xy(0, theta, phase), 1) -
                      expi(std::cos(phase) * x + std::sin(phase) * y,
                           theta / 2)) < 1e-12);
        CHECK(max_abs(gate_matrix(Gate::rot_z(0, theta), 1) -
                      expi(z, theta / 2)) < 1e-12);
    }
    CHECK(max_abs(gate_matrix(Gate::addressed_pi(0), 1) -
                  to_matrix(PauliString::from_text("Z0"), 1)) < 1e-15);
}

TEST_CASE("global rotation is the product of addressed ones") {
    Rng rng(67, 0);
    const double theta = rng.uniform(-kPi, kPi);
    const double phase = rng.uniform(0, 2 * kPi);
    const int n = 3;
    Eigen::MatrixXcd prod =
        Eigen::MatrixXcd::Identity(int64_t(1) << n, int64_t(1) << n);
    for (int q = 0; q < n; ++q)
        prod = gate_matrix(Gate::rot_xy(q, theta, phase), n) * prod;
    CHECK(max_abs(gate_matrix(Gate::global_rot_xy(theta, phase), n) - prod) <
          1e-12);
}

TEST_CASE("entangling pulse matches the pair sum exponential") {
    Rng rng(71, 0);
    for (int trial = 0; trial < 10; ++trial) {
        const double phi = rng.uniform(-kPi, kPi);
        PauliSum pairs2;
        pairs2.add(PauliString::from_text("X0 X1"), 1.0);
        CHECK(max_abs(gate_matrix(Gate::ms({0, 1}, phi), 2) -
                      expi(to_matrix(pairs2, 2), phi / 2)) < 1e-12);

        PauliSum skip;
        skip.add(PauliString::from_text("X0 X2"), 1.0);
        CHECK(max_abs(gate_matrix(Gate::ms({0, 2}, phi), 3) -
                      expi(to_matrix(skip, 3), phi / 2)) < 1e-12);

        PauliSum three;
        three.add(PauliString::from_text("X0 X1"), 1.0);
        three.add(PauliString::from_text("X0 X2"), 1.0);
        three.add(PauliString::from_text("X1 X2"), 1.0);
        CHECK(max_abs(gate_matrix(Gate::ms({0, 1, 2}, phi), 3) -
                      expi(to_matrix(three, 3), phi / 2)) < 1e-12);
    }
}

TEST_CASE("compiled rotations reproduce the string exponentials") {
    Rng rng(73, 0);
    int checked = 0;
    while (checked < 100) {
        const int n = 2 + int(rng.next_u32() % 3);
        const PauliString g = random_pauli(rng, n, false);
        const double theta = rng.uniform(-kPi, kPi);
        const Circuit c = compile_pauli_rotation(g, theta);
        const Eigen::MatrixXcd want = expi(to_matrix(g, n), theta);
        CHECK(max_abs(circuit_matrix(c, n) - want) < 1e-10);
        ++checked;
    }
}

TEST_CASE("every weight appears among the compiled strings") {
    // fixed guards on the sign bookkeeping per weight class
    Rng rng(79, 0);
    const char* strings[] = {"X0",        "Y1",         "Z0",
                             "X0 Y1",     "Z0 Z1",      "Y0 X1 Z2",
                             "X0 X1 X2",  "Z0 Y1 X2 Z3", "X0 Y1 Z2 X3"};
    for (const char* txt : strings) {
        const PauliString g = PauliString::from_text(txt);
        const int n = g.max_qubit() + 1;
        const double theta = rng.uniform(-kPi, kPi);
        const Circuit c = compile_pauli_rotation(g, theta);
        CHECK(max_abs(circuit_matrix(c, n) - expi(to_matrix(g, n), theta)) <
              1e-10);
    }
    CHECK_THROWS_AS(compile_pauli_rotation(PauliString(), 0.3),
                    std::invalid_argument);
}

TEST_CASE("weight one compiles to a single rotation") {
    CHECK(compile_pauli_rotation(PauliString::from_text("X3"), 0.2).size() ==
          1);
    CHECK(compile_pauli_rotation(PauliString::from_text("Z1"), 0.2).size() ==
          1);
    // a two qubit string whose axes already match the native sandwich
    const Circuit c =
        compile_pauli_rotation(PauliString::from_text("Y0 X1"), 0.2);
    CHECK(c.size() == 3);
    CHECK(c[0].kind == GateKind::ms);
    CHECK(c[1].kind == GateKind::rot_z);
    CHECK(c[2].kind == GateKind::ms);
}

TEST_CASE("refocusing reproduces the subset pulse exactly") {
    Rng rng(83, 0);
    for (int a = 0; a < 3; ++a)
        for (int b = a + 1; b < 3; ++b)
            for (int trial = 0; trial < 5; ++trial) {
                const double phi = rng.uniform(-kPi, kPi);
                const Circuit sub = {Gate::ms({a, b}, phi)};
                const Circuit ref = refocus_ms(sub, 3);
                CHECK(ref.size() == 4);
                CHECK(max_abs(circuit_matrix(ref, 3) -
                              circuit_matrix(sub, 3)) < 1e-12);
            }
}

TEST_CASE("refocusing passes full register pulses through") {
    const Circuit c = {Gate::ms({0, 1, 2}, 0.7), Gate::rot_z(1, 0.3)};
    const Circuit r = refocus_ms(c, 3);
    CHECK(r.size() == 2);
    CHECK(r[0].kind == GateKind::ms);

    const Circuit small = {Gate::ms({0, 1}, 0.7)};
    CHECK_THROWS_AS(refocus_ms(small, 4), std::invalid_argument);
}

TEST_CASE("refocused compilations still match the exponentials") {
    Rng rng(89, 0);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 3;
        // weight two strings force a proper subset pulse
        const int qa = int(rng.next_u32() % 3);
        int qb = int(rng.next_u32() % 3);
        while (qb == qa) qb = int(rng.next_u32() % 3);
        std::vector<std::pair<int, Axis>> ops = {
            {qa, Axis(1 + rng.next_u32() % 3)},
            {qb, Axis(1 + rng.next_u32() % 3)}};
        const PauliString g(std::move(ops));
        const double theta = rng.uniform(-kPi, kPi);
        const Circuit c = refocus_ms(compile_pauli_rotation(g, theta), n);
        CHECK(max_abs(circuit_matrix(c, n) - expi(to_matrix(g, n), theta)) <
              1e-10);
    }
}
