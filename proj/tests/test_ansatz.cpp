#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <fstream>
#include <json.hpp>
#include <map>
#include <stdexcept>

#include "tivqe/ansatz.hpp"
#include "tivqe/simulator.hpp"
#include "tivqe/transforms.hpp"
#include "util.hpp"

using namespace tivqe;
using nlohmann::json;
using tivqe::test::data_path;
using tivqe::test::expi;

namespace {
constexpr double kPi = 3.14159265358979323846;

ExcitationOperator h2_double() {
    return {ExcitationOperator::Kind::double_, {0, 1}, {2, 3}};
}

std::map<std::string, double> amplitude_map(const std::string& file) {
    std::ifstream in(data_path(file));
    REQUIRE(in.good());
    const json doc = json::parse(in);
    std::map<std::string, double> out;
    for (const json& e : doc.at("amplitudes"))
        out[e.at("op").get<std::string>()] = e.at("amplitude").get<double>();
    return out;
}

// exp(-i theta P) applied term by term, independent of the dense helper
Eigen::VectorXcd rotate(const Eigen::VectorXcd& psi, const PauliString& p,
                        double theta) {
    Eigen::VectorXcd flipped = Eigen::VectorXcd::Zero(psi.size());
    for (int64_t b = 0; b < psi.size(); ++b) {
        if (psi(b) == cplx(0.0)) continue;
        const auto [phase, m] = apply_to_basis(p, uint64_t(b));
        flipped(int64_t(m)) += phase * psi(b);
    }
    return std::cos(theta) * psi - cplx(0, std::sin(theta)) * flipped;
}
}  // namespace

TEST_CASE("excitation enumeration covers singles then doubles") {
    const auto small = uccsd_generators(2, 2);
    REQUIRE(small.size() == 5);
    CHECK(small[0].kind == ExcitationOperator::Kind::single);
    CHECK(small[0].descriptor() == "2^ 0");
    CHECK(small[3].descriptor() == "3^ 1");
    CHECK(small[4].kind == ExcitationOperator::Kind::double_);
    CHECK(small[4].descriptor() == "3^ 2^ 1 0");

    const auto full = uccsd_generators(4, 8);
    int singles = 0, doubles = 0;
    for (const auto& op : full)
        (op.kind == ExcitationOperator::Kind::single ? singles : doubles)++;
    CHECK(singles == 32);
    CHECK(doubles == 168);

    CHECK(uccsd_generators(3, 0).empty());
    CHECK_THROWS_AS(uccsd_generators(-1, 2), std::invalid_argument);
}

TEST_CASE("the anti Hermitian pair is the operator minus its adjoint") {
    const FermionSum a = h2_double().anti_hermitian();
    CHECK(std::abs(a.coeff(FermionTerm::from_text("3^ 2^ 1 0")) -
                   cplx(1, 0)) < 1e-15);
    CHECK(std::abs(a.coeff(FermionTerm::from_text("0^ 1^ 2 3")) -
                   cplx(-1, 0)) < 1e-15);
    FermionSum sum = a;
    sum += a.adjoint();
    CHECK(sum.size() == 0);
}

TEST_CASE("amplitude screening keeps the dominant excitations in order") {
    const auto ops = uccsd_generators(4, 4);
    REQUIRE(ops.size() == size_t(16 + 36));
    const auto amps =
        align_amplitudes(ops, amplitude_map("lih_amplitudes.json"));

    const auto kept = screen(ops, amps, 0.01);
    REQUIRE(kept.size() == 2);
    CHECK(kept[0].descriptor() == "5^ 4^ 3 2");
    CHECK(kept[1].descriptor() == "7^ 6^ 3 2");

    // idempotent at the same threshold
    const auto again =
        screen(kept, align_amplitudes(kept, amplitude_map("lih_amplitudes.json")),
               0.01);
    REQUIRE(again.size() == kept.size());
    for (size_t i = 0; i < kept.size(); ++i)
        CHECK(again[i].descriptor() == kept[i].descriptor());

    CHECK(screen(ops, amps, 0.0).size() == ops.size());
    CHECK(screen(ops, amps, 10.0).empty());
    CHECK_THROWS_AS(screen(ops, {1.0}, 0.0), std::invalid_argument);
}

TEST_CASE("h2 screening leaves the one double excitation") {
    const auto ops = uccsd_generators(2, 2);
    const auto amps =
        align_amplitudes(ops, amplitude_map("h2_amplitudes.json"));
    const auto kept = screen(ops, amps, 0.01);
    REQUIRE(kept.size() == 1);
    CHECK(kept[0].descriptor() == "3^ 2^ 1 0");
}

TEST_CASE("excitation exponents are real and match the known shapes") {
    const PauliSum bk = excitation_exponent(h2_double(), 4, Mapping::bk);
    const PauliSum jw = excitation_exponent(h2_double(), 4, Mapping::jw);
    int bk_terms = 0, jw_terms = 0;
    for (const auto& [s, c] : bk) {
        CHECK(std::abs(c.imag()) < 1e-12);
        ++bk_terms;
    }
    for (const auto& [s, c] : jw) {
        CHECK(std::abs(c.imag()) < 1e-12);
        CHECK(s.ops().size() == 4);
        ++jw_terms;
    }
    CHECK(bk_terms == 8);
    CHECK(jw_terms == 8);
    CHECK(std::abs(bk.coeff(PauliString::from_text("X0 Y2")) -
                   cplx(-0.125, 0)) < 1e-12);
    CHECK(std::abs(jw.coeff(PauliString::from_text("X0 X1 X2 Y3")) -
                   cplx(-0.125, 0)) < 1e-12);
}

TEST_CASE("the tapered pair exponent reduces to one string on the reference") {
    const PauliSum bk = excitation_exponent(h2_double(), 4, Mapping::bk);

    // taper frame from the molecular operator at any bundled geometry
    std::ifstream in(data_path("h2_sto3g_bk.json"));
    REQUIRE(in.good());
    const json doc = json::parse(in);
    PauliSum h;
    for (const json& t : doc.at("geometries").at(0).at("terms"))
        h.add(PauliString::from_text(t.at("op").get<std::string>()),
              t.at("coefficient").get<double>());
    const TaperResult frame = taper(h, 4, 0b0001);
    REQUIRE(frame.hamiltonian.size() == 6);
    REQUIRE(frame.reference == 0b01);

    const PauliSum reduced_exp = apply_taper(bk, frame);
    const AnsatzEntry entry =
        reduce_on_reference(reduced_exp, frame.reference, 2, "theta");
    CHECK(entry.approximated == false);

    // action check against the one string rotation over a theta sweep
    const Eigen::VectorXcd ref = basis_state(frame.reference, 2);
    for (int k = 0; k < 50; ++k) {
        const double theta = 2 * kPi * k / 50.0;
        Eigen::VectorXcd full = ref;
        // commuting terms: apply factor rotations one at a time
        for (const auto& [s, c] : reduced_exp)
            full = rotate(full, s, theta * c.real());
        const Eigen::VectorXcd one =
            rotate(ref, entry.generator, theta * entry.scale);
        CHECK((full - one).norm() < 1e-10);

        // the published form of the same unitary
        const Eigen::VectorXcd paper =
            rotate(ref, PauliString::from_text("Y0 X1"), theta);
        CHECK((full - paper).norm() < 1e-10);

        // explicit amplitudes: cos on the reference, -sin on the flip
        CHECK(std::abs(full(0b01) - cplx(std::cos(theta), 0)) < 1e-10);
        CHECK(std::abs(full(0b10) - cplx(-std::sin(theta), 0)) < 1e-10);
    }
}

TEST_CASE("the jordan wigner exponent reduces on the filled reference") {
    const PauliSum jw = excitation_exponent(h2_double(), 4, Mapping::jw);
    const uint64_t ref_mask = 0b0011;
    const AnsatzEntry entry = reduce_on_reference(jw, ref_mask, 4, "theta");

    const Eigen::VectorXcd ref = basis_state(ref_mask, 4);
    for (int k = 0; k < 50; ++k) {
        const double theta = 2 * kPi * k / 50.0;
        Eigen::VectorXcd full = ref;
        for (const auto& [s, c] : jw) full = rotate(full, s, theta * c.real());
        const Eigen::VectorXcd one =
            rotate(ref, entry.generator, theta * entry.scale);
        CHECK((full - one).norm() < 1e-10);
        const Eigen::VectorXcd paper =
            rotate(ref, PauliString::from_text("Y0 X1 X2 X3"), theta);
        CHECK((full - paper).norm() < 1e-10);
    }
}

TEST_CASE("single term exponents reduce to themselves") {
    PauliSum one;
    one.add(PauliString::from_text("X0 Y1"), 0.75);
    const AnsatzEntry e = reduce_on_reference(one, 0b01, 2, "p");
    CHECK(e.generator == PauliString::from_text("X0 Y1"));
    CHECK(e.scale == doctest::Approx(0.75));
}

TEST_CASE("reduction rejects exponents without the equal action structure") {
    PauliSum mixed;
    mixed.add(PauliString::from_text("X0"), 0.5);
    mixed.add(PauliString::from_text("X1"), 0.5);
    CHECK_THROWS_AS(reduce_on_reference(mixed, 0, 2, "p"),
                    std::invalid_argument);

    PauliSum diag;
    diag.add(PauliString::from_text("Z0"), 1.0);
    CHECK_THROWS_AS(reduce_on_reference(diag, 0, 1, "p"),
                    std::invalid_argument);

    PauliSum anti;
    anti.add(PauliString::from_text("X0"), 0.5);
    anti.add(PauliString::from_text("Y0"), 0.5);
    CHECK_THROWS_AS(reduce_on_reference(anti, 0, 1, "p"),
                    std::invalid_argument);
}

TEST_CASE("subterm choice keeps the lightest string of each exponent") {
    ExcitationOperator alpha{ExcitationOperator::Kind::double_, {2, 3}, {4, 5}};
    ExcitationOperator beta{ExcitationOperator::Kind::double_, {2, 3}, {6, 7}};
    const PauliSum ga = excitation_exponent(alpha, 8, Mapping::bk);
    const PauliSum gb = excitation_exponent(beta, 8, Mapping::bk);

    CHECK(min_weight_subterm(ga) == PauliString::from_text("X2 Y4"));
    CHECK(min_weight_subterm(gb) == PauliString::from_text("X2 Y6"));

    const AnsatzEntry ea =
        subterm_approximation(ga, min_weight_subterm(ga), "alpha");
    CHECK(ea.approximated);
    CHECK(ea.scale == 1.0);

    CHECK_THROWS_AS(
        subterm_approximation(ga, PauliString::from_text("X0"), "alpha"),
        std::invalid_argument);

    PauliSum single;
    single.add(PauliString::from_text("X0 Y1"), -0.25);
    const AnsatzEntry es =
        subterm_approximation(single, min_weight_subterm(single), "p");
    CHECK(es.generator == PauliString::from_text("X0 Y1"));
}

TEST_CASE("spec entries must move population off the reference") {
    AnsatzSpec spec;
    spec.n_qubits = 3;
    spec.reference = 0b001;
    spec.add({"alpha", PauliString::from_text("X0 Y1"), 1.0, true});
    CHECK_THROWS_AS(spec.add({"z", PauliString::from_text("Z0 Z1"), 1.0, false}),
                    std::invalid_argument);
    CHECK_THROWS_AS(spec.add({"far", PauliString::from_text("X5"), 1.0, false}),
                    std::invalid_argument);
    CHECK_THROWS_AS(spec.add({"null", PauliString::from_text("X0"), 0.0, false}),
                    std::invalid_argument);

    // quarter turn moves amplitude for every accepted generator
    const Eigen::VectorXcd ref = basis_state(spec.reference, 3);
    for (const AnsatzEntry& e : spec.entries) {
        const Eigen::VectorXcd moved =
            rotate(ref, e.generator, e.scale * kPi / 4);
        CHECK(std::abs((ref.adjoint() * moved)(0)) < 1.0 - 1e-6);
    }
}

TEST_CASE("kept subterms stay within basis set accuracy for the hydride") {
    std::ifstream in(data_path("lih_sto6g_bk3.json"));
    REQUIRE(in.good());
    const json doc = json::parse(in);

    // mid range geometry from the bundled table
    const json* geom = nullptr;
    for (const json& g : doc.at("geometries"))
        if (std::abs(g.at("r_angstrom").get<double>() - 1.6) < 1e-9)
            geom = &g;
    REQUIRE(geom != nullptr);

    PauliSum h;
    for (const json& t : geom->at("terms"))
        h.add(PauliString::from_text(t.at("op").get<std::string>()),
              t.at("coefficient").get<double>());
    REQUIRE(h.size() == 13);

    const Eigen::MatrixXcd hm = to_matrix(h, 3);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(hm);
    const double exact = es.eigenvalues().minCoeff();

    const PauliString ga = PauliString::from_text("X0 Y1");
    const PauliString gb = PauliString::from_text("X0 Y2");
    const Eigen::VectorXcd ref = basis_state(0b001, 3);
    double best = 1e9;
    for (double a = 1.5; a <= 6.0 + 1e-12; a += 0.02)
        for (double b = 2.0; b <= 5.0 + 1e-12; b += 0.02) {
            const Eigen::VectorXcd psi = rotate(rotate(ref, ga, a), gb, b);
            const double e = (psi.adjoint() * hm * psi)(0).real();
            best = std::min(best, e);
        }
    CHECK(best - exact < 1.6e-3);
    CHECK(best - exact > 0.0);
}
