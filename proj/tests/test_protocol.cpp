#include "jrsp/protocol.hpp"

#include "oracle.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace jrsp;

namespace {

constexpr double kPi = std::numbers::pi;

PhaseSpec random_phases(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> a(0.0, 2 * kPi);
    return PhaseSpec({a(rng), a(rng), a(rng)}, {a(rng), a(rng), a(rng)});
}

oracle::Kind to_oracle(NoiseKind k) { return static_cast<oracle::Kind>(static_cast<int>(k)); }

int record_index(int alice, int bob) { return (alice - 1) * 4 + (bob - 1); }

}  // namespace

TEST_CASE("PhaseSpec") {
    const PhaseSpec p({0.1, 0.2, 0.3}, {1.0, 2.0, 3.0});
    CHECK(p.alpha()[0] == 0.0);
    CHECK(p.beta()[0] == 0.0);
    CHECK(p.omega(1, 2, +1) == doctest::Approx(2.1));
    CHECK(p.omega(1, 2, -1) == doctest::Approx(-1.9));
    CHECK(p.omega_bar(3, 0) == doctest::Approx(3.3));
    CHECK(p.gamma(2, 0) == doctest::Approx(-0.2));
    CHECK(p.eta(1, 3, -1) == doctest::Approx(-2.0));
    CHECK(p.zeta(0, 3, +1) == doctest::Approx(0.3));

    // Reduced into [0, 2 pi).
    const PhaseSpec wrapped({-kPi / 2, 5 * kPi, 2 * kPi}, {0, 0, 0});
    CHECK(wrapped.alpha()[1] == doctest::Approx(1.5 * kPi));
    CHECK(wrapped.alpha()[2] == doctest::Approx(kPi));
    CHECK(wrapped.alpha()[3] == doctest::Approx(0.0));

    CHECK_THROWS_AS(PhaseSpec::from_full({0.1, 0, 0, 0}, {0, 0, 0, 0}), std::invalid_argument);
    CHECK_THROWS_AS(PhaseSpec({std::nan(""), 0, 0}, {0, 0, 0}), std::invalid_argument);
    CHECK_NOTHROW(PhaseSpec::from_full({0, 1, 2, 3}, {0, 3, 2, 1}));
}

TEST_CASE("equatorial_state") {
    const auto zero = equatorial_state(PhaseSpec{});
    for (auto z : zero) CHECK(std::abs(z - Complex(0.5)) < 1e-15);

    std::mt19937_64 rng(3);
    for (int k = 0; k < 20; ++k) {
        double norm = 0;
        for (auto z : equatorial_state(random_phases(rng))) {
            CHECK(std::abs(z) == doctest::Approx(0.5).epsilon(1e-14));
            norm += std::norm(z);
        }
        CHECK(norm == doctest::Approx(1.0).epsilon(1e-14));
    }

    const auto psi = equatorial_state(PhaseSpec({kPi / 2, 0, 0}, {0, 0, 0}));
    CHECK(std::abs(psi[1] - Complex(0, 0.5)) < 1e-15);
}

TEST_CASE("ghz_channel_state") {
    const auto rho = ghz_channel_state();
    CHECK(rho.num_qubits() == 6);
    CHECK(rho.trace() == doctest::Approx(1.0));
    CHECK(std::abs(rho.rho()(0, 0) - Complex(0.25)) < 1e-15);  // amplitude 1/2 on |000000>

    // Independent construction by physical label, reordered to (1,4,2,5,3,6).
    const auto by_label = oracle::channel_ket_by_label();
    const std::array<int, 6> order{1, 4, 2, 5, 3, 6};
    std::vector<Complex> reordered(64);
    for (int idx = 0; idx < 64; ++idx) {
        int reg = 0;
        for (int label : order) reg = (reg << 1) | oracle::bit(idx, label);
        reordered[static_cast<std::size_t>(reg)] = by_label[static_cast<std::size_t>(idx)];
    }
    CHECK(max_abs_diff(rho.rho(), ComplexMatrix::outer(reordered)) < 1e-15);

    // Reduced state of (1,4) by brute-force partial trace is I/4.
    ComplexMatrix reduced(4, 4);
    for (std::size_t a = 0; a < 4; ++a)
        for (std::size_t b = 0; b < 4; ++b)
            for (std::size_t r = 0; r < 16; ++r) reduced(a, b) += rho.rho()((a << 4) | r, (b << 4) | r);
    CHECK(max_abs_diff(reduced, Complex{0.25} * ComplexMatrix::identity(4)) < 1e-15);

    // Invariant under X on all six qubits.
    ComplexMatrix all_x = pauli::x();
    for (int k = 1; k < 6; ++k) all_x = kron(all_x, pauli::x());
    CHECK(max_abs_diff(all_x * rho.rho() * all_x, rho.rho()) < 1e-15);
}

TEST_CASE("measurement bases") {
    const auto alice = alice_basis(PhaseSpec{});
    for (auto z : alice.vectors[0]) CHECK(std::abs(z - Complex(0.5)) < 1e-15);
    const std::array<double, 4> row3{0.5, 0.5, -0.5, -0.5};
    for (std::size_t k = 0; k < 4; ++k) CHECK(std::abs(alice.vectors[2][k] - Complex(row3[k])) < 1e-15);
    CHECK(alice.owner == Party::Alice);
    CHECK(bob_basis(PhaseSpec{}).owner == Party::Bob);

    std::mt19937_64 rng(99);
    for (int k = 0; k < 100; ++k) {
        const auto p = random_phases(rng);
        CHECK(gram_defect(alice_basis(p)) < 1e-12);
        CHECK(gram_defect(bob_basis(p)) < 1e-12);
    }
}

TEST_CASE("recovery_operator") {
    std::mt19937_64 rng(5);
    const auto p = random_phases(rng);
    const auto iz = kron(pauli::identity(), pauli::z());
    const auto ii = ComplexMatrix::identity(4);

    for (AssistMode mode : {AssistMode::Case1Only, AssistMode::WithBobAssist, AssistMode::WithBothAssists}) {
        CHECK(max_abs_diff(*recovery_operator(1, 1, p, mode), ii) == 0.0);
        CHECK(max_abs_diff(*recovery_operator(2, 2, p, mode), ii) == 0.0);
        CHECK(max_abs_diff(*recovery_operator(1, 2, p, mode), iz) == 0.0);
        CHECK(max_abs_diff(*recovery_operator(2, 1, p, mode), iz) == 0.0);
    }
    CHECK_FALSE(recovery_operator(1, 3, p, AssistMode::Case1Only).has_value());
    CHECK_FALSE(recovery_operator(3, 1, p, AssistMode::WithBobAssist).has_value());
    for (int i = 3; i <= 4; ++i)
        for (int j = 3; j <= 4; ++j) CHECK_FALSE(recovery_operator(i, j, p, AssistMode::WithBothAssists));

    const std::array<Complex, 4> d{1, 1, -1, -1};
    CHECK(max_abs_diff(*recovery_operator(1, 3, PhaseSpec{}, AssistMode::WithBobAssist),
                       ComplexMatrix::diagonal(d)) < 1e-15);

    CHECK_THROWS_AS(recovery_operator(0, 1, p, AssistMode::Case1Only), std::out_of_range);
    CHECK_THROWS_AS(recovery_operator(1, 5, p, AssistMode::Case1Only), std::out_of_range);
}

TEST_CASE("recomputed branches against the printed 16-term expansion") {
    // Each row: sign and phase (in terms of alpha, beta) of the |00>,|01>,|10>,|11>
    // coefficients, all with prefactor 1/8.
    std::mt19937_64 rng(2017);
    const auto p = random_phases(rng);
    const auto& a = p.alpha();
    const auto& b = p.beta();
    auto w = [&](int n) { return a[n] + b[n]; };
    auto om = [&](int n, int m) { return a[n] - b[m]; };
    auto g = [&](int n, int m) { return -a[n] + b[m]; };

    using Row = std::array<std::pair<double, double>, 4>;
    const Row pp{{{1, w(0)}, {1, w(1)}, {1, w(2)}, {1, w(3)}}};
    const Row pm{{{1, w(0)}, {-1, w(1)}, {1, w(2)}, {-1, w(3)}}};
    const Row mm1{{{1, om(0, 2)}, {1, om(1, 3)}, {-1, om(2, 0)}, {-1, om(3, 1)}}};
    const Row mm2{{{1, om(0, 2)}, {-1, om(1, 3)}, {-1, om(2, 0)}, {1, om(3, 1)}}};
    // The printed (3,1) row reads "-e^{gamma_33}|13>"; the recomputation gives
    // -e^{gamma_13}|11>, which is used here.
    const Row g1{{{1, g(2, 0)}, {1, g(3, 1)}, {-1, g(0, 2)}, {-1, g(1, 3)}}};
    const Row g2{{{1, g(2, 0)}, {-1, g(3, 1)}, {-1, g(0, 2)}, {1, g(1, 3)}}};
    const Row n1{{{1, -w(2)}, {1, -w(3)}, {1, -w(0)}, {1, -w(1)}}};
    const Row n2{{{1, -w(2)}, {-1, -w(3)}, {1, -w(0)}, {-1, -w(1)}}};

    const std::array<std::array<Row, 4>, 4> printed{{
        {pp, pm, mm1, mm2},
        {pm, pp, mm2, mm1},
        {g1, g2, n1, n2},
        {g2, g1, n2, n1},
    }};

    const auto shared = ghz_channel_state();
    const auto alice = alice_basis(p);
    const auto bob = bob_basis(p);
    for (int i = 1; i <= 4; ++i) {
        for (int j = 1; j <= 4; ++j) {
            std::vector<Complex> ket(4);
            for (std::size_t n = 0; n < 4; ++n) {
                const auto [sign, phase] = printed[i - 1][j - 1][n];
                ket[n] = sign * std::polar(1.0 / 8.0, phase);
            }
            const auto branch = project_branch(shared, alice, bob, i, j);
            INFO("alice " << i << " bob " << j);
            CHECK(max_abs_diff(branch.rho(), ComplexMatrix::outer(ket)) < 1e-15);
        }
    }

    // The literal reading of the anomalous term (gamma_33 on |11>) does not match.
    std::vector<Complex> literal(4);
    for (std::size_t n = 0; n < 4; ++n) {
        const auto [sign, phase] = g1[n];
        literal[n] = sign * std::polar(1.0 / 8.0, n == 3 ? g(3, 3) : phase);
    }
    const double mismatch =
        max_abs_diff(project_branch(shared, alice, bob, 3, 1).rho(), ComplexMatrix::outer(literal));
    MESSAGE("printed (3,1) term e^{gamma_33}|13> is a typo; literal reading differs by " << mismatch);
    CHECK(mismatch > 1e-6);
}

TEST_CASE("noiseless run_jrsp") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 100; ++trial) {
        const auto p = random_phases(rng);
        const auto records = run_jrsp(p, std::nullopt, AssistMode::WithBothAssists);
        REQUIRE(records.size() == 16);
        int successes = 0;
        double total = 0;
        for (const auto& r : records) {
            CHECK(r.weight == doctest::Approx(1.0 / 16).epsilon(1e-12));
            total += r.weight;
            if (r.success) {
                ++successes;
                REQUIRE(r.branch_fidelity.has_value());
                CHECK(std::abs(*r.branch_fidelity / r.weight - 1.0) < 1e-12);
                CHECK(validate_state(r.post_state, true).empty());
            } else {
                CHECK_FALSE(r.branch_fidelity.has_value());
            }
        }
        CHECK(successes == 12);
        CHECK(std::abs(total - 1.0) < 1e-12);
        CHECK(std::abs(jrsp_fidelity(records) - 1.0) < 1e-12);
    }
}

TEST_CASE("success probability by assist mode") {
    const PhaseSpec p({0.4, 1.3, 2.2}, {3.1, 0.7, 5.9});
    CHECK(success_probability(run_jrsp(p, std::nullopt, AssistMode::Case1Only)) == doctest::Approx(0.25));
    CHECK(success_probability(run_jrsp(p, std::nullopt, AssistMode::WithBobAssist)) == doctest::Approx(0.5));
    CHECK(success_probability(run_jrsp(p, std::nullopt, AssistMode::WithBothAssists)) == doctest::Approx(0.75));

    const auto case1 = run_jrsp(p, std::nullopt, AssistMode::Case1Only);
    for (const auto& r : case1) CHECK(r.success == (r.alice_index <= 2 && r.bob_index <= 2));
}

TEST_CASE("branch weights sum to the post-noise trace") {
    const PhaseSpec p({0.9, 2.0, 4.4}, {1.7, 0.2, 3.3});
    for (NoiseKind kind : kAllNoiseKinds) {
        for (double l : {0.2, 0.65, 1.0}) {
            const NoiseSpec noise{kind, l};
            const double tr = shared_state(noise).trace();
            double total = 0;
            for (const auto& r : run_jrsp(p, noise, AssistMode::Case1Only)) total += r.weight;
            CHECK(std::abs(total - tr) < 1e-12);
        }
    }
}

TEST_CASE("simulation agrees with the label-level oracle") {
    std::mt19937_64 rng(424242);
    for (int set = 0; set < 3; ++set) {
        const auto p = random_phases(rng);
        for (NoiseKind kind : kAllNoiseKinds) {
            for (double l : {0.0, 0.15, 0.5, 0.8, 1.0}) {
                const auto expected = oracle::run(to_oracle(kind), l, p.alpha(), p.beta());
                const auto records = run_jrsp(p, NoiseSpec{kind, l}, AssistMode::Case1Only);
                INFO(to_string(kind) << " lambda=" << l);
                CHECK(std::abs(jrsp_fidelity(records) - expected.fidelity) < 1e-12);
                for (const auto& r : records) {
                    CHECK(std::abs(r.weight - expected.weights[record_index(r.alice_index, r.bob_index)]) <
                          1e-12);
                }
                CHECK(std::abs(shared_state(NoiseSpec{kind, l}).trace() - expected.trace) < 1e-12);
            }
        }
    }
    // As-printed phase damping too.
    const auto p = random_phases(rng);
    const auto expected = oracle::run(oracle::Kind::PhaseDamping, 0.25, p.alpha(), p.beta(), true);
    CHECK(std::abs(simulate_fidelity(p, NoiseSpec{NoiseKind::PhaseDamping, 0.25, PhaseDampingForm::AsPrinted}) -
                   expected.fidelity) < 1e-12);
}

TEST_CASE("frozen fidelities at alpha_t = beta_t = 30 deg") {
    // Values from an independent numpy implementation of the same pipeline.
    const auto p = PhaseSpec::uniform(kPi / 6);
    struct Point {
        NoiseKind kind;
        double lambda;
        double fidelity;
    };
    const std::array<Point, 10> points{{
        {NoiseKind::BitFlip, 0.3, 0.3214354703068938},
        {NoiseKind::BitFlip, 0.7, 0.2199354703068939},
        {NoiseKind::BitFlip, 1.0, 0.5625},
        {NoiseKind::BitPhaseFlip, 0.3, 0.24505202969310633},
        {NoiseKind::BitPhaseFlip, 0.7, 0.14355202969310632},
        {NoiseKind::AmplitudeDamping, 0.3, 0.528025},
        {NoiseKind::AmplitudeDamping, 0.7, 0.199025},
        {NoiseKind::Depolarizing, 0.3, 0.249075},
        {NoiseKind::Depolarizing, 0.7, 0.02853179012345681},
        {NoiseKind::Depolarizing, 1.0, 0.0493827160493827},
    }};
    for (const auto& pt : points) {
        INFO(to_string(pt.kind) << " lambda=" << pt.lambda);
        CHECK(std::abs(simulate_fidelity(p, NoiseSpec{pt.kind, pt.lambda}) - pt.fidelity) < 1e-12);
    }
    CHECK(std::abs(simulate_fidelity(PhaseSpec{}, NoiseSpec{NoiseKind::Depolarizing, 1.0}) - 5.0 / 81.0) < 1e-12);
    CHECK(std::abs(simulate_fidelity(PhaseSpec{}, NoiseSpec{NoiseKind::Depolarizing, 0.3}) - 0.2504) < 1e-12);
}

TEST_CASE("jrsp_fidelity examples") {
    std::mt19937_64 rng(8);
    const auto p = random_phases(rng);
    for (NoiseKind kind : kAllNoiseKinds) CHECK(std::abs(simulate_fidelity(p, NoiseSpec{kind, 0.0}) - 1.0) < 1e-12);
    CHECK(std::abs(simulate_fidelity(p, NoiseSpec{NoiseKind::PhaseFlip, 0.5}) - 0.125) < 1e-12);
    CHECK(std::abs(simulate_fidelity(p, NoiseSpec{NoiseKind::PhaseDamping, 1.0}) - 0.125) < 1e-12);
}

TEST_CASE("renormalized convention divides by the case-1 weight") {
    const PhaseSpec p({0.5, 1.0, 1.5}, {2.0, 2.5, 3.0});
    const auto records = run_jrsp(p, NoiseSpec{NoiseKind::PhaseFlip, 0.5}, AssistMode::Case1Only);
    double overlap = 0, weight = 0;
    for (const auto& r : records) {
        if (r.alice_index > 2 || r.bob_index > 2) continue;
        overlap += *r.branch_fidelity;
        weight += r.weight;
    }
    CHECK(jrsp_fidelity(records, FidelityConvention::Renormalized) == doctest::Approx(overlap / weight));
    CHECK(jrsp_fidelity(run_jrsp(p, std::nullopt, AssistMode::Case1Only), FidelityConvention::Renormalized) ==
          doctest::Approx(1.0));
}

TEST_CASE("phase flip and phase damping fidelities do not depend on phases") {
    std::mt19937_64 rng(77);
    std::vector<PhaseSpec> sets;
    for (int k = 0; k < 5; ++k) sets.push_back(random_phases(rng));
    for (NoiseKind kind : {NoiseKind::PhaseFlip, NoiseKind::PhaseDamping}) {
        for (int k = 0; k <= 20; ++k) {
            const double l = k / 20.0;
            std::vector<double> f;
            for (const auto& p : sets) f.push_back(simulate_fidelity(p, NoiseSpec{kind, l}));
            double mean = 0;
            for (double x : f) mean += x / f.size();
            double var = 0;
            for (double x : f) var += (x - mean) * (x - mean) / f.size();
            CHECK(var < 1e-12);
        }
    }
}

TEST_CASE("phase flip fidelity is symmetric about lambda = 1/2") {
    const PhaseSpec p({1.0, 2.0, 3.0}, {4.0, 5.0, 6.0});
    for (int k = 0; k <= 50; ++k) {
        const double l = k / 100.0;
        CHECK(std::abs(simulate_fidelity(p, NoiseSpec{NoiseKind::PhaseFlip, l}) -
                       simulate_fidelity(p, NoiseSpec{NoiseKind::PhaseFlip, 1.0 - l})) < 1e-12);
    }
}

TEST_CASE("shifting all alpha_n by a constant keeps noiseless fidelity at 1") {
    std::mt19937_64 rng(31);
    for (int k = 0; k < 10; ++k) {
        const auto p = random_phases(rng);
        const double c = 0.77 * (k + 1);
        // alpha_0 stays pinned, so the shift is applied to the free angles.
        const PhaseSpec shifted({p.alpha()[1] + c, p.alpha()[2] + c, p.alpha()[3] + c},
                                {p.beta()[1], p.beta()[2], p.beta()[3]});
        CHECK(std::abs(jrsp_fidelity(run_jrsp(shifted, std::nullopt, AssistMode::Case1Only)) - 1.0) < 1e-12);
    }
}
