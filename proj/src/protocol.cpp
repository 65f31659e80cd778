#include "jrsp/protocol.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace jrsp {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double reduce_angle(double theta) {
    double r = std::fmod(theta, kTwoPi);
    if (r < 0.0) r += kTwoPi;
    if (r >= kTwoPi) r = 0.0;
    return r;
}

Complex unit_phase(double theta) { return std::polar(1.0, theta); }

void check_index(int i) {
    if (i < 1 || i > 4) throw std::out_of_range("measurement outcome index must be in 1..4");
}

// Rows of the sender basis matrix for angles theta (alpha or beta).
std::array<Vec4, 4> sender_basis(const std::array<double, 4>& t) {
    auto m = [&](int n) { return unit_phase(-t[n]); };
    auto p = [&](int n) { return unit_phase(t[n]); };
    return {{
        {0.5 * m(0), 0.5 * m(1), 0.5 * m(2), 0.5 * m(3)},
        {0.5 * m(0), -0.5 * m(1), 0.5 * m(2), -0.5 * m(3)},
        {0.5 * p(2), 0.5 * p(3), -0.5 * p(0), -0.5 * p(1)},
        {0.5 * p(2), -0.5 * p(3), -0.5 * p(0), 0.5 * p(1)},
    }};
}

// diag(e^{i t02}, s1 e^{i t13}, -e^{i t20}, s3 e^{i t31}) with t_nm = t_n + t_m.
ComplexMatrix paired_phase_operator(const std::array<double, 4>& t, double s1, double s3) {
    const Vec4 d{unit_phase(t[0] + t[2]), s1 * unit_phase(t[1] + t[3]), -unit_phase(t[2] + t[0]),
                 s3 * unit_phase(t[3] + t[1])};
    return ComplexMatrix::diagonal(d);
}

}  // namespace

QubitAddress qubit_label(int label) {
    switch (label) {
        case 1: return QubitAddress{0};
        case 4: return QubitAddress{1};
        case 2: return QubitAddress{2};
        case 5: return QubitAddress{3};
        case 3: return QubitAddress{4};
        case 6: return QubitAddress{5};
        default: throw std::out_of_range("qubit label must be in 1..6");
    }
}

PhaseSpec::PhaseSpec(std::array<double, 3> alpha_free, std::array<double, 3> beta_free) {
    for (std::size_t t = 0; t < 3; ++t) {
        if (!std::isfinite(alpha_free[t]) || !std::isfinite(beta_free[t])) {
            throw std::invalid_argument("phase angles must be finite");
        }
        alpha_[t + 1] = reduce_angle(alpha_free[t]);
        beta_[t + 1] = reduce_angle(beta_free[t]);
    }
}

PhaseSpec PhaseSpec::from_full(std::array<double, 4> alpha, std::array<double, 4> beta) {
    if (alpha[0] != 0.0 || beta[0] != 0.0) {
        throw std::invalid_argument("alpha_0 and beta_0 are fixed at zero");
    }
    return {{alpha[1], alpha[2], alpha[3]}, {beta[1], beta[2], beta[3]}};
}

PhaseSpec PhaseSpec::uniform(double angle) { return {{angle, angle, angle}, {angle, angle, angle}}; }

double PhaseSpec::omega(int n, int m, int sign) const { return alpha_.at(n) + sign * beta_.at(m); }
double PhaseSpec::omega_bar(int n, int m) const { return omega(n, n, +1) - omega(m, m, +1); }
double PhaseSpec::gamma(int n, int m) const { return -alpha_.at(n) + beta_.at(m); }
double PhaseSpec::eta(int n, int m, int sign) const { return beta_.at(n) + sign * beta_.at(m); }
double PhaseSpec::zeta(int n, int m, int sign) const { return alpha_.at(n) + sign * alpha_.at(m); }

std::string_view to_string(AssistMode mode) {
    switch (mode) {
        case AssistMode::Case1Only: return "case1";
        case AssistMode::WithBobAssist: return "bob-assist";
        case AssistMode::WithBothAssists: return "both-assists";
    }
    return "";
}

std::optional<AssistMode> parse_assist_mode(std::string_view name) {
    if (name == "case1") return AssistMode::Case1Only;
    if (name == "bob-assist") return AssistMode::WithBobAssist;
    if (name == "both-assists") return AssistMode::WithBothAssists;
    return std::nullopt;
}

Vec4 equatorial_state(const PhaseSpec& phases) {
    Vec4 psi{};
    for (int n = 0; n < 4; ++n) psi[n] = 0.5 * unit_phase(phases.omega(n, n, +1));
    return psi;
}

QuantumState ghz_channel_state() {
    // Pairs (1,4), (2,5), (3,6) all carry the same two-bit value n.
    std::vector<Complex> amps(64);
    for (std::size_t n = 0; n < 4; ++n) amps[(n << 4) | (n << 2) | n] = 0.5;
    return QuantumState::from_pure(amps);
}

MeasurementBasis alice_basis(const PhaseSpec& phases) { return {Party::Alice, sender_basis(phases.alpha())}; }

MeasurementBasis bob_basis(const PhaseSpec& phases) { return {Party::Bob, sender_basis(phases.beta())}; }

double gram_defect(const MeasurementBasis& basis) {
    double worst = 0.0;
    for (std::size_t i = 0; i < 4; ++i) {
        for (std::size_t j = 0; j < 4; ++j) {
            Complex g = 0.0;
            for (std::size_t k = 0; k < 4; ++k) g += std::conj(basis.vectors[i][k]) * basis.vectors[j][k];
            worst = std::max(worst, std::abs(g - (i == j ? 1.0 : 0.0)));
        }
    }
    return worst;
}

std::optional<ComplexMatrix> recovery_operator(int alice_index, int bob_index, const PhaseSpec& phases,
                                               AssistMode mode) {
    check_index(alice_index);
    check_index(bob_index);
    const bool alice_low = alice_index <= 2;
    const bool bob_low = bob_index <= 2;
    // Within each case the sign pattern depends only on whether the two
    // outcomes agree in parity.
    const bool same_parity = (alice_index % 2) == (bob_index % 2);

    if (alice_low && bob_low) {
        return same_parity ? kron(pauli::identity(), pauli::identity()) : kron(pauli::identity(), pauli::z());
    }
    if (alice_low && !bob_low && mode != AssistMode::Case1Only) {
        return same_parity ? paired_phase_operator(phases.beta(), +1.0, -1.0)
                           : paired_phase_operator(phases.beta(), -1.0, +1.0);
    }
    if (!alice_low && bob_low && mode == AssistMode::WithBothAssists) {
        return same_parity ? paired_phase_operator(phases.alpha(), +1.0, -1.0)
                           : paired_phase_operator(phases.alpha(), -1.0, +1.0);
    }
    return std::nullopt;
}

QuantumState shared_state(const std::optional<NoiseSpec>& noise) {
    QuantumState rho = ghz_channel_state();
    if (!noise) return rho;
    const KrausChannel ch = kraus_set(noise->kind, noise->lambda, noise->phase_damping);
    return apply_correlated_kraus(rho, ch, kAlicePair, kBobPair);
}

QuantumState project_branch(const QuantumState& shared, const MeasurementBasis& alice,
                            const MeasurementBasis& bob, int alice_index, int bob_index) {
    check_index(alice_index);
    check_index(bob_index);
    if (shared.num_qubits() != 6) throw std::invalid_argument("expected the six-qubit shared state");
    // After Alice's projection the register is (2,5,3,6), so Bob's pair is (0,1).
    const auto after_alice =
        project_two_qubit(shared, alice.vectors[static_cast<std::size_t>(alice_index - 1)], kAlicePair);
    const auto after_bob = project_two_qubit(after_alice.reduced,
                                             bob.vectors[static_cast<std::size_t>(bob_index - 1)],
                                             QubitPair{QubitAddress{0}, QubitAddress{1}});
    return after_bob.reduced;
}

std::vector<OutcomeRecord> run_jrsp(const PhaseSpec& phases, const std::optional<NoiseSpec>& noise,
                                    AssistMode mode) {
    const QuantumState shared = shared_state(noise);
    const MeasurementBasis alice = alice_basis(phases);
    const MeasurementBasis bob = bob_basis(phases);
    const Vec4 psi = equatorial_state(phases);
    static constexpr std::array<QubitAddress, 2> kReceiver{QubitAddress{0}, QubitAddress{1}};

    std::vector<OutcomeRecord> records;
    records.reserve(16);
    for (int i = 1; i <= 4; ++i) {
        for (int j = 1; j <= 4; ++j) {
            QuantumState branch = project_branch(shared, alice, bob, i, j);
            const double weight = branch.trace();
            auto recovery = recovery_operator(i, j, phases, mode);
            std::optional<double> fidelity;
            if (recovery) {
                branch = apply_unitary(branch, *recovery, kReceiver);
                fidelity = pure_overlap(branch, psi);
            }
            const bool success = recovery.has_value();
            records.push_back(
                OutcomeRecord{i, j, weight, success, std::move(recovery), std::move(branch), fidelity});
        }
    }
    return records;
}

double success_probability(std::span<const OutcomeRecord> records) {
    double total = 0.0;
    double good = 0.0;
    for (const auto& r : records) {
        total += r.weight;
        if (r.success) good += r.weight;
    }
    return total > 0.0 ? good / total : 0.0;
}

double jrsp_fidelity(std::span<const OutcomeRecord> records, FidelityConvention convention) {
    double overlap = 0.0;
    double weight = 0.0;
    for (const auto& r : records) {
        if (r.alice_index > 2 || r.bob_index > 2) continue;
        // Case-1 branches succeed in every mode.
        overlap += r.branch_fidelity.value_or(0.0);
        weight += r.weight;
    }
    if (convention == FidelityConvention::Renormalized) return weight > 0.0 ? overlap / weight : 0.0;
    return 4.0 * overlap;
}

double simulate_fidelity(const PhaseSpec& phases, const NoiseSpec& noise, FidelityConvention convention) {
    const auto records = run_jrsp(phases, noise, AssistMode::Case1Only);
    return jrsp_fidelity(records, convention);
}

}  // namespace jrsp
