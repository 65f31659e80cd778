// Joint remote preparation of a two-qubit equatorial state over two GHZ
// triples, with optional correlated noise on the senders' qubit pairs.
//
// Register layout of the six-qubit channel state, by physical label:
//
//   index:  0  1  2  3  4  5
//   label:  1  4  2  5  3  6
//
// Alice holds (1,4), Bob holds (2,5) and the receiver holds (3,6).

#pragma once

#include "jrsp/channels.hpp"
#include "jrsp/tensor.hpp"

#include <array>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace jrsp {

using Vec4 = std::array<Complex, 4>;

// Maps a physical label 1..6 to its register index.
QubitAddress qubit_label(int label);

inline const QubitPair kAlicePair{QubitAddress{0}, QubitAddress{1}};
inline const QubitPair kBobPair{QubitAddress{2}, QubitAddress{3}};
inline const QubitPair kReceiverPair{QubitAddress{4}, QubitAddress{5}};

// Phase angles known to the two senders: alpha to Alice, beta to Bob.
// alpha[0] and beta[0] are pinned to zero. All accessors return the real
// angle theta of a unit phase e^{i theta}.
class PhaseSpec {
public:
    PhaseSpec() = default;

    // Free angles alpha_1..alpha_3 and beta_1..beta_3, in radians. Throws
    // std::invalid_argument on non-finite input.
    PhaseSpec(std::array<double, 3> alpha_free, std::array<double, 3> beta_free);

    // Full arrays; alpha[0] and beta[0] must be exactly zero.
    static PhaseSpec from_full(std::array<double, 4> alpha, std::array<double, 4> beta);

    // alpha_t = beta_t = angle for t = 1, 2, 3.
    static PhaseSpec uniform(double angle);

    const std::array<double, 4>& alpha() const { return alpha_; }
    const std::array<double, 4>& beta() const { return beta_; }

    // alpha_n + beta_m (sign +1) or alpha_n - beta_m (sign -1).
    double omega(int n, int m, int sign) const;
    // omega_nn - omega_mm with omega_nn = alpha_n + beta_n.
    double omega_bar(int n, int m) const;
    // -alpha_n + beta_m
    double gamma(int n, int m) const;
    // beta_n +/- beta_m
    double eta(int n, int m, int sign) const;
    // alpha_n +/- alpha_m
    double zeta(int n, int m, int sign) const;

private:
    std::array<double, 4> alpha_{};
    std::array<double, 4> beta_{};
};

enum class Party { Alice, Bob };

struct MeasurementBasis {
    Party owner;
    std::array<Vec4, 4> vectors;  // kets in the |00>,|01>,|10>,|11> basis
};

enum class AssistMode { Case1Only, WithBobAssist, WithBothAssists };

std::string_view to_string(AssistMode mode);
std::optional<AssistMode> parse_assist_mode(std::string_view name);

struct NoiseSpec {
    NoiseKind kind;
    double lambda;
    PhaseDampingForm phase_damping = PhaseDampingForm::Standard;
};

struct OutcomeRecord {
    int alice_index;  // 1..4
    int bob_index;    // 1..4
    double weight;
    bool success;
    std::optional<ComplexMatrix> recovery;
    QuantumState post_state;                // receiver pair, after recovery when one exists
    std::optional<double> branch_fidelity;  // <psi|post_state|psi>, success branches only
};

Vec4 equatorial_state(const PhaseSpec& phases);

QuantumState ghz_channel_state();

MeasurementBasis alice_basis(const PhaseSpec& phases);
MeasurementBasis bob_basis(const PhaseSpec& phases);

// Largest entry of |G - I| for the Gram matrix of the basis vectors.
double gram_defect(const MeasurementBasis& basis);

// Receiver-side unitary for the announced outcomes, or nullopt when the
// branch fails under the given mode.
std::optional<ComplexMatrix> recovery_operator(int alice_index, int bob_index, const PhaseSpec& phases,
                                               AssistMode mode);

// Six-qubit state handed to the senders' measurements: the channel state,
// after correlated noise on Alice's and Bob's pairs when `noise` is set.
QuantumState shared_state(const std::optional<NoiseSpec>& noise);

// Unnormalized receiver state for one measurement branch, before recovery.
QuantumState project_branch(const QuantumState& shared, const MeasurementBasis& alice,
                            const MeasurementBasis& bob, int alice_index, int bob_index);

std::vector<OutcomeRecord> run_jrsp(const PhaseSpec& phases, const std::optional<NoiseSpec>& noise,
                                    AssistMode mode);

double success_probability(std::span<const OutcomeRecord> records);

enum class FidelityConvention {
    // Sum of unnormalized case-1 branch overlaps, times 4.
    Unnormalized,
    // Sum of case-1 branch overlaps divided by their total weight.
    Renormalized,
};

// Branch overlaps are taken against the target state the records were built
// for, so the phases are not needed again here.
double jrsp_fidelity(std::span<const OutcomeRecord> records,
                     FidelityConvention convention = FidelityConvention::Unnormalized);

// run_jrsp + jrsp_fidelity with the Case1Only success set.
double simulate_fidelity(const PhaseSpec& phases, const NoiseSpec& noise,
                         FidelityConvention convention = FidelityConvention::Unnormalized);

}  // namespace jrsp
