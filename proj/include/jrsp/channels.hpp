// Single-qubit noise channels as Kraus operator sets.

#pragma once

#include "jrsp/tensor.hpp"

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace jrsp {

enum class NoiseKind { BitFlip, PhaseFlip, BitPhaseFlip, AmplitudeDamping, PhaseDamping, Depolarizing };

inline constexpr std::array<NoiseKind, 6> kAllNoiseKinds{
    NoiseKind::BitFlip,          NoiseKind::PhaseFlip,    NoiseKind::BitPhaseFlip,
    NoiseKind::AmplitudeDamping, NoiseKind::PhaseDamping, NoiseKind::Depolarizing};

// Which E0 to use for phase damping. AsPrinted keeps sqrt(1-lambda)*|0><0|,
// which is not trace preserving; Standard uses sqrt(1-lambda)*I.
enum class PhaseDampingForm { Standard, AsPrinted };

std::string_view to_string(NoiseKind kind);
std::optional<NoiseKind> parse_noise_kind(std::string_view name);

struct KrausChannel {
    NoiseKind kind;
    double lambda;
    std::vector<ComplexMatrix> ops;
};

namespace pauli {
const ComplexMatrix& identity();
const ComplexMatrix& x();
const ComplexMatrix& y();
const ComplexMatrix& z();
}  // namespace pauli

// Throws std::invalid_argument for lambda outside [0, 1].
KrausChannel kraus_set(NoiseKind kind, double lambda,
                       PhaseDampingForm phase_damping = PhaseDampingForm::Standard);

// max |(sum_k E_k^dagger E_k - I)_{rc}|
double completeness_defect(const KrausChannel& channel);

QuantumState apply_correlated_kraus(const QuantumState& state, const KrausChannel& channel,
                                    QubitPair pair_a, QubitPair pair_b);

}  // namespace jrsp
