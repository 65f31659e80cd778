#include "jrsp/channels.hpp"

#include <cmath>
#include <stdexcept>

namespace jrsp {

namespace {

constexpr std::array<std::string_view, 6> kNames{"bit-flip",          "phase-flip",    "bit-phase-flip",
                                                 "amplitude-damping", "phase-damping", "depolarizing"};

ComplexMatrix scaled(double s, const ComplexMatrix& m) { return Complex{s} * m; }

}  // namespace

std::string_view to_string(NoiseKind kind) { return kNames[static_cast<std::size_t>(kind)]; }

std::optional<NoiseKind> parse_noise_kind(std::string_view name) {
    for (std::size_t i = 0; i < kNames.size(); ++i) {
        if (kNames[i] == name) return kAllNoiseKinds[i];
    }
    return std::nullopt;
}

namespace pauli {
const ComplexMatrix& identity() {
    static const ComplexMatrix m{{1.0, 0.0}, {0.0, 1.0}};
    return m;
}
const ComplexMatrix& x() {
    static const ComplexMatrix m{{0.0, 1.0}, {1.0, 0.0}};
    return m;
}
const ComplexMatrix& y() {
    static const ComplexMatrix m{{0.0, Complex{0.0, -1.0}}, {Complex{0.0, 1.0}, 0.0}};
    return m;
}
const ComplexMatrix& z() {
    static const ComplexMatrix m{{1.0, 0.0}, {0.0, -1.0}};
    return m;
}
}  // namespace pauli

KrausChannel kraus_set(NoiseKind kind, double lambda, PhaseDampingForm phase_damping) {
    if (!(lambda >= 0.0 && lambda <= 1.0)) {
        throw std::invalid_argument("decoherence rate must lie in [0, 1]");
    }
    const double keep = std::sqrt(1.0 - lambda);
    const double hit = std::sqrt(lambda);
    KrausChannel ch{kind, lambda, {}};
    switch (kind) {
        case NoiseKind::BitFlip:
            ch.ops = {scaled(keep, pauli::identity()), scaled(hit, pauli::x())};
            break;
        case NoiseKind::PhaseFlip:
            ch.ops = {scaled(keep, pauli::identity()), scaled(hit, pauli::z())};
            break;
        case NoiseKind::BitPhaseFlip:
            ch.ops = {scaled(keep, pauli::identity()), scaled(hit, pauli::y())};
            break;
        case NoiseKind::AmplitudeDamping:
            ch.ops = {ComplexMatrix{{1.0, 0.0}, {0.0, keep}}, ComplexMatrix{{0.0, hit}, {0.0, 0.0}}};
            break;
        case NoiseKind::PhaseDamping: {
            const ComplexMatrix e0 = phase_damping == PhaseDampingForm::Standard
                                         ? pauli::identity()
                                         : ComplexMatrix{{1.0, 0.0}, {0.0, 0.0}};
            ch.ops = {scaled(keep, e0), ComplexMatrix{{hit, 0.0}, {0.0, 0.0}},
                      ComplexMatrix{{0.0, 0.0}, {0.0, hit}}};
            break;
        }
        case NoiseKind::Depolarizing: {
            const double third = std::sqrt(lambda / 3.0);
            ch.ops = {scaled(keep, pauli::identity()), scaled(third, pauli::x()), scaled(third, pauli::y()),
                      scaled(third, pauli::z())};
            break;
        }
    }
    return ch;
}

double completeness_defect(const KrausChannel& channel) {
    ComplexMatrix sum(2, 2);
    for (const auto& e : channel.ops) sum += e.adjoint() * e;
    return max_abs_diff(sum, pauli::identity());
}

QuantumState apply_correlated_kraus(const QuantumState& state, const KrausChannel& channel,
                                    QubitPair pair_a, QubitPair pair_b) {
    return apply_correlated_kraus(state, std::span<const ComplexMatrix>(channel.ops), pair_a, pair_b);
}

}  // namespace jrsp
