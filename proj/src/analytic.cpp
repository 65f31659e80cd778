#include "jrsp/analytic.hpp"

#include <cmath>
#include <stdexcept>

namespace jrsp {

namespace {

Complex e(double theta) { return std::polar(1.0, theta); }

double sq(double x) { return x * x; }

// |(e^{i a} + e^{i b})|^2
double pair_modulus(double a, double b) { return BracketTerm{e(a), e(b)}.squared_modulus(); }

BracketTerm signed_bracket(double t03, double t12, double t21, double t30, int inner) {
    const double s = inner >= 0 ? 1.0 : -1.0;
    return BracketTerm{e(t03), s * e(t12), s * e(t21), e(t30)};
}

}  // namespace

Complex BracketTerm::sum() const {
    Complex acc = 0.0;
    for (auto z : entries_) acc += z;
    return acc;
}

BracketTerm omega_bar_bracket(const PhaseSpec& p) {
    return signed_bracket(p.omega_bar(0, 3), p.omega_bar(1, 2), p.omega_bar(2, 1), p.omega_bar(3, 0), +1);
}

BracketTerm eta_minus_bracket(const PhaseSpec& p, int inner) {
    return signed_bracket(p.eta(0, 3, -1), p.eta(1, 2, -1), p.eta(2, 1, -1), p.eta(3, 0, -1), inner);
}

BracketTerm zeta_minus_bracket(const PhaseSpec& p, int inner) {
    return signed_bracket(p.zeta(0, 3, -1), p.zeta(1, 2, -1), p.zeta(2, 1, -1), p.zeta(3, 0, -1), inner);
}

double closed_form_fidelity(ClosedFormKind kind, double lambda, const PhaseSpec& p, ClosedFormOptions options) {
    if (!(lambda >= 0.0 && lambda <= 1.0)) {
        throw std::invalid_argument("decoherence rate must lie in [0, 1]");
    }
    const double l = lambda;
    const double k = 1.0 - lambda;
    const double quartic = sq(sq(l));
    const double mixed = sq(l) * sq(k);

    switch (kind) {
        case NoiseKind::BitFlip:
        case NoiseKind::BitPhaseFlip: {
            const int inner = kind == NoiseKind::BitFlip ? +1 : -1;
            return sq(sq(k)) + quartic / 16.0 * omega_bar_bracket(p).squared_modulus() +
                   mixed / 16.0 *
                       (eta_minus_bracket(p, inner).squared_modulus() +
                        zeta_minus_bracket(p, inner).squared_modulus());
        }
        case NoiseKind::PhaseFlip:
            return quartic + sq(sq(k));
        case NoiseKind::AmplitudeDamping: {
            // Isolated e^{2 theta} factors have unit modulus.
            return sq(1.0 + 2.0 * k + sq(k)) / 16.0 + quartic / 16.0 + mixed / 16.0 * 2.0;
        }
        case NoiseKind::PhaseDamping:
            return sq(sq(k)) + mixed / 4.0 + quartic / 8.0;
        case NoiseKind::Depolarizing: {
            const double inner = pair_modulus(p.eta(1, 2, -1), p.eta(2, 1, -1)) +
                                 pair_modulus(p.zeta(1, 2, -1), p.zeta(2, 1, -1));
            const double outer =
                pair_modulus(p.omega_bar(1, 2), p.omega_bar(2, 1)) + omega_bar_bracket(p).squared_modulus();
            const double tail = quartic / 81.0 + quartic / 648.0 * outer;
            if (options.depolarizing == DepolarizingGrouping::SharedFactor) {
                return sq(sq(k)) + sq(l) * (sq(k) / 72.0 - sq(l) / 648.0) * inner + tail;
            }
            return sq(sq(k)) + mixed / 72.0 * inner - quartic / 648.0 + tail;
        }
    }
    throw std::invalid_argument("unknown closed-form kind");
}

std::vector<ComparisonRow> compare_with_simulation(ClosedFormKind kind, std::span<const double> lambda_grid,
                                                   const PhaseSpec& phases, ComparisonOptions options) {
    std::vector<ComparisonRow> rows;
    rows.reserve(lambda_grid.size());
    for (double lambda : lambda_grid) {
        const double sim = simulate_fidelity(phases, NoiseSpec{kind, lambda, options.phase_damping});
        const double closed = closed_form_fidelity(kind, lambda, phases, options.closed_form);
        const double diff = std::abs(sim - closed);
        rows.push_back({lambda, sim, closed, diff, diff > kAnalyticTolerance});
    }
    return rows;
}

}  // namespace jrsp
