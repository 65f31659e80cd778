// Closed-form JRSP fidelities under the six noise channels, with every
// squared bracket of unit phases read as a squared modulus.

#pragma once

#include "jrsp/channels.hpp"
#include "jrsp/protocol.hpp"

#include <span>
#include <vector>

namespace jrsp {

using ClosedFormKind = NoiseKind;

// Sum of unit phases e^{i theta_k} appearing inside one bracket.
class BracketTerm {
public:
    BracketTerm(std::initializer_list<Complex> entries) : entries_(entries) {}
    explicit BracketTerm(std::vector<Complex> entries) : entries_(std::move(entries)) {}

    std::span<const Complex> entries() const { return entries_; }
    Complex sum() const;
    double squared_modulus() const { return std::norm(sum()); }

private:
    std::vector<Complex> entries_;
};

// The fourth-order coefficient of the depolarizing expression can be grouped
// two ways:
//   SharedFactor:  lambda^2 ((1-lambda)^2/72 - lambda^2/648) * [brackets]
//   SplitQuartic:  lambda^2 (1-lambda)^2/72 * [brackets] - lambda^4/648
enum class DepolarizingGrouping { SharedFactor, SplitQuartic };

struct ClosedFormOptions {
    DepolarizingGrouping depolarizing = DepolarizingGrouping::SharedFactor;
};

// Bracket building blocks, exposed for testing.
BracketTerm omega_bar_bracket(const PhaseSpec& phases);             // w03 + w12 + w21 + w30
BracketTerm eta_minus_bracket(const PhaseSpec& phases, int inner);  // e03 +/- e12 +/- e21 + e30
BracketTerm zeta_minus_bracket(const PhaseSpec& phases, int inner);

// Throws std::invalid_argument for lambda outside [0, 1].
double closed_form_fidelity(ClosedFormKind kind, double lambda, const PhaseSpec& phases,
                            ClosedFormOptions options = {});

struct ComparisonRow {
    double lambda;
    double f_sim;
    double f_closed;
    double abs_diff;
    bool flagged;  // abs_diff above kAnalyticTolerance
};

inline constexpr double kAnalyticTolerance = 1e-9;

struct ComparisonOptions {
    ClosedFormOptions closed_form;
    PhaseDampingForm phase_damping = PhaseDampingForm::Standard;
};

std::vector<ComparisonRow> compare_with_simulation(ClosedFormKind kind, std::span<const double> lambda_grid,
                                                   const PhaseSpec& phases, ComparisonOptions options = {});

}  // namespace jrsp
