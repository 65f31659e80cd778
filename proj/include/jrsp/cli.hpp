// Command implementations behind the `jrsp` executable. Each command writes
// to a caller-supplied stream and returns a process exit status.

#pragma once

#include "jrsp/analytic.hpp"
#include "jrsp/channels.hpp"
#include "jrsp/protocol.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace jrsp::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitVerifyFailed = 2;

enum class AngleUnit { Degrees, Radians };
enum class OutputFormat { Csv, Json };

struct SweepConfig {
    std::vector<NoiseKind> channels{kAllNoiseKinds.begin(), kAllNoiseKinds.end()};
    double lambda_start = 0.0;
    double lambda_end = 1.0;
    int steps = 101;
    PhaseSpec phases;
    AngleUnit angle_unit = AngleUnit::Degrees;
    OutputFormat format = OutputFormat::Csv;
    bool renormalized = false;
    std::optional<std::string> output_path;
};

struct SweepRow {
    double lambda;
    NoiseKind channel;
    double fidelity_sim;
    double fidelity_closed;
    double abs_diff;
};

inline constexpr std::string_view kSweepHeader = "lambda,channel,fidelity_sim,fidelity_closed,abs_diff";

// Evenly spaced grid with both endpoints included exactly.
std::vector<double> lambda_grid(double start, double end, int steps);

// Throws std::invalid_argument when the range or step count is invalid.
void validate(const SweepConfig& cfg);

std::optional<SweepConfig> preset(std::string_view name);

// "a1,a2,a3" in the given unit -> radians. Throws std::invalid_argument.
std::array<double, 3> parse_angles(std::string_view text, AngleUnit unit);

// 12 significant digits, "-0" printed as "0".
std::string format_number(double x);

std::vector<SweepRow> run_sweep(const SweepConfig& cfg);
void write_sweep(std::ostream& out, std::span<const SweepRow> rows, OutputFormat format);

int cmd_sweep(const SweepConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_outcomes(const PhaseSpec& phases, AssistMode mode, OutputFormat format, std::ostream& out);
int cmd_bases(const PhaseSpec& phases, std::ostream& out);

struct VerifyConfig {
    std::vector<PhaseSpec> phase_sets;
    std::vector<double> grid;
};

// Preset phases at 30, 180 and 300 degrees plus two fixed pseudo-random sets.
VerifyConfig default_verify_config();

// First lambda in the grid interval where f_a - f_b changes sign, refined by
// bisection on the simulated curves.
std::optional<double> find_crossover(NoiseKind a, NoiseKind b, const PhaseSpec& phases,
                                     std::span<const double> grid);

int cmd_verify(const VerifyConfig& cfg, std::ostream& out);

}  // namespace jrsp::cli
