#include "jrsp/cli.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>

namespace jrsp::cli {

namespace {

constexpr double kDegree = std::numbers::pi / 180.0;

// Round-trips through the 12-digit text form so JSON and CSV agree.
double rounded(double x) { return std::stod(format_number(x)); }

std::string format_complex(Complex z) {
    const double re = std::abs(z.real()) < 1e-15 ? 0.0 : z.real();
    const double im = std::abs(z.imag()) < 1e-15 ? 0.0 : z.imag();
    if (im == 0.0) return format_number(re);
    std::string s = format_number(re);
    s += im < 0.0 ? "-" : "+";
    s += format_number(std::abs(im));
    s += "i";
    return s;
}

void write_basis(std::ostream& out, std::string_view title, const MeasurementBasis& basis) {
    out << title << '\n';
    for (const auto& row : basis.vectors) {
        out << "  [";
        for (std::size_t k = 0; k < row.size(); ++k) {
            if (k != 0) out << ", ";
            out << format_complex(row[k]);
        }
        out << "]\n";
    }
    out << "  gram_defect " << format_number(gram_defect(basis)) << '\n';
}

double max_diff(const std::vector<ComparisonRow>& rows) {
    double worst = 0.0;
    for (const auto& r : rows) worst = std::max(worst, r.abs_diff);
    return worst;
}

bool is_unambiguous(NoiseKind kind) {
    return kind == NoiseKind::PhaseFlip || kind == NoiseKind::PhaseDamping;
}

std::string describe(const PhaseSpec& p) {
    std::ostringstream s;
    s << "alpha=(" << format_number(p.alpha()[1]) << "," << format_number(p.alpha()[2]) << ","
      << format_number(p.alpha()[3]) << ") beta=(" << format_number(p.beta()[1]) << ","
      << format_number(p.beta()[2]) << "," << format_number(p.beta()[3]) << ") rad";
    return s.str();
}

// Per-lambda residual across all phase sets.
void write_residuals(std::ostream& out, const std::vector<std::vector<ComparisonRow>>& per_set) {
    const std::size_t n = per_set.front().size();
    for (std::size_t i = 0; i < n; ++i) {
        double worst = 0.0;
        for (const auto& rows : per_set) worst = std::max(worst, rows[i].abs_diff);
        if (worst > kAnalyticTolerance) {
            out << "    residual lambda=" << format_number(per_set.front()[i].lambda)
                << " max_abs_diff=" << format_number(worst) << '\n';
        }
    }
}

}  // namespace

std::vector<double> lambda_grid(double start, double end, int steps) {
    if (steps < 2) throw std::invalid_argument("steps must be at least 2");
    std::vector<double> grid(static_cast<std::size_t>(steps));
    for (int i = 0; i < steps; ++i) {
        const double t = static_cast<double>(i) / (steps - 1);
        grid[static_cast<std::size_t>(i)] = start + (end - start) * t;
    }
    grid.back() = end;
    return grid;
}

void validate(const SweepConfig& cfg) {
    if (!(cfg.lambda_start >= 0.0 && cfg.lambda_start <= cfg.lambda_end && cfg.lambda_end <= 1.0)) {
        throw std::invalid_argument("need 0 <= lambda-start <= lambda-end <= 1");
    }
    if (cfg.steps < 2) throw std::invalid_argument("steps must be at least 2");
    if (cfg.channels.empty()) throw std::invalid_argument("no channel selected");
}

std::optional<SweepConfig> preset(std::string_view name) {
    struct Entry {
        std::string_view name;
        double degrees;
        bool three_flips;
    };
    static constexpr std::array<Entry, 5> kPresets{{
        {"fig1a", 30.0, true},
        {"fig1b", 180.0, true},
        {"fig1c", 300.0, true},
        {"fig3a", 30.0, false},
        {"fig3b", 300.0, false},
    }};
    for (const auto& p : kPresets) {
        if (p.name != name) continue;
        SweepConfig cfg;
        cfg.phases = PhaseSpec::uniform(p.degrees * kDegree);
        if (p.three_flips) cfg.channels = {NoiseKind::BitFlip, NoiseKind::PhaseFlip, NoiseKind::BitPhaseFlip};
        return cfg;
    }
    return std::nullopt;
}

std::array<double, 3> parse_angles(std::string_view text, AngleUnit unit) {
    std::array<double, 3> out{};
    std::size_t count = 0;
    while (true) {
        const auto comma = text.find(',');
        std::string token(text.substr(0, comma));
        token.erase(0, token.find_first_not_of(" \t"));
        token.erase(token.find_last_not_of(" \t") + 1);
        if (count >= 3) throw std::invalid_argument("expected exactly three comma-separated angles (the first phase of each sender is fixed at 0)");
        double value = 0.0;
        const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
        if (ec != std::errc{} || ptr != token.data() + token.size() || token.empty() || !std::isfinite(value)) {
            throw std::invalid_argument("invalid angle '" + token + "'");
        }
        out[count++] = unit == AngleUnit::Degrees ? value * kDegree : value;
        if (comma == std::string_view::npos) break;
        text.remove_prefix(comma + 1);
    }
    if (count != 3) {
        throw std::invalid_argument(
            "expected exactly three comma-separated angles (alpha_0 and beta_0 are fixed at zero)");
    }
    return out;
}

std::string format_number(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    std::string s(buf);
    if (s == "-0") s = "0";
    return s;
}

std::vector<SweepRow> run_sweep(const SweepConfig& cfg) {
    validate(cfg);
    const auto convention = cfg.renormalized ? FidelityConvention::Renormalized : FidelityConvention::Unnormalized;
    std::vector<SweepRow> rows;
    for (double lambda : lambda_grid(cfg.lambda_start, cfg.lambda_end, cfg.steps)) {
        for (NoiseKind kind : cfg.channels) {
            const double sim = simulate_fidelity(cfg.phases, NoiseSpec{kind, lambda}, convention);
            const double closed = closed_form_fidelity(kind, lambda, cfg.phases);
            rows.push_back({lambda, kind, sim, closed, std::abs(sim - closed)});
        }
    }
    return rows;
}

void write_sweep(std::ostream& out, std::span<const SweepRow> rows, OutputFormat format) {
    if (format == OutputFormat::Csv) {
        out << kSweepHeader << '\n';
        for (const auto& r : rows) {
            out << format_number(r.lambda) << ',' << to_string(r.channel) << ','
                << format_number(r.fidelity_sim) << ',' << format_number(r.fidelity_closed) << ','
                << format_number(r.abs_diff) << '\n';
        }
        return;
    }
    nlohmann::json doc = nlohmann::json::array();
    for (const auto& r : rows) {
        doc.push_back({{"lambda", rounded(r.lambda)},
                       {"channel", std::string(to_string(r.channel))},
                       {"fidelity_sim", rounded(r.fidelity_sim)},
                       {"fidelity_closed", rounded(r.fidelity_closed)},
                       {"abs_diff", rounded(r.abs_diff)}});
    }
    out << doc.dump(2) << '\n';
}

int cmd_sweep(const SweepConfig& cfg, std::ostream& out, std::ostream& err) {
    std::vector<SweepRow> rows;
    try {
        rows = run_sweep(cfg);
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    if (!cfg.output_path) {
        write_sweep(out, rows, cfg.format);
        return kExitOk;
    }
    std::ofstream file(*cfg.output_path);
    if (!file) {
        err << "error: cannot open '" << *cfg.output_path << "' for writing\n";
        return kExitUsage;
    }
    write_sweep(file, rows, cfg.format);
    file.flush();
    if (!file) {
        err << "error: failed writing '" << *cfg.output_path << "'\n";
        return kExitUsage;
    }
    return kExitOk;
}

int cmd_outcomes(const PhaseSpec& phases, AssistMode mode, OutputFormat format, std::ostream& out) {
    const auto records = run_jrsp(phases, std::nullopt, mode);
    auto normalized = [](const OutcomeRecord& r) -> std::optional<double> {
        if (!r.branch_fidelity || r.weight <= 0.0) return std::nullopt;
        return *r.branch_fidelity / r.weight;
    };
    if (format == OutputFormat::Csv) {
        out << "alice_index,bob_index,weight,success,fidelity_normalized\n";
        for (const auto& r : records) {
            const auto f = normalized(r);
            out << r.alice_index << ',' << r.bob_index << ',' << format_number(r.weight) << ','
                << (r.success ? "true" : "false") << ',' << (f ? format_number(*f) : "") << '\n';
        }
    } else {
        nlohmann::json doc = nlohmann::json::array();
        for (const auto& r : records) {
            const auto f = normalized(r);
            doc.push_back({{"alice_index", r.alice_index},
                           {"bob_index", r.bob_index},
                           {"weight", rounded(r.weight)},
                           {"success", r.success},
                           {"fidelity_normalized", f ? nlohmann::json(rounded(*f)) : nlohmann::json(nullptr)}});
        }
        out << doc.dump(2) << '\n';
    }
    return kExitOk;
}

int cmd_bases(const PhaseSpec& phases, std::ostream& out) {
    write_basis(out, "alice", alice_basis(phases));
    write_basis(out, "bob", bob_basis(phases));
    return kExitOk;
}

VerifyConfig default_verify_config() {
    VerifyConfig cfg;
    for (double deg : {30.0, 180.0, 300.0}) cfg.phase_sets.push_back(PhaseSpec::uniform(deg * kDegree));
    std::mt19937_64 rng(20170607);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
    for (int k = 0; k < 2; ++k) {
        cfg.phase_sets.push_back(PhaseSpec({angle(rng), angle(rng), angle(rng)}, {angle(rng), angle(rng), angle(rng)}));
    }
    cfg.grid = lambda_grid(0.0, 1.0, 101);
    return cfg;
}

std::optional<double> find_crossover(NoiseKind a, NoiseKind b, const PhaseSpec& phases,
                                     std::span<const double> grid) {
    auto gap = [&](double lambda) {
        return simulate_fidelity(phases, NoiseSpec{a, lambda}) - simulate_fidelity(phases, NoiseSpec{b, lambda});
    };
    for (std::size_t i = 1; i < grid.size(); ++i) {
        double lo = grid[i - 1];
        double hi = grid[i];
        double g_lo = gap(lo);
        const double g_hi = gap(hi);
        if (g_lo == 0.0) {
            if (lo > grid.front()) return lo;
            continue;
        }
        if ((g_lo > 0.0) == (g_hi > 0.0)) continue;
        for (int iter = 0; iter < 60 && hi - lo > 1e-13; ++iter) {
            const double mid = 0.5 * (lo + hi);
            const double g_mid = gap(mid);
            if ((g_mid > 0.0) == (g_lo > 0.0)) {
                lo = mid;
                g_lo = g_mid;
            } else {
                hi = mid;
            }
        }
        return 0.5 * (lo + hi);
    }
    return std::nullopt;
}

int cmd_verify(const VerifyConfig& cfg, std::ostream& out) {
    bool failed = false;
    out << "jrsp verification report\n";
    out << "grid: " << cfg.grid.size() << " points in [" << format_number(cfg.grid.front()) << ", "
        << format_number(cfg.grid.back()) << "]\n";
    out << "phase sets:\n";
    for (const auto& p : cfg.phase_sets) out << "  " << describe(p) << '\n';

    out << "\nclosed form vs simulation (tolerance " << format_number(kAnalyticTolerance) << ")\n";
    auto report = [&](NoiseKind kind, std::string_view label, ComparisonOptions options) {
        std::vector<std::vector<ComparisonRow>> per_set;
        for (const auto& p : cfg.phase_sets) per_set.push_back(compare_with_simulation(kind, cfg.grid, p, options));
        double worst = 0.0;
        for (const auto& rows : per_set) worst = std::max(worst, max_diff(rows));
        const bool ok = worst <= kAnalyticTolerance;
        out << "  " << label << " max_abs_diff=" << format_number(worst) << ' ' << (ok ? "ok" : "DEVIATES")
            << (is_unambiguous(kind) ? " [unambiguous]" : " [reading-dependent]") << '\n';
        if (!ok) write_residuals(out, per_set);
        return ok;
    };

    for (NoiseKind kind : kAllNoiseKinds) {
        if (kind == NoiseKind::Depolarizing) {
            report(kind, "depolarizing (shared-factor grouping)", {});
            report(kind, "depolarizing (split-quartic grouping)",
                   ComparisonOptions{ClosedFormOptions{DepolarizingGrouping::SplitQuartic}});
            continue;
        }
        const bool ok = report(kind, to_string(kind), {});
        if (!ok && is_unambiguous(kind)) failed = true;
    }

    out << "\nphase damping Kraus sets against the closed form\n";
    {
        const PhaseSpec& p = cfg.phase_sets.front();
        const auto standard = compare_with_simulation(NoiseKind::PhaseDamping, cfg.grid, p, {});
        const auto printed = compare_with_simulation(
            NoiseKind::PhaseDamping, cfg.grid, p, ComparisonOptions{{}, PhaseDampingForm::AsPrinted});
        out << "  standard E0 = sqrt(1-l) I       max_abs_diff=" << format_number(max_diff(standard)) << '\n';
        out << "  as-printed E0 = sqrt(1-l) |0><0| max_abs_diff=" << format_number(max_diff(printed)) << '\n';
        out << "  lambda,closed,standard,as_printed\n";
        for (std::size_t i = 0; i < cfg.grid.size(); ++i) {
            if (i % 10 != 0 && i + 1 != cfg.grid.size()) continue;
            out << "  " << format_number(standard[i].lambda) << ',' << format_number(standard[i].f_closed) << ','
                << format_number(standard[i].f_sim) << ',' << format_number(printed[i].f_sim) << '\n';
        }
    }

    out << "\ncrossover scan at alpha_t = beta_t = 30 deg\n";
    {
        const PhaseSpec p = PhaseSpec::uniform(30.0 * kDegree);
        const auto cross = find_crossover(NoiseKind::AmplitudeDamping, NoiseKind::PhaseFlip, p, cfg.grid);
        out << "  amplitude-damping / phase-flip crossover lambda="
            << (cross ? format_number(*cross) : std::string("none")) << '\n';
    }

    out << "\nresult: " << (failed ? "FAIL" : "PASS") << '\n';
    return failed ? kExitVerifyFailed : kExitOk;
}

}  // namespace jrsp::cli
