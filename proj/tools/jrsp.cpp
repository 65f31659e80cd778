#include "jrsp/cli.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <map>
#include <sstream>
#include <string>

namespace {

using namespace jrsp;
using namespace jrsp::cli;

struct PhaseOptions {
    std::string alpha = "0,0,0";
    std::string beta = "0,0,0";
    bool radians = false;

    void attach(CLI::App* app) {
        app->add_option("--alpha", alpha, "alpha_1,alpha_2,alpha_3");
        app->add_option("--beta", beta, "beta_1,beta_2,beta_3");
        auto* deg = app->add_flag("--degrees", "angles in degrees (default)");
        auto* rad = app->add_flag("--radians", radians, "angles in radians");
        deg->excludes(rad);
    }

    AngleUnit unit() const { return radians ? AngleUnit::Radians : AngleUnit::Degrees; }
    PhaseSpec phases() const { return {parse_angles(alpha, unit()), parse_angles(beta, unit())}; }
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Joint remote state preparation simulator"};
    app.require_subcommand(1);

    const std::map<std::string, OutputFormat> formats{{"csv", OutputFormat::Csv}, {"json", OutputFormat::Json}};

    // sweep
    auto* sweep = app.add_subcommand("sweep", "fidelity versus decoherence rate");
    PhaseOptions sweep_phases;
    sweep_phases.attach(sweep);
    std::string channel = "all";
    double lambda_start = 0.0;
    double lambda_end = 1.0;
    int steps = 101;
    OutputFormat sweep_format = OutputFormat::Csv;
    bool renormalized = false;
    std::string output_path;
    std::string preset_name;
    sweep->add_option("--channel", channel, "comma-separated channel names or 'all'");
    sweep->add_option("--lambda-start", lambda_start);
    sweep->add_option("--lambda-end", lambda_end);
    sweep->add_option("--steps", steps);
    sweep->add_option("--format", sweep_format)->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));
    sweep->add_flag("--renormalized", renormalized, "divide by the actual success weight");
    sweep->add_option("--output", output_path, "write to PATH instead of stdout");
    sweep->add_option("--preset", preset_name, "fig1a|fig1b|fig1c|fig3a|fig3b");

    // outcomes
    auto* outcomes = app.add_subcommand("outcomes", "noiseless 16-branch outcome table");
    PhaseOptions outcome_phases;
    outcome_phases.attach(outcomes);
    std::string mode_name = "case1";
    OutputFormat outcome_format = OutputFormat::Csv;
    outcomes->add_option("--mode", mode_name, "case1|bob-assist|both-assists");
    outcomes->add_option("--format", outcome_format)->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));

    // verify
    auto* verify = app.add_subcommand("verify", "closed forms against simulation");
    PhaseOptions verify_phases;
    verify_phases.attach(verify);
    int verify_steps = 101;
    verify->add_option("--steps", verify_steps);

    // bases
    auto* bases = app.add_subcommand("bases", "dump both measurement bases");
    PhaseOptions basis_phases;
    basis_phases.attach(bases);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*sweep) {
            SweepConfig cfg;
            if (!preset_name.empty()) {
                auto p = preset(preset_name);
                if (!p) throw std::invalid_argument("unknown preset '" + preset_name + "'");
                cfg = *p;
            } else {
                cfg.phases = sweep_phases.phases();
            }
            if (channel != "all") {
                cfg.channels.clear();
                std::stringstream names(channel);
                for (std::string name; std::getline(names, name, ',');) {
                    auto kind = parse_noise_kind(name);
                    if (!kind) throw std::invalid_argument("unknown channel '" + name + "'");
                    cfg.channels.push_back(*kind);
                }
            }
            cfg.angle_unit = sweep_phases.unit();
            if (sweep->count("--lambda-start")) cfg.lambda_start = lambda_start;
            if (sweep->count("--lambda-end")) cfg.lambda_end = lambda_end;
            if (sweep->count("--steps")) cfg.steps = steps;
            cfg.format = sweep_format;
            cfg.renormalized = renormalized;
            if (!output_path.empty()) cfg.output_path = output_path;
            return cmd_sweep(cfg, std::cout, std::cerr);
        }
        if (*outcomes) {
            auto mode = parse_assist_mode(mode_name);
            if (!mode) throw std::invalid_argument("unknown mode '" + mode_name + "'");
            return cmd_outcomes(outcome_phases.phases(), *mode, outcome_format, std::cout);
        }
        if (*verify) {
            VerifyConfig cfg = default_verify_config();
            if (verify->count("--alpha") || verify->count("--beta")) cfg.phase_sets = {verify_phases.phases()};
            cfg.grid = lambda_grid(0.0, 1.0, verify_steps);
            return cmd_verify(cfg, std::cout);
        }
        if (*bases) return cmd_bases(basis_phases.phases(), std::cout);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}
