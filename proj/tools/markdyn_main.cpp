#include <chrono>
#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "markdyn/scenario_io.hpp"
#include "markdyn/verify.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerificationFailure = 1;
constexpr int kExitConfigError = 2;
constexpr int kExitIoError = 3;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

std::vector<int> parse_n_list(const std::string& text) {
    std::vector<int> out;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t comma = text.find(',', pos);
        if (comma == std::string::npos) comma = text.size();
        const std::string item = text.substr(pos, comma - pos);
        if (item.empty()) throw markdyn::ConfigError("--n-list: empty entry");
        try {
            const int n = std::stoi(item);
            if (n < 1) throw markdyn::ConfigError("--n-list: entries must be >= 1");
            out.push_back(n);
        } catch (const std::invalid_argument&) {
            throw markdyn::ConfigError("--n-list: not an integer: " + item);
        } catch (const std::out_of_range&) {
            throw markdyn::ConfigError("--n-list: out of range: " + item);
        }
        pos = comma + 1;
    }
    for (std::size_t i = 0; i + 1 < out.size(); ++i)
        if (out[i + 1] <= out[i])
            throw markdyn::ConfigError("--n-list: must be strictly increasing");
    return out;
}

int run_simulate(const std::string& config_path, const std::string& out_profile,
                 const std::string& out_report) {
    using namespace markdyn;
    const auto start = Clock::now();
    const ScenarioConfig config = load_config(config_path);

    RunReport report;
    report.config_echo = config.canonical_text;
    report.kind = config.kind;
    std::string csv;

    if (config.kind == ScenarioKind::Continuum) {
        const auto& sc = std::get<ContinuumScenario>(config.scenario);
        const ProcessInstance inst(sc.system, sc.state, sc.observable);
        const TransmissionProfile prof = profile(inst, sc.projection, sc.profile);

        double trace_residual = 0.0;
        for (std::size_t i = 0; i < prof.grid.size(); ++i) {
            const double via_id = mark_delta_via_identity(inst, sc.projection, prof.grid[i]);
            trace_residual = std::max(trace_residual, std::abs(prof.delta[i] - via_id));
        }

        report.classification = prof.classification;
        report.zeros = prof.zeros;
        report.witness = manifestation_witness(prof, sc.profile.detect_delta);
        report.ground_energy = sc.system.ground_energy();
        report.trace_identity_max_residual = trace_residual;
        csv = profile_csv_text(prof);
    } else if (config.kind == ScenarioKind::Lattice) {
        const auto& sc = std::get<LatticeScenario>(config.scenario);
        const std::vector<StepDelta> steps = local_mark_profile(
            sc.system, sc.state, sc.p_region, sc.p_local, sc.q_region, sc.q_local,
            sc.max_steps);
        double max_spacelike = 0.0;
        for (const StepDelta& s : steps)
            if (s.spacelike) max_spacelike = std::max(max_spacelike, std::abs(s.delta));
        report.step_deltas = steps;
        report.max_spacelike_delta = max_spacelike;
        csv = lattice_csv_text(steps);
    } else {
        throw ConfigError("config.kind: \"" + std::string(to_string(config.kind)) +
                          "\" is not runnable with simulate (expected continuum or lattice)");
    }

    write_file(out_profile, csv);
    report.elapsed_seconds = seconds_since(start);
    write_file(out_report, report_text(report));
    std::fprintf(stderr, "simulate: %.3f s\n", report.elapsed_seconds);
    return kExitOk;
}

int run_smear(const std::string& config_path, const std::string& n_list_flag,
              const std::string& out_path) {
    using namespace markdyn;
    const auto start = Clock::now();
    const ScenarioConfig config = load_config(config_path);
    if (config.kind != ScenarioKind::Smear)
        throw ConfigError("config.kind: expected smear, got " +
                          std::string(to_string(config.kind)));
    const auto& sc = std::get<SmearScenario>(config.scenario);

    std::vector<int> n_list = sc.n_list;
    if (!n_list_flag.empty()) n_list = parse_n_list(n_list_flag);
    if (n_list.empty())
        throw ConfigError("n_list: empty (provide --n-list or config n_list)");

    const auto table = smear_convergence(sc.system, sc.observable, n_list, sc.quad_tol);
    write_file(out_path, convergence_csv_text(table));
    std::fprintf(stderr, "smear: %.3f s\n", seconds_since(start));
    return kExitOk;
}

int run_verify_cmd(std::uint64_t seed, long trials) {
    using namespace markdyn;
    const auto start = Clock::now();
    if (trials < 1) throw ConfigError("--trials: must be at least 1");
    const VerifyOptions options{seed, trials};
    const std::vector<SuiteResult> results = run_verify(options);
    std::cout << verify_summary(results);
    std::fprintf(stderr, "verify: %.3f s\n", seconds_since(start));
    return all_passed(results) ? kExitOk : kExitVerificationFailure;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "markdyn: finite-dimensional mark transmission laboratory.\n"
        "Scenario files are JSON; the schema ships at schema/scenario.schema.json."};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_profile;
    std::string out_report;
    CLI::App* simulate = app.add_subcommand(
        "simulate", "Run a continuum or lattice scenario; write profile CSV and report");
    simulate->add_option("--config", config_path, "Scenario config (JSON)")->required();
    simulate->add_option("--out-profile", out_profile, "Profile CSV output path")->required();
    simulate->add_option("--out-report", out_report, "Report JSON output path")->required();

    std::string smear_config;
    std::string n_list_flag;
    std::string smear_out;
    CLI::App* smear = app.add_subcommand(
        "smear", "Gaussian smearing convergence table for a smear scenario");
    smear->add_option("--config", smear_config, "Scenario config (JSON, kind smear)")
        ->required();
    smear->add_option("--n-list", n_list_flag, "Comma-separated smearing parameters");
    smear->add_option("--out", smear_out, "Convergence CSV output path")->required();

    std::uint64_t seed = 42;
    long trials = 1000;
    CLI::App* verify = app.add_subcommand(
        "verify", "Run every module invariant suite; exit 0 iff all pass");
    verify->add_option("--seed", seed, "Random seed");
    verify->add_option("--trials", trials, "Trial count for randomized suites");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitConfigError;
    }

    try {
        if (simulate->parsed()) return run_simulate(config_path, out_profile, out_report);
        if (smear->parsed()) return run_smear(smear_config, n_list_flag, smear_out);
        if (verify->parsed()) return run_verify_cmd(seed, trials);
    } catch (const markdyn::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfigError;
    } catch (const markdyn::IoError& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return kExitIoError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitVerificationFailure;
    }
    return kExitConfigError;
}
