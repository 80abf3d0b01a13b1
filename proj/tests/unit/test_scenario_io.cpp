#include <doctest.h>

#include <sstream>

#include "markdyn/scenario_io.hpp"
#include "test_support.hpp"

using namespace markdyn;
using namespace testsupport;

namespace {

const char* kF1Text = R"json({
  "kind": "continuum",
  "dim": 2,
  "hamiltonian": [[[0, 0], [0, -1]], [[0, 1], [0, 0]]],
  "state": {"pure": [[0.7071067811865476, 0], [0.7071067811865476, 0]]},
  "projection": {"rank_one": [[1, 0], [0, 0]]},
  "observable": {"rank_one": [[1, 0], [0, 0]]},
  "interval": [0, 3.9269908169872414],
  "n_grid": 64
})json";

std::vector<std::string> split_lines(const std::string& text) {
    std::vector<std::string> lines;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) lines.push_back(line);
    return lines;
}

} // namespace

TEST_CASE("F1 config parses into a runnable continuum scenario") {
    const ScenarioConfig config = parse_config(kF1Text);
    CHECK(config.kind == ScenarioKind::Continuum);
    const auto& sc = std::get<ContinuumScenario>(config.scenario);
    CHECK(sc.system.dim() == 2);
    CHECK(sc.profile.n_grid == 64);
    CHECK(sc.profile.t_end == doctest::Approx(5.0 * M_PI / 4.0));
    CHECK(sc.profile.tol_zero == 1e-9);
    CHECK(sc.profile.detect_delta == kDefaultDetectDelta);
}

TEST_CASE("config diagnostics name the offending field") {
    // Non-Hermitian Hamiltonian.
    const char* bad_h = R"json({
      "kind": "continuum", "dim": 2,
      "hamiltonian": [[[0, 0], [1, 0]], [[0, 0], [0, 0]]],
      "state": {"maximally_mixed": true},
      "projection": {"rank_one": [[1, 0], [0, 0]]},
      "observable": {"rank_one": [[1, 0], [0, 0]]},
      "interval": [0, 1]
    })json";
    CHECK_THROWS_WITH_AS(parse_config(bad_h), doctest::Contains("hamiltonian"), ConfigError);

    const char* bad_interval = R"json({
      "kind": "continuum", "dim": 2,
      "hamiltonian": [[[0, 0], [0, -1]], [[0, 1], [0, 0]]],
      "state": {"maximally_mixed": true},
      "projection": {"rank_one": [[1, 0], [0, 0]]},
      "observable": {"rank_one": [[1, 0], [0, 0]]},
      "interval": [0, -1]
    })json";
    CHECK_THROWS_WITH_AS(parse_config(bad_interval),
                         doctest::Contains("t_end must be positive"), ConfigError);

    CHECK_THROWS_WITH_AS(parse_config(R"json({"kind": "verify", "bogus": 1})json"),
                         doctest::Contains("unknown field"), ConfigError);
    CHECK_THROWS_WITH_AS(parse_config(R"json({"kind": "smear", "dim": 2})json"),
                         doctest::Contains("missing field"), ConfigError);
    CHECK_THROWS_AS(parse_config("not json at all"), ConfigError);
}

TEST_CASE("configs round-trip through emit and parse") {
    const std::vector<std::string> texts = {
        kF1Text,
        R"json({"kind": "smear", "dim": 2,
                "hamiltonian": [[[0,0],[0,0]],[[0,0],[1,0]]],
                "observable": {"matrix": [[[0,0],[1,0]],[[1,0],[0,0]]]},
                "n_list": [1, 10, 100]})json",
        R"json({"kind": "lattice", "n_sites": 4, "gates": "cnot",
                "state": {"maximally_mixed": true},
                "projection": {"region": [0,0], "local": {"rank_one": [[1,0],[0,0]]}},
                "observable": {"region": [3,3],
                               "local": {"matrix": [[[1,0],[0,0]],[[0,0],[-1,0]]]}},
                "max_steps": 2})json",
        R"json({"kind": "verify", "seed": 7, "trials": 25})json",
    };
    for (const std::string& text : texts) {
        const ScenarioConfig once = parse_config(text);
        const ScenarioConfig twice = parse_config(emit_config(once));
        CHECK(emit_config(once) == emit_config(twice));
        CHECK(once.kind == twice.kind);
    }
}

TEST_CASE("random_instance is deterministic and validated") {
    const RandomInstance a = random_instance(2, 1);
    const RandomInstance b = random_instance(2, 1);
    CHECK(max_abs(a.system.hamiltonian().matrix() - b.system.hamiltonian().matrix()) == 0.0);
    CHECK(max_abs(a.state.matrix() - b.state.matrix()) == 0.0);
    CHECK(max_abs(a.projection.matrix() - b.projection.matrix()) == 0.0);
    CHECK(max_abs(a.observable.matrix() - b.observable.matrix()) == 0.0);

    const RandomInstance gapped = random_instance(4, 2, {.nondegenerate_spectrum = true});
    const RealVector& eigs = gapped.system.eigenvalues();
    for (int i = 0; i + 1 < eigs.size(); ++i) CHECK(eigs(i + 1) - eigs(i) >= 1e-3);

    const RandomInstance inst = random_instance(3, 9);
    CHECK_NOTHROW(Projection::validated(inst.projection.op()));
    CHECK_NOTHROW(DensityState::validated(inst.state.op()));
    CHECK_NOTHROW(ensure_selfadjoint(inst.observable));
    CHECK_NOTHROW(ensure_selfadjoint(inst.system.hamiltonian()));

    CHECK_THROWS_AS(random_instance(1, 0), ValidationError);
    CHECK_THROWS_AS(random_instance(17, 0), ValidationError);
}

TEST_CASE("profile CSV layout and values") {
    ProfileOptions opts;
    opts.t_end = M_PI;
    opts.n_grid = 5;
    const TransmissionProfile prof = profile(fixture_f1(), f1_projection(), opts);
    const std::string csv = profile_csv_text(prof);
    const auto lines = split_lines(csv);
    REQUIRE(lines.size() == 6);
    CHECK(lines[0] == "t,omega_Q,omegaP_Q,delta");
    // Row at t = pi/4 carries delta = 1/2.
    std::istringstream row(lines[2]);
    std::string field;
    std::vector<double> fields;
    while (std::getline(row, field, ',')) fields.push_back(std::stod(field));
    REQUIRE(fields.size() == 4);
    CHECK(std::abs(fields[0] - M_PI / 4.0) < 1e-15);
    CHECK(std::abs(fields[3] - 0.5) < 1e-12);
    CHECK(std::abs(fields[1] - fields[2] - fields[3]) < 1e-15);
    CHECK(csv.back() == '\n');
    CHECK(csv.find('\r') == std::string::npos);
}

TEST_CASE("report text carries the classification") {
    const ProcessInstance f1 = fixture_f1();
    const ProcessInstance mixed(f1.system, DensityState::maximally_mixed(2), f1.observable);
    ProfileOptions opts;
    opts.t_end = 2.0;
    opts.n_grid = 64;
    const TransmissionProfile prof = profile(mixed, f1_projection(), opts);
    RunReport report;
    report.kind = ScenarioKind::Continuum;
    report.classification = prof.classification;
    report.ground_energy = f1.system.ground_energy();
    const std::string text = report_text(report);
    CHECK(text.find("\"classification\": \"NeverManifested\"") != std::string::npos);
    CHECK(text.find("\"ground_energy\"") != std::string::npos);
}

TEST_CASE("convergence CSV layout") {
    const std::string csv = convergence_csv_text({{1, 0.25}, {10, 0.025}});
    const auto lines = split_lines(csv);
    REQUIRE(lines.size() == 3);
    CHECK(lines[0] == "n,error_norm");
    CHECK(lines[1].substr(0, 2) == "1,");
}

TEST_CASE("write_file surfaces the failing path") {
    CHECK_THROWS_WITH_AS(write_file("/nonexistent-dir-zz9/out.csv", "x"),
                         doctest::Contains("/nonexistent-dir-zz9/out.csv"), IoError);
}
