#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "markdyn/analytic.hpp"
#include "markdyn/localnet.hpp"
#include "markdyn/transmission.hpp"

namespace markdyn {

enum class ScenarioKind { Continuum, Lattice, Smear, Verify };

const char* to_string(ScenarioKind k);

struct ContinuumScenario {
    DynamicalSystem system;
    DensityState state;
    Projection projection;
    Operator observable;
    ProfileOptions profile;
    std::uint64_t seed = 0;
};

struct LatticeScenario {
    LatticeSystem system;
    DensityState state;
    LatticeRegion p_region;
    Projection p_local;
    LatticeRegion q_region;
    Operator q_local;
    int max_steps = 1;
    double detect_delta = kDefaultDetectDelta;
    std::uint64_t seed = 0;
};

struct SmearScenario {
    DynamicalSystem system;
    Operator observable;
    std::vector<int> n_list;
    double quad_tol = 1e-10;
    std::uint64_t seed = 0;
};

struct VerifyScenario {
    std::uint64_t seed = 42;
    long trials = 1000;
};

/// A parsed, fully validated scenario. canonical_text is the normalized
/// JSON form; emitting and re-parsing it reproduces the config exactly.
struct ScenarioConfig {
    ScenarioKind kind;
    std::variant<ContinuumScenario, LatticeScenario, SmearScenario, VerifyScenario> scenario;
    std::string canonical_text;
};

/// Parses and validates JSON scenario text (schema/scenario.schema.json
/// documents the format). Complex numbers are [re, im] pairs. Throws
/// ConfigError naming the offending field.
ScenarioConfig parse_config(const std::string& text);

/// Reads the file and parses it. Unreadable file throws IoError.
ScenarioConfig load_config(const std::string& path);

/// Normalized JSON text of the config.
std::string emit_config(const ScenarioConfig& config);

struct RandomInstanceFlags {
    bool nondegenerate_spectrum = false;
    double min_gap = 1e-3;
    int resample_budget = 256;
};

struct RandomInstance {
    DynamicalSystem system;
    DensityState state;
    Projection projection;
    Operator observable;
};

/// Deterministic random fixture: Hermitian H from seeded Gaussian entries
/// (optionally resampled until all eigenvalue gaps are at least min_gap),
/// a pure or Wishart-mixed state, a rank-k projection from random
/// orthonormal vectors and a random self-adjoint observable. 2 ≤ dim ≤ 16.
RandomInstance random_instance(int dim, std::uint64_t seed, RandomInstanceFlags flags = {});

/// Serialized run results. elapsed_seconds is in-memory bookkeeping only:
/// emitted files must be byte-identical across reruns of the same config,
/// so timings never reach them (the CLI logs timing to stderr instead).
struct RunReport {
    std::string config_echo;
    ScenarioKind kind = ScenarioKind::Continuum;

    std::optional<Classification> classification;
    std::vector<Zero> zeros;
    std::optional<ManifestationWitness> witness;
    std::optional<double> ground_energy;
    std::optional<double> trace_identity_max_residual;

    std::vector<StepDelta> step_deltas;
    std::optional<double> max_spacelike_delta;

    double elapsed_seconds = 0.0;
};

/// CSV rows `t,omega_Q,omegaP_Q,delta`, one per grid point, 17 significant
/// digits, LF newlines.
std::string profile_csv_text(const TransmissionProfile& prof);
std::string lattice_csv_text(const std::vector<StepDelta>& steps);

/// CSV rows `n,error_norm`.
std::string convergence_csv_text(const std::vector<std::pair<int, double>>& table);

/// Structured JSON text mirroring RunReport (minus timings).
std::string report_text(const RunReport& report);

/// Writes text to path, throwing IoError with the path on failure.
void write_file(const std::string& path, const std::string& text);

} // namespace markdyn
