#include "markdyn/scenario_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "markdyn/rng.hpp"

namespace markdyn {

using json = nlohmann::ordered_json;

const char* to_string(ScenarioKind k) {
    switch (k) {
        case ScenarioKind::Continuum: return "continuum";
        case ScenarioKind::Lattice: return "lattice";
        case ScenarioKind::Smear: return "smear";
        case ScenarioKind::Verify: return "verify";
    }
    return "continuum";
}

namespace {

std::string format_double(double x) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

[[noreturn]] void fail(const std::string& path, const std::string& message) {
    throw ConfigError(path + ": " + message);
}

const json& member(const json& j, const std::string& path, const std::string& key) {
    if (!j.is_object()) fail(path, "expected an object");
    const auto it = j.find(key);
    if (it == j.end()) fail(path + "." + key, "missing field");
    return *it;
}

void check_keys(const json& j, const std::string& path, const std::vector<std::string>& required,
                const std::vector<std::string>& optional) {
    if (!j.is_object()) fail(path, "expected an object");
    for (const auto& key : required)
        if (!j.contains(key)) fail(path + "." + key, "missing field");
    for (const auto& [key, value] : j.items()) {
        (void)value;
        const bool known =
            std::find(required.begin(), required.end(), key) != required.end() ||
            std::find(optional.begin(), optional.end(), key) != optional.end();
        if (!known) fail(path + "." + key, "unknown field");
    }
}

double number_at(const json& j, const std::string& path) {
    if (!j.is_number()) fail(path, "expected a number");
    return j.get<double>();
}

long integer_at(const json& j, const std::string& path) {
    if (!j.is_number_integer()) fail(path, "expected an integer");
    return j.get<long>();
}

Complex complex_at(const json& j, const std::string& path) {
    if (!j.is_array() || j.size() != 2) fail(path, "expected a [re, im] pair");
    return {number_at(j[0], path + "[0]"), number_at(j[1], path + "[1]")};
}

Matrix matrix_at(const json& j, const std::string& path) {
    if (!j.is_array() || j.empty()) fail(path, "expected a nonempty array of rows");
    const std::size_t n = j.size();
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        const json& row = j[i];
        const std::string row_path = path + "[" + std::to_string(i) + "]";
        if (!row.is_array() || row.size() != n)
            fail(row_path, "expected a row of length " + std::to_string(n));
        for (std::size_t k = 0; k < n; ++k)
            m(i, k) = complex_at(row[k], row_path + "[" + std::to_string(k) + "]");
    }
    return m;
}

Vector vector_at(const json& j, const std::string& path) {
    if (!j.is_array() || j.empty()) fail(path, "expected a nonempty array");
    Vector v(j.size());
    for (std::size_t i = 0; i < j.size(); ++i)
        v(i) = complex_at(j[i], path + "[" + std::to_string(i) + "]");
    return v;
}

DensityState state_at(const json& j, Eigen::Index dim, const std::string& path) {
    if (!j.is_object() || j.size() != 1)
        fail(path, "expected exactly one of {pure, density, maximally_mixed}");
    try {
        if (j.contains("pure")) {
            const Vector psi = vector_at(j["pure"], path + ".pure");
            if (psi.size() != dim) fail(path + ".pure", "length does not match dim");
            return DensityState::pure(psi);
        }
        if (j.contains("density")) {
            const Matrix m = matrix_at(j["density"], path + ".density");
            if (m.rows() != dim) fail(path + ".density", "size does not match dim");
            return DensityState::validated(Operator(m));
        }
        if (j.contains("maximally_mixed")) {
            if (!j["maximally_mixed"].is_boolean() || !j["maximally_mixed"].get<bool>())
                fail(path + ".maximally_mixed", "expected true");
            return DensityState::maximally_mixed(dim);
        }
    } catch (const ValidationError& e) {
        fail(path, e.what());
    }
    fail(path, "expected one of {pure, density, maximally_mixed}");
}

Projection projection_at(const json& j, Eigen::Index dim, const std::string& path) {
    if (!j.is_object() || j.size() != 1) fail(path, "expected exactly one of {matrix, rank_one}");
    try {
        if (j.contains("matrix")) {
            const Matrix m = matrix_at(j["matrix"], path + ".matrix");
            if (m.rows() != dim) fail(path + ".matrix", "size does not match dim");
            return Projection::validated(Operator(m));
        }
        if (j.contains("rank_one")) {
            const Vector psi = vector_at(j["rank_one"], path + ".rank_one");
            if (psi.size() != dim) fail(path + ".rank_one", "length does not match dim");
            return Projection::rank_one(psi);
        }
    } catch (const ValidationError& e) {
        fail(path, e.what());
    }
    fail(path, "expected one of {matrix, rank_one}");
}

Operator observable_at(const json& j, Eigen::Index dim, const std::string& path) {
    if (!j.is_object() || j.size() != 1) fail(path, "expected exactly one of {matrix, rank_one}");
    try {
        if (j.contains("matrix")) {
            const Matrix m = matrix_at(j["matrix"], path + ".matrix");
            if (m.rows() != dim) fail(path + ".matrix", "size does not match dim");
            Operator op{m};
            ensure_selfadjoint(op);
            return op;
        }
        if (j.contains("rank_one")) {
            const Vector psi = vector_at(j["rank_one"], path + ".rank_one");
            if (psi.size() != dim) fail(path + ".rank_one", "length does not match dim");
            return Projection::rank_one(psi).op();
        }
    } catch (const ValidationError& e) {
        fail(path, e.what());
    }
    fail(path, "expected one of {matrix, rank_one}");
}

LatticeRegion region_at(const json& j, int n_sites, const std::string& path) {
    if (!j.is_array() || j.size() != 2) fail(path, "expected [lo, hi]");
    LatticeRegion region;
    region.lo = static_cast<int>(integer_at(j[0], path + "[0]"));
    region.hi = static_cast<int>(integer_at(j[1], path + "[1]"));
    if (region.lo < 0 || region.lo > region.hi || region.hi >= n_sites)
        fail(path, "region out of range for " + std::to_string(n_sites) + " sites");
    return region;
}

GateKind gate_kind_at(const json& j, const std::string& path) {
    if (!j.is_string()) fail(path, "expected \"cnot\", \"random\" or \"identity\"");
    const std::string s = j.get<std::string>();
    if (s == "cnot") return GateKind::Cnot;
    if (s == "random") return GateKind::Random;
    if (s == "identity") return GateKind::Identity;
    fail(path, "unknown gate kind \"" + s + "\"");
}

const char* to_string(GateKind k) {
    switch (k) {
        case GateKind::Cnot: return "cnot";
        case GateKind::Random: return "random";
        case GateKind::Identity: return "identity";
    }
    return "cnot";
}

std::uint64_t seed_at(const json& j, const std::string& path) {
    if (!j.is_number_integer()) fail(path, "expected an integer");
    return j.get<std::uint64_t>();
}

json canonical_common(ScenarioKind kind) {
    json out;
    out["kind"] = to_string(kind);
    return out;
}

} // namespace

ScenarioConfig parse_config(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config: JSON syntax error: ") + e.what());
    }
    if (!j.is_object()) throw ConfigError("config: expected a JSON object");
    const json& kind_field = member(j, "config", "kind");
    if (!kind_field.is_string()) fail("config.kind", "expected a string");
    const std::string kind = kind_field.get<std::string>();

    ScenarioConfig config{ScenarioKind::Continuum, VerifyScenario{}, ""};

    if (kind == "continuum") {
        check_keys(j, "config",
                   {"kind", "dim", "hamiltonian", "state", "projection", "observable",
                    "interval"},
                   {"n_grid", "tol_zero", "refine_tol", "detect_delta", "seed"});
        const long dim = integer_at(j["dim"], "config.dim");
        if (dim < 1 || dim > 64) fail("config.dim", "dim must be in [1, 64]");
        const Matrix h = matrix_at(j["hamiltonian"], "config.hamiltonian");
        if (h.rows() != dim) fail("config.hamiltonian", "size does not match dim");

        ProfileOptions opts;
        const json& interval = j["interval"];
        if (!interval.is_array() || interval.size() != 2)
            fail("config.interval", "expected [0, t_end]");
        if (number_at(interval[0], "config.interval[0]") != 0.0)
            fail("config.interval[0]", "interval must start at 0");
        opts.t_end = number_at(interval[1], "config.interval[1]");
        if (!(opts.t_end > 0.0)) fail("config.interval[1]", "t_end must be positive");
        if (j.contains("n_grid")) {
            const long n = integer_at(j["n_grid"], "config.n_grid");
            if (n < 2) fail("config.n_grid", "n_grid must be at least 2");
            opts.n_grid = static_cast<int>(n);
        }
        if (j.contains("tol_zero")) {
            opts.tol_zero = number_at(j["tol_zero"], "config.tol_zero");
            if (!(opts.tol_zero > 0.0)) fail("config.tol_zero", "tol_zero must be positive");
        }
        if (j.contains("refine_tol")) {
            opts.refine_tol = number_at(j["refine_tol"], "config.refine_tol");
            if (!(opts.refine_tol > 0.0))
                fail("config.refine_tol", "refine_tol must be positive");
        }
        if (j.contains("detect_delta")) {
            opts.detect_delta = number_at(j["detect_delta"], "config.detect_delta");
            if (!(opts.detect_delta > 0.0))
                fail("config.detect_delta", "detect_delta must be positive");
        }
        const std::uint64_t seed = j.contains("seed") ? seed_at(j["seed"], "config.seed") : 0;

        Operator h_op{h};
        try {
            ensure_selfadjoint(h_op);
        } catch (const ValidationError&) {
            fail("config.hamiltonian", "not self-adjoint");
        }
        ContinuumScenario scenario{
            DynamicalSystem(h_op),
            state_at(j["state"], dim, "config.state"),
            projection_at(j["projection"], dim, "config.projection"),
            observable_at(j["observable"], dim, "config.observable"),
            opts,
            seed};
        config.kind = ScenarioKind::Continuum;
        config.scenario = std::move(scenario);

        json canonical = canonical_common(ScenarioKind::Continuum);
        canonical["dim"] = j["dim"];
        canonical["hamiltonian"] = j["hamiltonian"];
        canonical["state"] = j["state"];
        canonical["projection"] = j["projection"];
        canonical["observable"] = j["observable"];
        canonical["interval"] = j["interval"];
        canonical["n_grid"] = opts.n_grid;
        canonical["tol_zero"] = opts.tol_zero;
        canonical["refine_tol"] = opts.refine_tol;
        canonical["detect_delta"] = opts.detect_delta;
        canonical["seed"] = seed;
        config.canonical_text = canonical.dump(2) + "\n";
        return config;
    }

    if (kind == "lattice") {
        check_keys(j, "config",
                   {"kind", "n_sites", "gates", "state", "projection", "observable",
                    "max_steps"},
                   {"detect_delta", "seed"});
        const long n_sites = integer_at(j["n_sites"], "config.n_sites");
        if (n_sites < 2 || n_sites > 12) fail("config.n_sites", "n_sites must be in [2, 12]");
        const GateKind gates = gate_kind_at(j["gates"], "config.gates");
        const std::uint64_t seed = j.contains("seed") ? seed_at(j["seed"], "config.seed") : 0;
        const long max_steps = integer_at(j["max_steps"], "config.max_steps");
        if (max_steps < 1) fail("config.max_steps", "max_steps must be at least 1");
        double detect_delta = kDefaultDetectDelta;
        if (j.contains("detect_delta")) {
            detect_delta = number_at(j["detect_delta"], "config.detect_delta");
            if (!(detect_delta > 0.0))
                fail("config.detect_delta", "detect_delta must be positive");
        }

        const json& proj = j["projection"];
        check_keys(proj, "config.projection", {"region", "local"}, {});
        const json& obs = j["observable"];
        check_keys(obs, "config.observable", {"region", "local"}, {});
        const LatticeRegion p_region =
            region_at(proj["region"], static_cast<int>(n_sites), "config.projection.region");
        const LatticeRegion q_region =
            region_at(obs["region"], static_cast<int>(n_sites), "config.observable.region");
        const Eigen::Index chain_dim = Eigen::Index(1) << n_sites;

        LatticeScenario scenario{
            LatticeSystem(static_cast<int>(n_sites), gates, seed),
            state_at(j["state"], chain_dim, "config.state"),
            p_region,
            projection_at(proj["local"], Eigen::Index(1) << p_region.size(),
                          "config.projection.local"),
            q_region,
            observable_at(obs["local"], Eigen::Index(1) << q_region.size(),
                          "config.observable.local"),
            static_cast<int>(max_steps),
            detect_delta,
            seed};
        config.kind = ScenarioKind::Lattice;
        config.scenario = std::move(scenario);

        json canonical = canonical_common(ScenarioKind::Lattice);
        canonical["n_sites"] = j["n_sites"];
        canonical["gates"] = to_string(gates);
        canonical["state"] = j["state"];
        canonical["projection"] = j["projection"];
        canonical["observable"] = j["observable"];
        canonical["max_steps"] = j["max_steps"];
        canonical["detect_delta"] = detect_delta;
        canonical["seed"] = seed;
        config.canonical_text = canonical.dump(2) + "\n";
        return config;
    }

    if (kind == "smear") {
        check_keys(j, "config", {"kind", "dim", "hamiltonian", "observable"},
                   {"n_list", "quad_tol", "seed"});
        const long dim = integer_at(j["dim"], "config.dim");
        if (dim < 1 || dim > 64) fail("config.dim", "dim must be in [1, 64]");
        const Matrix h = matrix_at(j["hamiltonian"], "config.hamiltonian");
        if (h.rows() != dim) fail("config.hamiltonian", "size does not match dim");
        Operator h_op{h};
        try {
            ensure_selfadjoint(h_op);
        } catch (const ValidationError&) {
            fail("config.hamiltonian", "not self-adjoint");
        }
        std::vector<int> n_list;
        if (j.contains("n_list")) {
            if (!j["n_list"].is_array()) fail("config.n_list", "expected an array");
            for (std::size_t i = 0; i < j["n_list"].size(); ++i) {
                const long n =
                    integer_at(j["n_list"][i], "config.n_list[" + std::to_string(i) + "]");
                if (n < 1) fail("config.n_list[" + std::to_string(i) + "]", "n must be >= 1");
                n_list.push_back(static_cast<int>(n));
            }
            for (std::size_t i = 0; i + 1 < n_list.size(); ++i)
                if (n_list[i + 1] <= n_list[i])
                    fail("config.n_list", "must be strictly increasing");
        }
        double quad_tol = 1e-10;
        if (j.contains("quad_tol")) {
            quad_tol = number_at(j["quad_tol"], "config.quad_tol");
            if (!(quad_tol > 0.0)) fail("config.quad_tol", "quad_tol must be positive");
        }
        const std::uint64_t seed = j.contains("seed") ? seed_at(j["seed"], "config.seed") : 0;

        SmearScenario scenario{DynamicalSystem(h_op),
                               observable_at(j["observable"], dim, "config.observable"),
                               n_list, quad_tol, seed};
        config.kind = ScenarioKind::Smear;
        config.scenario = std::move(scenario);

        json canonical = canonical_common(ScenarioKind::Smear);
        canonical["dim"] = j["dim"];
        canonical["hamiltonian"] = j["hamiltonian"];
        canonical["observable"] = j["observable"];
        canonical["n_list"] = n_list;
        canonical["quad_tol"] = quad_tol;
        canonical["seed"] = seed;
        config.canonical_text = canonical.dump(2) + "\n";
        return config;
    }

    if (kind == "verify") {
        check_keys(j, "config", {"kind"}, {"seed", "trials"});
        VerifyScenario scenario;
        if (j.contains("seed")) scenario.seed = seed_at(j["seed"], "config.seed");
        if (j.contains("trials")) {
            scenario.trials = integer_at(j["trials"], "config.trials");
            if (scenario.trials < 1) fail("config.trials", "trials must be at least 1");
        }
        config.kind = ScenarioKind::Verify;
        config.scenario = scenario;

        json canonical = canonical_common(ScenarioKind::Verify);
        canonical["seed"] = scenario.seed;
        canonical["trials"] = scenario.trials;
        config.canonical_text = canonical.dump(2) + "\n";
        return config;
    }

    fail("config.kind", "unknown kind \"" + kind + "\"");
}

ScenarioConfig load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read config file: " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    if (in.bad()) throw IoError("error while reading config file: " + path);
    return parse_config(buffer.str());
}

std::string emit_config(const ScenarioConfig& config) { return config.canonical_text; }

RandomInstance random_instance(int dim, std::uint64_t seed, RandomInstanceFlags flags) {
    if (dim < 2 || dim > 16)
        throw ValidationError("random_instance: dim must be in [2, 16], got " +
                              std::to_string(dim));
    Rng rng(seed);

    Matrix h;
    bool accepted = false;
    for (int attempt = 0; attempt < flags.resample_budget; ++attempt) {
        h = random_hermitian(rng, dim);
        if (!flags.nondegenerate_spectrum) {
            accepted = true;
            break;
        }
        Eigen::SelfAdjointEigenSolver<Matrix> es(h, Eigen::EigenvaluesOnly);
        double min_gap = std::numeric_limits<double>::infinity();
        for (Eigen::Index i = 0; i + 1 < dim; ++i)
            min_gap = std::min(min_gap, es.eigenvalues()(i + 1) - es.eigenvalues()(i));
        if (min_gap >= flags.min_gap) {
            accepted = true;
            break;
        }
    }
    if (!accepted)
        throw ValidationError("random_instance: resampling budget exhausted without a "
                              "nondegenerate spectrum");

    DensityState state = [&] {
        if (rng.uniform() < 0.5) return DensityState::pure(random_pure_state(rng, dim));
        Matrix g(dim, dim);
        for (Eigen::Index i = 0; i < dim; ++i)
            for (Eigen::Index j = 0; j < dim; ++j) g(i, j) = rng.cnormal();
        Matrix w = g * g.adjoint();
        w /= w.trace().real();
        return DensityState::validated(Operator(w));
    }();

    const int rank = 1 + static_cast<int>(rng.integer(static_cast<std::uint64_t>(dim - 1)));
    const Matrix u = random_unitary(rng, dim);
    Matrix p = Matrix::Zero(dim, dim);
    for (int i = 0; i < rank; ++i) p += u.col(i) * u.col(i).adjoint();

    const Matrix q = random_hermitian(rng, dim);

    return RandomInstance{DynamicalSystem(Operator(h)), std::move(state),
                          Projection::validated(Operator(p)), Operator(q)};
}

std::string profile_csv_text(const TransmissionProfile& prof) {
    std::string out = "t,omega_Q,omegaP_Q,delta\n";
    for (std::size_t i = 0; i < prof.grid.size(); ++i) {
        out += format_double(prof.grid[i]);
        out += ',';
        out += format_double(prof.omega_q[i]);
        out += ',';
        out += format_double(prof.omega_p_q[i]);
        out += ',';
        out += format_double(prof.delta[i]);
        out += '\n';
    }
    return out;
}

std::string lattice_csv_text(const std::vector<StepDelta>& steps) {
    std::string out = "t,omega_Q,omegaP_Q,delta\n";
    for (const StepDelta& s : steps) {
        out += format_double(static_cast<double>(s.step));
        out += ',';
        out += format_double(s.omega_q);
        out += ',';
        out += format_double(s.omega_p_q);
        out += ',';
        out += format_double(s.delta);
        out += '\n';
    }
    return out;
}

std::string convergence_csv_text(const std::vector<std::pair<int, double>>& table) {
    std::string out = "n,error_norm\n";
    for (const auto& [n, err] : table) {
        out += std::to_string(n);
        out += ',';
        out += format_double(err);
        out += '\n';
    }
    return out;
}

std::string report_text(const RunReport& report) {
    json out;
    out["kind"] = to_string(report.kind);
    if (!report.config_echo.empty()) out["config"] = json::parse(report.config_echo);
    if (report.ground_energy) out["ground_energy"] = *report.ground_energy;
    if (report.classification) out["classification"] = to_string(*report.classification);
    if (report.classification) {
        json zeros = json::array();
        for (const Zero& z : report.zeros) {
            json entry;
            entry["location"] = z.location;
            entry["kind"] = z.kind == ZeroKind::SignChange ? "sign-change" : "tangential";
            zeros.push_back(entry);
        }
        out["zeros"] = zeros;
    }
    if (report.witness) {
        json w;
        w["applicable"] = report.witness->applicable;
        w["count"] = report.witness->count;
        w["fraction"] = report.witness->fraction;
        w["pass"] = report.witness->pass;
        out["manifestation_witness"] = w;
    }
    if (report.trace_identity_max_residual)
        out["trace_identity_max_residual"] = *report.trace_identity_max_residual;
    if (!report.step_deltas.empty()) {
        json steps = json::array();
        for (const StepDelta& s : report.step_deltas) {
            json row;
            row["step"] = s.step;
            row["omega_Q"] = s.omega_q;
            row["omegaP_Q"] = s.omega_p_q;
            row["delta"] = s.delta;
            row["spacelike"] = s.spacelike;
            steps.push_back(row);
        }
        out["steps"] = steps;
    }
    if (report.max_spacelike_delta) out["max_spacelike_delta"] = *report.max_spacelike_delta;
    return out.dump(2) + "\n";
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open for writing: " + path);
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    out.flush();
    if (!out) throw IoError("error while writing: " + path);
}

} // namespace markdyn
