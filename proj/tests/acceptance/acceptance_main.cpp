// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Criteria with pinned runtime budgets are timed with a steady clock.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "markdyn/analytic.hpp"
#include "markdyn/localnet.hpp"
#include "markdyn/rng.hpp"
#include "markdyn/scenario_io.hpp"
#include "markdyn/transmission.hpp"
#include "markdyn/verify.hpp"

using namespace markdyn;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

ProcessInstance fixture_f1() {
    Matrix sy(2, 2);
    sy << Complex(0, 0), Complex(0, -1), Complex(0, 1), Complex(0, 0);
    Vector plus(2);
    plus << Complex(M_SQRT1_2, 0), Complex(M_SQRT1_2, 0);
    Vector zero(2);
    zero << Complex(1, 0), Complex(0, 0);
    return ProcessInstance(DynamicalSystem(Operator(sy)), DensityState::pure(plus),
                           Projection::rank_one(zero).op());
}

Projection f1_projection() {
    Vector zero(2);
    zero << Complex(1, 0), Complex(0, 0);
    return Projection::rank_one(zero);
}

Matrix sigma_x() {
    Matrix m(2, 2);
    m << Complex(0, 0), Complex(1, 0), Complex(1, 0), Complex(0, 0);
    return m;
}

std::string fmt(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3g", x);
    return buf;
}

// 1. Corrected Lüders trace identity over 1000 seeded triples, dims 2-6.
Outcome criterion1() {
    double max_residual = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const int dim = 2 + i % 5;
        const RandomInstance inst = random_instance(dim, 10000 + i);
        const Complex lhs =
            expectation(luders_update(inst.state, inst.projection), inst.observable);
        const Complex rhs =
            expectation(inst.state, inst.observable) -
            expectation(inst.state, double_commutator(inst.projection, inst.observable));
        max_residual = std::max(max_residual, std::abs(lhs - rhs));
    }
    return {max_residual <= 1e-8, "max residual " + fmt(max_residual)};
}

// 2. State-quantified invariance equivalence, 1000 trials, zero violations.
Outcome criterion2() {
    Rng rng(20000);
    int violations = 0;
    for (int i = 0; i < 1000; ++i) {
        const int dim = 2 + i % 5;
        const Projection p = Projection::rank_one(random_pure_state(rng, dim));
        Matrix qm;
        if (i % 2 == 0) {
            qm = random_hermitian(rng, dim);
        } else {
            Eigen::SelfAdjointEigenSolver<Matrix> es(p.matrix());
            RealVector d(dim);
            for (int k = 0; k < dim; ++k) d(k) = rng.normal();
            qm = es.eigenvectors() * d.asDiagonal().toDenseMatrix().cast<Complex>() *
                 es.eigenvectors().adjoint();
        }
        const Operator q{qm};
        const double comm = op_norm(commutator(p.op(), q));
        double max_delta = 0.0;
        for (int s = 0; s < 64; ++s) {
            const DensityState w = DensityState::pure(random_pure_state(rng, dim));
            const double delta =
                expectation(w, q).real() - expectation(luders_update(w, p), q).real();
            max_delta = std::max(max_delta, std::abs(delta));
        }
        if (comm > 1e-6 && max_delta <= 1e-9) ++violations;
        if (comm <= 1e-12 && max_delta > 1e-9) ++violations;
    }
    return {violations == 0, std::to_string(violations) + " violations"};
}

// 3. Double-commutator <=> commutator equivalence at 1e-9, 1000 trials.
Outcome criterion3() {
    Rng rng(30000);
    int violations = 0;
    for (int i = 0; i < 1000; ++i) {
        const int dim = 2 + i % 5;
        const Projection p = Projection::rank_one(random_pure_state(rng, dim));
        Matrix qm;
        if (i % 2 == 0) {
            qm = random_hermitian(rng, dim);
        } else {
            Eigen::SelfAdjointEigenSolver<Matrix> es(p.matrix());
            RealVector d(dim);
            for (int k = 0; k < dim; ++k) d(k) = rng.normal();
            qm = es.eigenvectors() * d.asDiagonal().toDenseMatrix().cast<Complex>() *
                 es.eigenvectors().adjoint();
        }
        const Operator q{qm};
        const bool comm_zero = op_norm(commutator(p.op(), q)) <= 1e-9;
        const bool dc_zero = op_norm(double_commutator(p, q)) <= 1e-9;
        if (comm_zero != dc_zero) ++violations;
    }
    return {violations == 0, std::to_string(violations) + " violations"};
}

// 4. F1 profile vs the closed form sin(2t)/2, zeros, classification, witness.
Outcome criterion4() {
    const ProcessInstance f1 = fixture_f1();
    ProfileOptions opts;
    opts.t_end = 5.0 * M_PI / 4.0;
    opts.n_grid = 4096;
    const TransmissionProfile prof = profile(f1, f1_projection(), opts);

    double max_residual = 0.0;
    for (std::size_t i = 0; i < prof.grid.size(); ++i)
        max_residual = std::max(
            max_residual, std::abs(prof.delta[i] - 0.5 * std::sin(2.0 * prof.grid[i])));
    if (max_residual > 1e-9) return {false, "pointwise residual " + fmt(max_residual)};

    if (prof.zeros.size() != 2) return {false, "expected 2 zeros"};
    const double zero_err = std::max(std::abs(prof.zeros[0].location - M_PI / 2.0),
                                     std::abs(prof.zeros[1].location - M_PI));
    if (zero_err > 1e-6) return {false, "zero location error " + fmt(zero_err)};

    if (prof.classification != Classification::CSIP)
        return {false, std::string("classification ") + to_string(prof.classification)};

    const ManifestationWitness witness = manifestation_witness(prof, 1e-3);
    if (!witness.applicable || !witness.pass || witness.fraction < 0.99)
        return {false, "witness fraction " + fmt(witness.fraction)};
    return {true, "pointwise " + fmt(max_residual) + ", zeros " + fmt(zero_err) +
                      ", fraction " + fmt(witness.fraction)};
}

// 5. No Indeterminate classifications over 200 nondegenerate fixtures.
Outcome criterion5() {
    int indeterminate = 0;
    for (int i = 0; i < 200; ++i) {
        const RandomInstance ri =
            random_instance(2 + i % 3, 50000 + i, {.nondegenerate_spectrum = true});
        const ProcessInstance inst(ri.system, ri.state, ri.observable);
        ProfileOptions opts;
        opts.t_end = 2.0 * M_PI;
        const TransmissionProfile prof = profile(inst, ri.projection, opts);
        if (prof.classification == Classification::Indeterminate) ++indeterminate;
    }
    return {indeterminate == 0, std::to_string(indeterminate) + " indeterminate"};
}

// 6. Smearing fixture F2 against the Gaussian-integral closed form.
Outcome criterion6() {
    Matrix h = Matrix::Zero(2, 2);
    h(1, 1) = 1.0;
    const DynamicalSystem sys{Operator(h)};
    const Operator a{sigma_x()};
    double max_err = 0.0;
    double max_route_gap = 0.0;
    for (int n : {1, 10, 100}) {
        const SmearingResult quad = gaussian_smear(sys, a, n);
        const double expected = 1.0 - std::exp(-1.0 / (4.0 * n));
        max_err = std::max(max_err, std::abs(quad.error_norm - expected));
        const Operator spectral = gaussian_smear_spectral(sys, a, n);
        max_route_gap = std::max(
            max_route_gap, (quad.smeared.matrix() - spectral.matrix()).cwiseAbs().maxCoeff());
    }
    const bool pass = max_err <= 1e-8 && max_route_gap <= 1e-10;
    return {pass, "closed-form gap " + fmt(max_err) + ", route gap " + fmt(max_route_gap)};
}

// 7. State-uniform expectation bound and the smear-then-round mark.
Outcome criterion7() {
    Rng rng(70000);
    double max_excess = 0.0;
    for (int i = 0; i < 256; ++i) {
        const int dim = 2 + i % 4;
        const RandomInstance a = random_instance(dim, 70100 + 2 * i);
        const RandomInstance b = random_instance(dim, 70101 + 2 * i);
        const double norm = op_norm(Operator(a.projection.matrix() - b.projection.matrix()));
        const DensityState w = DensityState::pure(random_pure_state(rng, dim));
        const double gap = std::abs(expectation(w, a.projection.op()).real() -
                                    expectation(w, b.projection.op()).real());
        max_excess = std::max(max_excess, gap - norm - 1e-10);
    }
    if (max_excess > 0.0) return {false, "bound exceeded by " + fmt(max_excess)};

    Matrix h = Matrix::Zero(2, 2);
    h(1, 1) = 1.0;
    const DynamicalSystem sys{Operator(h)};
    Vector plus(2);
    plus << Complex(M_SQRT1_2, 0), Complex(M_SQRT1_2, 0);
    const Projection p = Projection::rank_one(plus);
    const Projection rounded = nearest_projection(gaussian_smear_spectral(sys, p.op(), 100));
    const IndistinguishabilityReport rep = delta_indistinguishable(p, rounded, 0.01);
    return {rep.close, "smear-round norm " + fmt(rep.norm)};
}

// 8. Lattice shielding across 200 spacelike configurations plus support
//    containment in the light cone.
Outcome criterion8() {
    Rng rng(80000);
    double max_delta = 0.0;
    for (int i = 0; i < 200; ++i) {
        const int n_sites = 4 + static_cast<int>(rng.integer(5)); // 4..8
        const LatticeSystem sys(n_sites, GateKind::Random, 80100 + i);
        const int max_steps = (n_sites - 2) / 2;
        const int steps = static_cast<int>(rng.integer(max_steps + 1));
        const int min_q = 2 * steps + 1;
        const int q_site = min_q + static_cast<int>(rng.integer(n_sites - min_q));
        const LatticeRegion p_region{0, 0};
        const LatticeRegion q_region{q_site, q_site};
        const DensityState w = DensityState::pure(random_pure_state(rng, sys.dim()));
        const Projection p_local = Projection::rank_one(random_pure_state(rng, 2));
        const Operator q_local{random_hermitian(rng, 2)};

        const ShieldingResult res =
            shielding_check(sys, w, p_region, p_local, q_region, q_local, steps);
        if (!res.spacelike) return {false, "configuration " + std::to_string(i) + " not spacelike"};
        max_delta = std::max(max_delta, std::abs(res.delta));

        Operator q_emb = embed_local(sys, q_local, q_region);
        for (int k = 0; k < steps; ++k)
            q_emb = brickwork_step(sys, q_emb, StepDirection::Heisenberg);
        const auto support = support_region(q_emb.matrix(), n_sites);
        const LatticeRegion cone = lightcone(q_region, steps, n_sites);
        if (support && (support->lo < cone.lo || support->hi > cone.hi))
            return {false, "support escaped the light cone"};
    }
    return {max_delta <= 1e-12, "max spacelike delta " + fmt(max_delta)};
}

// 9. Spectrum-condition falsifier: 1000 trials, zero counterexamples, nonvacuous > 0.
Outcome criterion9() {
    Rng rng(90000);
    int counterexamples = 0;
    int nonvacuous = 0;
    int vacuous = 0;
    for (int dim = 2; dim <= 6; ++dim) {
        const DynamicalSystem sys{Operator(random_hermitian(rng, dim))};
        const FalsifierReport rep = spectrum_condition_falsifier(sys, 200, 0.5, 90100 + dim);
        counterexamples += rep.counterexamples;
        nonvacuous += rep.nonvacuous;
        vacuous += rep.vacuous;
    }
    const bool pass = counterexamples == 0 && nonvacuous > 0 && vacuous < 1000;
    return {pass, std::to_string(counterexamples) + " counterexamples, " +
                      std::to_string(nonvacuous) + " nonvacuous, " + std::to_string(vacuous) +
                      " vacuous"};
}

// 10. Byte-identical CLI outputs across repeated runs with the same seed.
Outcome criterion10() {
    const fs::path dir = fs::temp_directory_path() / "markdyn_acceptance";
    fs::create_directories(dir);
    const fs::path config = dir / "f1.json";
    {
        std::ofstream out(config);
        out << R"json({
  "kind": "continuum",
  "dim": 2,
  "hamiltonian": [[[0, 0], [0, -1]], [[0, 1], [0, 0]]],
  "state": {"pure": [[0.7071067811865476, 0], [0.7071067811865476, 0]]},
  "projection": {"rank_one": [[1, 0], [0, 0]]},
  "observable": {"rank_one": [[1, 0], [0, 0]]},
  "interval": [0, 3.9269908169872414],
  "n_grid": 1024,
  "seed": 11
})json";
    }
    const auto slurp = [](const fs::path& p) {
        std::ifstream in(p, std::ios::binary);
        std::ostringstream buf;
        buf << in.rdbuf();
        return buf.str();
    };
    const std::string cli = MARKDYN_CLI_PATH;
    for (int round = 0; round < 2; ++round) {
        const std::string tag = std::to_string(round);
        const std::string cmd = cli + " simulate --config " + config.string() +
                                " --out-profile " + (dir / ("p" + tag + ".csv")).string() +
                                " --out-report " + (dir / ("r" + tag + ".json")).string() +
                                " 2>/dev/null";
        if (WEXITSTATUS(std::system(cmd.c_str())) != 0) return {false, "simulate failed"};
    }
    if (slurp(dir / "p0.csv") != slurp(dir / "p1.csv")) return {false, "profile CSVs differ"};
    if (slurp(dir / "r0.json") != slurp(dir / "r1.json")) return {false, "reports differ"};

    for (int round = 0; round < 2; ++round) {
        const std::string cmd = cli + " verify --seed 42 --trials 40 > " +
                                (dir / ("v" + std::to_string(round) + ".txt")).string() +
                                " 2>/dev/null";
        if (WEXITSTATUS(std::system(cmd.c_str())) != 0) return {false, "verify failed"};
    }
    if (slurp(dir / "v0.txt") != slurp(dir / "v1.txt")) return {false, "verify outputs differ"};
    return {true, "simulate and verify byte-identical"};
}

struct Criterion {
    int number;
    const char* label;
    std::function<Outcome()> fn;
    double time_budget_s; // 0 = unbounded
};

} // namespace

int main() {
    const std::vector<Criterion> criteria = {
        {1, "Lüders trace identity (1000 triples, dims 2-6, <= 1e-8)", criterion1, 10.0},
        {2, "state-quantified invariance equivalence (1000 trials)", criterion2, 0.0},
        {3, "double-commutator <=> commutator at 1e-9 (1000 trials)", criterion3, 0.0},
        {4, "F1 profile, zeros, CSIP, witness", criterion4, 5.0},
        {5, "no Indeterminate over 200 nondegenerate fixtures", criterion5, 0.0},
        {6, "F2 smearing closed form and route agreement", criterion6, 5.0},
        {7, "delta-indistinguishability bounds and smear-round mark", criterion7, 0.0},
        {8, "lattice shielding and light-cone containment (200 configs)", criterion8, 60.0},
        {9, "spectrum-condition falsifier (1000 trials, zero counterexamples)", criterion9, 0.0},
        {10, "byte-identical simulate and verify reruns", criterion10, 0.0},
    };

    int failures = 0;
    for (const Criterion& c : criteria) {
        const auto start = Clock::now();
        Outcome outcome;
        try {
            outcome = c.fn();
        } catch (const std::exception& e) {
            outcome = {false, std::string("exception: ") + e.what()};
        }
        const double elapsed = std::chrono::duration<double>(Clock::now() - start).count();
        if (c.time_budget_s > 0.0 && elapsed > c.time_budget_s) {
            outcome.pass = false;
            outcome.detail += " [over time budget]";
        }
        std::printf("[%s] criterion %d: %s (%s; %.2f s)\n", outcome.pass ? "PASS" : "FAIL",
                    c.number, c.label, outcome.detail.c_str(), elapsed);
        if (!outcome.pass) ++failures;
    }
    if (failures > 0) {
        std::printf("acceptance: %d criterion(s) failed\n", failures);
        return 1;
    }
    std::printf("acceptance: all %zu criteria passed\n", criteria.size());
    return 0;
}
