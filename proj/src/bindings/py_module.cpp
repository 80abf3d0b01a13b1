#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "markdyn/analytic.hpp"
#include "markdyn/localnet.hpp"
#include "markdyn/scenario_io.hpp"
#include "markdyn/transmission.hpp"
#include "markdyn/verify.hpp"

namespace py = pybind11;
using namespace markdyn;

namespace {

Projection as_projection(const Matrix& m) { return Projection::validated(Operator(m)); }
DensityState as_density(const Matrix& m) { return DensityState::validated(Operator(m)); }
Operator as_selfadjoint(const Matrix& m) {
    Operator op{m};
    ensure_selfadjoint(op);
    return op;
}

ValidationKind validation_kind(const std::string& kind) {
    if (kind == "projection") return ValidationKind::Projection;
    if (kind == "density") return ValidationKind::Density;
    if (kind == "selfadjoint") return ValidationKind::SelfAdjoint;
    throw ValidationError("validate: unknown kind \"" + kind +
                          "\" (expected projection, density or selfadjoint)");
}

GateKind gate_kind(const std::string& kind) {
    if (kind == "cnot") return GateKind::Cnot;
    if (kind == "random") return GateKind::Random;
    if (kind == "identity") return GateKind::Identity;
    throw ValidationError("gate kind must be cnot, random or identity");
}

StepDirection step_direction(const std::string& direction) {
    if (direction == "heisenberg") return StepDirection::Heisenberg;
    if (direction == "schrodinger") return StepDirection::Schrodinger;
    throw ValidationError("direction must be heisenberg or schrodinger");
}

ProcessInstance make_instance(const DynamicalSystem& sys, const Matrix& w, const Matrix& q) {
    return ProcessInstance(sys, as_density(w), Operator(q));
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Finite-dimensional mark transmission laboratory: Lüders marking, "
              "manifestation profiles, Gaussian smearing and a qubit-chain locality model.";

    py::register_exception<DimensionError>(m, "DimensionError", PyExc_ValueError);
    py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);

    // ----- operator_core
    m.def(
        "validate",
        [](const Matrix& a, const std::string& kind, double tol) {
            validate(Operator(a), validation_kind(kind), tol);
        },
        py::arg("a"), py::arg("kind"), py::arg("tol") = kTolStruct,
        "Check projection/density/selfadjoint invariants; raises ValueError on failure.");
    m.def(
        "expectation",
        [](const Matrix& w, const Matrix& a) { return expectation(as_density(w), Operator(a)); },
        py::arg("w"), py::arg("a"), "tr(W A)");
    m.def(
        "commutator",
        [](const Matrix& a, const Matrix& b) {
            return commutator(Operator(a), Operator(b)).matrix();
        },
        py::arg("a"), py::arg("b"));
    m.def(
        "double_commutator",
        [](const Matrix& p, const Matrix& q) {
            return double_commutator(as_projection(p), Operator(q)).matrix();
        },
        py::arg("p"), py::arg("q"), "[P,[P,Q]] = PQ + QP - 2PQP");
    m.def(
        "op_norm", [](const Matrix& a) { return op_norm(Operator(a)); }, py::arg("a"),
        "Spectral norm (largest singular value).");

    // ----- dynamics
    py::class_<DynamicalSystem>(m, "DynamicalSystem")
        .def(py::init([](const Matrix& h) { return DynamicalSystem(Operator(h)); }),
             py::arg("hamiltonian"))
        .def_property_readonly("dim", &DynamicalSystem::dim)
        .def_property_readonly("eigenvalues",
                               [](const DynamicalSystem& s) { return s.eigenvalues(); })
        .def_property_readonly("hamiltonian",
                               [](const DynamicalSystem& s) { return s.hamiltonian().matrix(); })
        .def("unitary", &DynamicalSystem::unitary, py::arg("t"), "U_t = exp(-iHt)")
        .def(
            "evolve",
            [](const DynamicalSystem& s, const Matrix& a, double t) {
                return s.evolve(Operator(a), t).matrix();
            },
            py::arg("a"), py::arg("t"), "tau_t(A) = U_t A U_t^-1")
        .def("ground_energy", &DynamicalSystem::ground_energy);

    // ----- marking
    m.def(
        "luders_update",
        [](const Matrix& w, const Matrix& p) {
            return luders_update(as_density(w), as_projection(p)).matrix();
        },
        py::arg("w"), py::arg("p"), "W -> PWP + (1-P)W(1-P)");
    m.def(
        "classical_channel_update",
        [](const RealVector& p, const RealMatrix& t) {
            return classical_channel_update(p, ClassicalChannel::validated(t));
        },
        py::arg("p"), py::arg("t"));
    m.def(
        "mark_delta",
        [](const DynamicalSystem& sys, const Matrix& w, const Matrix& p, const Matrix& q,
           double t) { return mark_delta(make_instance(sys, w, q), as_projection(p), t); },
        py::arg("sys"), py::arg("w"), py::arg("p"), py::arg("q"), py::arg("t"),
        "Delta(t) = omega(tau_t(Q)) - omega_P(tau_t(Q))");
    m.def(
        "manifested",
        [](const DynamicalSystem& sys, const Matrix& w, const Matrix& p, const Matrix& q,
           double detect_delta, double t) {
            return manifested(make_instance(sys, w, q),
                              MarkSpec(as_projection(p), detect_delta), t);
        },
        py::arg("sys"), py::arg("w"), py::arg("p"), py::arg("q"), py::arg("detect_delta"),
        py::arg("t"));
    m.def(
        "invariance_criterion_operator",
        [](const Matrix& p, const Matrix& q, double tol) {
            return invariance_criterion_operator(as_projection(p), as_selfadjoint(q), tol);
        },
        py::arg("p"), py::arg("q"), py::arg("tol") = kTolStruct);
    m.def(
        "invariance_criterion_state",
        [](const Matrix& w, const Matrix& p, const Matrix& q, double tol) {
            return invariance_criterion_state(as_density(w), as_projection(p),
                                              as_selfadjoint(q), tol);
        },
        py::arg("w"), py::arg("p"), py::arg("q"), py::arg("tol") = kTolStruct);

    // ----- transmission
    py::class_<TransmissionProfile>(m, "TransmissionProfile")
        .def_property_readonly("grid",
                               [](const TransmissionProfile& p) { return p.grid; })
        .def_property_readonly("delta",
                               [](const TransmissionProfile& p) { return p.delta; })
        .def_property_readonly("omega_q",
                               [](const TransmissionProfile& p) { return p.omega_q; })
        .def_property_readonly("omega_p_q",
                               [](const TransmissionProfile& p) { return p.omega_p_q; })
        .def_property_readonly("identically_zero",
                               [](const TransmissionProfile& p) { return p.identically_zero; })
        .def_property_readonly("gap_min",
                               [](const TransmissionProfile& p) { return p.gap_min; })
        .def_property_readonly(
            "zeros",
            [](const TransmissionProfile& p) {
                std::vector<std::pair<double, std::string>> out;
                for (const Zero& z : p.zeros)
                    out.emplace_back(z.location, z.kind == ZeroKind::SignChange
                                                     ? "sign-change"
                                                     : "tangential");
                return out;
            })
        .def_property_readonly("classification", [](const TransmissionProfile& p) {
            return std::string(to_string(p.classification));
        });

    py::class_<ManifestationWitness>(m, "ManifestationWitness")
        .def_readonly("applicable", &ManifestationWitness::applicable)
        .def_readonly("count", &ManifestationWitness::count)
        .def_readonly("fraction", &ManifestationWitness::fraction)
        .def_readonly("pass_", &ManifestationWitness::pass);

    py::class_<FalsifierReport>(m, "FalsifierReport")
        .def_readonly("trials", &FalsifierReport::trials)
        .def_readonly("vacuous", &FalsifierReport::vacuous)
        .def_readonly("nonvacuous", &FalsifierReport::nonvacuous)
        .def_readonly("counterexamples", &FalsifierReport::counterexamples)
        .def_readonly("max_product_norm", &FalsifierReport::max_product_norm);

    m.def(
        "profile",
        [](const DynamicalSystem& sys, const Matrix& w, const Matrix& p, const Matrix& q,
           double t_end, int n_grid, double tol_zero, double refine_tol, double detect_delta) {
            ProfileOptions opts{t_end, n_grid, tol_zero, refine_tol, detect_delta};
            return profile(make_instance(sys, w, q), as_projection(p), opts);
        },
        py::arg("sys"), py::arg("w"), py::arg("p"), py::arg("q"), py::arg("t_end"),
        py::arg("n_grid") = 4096, py::arg("tol_zero") = 1e-9, py::arg("refine_tol") = 1e-10,
        py::arg("detect_delta") = kDefaultDetectDelta,
        "Sampled Delta(t) on [0, t_end] with refined zeros and classification.");
    m.def(
        "find_zeros",
        [](const std::function<double(double)>& f, const std::vector<double>& grid,
           const std::vector<double>& values, double tol_zero, double refine_tol) {
            const ZeroScan scan = find_zeros(f, grid, values, tol_zero, refine_tol);
            std::vector<std::pair<double, std::string>> zeros;
            for (const Zero& z : scan.zeros)
                zeros.emplace_back(z.location, z.kind == ZeroKind::SignChange ? "sign-change"
                                                                              : "tangential");
            return py::make_tuple(zeros, scan.identically_zero);
        },
        py::arg("f"), py::arg("grid"), py::arg("values"), py::arg("tol_zero") = 1e-9,
        py::arg("refine_tol") = 1e-10);
    m.def("manifestation_witness", &manifestation_witness, py::arg("profile"), py::arg("detect_delta"));
    m.def("spectrum_condition_falsifier", &spectrum_condition_falsifier, py::arg("sys"), py::arg("trials"),
          py::arg("eps"), py::arg("seed"));

    // ----- analytic
    py::class_<SmearingResult>(m, "SmearingResult")
        .def_readonly("n", &SmearingResult::n)
        .def_property_readonly("smeared",
                               [](const SmearingResult& r) { return r.smeared.matrix(); })
        .def_readonly("error_norm", &SmearingResult::error_norm)
        .def_readonly("quad_panels", &SmearingResult::quad_panels)
        .def_readonly("quad_tol", &SmearingResult::quad_tol);

    py::class_<IndistinguishabilityReport>(m, "IndistinguishabilityReport")
        .def_readonly("close", &IndistinguishabilityReport::close)
        .def_readonly("norm", &IndistinguishabilityReport::norm)
        .def_readonly("expectation_gap_bound",
                      &IndistinguishabilityReport::expectation_gap_bound);

    m.def(
        "gaussian_smear",
        [](const DynamicalSystem& sys, const Matrix& a, int n, double quad_tol) {
            return gaussian_smear(sys, Operator(a), n, quad_tol);
        },
        py::arg("sys"), py::arg("a"), py::arg("n"), py::arg("quad_tol") = 1e-10,
        "A_n = sqrt(n/pi) * integral of exp(-n t^2) tau_t(A) dt");
    m.def(
        "gaussian_smear_spectral",
        [](const DynamicalSystem& sys, const Matrix& a, int n) {
            return gaussian_smear_spectral(sys, Operator(a), n).matrix();
        },
        py::arg("sys"), py::arg("a"), py::arg("n"));
    m.def(
        "smear_convergence",
        [](const DynamicalSystem& sys, const Matrix& a, const std::vector<int>& n_list,
           double quad_tol) { return smear_convergence(sys, Operator(a), n_list, quad_tol); },
        py::arg("sys"), py::arg("a"), py::arg("n_list"), py::arg("quad_tol") = 1e-10);
    m.def(
        "nearest_projection",
        [](const Matrix& a) { return nearest_projection(Operator(a)).matrix(); }, py::arg("a"),
        "Spectral rounding: eigenvalues >= 1/2 map to 1, others to 0.");
    m.def(
        "delta_indistinguishable",
        [](const Matrix& p, const Matrix& p2, double delta) {
            return delta_indistinguishable(as_projection(p), as_projection(p2), delta);
        },
        py::arg("p"), py::arg("p2"), py::arg("delta"));

    // ----- localnet
    py::class_<LatticeSystem>(m, "LatticeSystem")
        .def(py::init([](int n_sites, const std::string& kind, std::uint64_t seed) {
                 return LatticeSystem(n_sites, gate_kind(kind), seed);
             }),
             py::arg("n_sites"), py::arg("gate_kind"), py::arg("seed"))
        .def_property_readonly("n_sites", &LatticeSystem::n_sites)
        .def_property_readonly("dim", &LatticeSystem::dim)
        .def_property_readonly("step_unitary",
                               [](const LatticeSystem& s) { return s.step_unitary(); });

    py::class_<ShieldingResult>(m, "ShieldingResult")
        .def_readonly("delta", &ShieldingResult::delta)
        .def_readonly("spacelike", &ShieldingResult::spacelike);

    py::class_<StepDelta>(m, "StepDelta")
        .def_readonly("step", &StepDelta::step)
        .def_readonly("delta", &StepDelta::delta)
        .def_readonly("spacelike", &StepDelta::spacelike)
        .def_readonly("omega_q", &StepDelta::omega_q)
        .def_readonly("omega_p_q", &StepDelta::omega_p_q);

    m.def(
        "embed_local",
        [](const LatticeSystem& sys, const Matrix& a, int lo, int hi) {
            return embed_local(sys, Operator(a), LatticeRegion{lo, hi}).matrix();
        },
        py::arg("sys"), py::arg("a"), py::arg("lo"), py::arg("hi"),
        "A tensored with identity outside [lo, hi], site-major order.");
    m.def(
        "brickwork_step",
        [](const LatticeSystem& sys, const Matrix& x, const std::string& direction) {
            return brickwork_step(sys, Operator(x), step_direction(direction)).matrix();
        },
        py::arg("sys"), py::arg("x"), py::arg("direction") = "heisenberg");
    m.def(
        "lightcone",
        [](int lo, int hi, int steps, int n_sites) {
            const LatticeRegion cone = lightcone(LatticeRegion{lo, hi}, steps, n_sites);
            return py::make_tuple(cone.lo, cone.hi);
        },
        py::arg("lo"), py::arg("hi"), py::arg("steps"), py::arg("n_sites"));
    m.def(
        "support_region",
        [](const Matrix& x, int n_sites) -> py::object {
            const auto region = support_region(x, n_sites);
            if (!region) return py::none();
            return py::make_tuple(region->lo, region->hi);
        },
        py::arg("x"), py::arg("n_sites"));
    m.def(
        "shielding_check",
        [](const LatticeSystem& sys, const Matrix& w, int p_lo, int p_hi, const Matrix& p_local,
           int q_lo, int q_hi, const Matrix& q_local, int steps) {
            return shielding_check(sys, as_density(w), LatticeRegion{p_lo, p_hi},
                                   as_projection(p_local), LatticeRegion{q_lo, q_hi},
                                   Operator(q_local), steps);
        },
        py::arg("sys"), py::arg("w"), py::arg("p_lo"), py::arg("p_hi"), py::arg("p_local"),
        py::arg("q_lo"), py::arg("q_hi"), py::arg("q_local"), py::arg("steps"));
    m.def(
        "local_mark_profile",
        [](const LatticeSystem& sys, const Matrix& w, int p_lo, int p_hi, const Matrix& p_local,
           int q_lo, int q_hi, const Matrix& q_local, int max_steps) {
            return local_mark_profile(sys, as_density(w), LatticeRegion{p_lo, p_hi},
                                      as_projection(p_local), LatticeRegion{q_lo, q_hi},
                                      Operator(q_local), max_steps);
        },
        py::arg("sys"), py::arg("w"), py::arg("p_lo"), py::arg("p_hi"), py::arg("p_local"),
        py::arg("q_lo"), py::arg("q_hi"), py::arg("q_local"), py::arg("max_steps"));

    // ----- scenario_io / verify
    m.def(
        "random_instance",
        [](int dim, std::uint64_t seed, bool nondegenerate) {
            const RandomInstance inst =
                random_instance(dim, seed, {.nondegenerate_spectrum = nondegenerate});
            return py::make_tuple(inst.system.hamiltonian().matrix(), inst.state.matrix(),
                                  inst.projection.matrix(), inst.observable.matrix());
        },
        py::arg("dim"), py::arg("seed"), py::arg("nondegenerate") = false,
        "(H, W, P, Q) deterministic in seed.");
    m.def(
        "run_verify",
        [](std::uint64_t seed, long trials) {
            std::vector<std::tuple<std::string, bool, double>> out;
            for (const SuiteResult& r : run_verify(VerifyOptions{seed, trials}))
                out.emplace_back(r.name, r.pass, r.max_residual);
            return out;
        },
        py::arg("seed") = 42, py::arg("trials") = 1000,
        "Run every invariant suite; returns (name, passed, max_residual) per suite.");
}
