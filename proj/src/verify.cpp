#include "markdyn/verify.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

#include "markdyn/analytic.hpp"
#include "markdyn/localnet.hpp"
#include "markdyn/rng.hpp"
#include "markdyn/scenario_io.hpp"
#include "markdyn/transmission.hpp"

namespace markdyn {

namespace {

std::string format_double(double x) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

Matrix random_general(Rng& rng, Eigen::Index dim) {
    Matrix g(dim, dim);
    for (Eigen::Index i = 0; i < dim; ++i)
        for (Eigen::Index j = 0; j < dim; ++j) g(i, j) = rng.cnormal();
    return g;
}

int dim_cycle(long i, int lo, int hi) { return lo + static_cast<int>(i % (hi - lo + 1)); }

std::uint64_t suite_seed(const VerifyOptions& o, std::uint64_t salt) {
    return o.seed * 1000003ULL + salt;
}

/// F1: H = σ_y, W = |+><+|, P = Q = |0><0|. Δ(t) = ½ sin 2t.
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

// ---------------------------------------------------------------- operator_core

SuiteResult commutator_antisymmetry(const VerifyOptions& o) {
    SuiteResult r{"operator_core.commutator_antisymmetry", true, 0.0, 0, ""};
    Rng rng(suite_seed(o, 1));
    for (long i = 0; i < o.trials; ++i) {
        const int dim = dim_cycle(i, 2, 6);
        const Operator a{random_general(rng, dim)};
        const Operator b{random_general(rng, dim)};
        const double res =
            max_abs_diff(commutator(a, b).matrix(), (-commutator(b, a).matrix()).eval());
        r.max_residual = std::max(r.max_residual, res);
        ++r.checks;
    }
    r.pass = r.max_residual <= kTolStruct;
    return r;
}

SuiteResult double_commutator_nested(const VerifyOptions& o) {
    SuiteResult r{"operator_core.double_commutator_nested", true, 0.0, 0, ""};
    for (long i = 0; i < o.trials; ++i) {
        const RandomInstance inst = random_instance(dim_cycle(i, 2, 6), suite_seed(o, 2) + i);
        const Operator nested =
            commutator(inst.projection.op(), commutator(inst.projection.op(), inst.observable));
        const double res = max_abs_diff(
            double_commutator(inst.projection, inst.observable).matrix(), nested.matrix());
        r.max_residual = std::max(r.max_residual, res);
        ++r.checks;
    }
    r.pass = r.max_residual <= kTolStruct;
    return r;
}

SuiteResult expectation_selfadjoint_real(const VerifyOptions& o) {
    SuiteResult r{"operator_core.expectation_selfadjoint_real", true, 0.0, 0, ""};
    for (long i = 0; i < o.trials; ++i) {
        const RandomInstance inst = random_instance(dim_cycle(i, 2, 6), suite_seed(o, 3) + i);
        const double res = std::abs(expectation(inst.state, inst.observable).imag());
        r.max_residual = std::max(r.max_residual, res);
        ++r.checks;
    }
    r.pass = r.max_residual <= kTolStruct;
    return r;
}

SuiteResult expectation_norm_bound(const VerifyOptions& o) {
    SuiteResult r{"operator_core.expectation_norm_bound", true, 0.0, 0, ""};
    for (long i = 0; i < o.trials; ++i) {
        const RandomInstance inst = random_instance(dim_cycle(i, 2, 6), suite_seed(o, 4) + i);
        const double excess = std::abs(expectation(inst.state, inst.observable)) -
                              op_norm(inst.observable);
        r.max_residual = std::max(r.max_residual, excess);
        ++r.checks;
    }
    r.pass = r.max_residual <= 1e-12;
    return r;
}

SuiteResult double_commutator_equivalence(const VerifyOptions& o) {
    SuiteResult r{"operator_core.double_commutator_equivalence", true, 0.0, 0, ""};
    Rng rng(suite_seed(o, 5));
    constexpr double tol = 1e-9;
    for (long i = 0; i < o.trials; ++i) {
        const int dim = dim_cycle(i, 2, 6);
        Projection p = Projection::rank_one(random_pure_state(rng, dim));
        Operator q = Operator::zero(dim);
        if (i % 2 == 0) {
            q = Operator(random_hermitian(rng, dim));
        } else {
            // Commuting pair: diagonal observable in an eigenbasis of P.
            Eigen::SelfAdjointEigenSolver<Matrix> es(p.matrix());
            RealVector d(dim);
            for (int k = 0; k < dim; ++k) d(k) = rng.normal();
            q = Operator(es.eigenvectors() * d.asDiagonal().toDenseMatrix().cast<Complex>() *
                         es.eigenvectors().adjoint());
        }
        const double c = op_norm(commutator(p.op(), q));
        const double dc = op_norm(double_commutator(p, q));
        if ((c <= tol) != (dc <= tol)) {
            r.pass = false;
            r.detail = "biconditional violated at trial " + std::to_string(i);
        }
        r.max_residual = std::max(r.max_residual, std::abs(c - dc));
        ++r.checks;
    }
    return r;
}

// ---------------------------------------------------------------- dynamics

SuiteResult group_law(const VerifyOptions& o) {
    SuiteResult r{"dynamics.group_law", true, 0.0, 0, ""};
    Rng rng(suite_seed(o, 6));
    for (long i = 0; i < o.trials; ++i) {
        const int dim = dim_cycle(i, 2, 6);
        const DynamicalSystem sys{Operator(random_hermitian(rng, dim))};
        const Operator a{random_general(rng, dim)};
        const double s = rng.uniform(-10.0, 10.0);
        const double t = rng.uniform(-10.0, 10.0);
        const double res =
            op_norm(Operator(sys.evolve(sys.evolve(a, t), s).matrix() -
                             sys.evolve(a, s + t).matrix()));
        r.max_residual = std::max(r.max_residual, res);
        ++r.checks;
    }
    r.pass = r.max_residual <= 1e-8;
    return r;
}

SuiteResult isometry(const VerifyOptions& o) {
    SuiteResult r{"dynamics.isometry", true, 0.0, 0, ""};
    Rng rng(suite_seed(o, 7));
    for (long i = 0; i < o.trials; ++i) {
        const int dim = dim_cycle(i, 2, 6);
        const DynamicalSystem sys{Operator(random_hermitian(rng, dim))};
        const Operator a{random_general(rng, dim)};
        const double t = rng.uniform(-10.0, 10.0);
        const double res = std::abs(op_norm(sys.evolve(a, t)) - op_norm(a));
        r.max_residual = std::max(r.max_residual, res);
        ++r.checks;
    }
    r.pass = r.max_residual <= 1e-8;
    return r;
}

SuiteResult star_homomorphism(const VerifyOptions& o) {
    SuiteResult r{"dynamics.star_homomorphism", true, 0.0, 0, ""};
    Rng rng(suite_seed(o, 8));
    for (long i = 0; i < o.trials; ++i) {
        const int dim = dim_cycle(i, 2, 6);
        const DynamicalSystem sys{Operator(random_hermitian(rng, dim))};
        const Operator a{random_general(rng, dim)};
        const Operator b{random_general(rng, dim)};
        const double t = rng.uniform(-10.0, 10.0);
        const double mult =
            op_norm(Operator(sys.evolve(Operator(a.matrix() * b.matrix()), t).matrix() -
                             sys.evolve(a, t).matrix() * sys.evolve(b, t).matrix()));
        const double star = op_norm(Operator(sys.evolve(a.adjoint(), t).matrix() -
                                             sys.evolve(a, t).matrix().adjoint()));
        r.max_residual = std::max({r.max_residual, mult, star});
        ++r.checks;
    }
    r.pass = r.max_residual <= 1e-8;
    return r;
}

SuiteResult norm_continuity(const VerifyOptions& o) {
    SuiteResult r{"dynamics.norm_continuity", true, 0.0, 0, ""};
    Rng rng(suite_seed(o, 9));
    for (long i = 0; i < o.trials; ++i) {
        const int dim = dim_cycle(i, 2, 6);
        const Operator h{random_hermitian(rng, dim)};
        const DynamicalSystem sys{h};
        const Operator a{random_general(rng, dim)};
        const double t = rng.uniform(-10.0, 10.0);
        const double step = rng.uniform(-0.1, 0.1);
        const double diff = op_norm(
            Operator(sys.evolve(a, t + step).matrix() - sys.evolve(a, t).matrix()));
        const double bound = 2.0 * op_norm(h) * op_norm(a) * std::abs(step) + 1e-8;
        r.max_residual = std::max(r.max_residual, diff - bound);
        ++r.checks;
    }
    r.pass = r.max_residual <= 0.0;
    return r;
}

// ---------------------------------------------------------------- marking

SuiteResult luders_idempotent(const VerifyOptions& o) {
    SuiteResult r{"marking.luders_idempotent", true, 0.0, 0, ""};
    for (long i = 0; i < o.trials; ++i) {
        const RandomInstance inst = random_instance(dim_cycle(i, 2, 6), suite_seed(o, 10) + i);
        const DensityState once = luders_update(inst.state, inst.projection);
        const DensityState twice = luders_update(once, inst.projection);
        r.max_residual = std::max(
            r.max_residual, op_norm(Operator(twice.matrix() - once.matrix())));
        ++r.checks;
    }
    r.pass = r.max_residual <= kTolStruct;
    return r;
}

SuiteResult trace_identity(const VerifyOptions& o) {
    SuiteResult r{"marking.trace_identity", true, 0.0, 0, ""};
    for (long i = 0; i < o.trials; ++i) {
        const RandomInstance inst = random_instance(dim_cycle(i, 2, 6), suite_seed(o, 11) + i);
        const Matrix& w = inst.state.matrix();
        const Matrix& p = inst.projection.matrix();
        const Matrix& q = inst.observable.matrix();
        // Brute-force expansion, independent of luders_update and
        // double_commutator: W_P = PWP + (1-P)W(1-P), then raw traces.
        const Matrix eye = Matrix::Identity(w.rows(), w.cols());
        const Matrix w_p = p * w * p + (eye - p) * w * (eye - p);
        const Complex lhs_raw = (w_p * q).trace();
        const Matrix dc = p * q + q * p - 2.0 * p * q * p;
        const Complex rhs_raw = (w * q).trace() - (w * dc).trace();
        r.max_residual = std::max(r.max_residual, std::abs(lhs_raw - rhs_raw));

        const Complex lhs_impl = expectation(luders_update(inst.state, inst.projection),
                                             inst.observable);
        r.max_residual = std::max(r.max_residual, std::abs(lhs_impl - rhs_raw));
        ++r.checks;
    }
    r.pass = r.max_residual <= 1e-8;
    return r;
}

SuiteResult invariance_equivalence(const VerifyOptions& o) {
    SuiteResult r{"marking.invariance_equivalence", true, 0.0, 0, ""};
    Rng rng(suite_seed(o, 12));
    long violations = 0;
    for (long i = 0; i < o.trials; ++i) {
        const int dim = dim_cycle(i, 2, 6);
        Projection p = Projection::rank_one(random_pure_state(rng, dim));
        Operator q = Operator::zero(dim);
        if (i % 2 == 0) {
            q = Operator(random_hermitian(rng, dim));
        } else {
            Eigen::SelfAdjointEigenSolver<Matrix> es(p.matrix());
            RealVector d(dim);
            for (int k = 0; k < dim; ++k) d(k) = rng.normal();
            q = Operator(es.eigenvectors() * d.asDiagonal().toDenseMatrix().cast<Complex>() *
                         es.eigenvectors().adjoint());
        }
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
        r.max_residual = std::max(r.max_residual, comm <= 1e-12 ? max_delta : 0.0);
        ++r.checks;
    }
    r.pass = violations == 0;
    if (violations > 0) r.detail = std::to_string(violations) + " violations";
    return r;
}

SuiteResult delta_bound(const VerifyOptions& o) {
    SuiteResult r{"marking.delta_bound", true, 0.0, 0, ""};
    Rng rng(suite_seed(o, 13));
    for (long i = 0; i < o.trials; ++i) {
        const RandomInstance ri = random_instance(dim_cycle(i, 2, 6), suite_seed(o, 13) + i);
        const ProcessInstance inst(ri.system, ri.state, ri.observable);
        const double t = rng.uniform(-5.0, 5.0);
        const double delta = std::abs(mark_delta(inst, ri.projection, t));
        const double dc_norm =
            op_norm(double_commutator(ri.projection, inst.system.evolve(ri.observable, t)));
        const double q_norm = op_norm(ri.observable);
        r.max_residual = std::max(
            {r.max_residual, delta - dc_norm - 1e-10, dc_norm - 4.0 * q_norm - 1e-10});
        ++r.checks;
    }
    r.pass = r.max_residual <= 0.0;
    return r;
}

SuiteResult classical_channel_simplex(const VerifyOptions& o) {
    SuiteResult r{"marking.classical_channel_simplex", true, 0.0, 0, ""};
    Rng rng(suite_seed(o, 14));
    for (long i = 0; i < o.trials; ++i) {
        const int n = 2 + static_cast<int>(rng.integer(5));
        RealMatrix t(n, n);
        for (int j = 0; j < n; ++j) {
            double sum = 0.0;
            for (int k = 0; k < n; ++k) {
                t(k, j) = rng.uniform();
                sum += t(k, j);
            }
            t.col(j) /= sum;
        }
        RealVector p(n);
        double psum = 0.0;
        for (int k = 0; k < n; ++k) {
            p(k) = rng.uniform();
            psum += p(k);
        }
        p /= psum;
        const RealVector out =
            classical_channel_update(p, ClassicalChannel::validated(t));
        r.max_residual = std::max({r.max_residual, -out.minCoeff(),
                                   std::abs(out.sum() - 1.0)});
        ++r.checks;
    }
    r.pass = r.max_residual <= kTolStruct;
    return r;
}

// ---------------------------------------------------------------- transmission

SuiteResult trace_identity_along_profiles(const VerifyOptions& o) {
    SuiteResult r{"transmission.trace_identity_along_profiles", true, 0.0, 0, ""};
    const long fixtures = std::min<long>(8, std::max<long>(1, o.trials / 100));
    for (long i = 0; i < fixtures; ++i) {
        const RandomInstance ri =
            random_instance(dim_cycle(i, 2, 4), suite_seed(o, 15) + i,
                            {.nondegenerate_spectrum = true});
        const ProcessInstance inst(ri.system, ri.state, ri.observable);
        ProfileOptions opts;
        opts.t_end = 3.0;
        opts.n_grid = 257;
        const TransmissionProfile prof = profile(inst, ri.projection, opts);
        for (int k = 0; k < opts.n_grid; ++k) {
            const double via_id = mark_delta_via_identity(inst, ri.projection, prof.grid[k]);
            r.max_residual = std::max(r.max_residual, std::abs(prof.delta[k] - via_id));
            ++r.checks;
        }
    }
    // F1 as well.
    const ProcessInstance f1 = fixture_f1();
    ProfileOptions opts;
    opts.t_end = 5.0 * M_PI / 4.0;
    opts.n_grid = 257;
    const TransmissionProfile prof = profile(f1, f1_projection(), opts);
    for (int k = 0; k < opts.n_grid; ++k) {
        const double via_id = mark_delta_via_identity(f1, f1_projection(), prof.grid[k]);
        r.max_residual = std::max(r.max_residual, std::abs(prof.delta[k] - via_id));
        ++r.checks;
    }
    r.pass = r.max_residual <= 1e-8;
    return r;
}

SuiteResult no_indeterminate(const VerifyOptions& o) {
    SuiteResult r{"transmission.no_indeterminate", true, 0.0, 0, ""};
    long indeterminate = 0;
    const long fixtures = std::min<long>(200, std::max<long>(8, o.trials / 5));
    for (long i = 0; i < fixtures; ++i) {
        const RandomInstance ri =
            random_instance(dim_cycle(i, 2, 4), suite_seed(o, 16) + i,
                            {.nondegenerate_spectrum = true});
        const ProcessInstance inst(ri.system, ri.state, ri.observable);
        ProfileOptions opts;
        opts.t_end = 2.0 * M_PI;
        const TransmissionProfile prof = profile(inst, ri.projection, opts);
        if (prof.classification == Classification::Indeterminate) ++indeterminate;
        ++r.checks;
    }
    r.max_residual = static_cast<double>(indeterminate);
    r.pass = indeterminate == 0;
    return r;
}

SuiteResult f1_zero_refinement(const VerifyOptions& o) {
    (void)o;
    SuiteResult r{"transmission.f1_zero_refinement", true, 0.0, 0, ""};
    ProfileOptions opts;
    opts.t_end = 5.0 * M_PI / 4.0;
    const TransmissionProfile prof = profile(fixture_f1(), f1_projection(), opts);
    if (prof.zeros.size() != 2 || prof.classification != Classification::CSIP) {
        r.pass = false;
        r.detail = "expected 2 zeros and CSIP, got " + std::to_string(prof.zeros.size()) +
                   " and " + to_string(prof.classification);
        return r;
    }
    r.max_residual = std::max(std::abs(prof.zeros[0].location - M_PI / 2.0),
                              std::abs(prof.zeros[1].location - M_PI));
    r.checks = 2;
    r.pass = r.max_residual <= 1e-6;
    return r;
}

SuiteResult profile_determinism(const VerifyOptions& o) {
    SuiteResult r{"transmission.profile_determinism", true, 0.0, 0, ""};
    const RandomInstance ri =
        random_instance(3, suite_seed(o, 17), {.nondegenerate_spectrum = true});
    const ProcessInstance inst(ri.system, ri.state, ri.observable);
    ProfileOptions opts;
    opts.t_end = 4.0;
    opts.n_grid = 513;
    const TransmissionProfile a = profile(inst, ri.projection, opts);
    const TransmissionProfile b = profile(inst, ri.projection, opts);
    const bool same_csv = profile_csv_text(a) == profile_csv_text(b);
    bool same_zeros = a.zeros.size() == b.zeros.size();
    for (std::size_t i = 0; same_zeros && i < a.zeros.size(); ++i)
        same_zeros = a.zeros[i].location == b.zeros[i].location &&
                     a.zeros[i].kind == b.zeros[i].kind;
    r.checks = 1;
    r.pass = same_csv && same_zeros && a.classification == b.classification;
    if (!r.pass) r.detail = "repeat run differed";
    return r;
}

SuiteResult falsifier_suite(const VerifyOptions& o) {
    SuiteResult r{"transmission.spectrum_condition_falsifier", true, 0.0, 0, ""};
    Rng rng(suite_seed(o, 18));
    long counterexamples = 0;
    long nonvacuous = 0;
    long vacuous = 0;
    const long per_dim = std::max<long>(2, o.trials / 5);
    for (int dim = 2; dim <= 6; ++dim) {
        const DynamicalSystem sys{Operator(random_hermitian(rng, dim))};
        const FalsifierReport rep =
            spectrum_condition_falsifier(sys, static_cast<int>(per_dim), 0.5,
                                         suite_seed(o, 18) + dim);
        counterexamples += rep.counterexamples;
        nonvacuous += rep.nonvacuous;
        vacuous += rep.vacuous;
        r.max_residual = std::max(r.max_residual, rep.max_product_norm);
        r.checks += rep.trials;
    }
    r.pass = counterexamples == 0 && nonvacuous > 0;
    r.detail = "nonvacuous=" + std::to_string(nonvacuous) + " vacuous=" +
               std::to_string(vacuous);
    return r;
}

// ---------------------------------------------------------------- analytic

SuiteResult selfadjointness_preserved(const VerifyOptions& o) {
    SuiteResult r{"analytic.selfadjointness_preserved", true, 0.0, 0, ""};
    Rng rng(suite_seed(o, 19));
    const long loops = std::min<long>(12, std::max<long>(2, o.trials / 100));
    for (long i = 0; i < loops; ++i) {
        const int dim = dim_cycle(i, 2, 4);
        const DynamicalSystem sys{Operator(random_hermitian(rng, dim))};
        const Operator a{random_hermitian(rng, dim)};
        const int n = 1 + static_cast<int>(rng.integer(20));
        const SmearingResult sm = gaussian_smear(sys, a, n);
        r.max_residual = std::max(
            r.max_residual,
            op_norm(Operator(sm.smeared.matrix() - sm.smeared.matrix().adjoint().eval())));
        ++r.checks;
    }
    r.pass = r.max_residual <= 1e-10;
    return r;
}

SuiteResult contraction(const VerifyOptions& o) {
    SuiteResult r{"analytic.contraction", true, 0.0, 0, ""};
    Rng rng(suite_seed(o, 20));
    const long loops = std::min<long>(12, std::max<long>(2, o.trials / 100));
    for (long i = 0; i < loops; ++i) {
        const int dim = dim_cycle(i, 2, 4);
        const DynamicalSystem sys{Operator(random_hermitian(rng, dim))};
        const Operator a{random_general(rng, dim)};
        const int n = 1 + static_cast<int>(rng.integer(20));
        const SmearingResult sm = gaussian_smear(sys, a, n);
        r.max_residual =
            std::max(r.max_residual, op_norm(sm.smeared) - op_norm(a) - sm.quad_tol);
        ++r.checks;
    }
    r.pass = r.max_residual <= 0.0;
    return r;
}

SuiteResult spectral_shortcut_agreement(const VerifyOptions& o) {
    SuiteResult r{"analytic.spectral_shortcut_agreement", true, 0.0, 0, ""};
    Rng rng(suite_seed(o, 21));
    const long loops = std::min<long>(12, std::max<long>(2, o.trials / 100));
    for (long i = 0; i < loops; ++i) {
        const int dim = dim_cycle(i, 2, 4);
        const DynamicalSystem sys{Operator(random_hermitian(rng, dim))};
        const Operator a{random_hermitian(rng, dim)};
        const int n = 1 + static_cast<int>(rng.integer(20));
        const SmearingResult quad = gaussian_smear(sys, a, n);
        const Operator spectral = gaussian_smear_spectral(sys, a, n);
        r.max_residual = std::max(
            r.max_residual, max_abs_diff(quad.smeared.matrix(), spectral.matrix()));
        ++r.checks;
    }
    r.pass = r.max_residual <= 1e-10;
    return r;
}

SuiteResult state_gap_bound(const VerifyOptions& o) {
    SuiteResult r{"analytic.state_gap_bound", true, 0.0, 0, ""};
    Rng rng(suite_seed(o, 22));
    for (int pair = 0; pair < 4; ++pair) {
        const int dim = dim_cycle(pair, 2, 5);
        const RandomInstance a = random_instance(dim, suite_seed(o, 22) + 2 * pair);
        const RandomInstance b = random_instance(dim, suite_seed(o, 22) + 2 * pair + 1);
        const double norm =
            op_norm(Operator(a.projection.matrix() - b.projection.matrix()));
        for (int s = 0; s < 256; ++s) {
            const DensityState w = DensityState::pure(random_pure_state(rng, dim));
            const double gap = std::abs(expectation(w, a.projection.op()).real() -
                                        expectation(w, b.projection.op()).real());
            r.max_residual = std::max(r.max_residual, gap - norm - 1e-10);
            ++r.checks;
        }
    }
    r.pass = r.max_residual <= 0.0;
    return r;
}

SuiteResult mark_profile_stability(const VerifyOptions& o) {
    SuiteResult r{"analytic.mark_profile_stability", true, 0.0, 0, ""};
    Rng rng(suite_seed(o, 23));
    const ProcessInstance f1 = fixture_f1();
    const Projection p = f1_projection();

    // Rounded smeared projection plus small random rotations of P.
    std::vector<Projection> perturbed;
    perturbed.push_back(
        nearest_projection(gaussian_smear_spectral(f1.system, p.op(), 30)));
    for (int k = 0; k < 4; ++k) {
        const double theta = 0.002 * (k + 1);
        const Matrix kgen = random_hermitian(rng, 2);
        Eigen::SelfAdjointEigenSolver<Matrix> es(kgen);
        Vector phases(2);
        for (int j = 0; j < 2; ++j)
            phases(j) = std::exp(Complex(0.0, theta * es.eigenvalues()(j)));
        const Matrix rot =
            es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
        perturbed.push_back(
            Projection::validated(Operator(rot * p.matrix() * rot.adjoint())));
    }

    for (const Projection& p2 : perturbed) {
        const double delta_norm = op_norm(Operator(p.matrix() - p2.matrix()));
        for (int i = 0; i <= 64; ++i) {
            const double t = 5.0 * M_PI / 4.0 * i / 64.0;
            const double gap =
                std::abs(mark_delta(f1, p, t) - mark_delta(f1, p2, t));
            r.max_residual = std::max(r.max_residual, gap - 4.0 * delta_norm - 1e-8);
            ++r.checks;
        }
    }
    r.pass = r.max_residual <= 0.0;
    return r;
}

// ---------------------------------------------------------------- localnet

SuiteResult disjoint_support_commutation(const VerifyOptions& o) {
    SuiteResult r{"localnet.disjoint_support_commutation", true, 0.0, 0, ""};
    Rng rng(suite_seed(o, 24));
    const LatticeSystem sys(6, GateKind::Random, suite_seed(o, 24));
    const long loops = std::min<long>(50, std::max<long>(5, o.trials / 20));
    for (long i = 0; i < loops; ++i) {
        const int split = 1 + static_cast<int>(rng.integer(4)); // 1..4
        const LatticeRegion r1{0, split - 1};
        const LatticeRegion r2{split, 5};
        const Operator a{random_general(rng, Eigen::Index(1) << r1.size())};
        const Operator b{random_general(rng, Eigen::Index(1) << r2.size())};
        const double res =
            op_norm(commutator(embed_local(sys, a, r1), embed_local(sys, b, r2)));
        r.max_residual = std::max(r.max_residual, res);
        ++r.checks;
    }
    r.pass = r.max_residual <= 1e-12;
    return r;
}

SuiteResult support_growth(const VerifyOptions& o) {
    SuiteResult r{"localnet.support_growth", true, 0.0, 0, ""};
    Rng rng(suite_seed(o, 25));
    Matrix sz(2, 2);
    sz << Complex(1, 0), Complex(0, 0), Complex(0, 0), Complex(-1, 0);
    for (int rep = 0; rep < 6; ++rep) {
        const LatticeSystem sys(6, GateKind::Random, suite_seed(o, 25) + rep);
        const int site = static_cast<int>(rng.integer(6));
        const LatticeRegion region{site, site};
        Operator q = embed_local(sys, Operator(sz), region);
        for (int k = 0; k <= 3; ++k) {
            if (k > 0) q = brickwork_step(sys, q, StepDirection::Heisenberg);
            const auto support = support_region(q.matrix(), 6);
            const LatticeRegion cone = lightcone(region, k, 6);
            if (support && (support->lo < cone.lo || support->hi > cone.hi)) {
                r.pass = false;
                r.detail = "support escaped the light cone at step " + std::to_string(k);
            }
            ++r.checks;
        }
    }
    return r;
}

SuiteResult shielding(const VerifyOptions& o) {
    SuiteResult r{"localnet.shielding", true, 0.0, 0, ""};
    Rng rng(suite_seed(o, 26));
    const long configs = std::min<long>(200, std::max<long>(8, o.trials / 5));
    for (long i = 0; i < configs; ++i) {
        const int n_sites = 4 + static_cast<int>(rng.integer(5)); // 4..8
        const LatticeSystem sys(n_sites, GateKind::Random, suite_seed(o, 26) + i);
        const int max_spacelike_steps = (n_sites - 2) / 2;
        const int steps = static_cast<int>(rng.integer(max_spacelike_steps + 1));
        // Single-site regions with gap > 2*steps so the configuration is spacelike.
        const int p_site = 0;
        const int min_q = p_site + 2 * steps + 1;
        const int q_site = min_q + static_cast<int>(rng.integer(n_sites - min_q));
        const LatticeRegion p_region{p_site, p_site};
        const LatticeRegion q_region{q_site, q_site};
        const DensityState w = DensityState::pure(random_pure_state(rng, sys.dim()));
        const Projection p_local = Projection::rank_one(random_pure_state(rng, 2));
        const Operator q_local{random_hermitian(rng, 2)};
        const ShieldingResult res =
            shielding_check(sys, w, p_region, p_local, q_region, q_local, steps);
        if (!res.spacelike) {
            r.pass = false;
            r.detail = "constructed configuration was not spacelike";
        }
        r.max_residual = std::max(r.max_residual, std::abs(res.delta));
        ++r.checks;
    }
    r.pass = r.pass && r.max_residual <= 1e-12;
    return r;
}

SuiteResult step_unitarity(const VerifyOptions& o) {
    SuiteResult r{"localnet.step_unitarity", true, 0.0, 0, ""};
    Rng rng(suite_seed(o, 27));
    for (int rep = 0; rep < 8; ++rep) {
        const LatticeSystem sys(5, GateKind::Random, suite_seed(o, 27) + rep);
        const Operator x{random_general(rng, sys.dim())};
        const Operator stepped = brickwork_step(sys, x, StepDirection::Heisenberg);
        r.max_residual = std::max(r.max_residual,
                                  std::abs(op_norm(stepped) - op_norm(x)));
        ++r.checks;
    }
    r.pass = r.max_residual <= 1e-10;
    return r;
}

// ---------------------------------------------------------------- scenario_io

const char* kF1Config = R"json({
  "kind": "continuum",
  "dim": 2,
  "hamiltonian": [[[0, 0], [0, -1]], [[0, 1], [0, 0]]],
  "state": {"pure": [[0.7071067811865476, 0], [0.7071067811865476, 0]]},
  "projection": {"rank_one": [[1, 0], [0, 0]]},
  "observable": {"rank_one": [[1, 0], [0, 0]]},
  "interval": [0, 3.9269908169872414],
  "n_grid": 512,
  "seed": 1
})json";

SuiteResult config_round_trip(const VerifyOptions& o) {
    (void)o;
    SuiteResult r{"scenario_io.config_round_trip", true, 0.0, 0, ""};
    const std::vector<std::string> configs = {
        kF1Config,
        R"json({"kind": "smear", "dim": 2,
                "hamiltonian": [[[0,0],[0,0]],[[0,0],[1,0]]],
                "observable": {"matrix": [[[0,0],[1,0]],[[1,0],[0,0]]]},
                "n_list": [1, 10, 100]})json",
        R"json({"kind": "lattice", "n_sites": 4, "gates": "random",
                "state": {"maximally_mixed": true},
                "projection": {"region": [0,0], "local": {"rank_one": [[1,0],[0,0]]}},
                "observable": {"region": [3,3], "local": {"matrix": [[[1,0],[0,0]],[[0,0],[-1,0]]]}},
                "max_steps": 2, "seed": 7})json",
        R"json({"kind": "verify", "seed": 42, "trials": 10})json",
    };
    for (const std::string& text : configs) {
        const ScenarioConfig once = parse_config(text);
        const ScenarioConfig twice = parse_config(emit_config(once));
        if (emit_config(once) != emit_config(twice)) {
            r.pass = false;
            r.detail = "round trip changed the config";
        }
        ++r.checks;
    }
    return r;
}

SuiteResult emit_determinism(const VerifyOptions& o) {
    (void)o;
    SuiteResult r{"scenario_io.emit_determinism", true, 0.0, 0, ""};
    const auto run_once = [&]() -> std::pair<std::string, std::string> {
        const ScenarioConfig config = parse_config(kF1Config);
        const auto& sc = std::get<ContinuumScenario>(config.scenario);
        const ProcessInstance inst(sc.system, sc.state, sc.observable);
        const TransmissionProfile prof = profile(inst, sc.projection, sc.profile);
        RunReport report;
        report.kind = ScenarioKind::Continuum;
        report.config_echo = config.canonical_text;
        report.classification = prof.classification;
        report.zeros = prof.zeros;
        report.witness = manifestation_witness(prof, sc.profile.detect_delta);
        report.ground_energy = sc.system.ground_energy();
        return {profile_csv_text(prof), report_text(report)};
    };
    const auto first = run_once();
    const auto second = run_once();
    r.checks = 2;
    r.pass = first.first == second.first && first.second == second.second;
    if (!r.pass) r.detail = "emitted bytes differed between runs";
    return r;
}

} // namespace

const std::vector<std::pair<std::string, SuiteFn>>& verify_registry() {
    static const std::vector<std::pair<std::string, SuiteFn>> registry = {
        {"operator_core.commutator_antisymmetry", &commutator_antisymmetry},
        {"operator_core.double_commutator_nested", &double_commutator_nested},
        {"operator_core.expectation_selfadjoint_real", &expectation_selfadjoint_real},
        {"operator_core.expectation_norm_bound", &expectation_norm_bound},
        {"operator_core.double_commutator_equivalence", &double_commutator_equivalence},
        {"dynamics.group_law", &group_law},
        {"dynamics.isometry", &isometry},
        {"dynamics.star_homomorphism", &star_homomorphism},
        {"dynamics.norm_continuity", &norm_continuity},
        {"marking.luders_idempotent", &luders_idempotent},
        {"marking.trace_identity", &trace_identity},
        {"marking.invariance_equivalence", &invariance_equivalence},
        {"marking.delta_bound", &delta_bound},
        {"marking.classical_channel_simplex", &classical_channel_simplex},
        {"transmission.trace_identity_along_profiles", &trace_identity_along_profiles},
        {"transmission.no_indeterminate", &no_indeterminate},
        {"transmission.f1_zero_refinement", &f1_zero_refinement},
        {"transmission.profile_determinism", &profile_determinism},
        {"transmission.spectrum_condition_falsifier", &falsifier_suite},
        {"analytic.selfadjointness_preserved", &selfadjointness_preserved},
        {"analytic.contraction", &contraction},
        {"analytic.spectral_shortcut_agreement", &spectral_shortcut_agreement},
        {"analytic.state_gap_bound", &state_gap_bound},
        {"analytic.mark_profile_stability", &mark_profile_stability},
        {"localnet.disjoint_support_commutation", &disjoint_support_commutation},
        {"localnet.support_growth", &support_growth},
        {"localnet.shielding", &shielding},
        {"localnet.step_unitarity", &step_unitarity},
        {"scenario_io.config_round_trip", &config_round_trip},
        {"scenario_io.emit_determinism", &emit_determinism},
    };
    return registry;
}

std::vector<SuiteResult> run_verify(const VerifyOptions& options) {
    if (options.trials < 1) throw ValidationError("verify: trials must be at least 1");
    std::vector<SuiteResult> results;
    results.reserve(verify_registry().size());
    for (const auto& [name, fn] : verify_registry()) results.push_back(fn(options));
    return results;
}

std::string verify_summary(const std::vector<SuiteResult>& results) {
    std::string out;
    std::size_t passed = 0;
    for (const SuiteResult& r : results) {
        out += r.pass ? "[PASS] " : "[FAIL] ";
        out += r.name;
        out += " max_residual=" + format_double(r.max_residual);
        out += " checks=" + std::to_string(r.checks);
        if (!r.detail.empty()) out += " (" + r.detail + ")";
        out += '\n';
        if (r.pass) ++passed;
    }
    out += "verify: " + std::to_string(passed) + "/" + std::to_string(results.size()) +
           " suites passed\n";
    return out;
}

bool all_passed(const std::vector<SuiteResult>& results) {
    return std::all_of(results.begin(), results.end(),
                       [](const SuiteResult& r) { return r.pass; });
}

} // namespace markdyn
