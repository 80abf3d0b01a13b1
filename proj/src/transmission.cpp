#include "markdyn/transmission.hpp"

#include <algorithm>
#include <cmath>

#include "markdyn/rng.hpp"

namespace markdyn {

const char* to_string(Classification c) {
    switch (c) {
        case Classification::Continuous: return "Continuous";
        case Classification::CSIP: return "CSIP";
        case Classification::NeverManifested: return "NeverManifested";
        case Classification::NotManifestAtEnd: return "NotManifestAtEnd";
        case Classification::Indeterminate: return "Indeterminate";
    }
    return "Indeterminate";
}

namespace {

int sign_of(double x) { return (x > 0.0) - (x < 0.0); }

double bisect(const std::function<double(double)>& f, double a, double b, double fa,
              double refine_tol) {
    // fa and f(b) have opposite signs on entry.
    while (b - a > refine_tol) {
        const double m = 0.5 * (a + b);
        const double fm = f(m);
        if (fm == 0.0) return m;
        if (sign_of(fm) == sign_of(fa)) {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    return 0.5 * (a + b);
}

/// Golden-section minimization of |f| over [a, b].
std::pair<double, double> minimize_abs(const std::function<double(double)>& f, double a,
                                       double b, double refine_tol) {
    constexpr double inv_phi = 0.6180339887498949;
    double x1 = b - inv_phi * (b - a);
    double x2 = a + inv_phi * (b - a);
    double f1 = std::abs(f(x1));
    double f2 = std::abs(f(x2));
    while (b - a > refine_tol) {
        if (f1 <= f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = std::abs(f(x1));
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = std::abs(f(x2));
        }
    }
    const double x = 0.5 * (a + b);
    return {x, std::abs(f(x))};
}

} // namespace

ZeroScan find_zeros(const std::function<double(double)>& f, std::span<const double> grid,
                    std::span<const double> values, double tol_zero, double refine_tol) {
    if (grid.size() != values.size())
        throw ValidationError("find_zeros: grid and values must have equal length");
    const std::size_t n = grid.size();
    ZeroScan scan;
    if (n == 0) return scan;

    bool any_large = false;
    for (double v : values) any_large |= std::abs(v) > tol_zero;
    if (!any_large) {
        scan.identically_zero = true;
        return scan;
    }

    const auto small = [&](std::size_t i) { return std::abs(values[i]) <= tol_zero; };
    std::vector<Zero> found;

    // Grid points already at zero. Kind comes from the nearest non-small
    // neighbours: opposite signs across the touching run mean a sign change.
    for (std::size_t i = 0; i < n; ++i) {
        if (!small(i)) continue;
        int left = 0;
        for (std::size_t l = i; l-- > 0;)
            if (!small(l)) {
                left = sign_of(values[l]);
                break;
            }
        int right = 0;
        for (std::size_t r = i + 1; r < n; ++r)
            if (!small(r)) {
                right = sign_of(values[r]);
                break;
            }
        const ZeroKind kind = (left != 0 && right != 0 && left != right)
                                  ? ZeroKind::SignChange
                                  : ZeroKind::Tangential;
        found.push_back({grid[i], kind});
    }

    // Sign changes between adjacent non-small samples, refined by bisection.
    std::vector<bool> in_sign_change(n, false);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        if (small(i) || small(i + 1)) continue;
        if (sign_of(values[i]) == sign_of(values[i + 1])) continue;
        in_sign_change[i] = in_sign_change[i + 1] = true;
        found.push_back({bisect(f, grid[i], grid[i + 1], values[i], refine_tol),
                         ZeroKind::SignChange});
    }

    // Same-sign dips of |f|: local minima away from sign changes, refined by
    // three-point minimization; a dip is a zero only if it reaches tol_zero.
    for (std::size_t i = 0; i < n; ++i) {
        if (small(i) || in_sign_change[i]) continue;
        const double ai = std::abs(values[i]);
        const bool left_ok = (i == 0) || (!small(i - 1) && ai <= std::abs(values[i - 1]));
        const bool right_ok = (i + 1 == n) || (!small(i + 1) && ai <= std::abs(values[i + 1]));
        if (!left_ok || !right_ok) continue;
        if (i > 0 && in_sign_change[i - 1]) continue;
        if (i + 1 < n && in_sign_change[i + 1]) continue;
        const double lo = (i == 0) ? grid[0] : grid[i - 1];
        const double hi = (i + 1 == n) ? grid[n - 1] : grid[i + 1];
        if (!(hi > lo)) continue;
        const auto [x, fx] = minimize_abs(f, lo, hi, refine_tol);
        if (fx <= tol_zero) found.push_back({x, ZeroKind::Tangential});
    }

    std::sort(found.begin(), found.end(),
              [](const Zero& a, const Zero& b) { return a.location < b.location; });
    for (const Zero& z : found) {
        if (!scan.zeros.empty() &&
            z.location - scan.zeros.back().location <= 2.0 * refine_tol) {
            if (z.kind == ZeroKind::SignChange) scan.zeros.back().kind = ZeroKind::SignChange;
            continue;
        }
        scan.zeros.push_back(z);
    }
    return scan;
}

TransmissionProfile profile(const ProcessInstance& inst, const Projection& p,
                            const ProfileOptions& options) {
    if (!(options.t_end > 0.0)) throw ValidationError("profile: t_end must be positive");
    if (options.n_grid < 2) throw ValidationError("profile: n_grid must be at least 2");
    if (!(options.tol_zero > 0.0) || !(options.refine_tol > 0.0))
        throw ValidationError("profile: tolerances must be positive");
    if (!(options.detect_delta > 0.0))
        throw ValidationError("profile: detect_delta must be positive");
    require_same_dim(inst.state.matrix(), p.matrix(), "profile");

    TransmissionProfile prof;
    prof.options = options;
    prof.gap_min = 2.0 * options.t_end / options.n_grid;

    const int n = options.n_grid;
    const double h = options.t_end / (n - 1);
    const DensityState w_p = luders_update(inst.state, p);

    prof.grid.resize(n);
    prof.delta.resize(n);
    prof.omega_q.resize(n);
    prof.omega_p_q.resize(n);
    for (int i = 0; i < n; ++i) {
        const double t = (i == n - 1) ? options.t_end : i * h;
        const Operator q_t = inst.system.evolve(inst.observable, t);
        prof.grid[i] = t;
        prof.omega_q[i] = expectation(inst.state, q_t).real();
        prof.omega_p_q[i] = expectation(w_p, q_t).real();
        prof.delta[i] = prof.omega_q[i] - prof.omega_p_q[i];
    }

    const auto delta_at = [&](double t) {
        const Operator q_t = inst.system.evolve(inst.observable, t);
        return expectation(inst.state, q_t).real() - expectation(w_p, q_t).real();
    };
    ZeroScan scan = find_zeros(delta_at, prof.grid, prof.delta, options.tol_zero,
                               options.refine_tol);
    prof.identically_zero = scan.identically_zero;
    // Transmission is assessed on (0, t_end]; a zero at the marking instant
    // itself does not count.
    for (const Zero& z : scan.zeros)
        if (z.location > 2.0 * options.refine_tol) prof.zeros.push_back(z);

    prof.classification = classify(prof);
    return prof;
}

Classification classify(const TransmissionProfile& prof) {
    double max_abs = 0.0;
    for (std::size_t i = 0; i < prof.grid.size(); ++i)
        if (prof.grid[i] > 0.0) max_abs = std::max(max_abs, std::abs(prof.delta[i]));
    if (max_abs <= prof.options.tol_zero) return Classification::NeverManifested;
    if (std::abs(prof.delta.back()) < prof.options.detect_delta)
        return Classification::NotManifestAtEnd;
    if (prof.zeros.empty()) return Classification::Continuous;
    for (std::size_t i = 0; i + 1 < prof.zeros.size(); ++i)
        if (prof.zeros[i + 1].location - prof.zeros[i].location <= prof.gap_min)
            return Classification::Indeterminate;
    return Classification::CSIP;
}

ManifestationWitness manifestation_witness(const TransmissionProfile& prof, double detect_delta) {
    ManifestationWitness w;
    if (prof.classification == Classification::NeverManifested) return w;
    if (std::abs(prof.delta.back()) < detect_delta) return w;
    w.applicable = true;
    long denom = 0;
    for (std::size_t i = 0; i < prof.grid.size(); ++i) {
        if (!(prof.grid[i] > 0.0)) continue;
        ++denom;
        if (std::abs(prof.delta[i]) >= detect_delta) ++w.count;
    }
    w.fraction = denom > 0 ? static_cast<double>(w.count) / static_cast<double>(denom) : 0.0;
    const long threshold = std::max<long>(10, prof.options.n_grid / 10);
    w.pass = w.count >= threshold;
    return w;
}

namespace {

/// Spectral projection onto a subset of columns of the basis V.
Matrix subset_projection(const Matrix& v, const std::vector<int>& indices) {
    Matrix p = Matrix::Zero(v.rows(), v.rows());
    for (int idx : indices) p += v.col(idx) * v.col(idx).adjoint();
    return p;
}

} // namespace

FalsifierReport spectrum_condition_falsifier(const DynamicalSystem& sys, int trials,
                                              double eps, std::uint64_t seed) {
    if (trials < 1) throw ValidationError("spectrum_condition_falsifier: trials must be >= 1");
    if (!(eps > 0.0)) throw ValidationError("spectrum_condition_falsifier: eps must be positive");

    FalsifierReport report;
    report.trials = trials;
    Rng rng(seed);
    const Eigen::Index d = sys.dim();
    if (d < 2) throw ValidationError("spectrum_condition_falsifier: dim must be >= 2");

    constexpr int premise_points = 31;
    constexpr double premise_tol = 1e-9;
    constexpr int conclusion_points = 81;
    constexpr double conclusion_tol = 1e-8;
    constexpr double conclusion_halfwidth = 20.0;

    for (int trial = 0; trial < trials; ++trial) {
        // Even trials draw E, F from the eigenbasis of H itself so that the
        // premise is guaranteed to hold; odd trials use an independent random
        // Hermitian basis, which generically fails the premise (vacuous).
        Matrix basis;
        if (trial % 2 == 0) {
            basis = sys.eigenvectors();
        } else {
            Eigen::SelfAdjointEigenSolver<Matrix> es(random_hermitian(rng, d));
            basis = es.eigenvectors();
        }

        std::vector<int> order(d);
        for (Eigen::Index i = 0; i < d; ++i) order[i] = static_cast<int>(i);
        for (Eigen::Index i = d - 1; i > 0; --i)
            std::swap(order[i], order[rng.integer(static_cast<std::uint64_t>(i) + 1)]);
        const int k_e = 1 + static_cast<int>(rng.integer(static_cast<std::uint64_t>(d - 1)));
        const int k_f = 1 + static_cast<int>(rng.integer(static_cast<std::uint64_t>(d - k_e)));
        const std::vector<int> idx_e(order.begin(), order.begin() + k_e);
        const std::vector<int> idx_f(order.begin() + k_e, order.begin() + k_e + k_f);

        const Operator e_proj{subset_projection(basis, idx_e)};
        const Operator f_proj{subset_projection(basis, idx_f)};

        bool premise = true;
        for (int i = 0; i < premise_points && premise; ++i) {
            const double t = -eps + 2.0 * eps * i / (premise_points - 1);
            const Operator e_t = sys.evolve(e_proj, t);
            if (op_norm(commutator(e_t, f_proj)) > premise_tol) premise = false;
        }
        if (!premise) {
            ++report.vacuous;
            continue;
        }
        ++report.nonvacuous;
        for (int i = 0; i < conclusion_points; ++i) {
            const double t =
                -conclusion_halfwidth + 2.0 * conclusion_halfwidth * i / (conclusion_points - 1);
            const Operator e_t = sys.evolve(e_proj, t);
            const double pn = op_norm(Operator(e_t.matrix() * f_proj.matrix()));
            report.max_product_norm = std::max(report.max_product_norm, pn);
            if (pn > conclusion_tol) {
                ++report.counterexamples;
                break;
            }
        }
    }
    return report;
}

} // namespace markdyn
