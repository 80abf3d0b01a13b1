#include "markdyn/analytic.hpp"

#include <cmath>
#include <functional>

namespace markdyn {

namespace {

using Integrand = std::function<Matrix(double)>;

/// Adaptive Simpson with Richardson correction. The error estimate is the
/// entrywise max of (S_fine − S_coarse)/15; the tolerance budget halves at
/// each split. Leaves are summed left to right, so the result is
/// deterministic.
Matrix adaptive_simpson(const Integrand& f, double a, double b, const Matrix& fa,
                        const Matrix& fm, const Matrix& fb, const Matrix& whole, double tol,
                        int depth, long& panels) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const Matrix flm = f(lm);
    const Matrix frm = f(rm);
    const Matrix left = ((m - a) / 6.0) * (fa + 4.0 * flm + fm);
    const Matrix right = ((b - m) / 6.0) * (fm + 4.0 * frm + fb);
    const Matrix refined = left + right;
    const double err = (refined - whole).cwiseAbs().maxCoeff() / 15.0;
    if (err <= tol || depth >= 28) {
        panels += 2;
        return refined + (refined - whole) / 15.0;
    }
    return adaptive_simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth + 1, panels) +
           adaptive_simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth + 1, panels);
}

Matrix integrate(const Integrand& f, double a, double b, double tol, long& panels) {
    const Matrix fa = f(a);
    const Matrix fm = f(0.5 * (a + b));
    const Matrix fb = f(b);
    const Matrix whole = ((b - a) / 6.0) * (fa + 4.0 * fm + fb);
    return adaptive_simpson(f, a, b, fa, fm, fb, whole, tol, 0, panels);
}

} // namespace

SmearingResult gaussian_smear(const DynamicalSystem& sys, const Operator& a, int n,
                              double quad_tol) {
    if (n < 1) throw ValidationError("gaussian_smear: n must be >= 1");
    require_same_dim(sys.hamiltonian().matrix(), a.matrix(), "gaussian_smear");
    if (!(quad_tol > 0.0)) throw ValidationError("gaussian_smear: quad_tol must be positive");

    const double sqrt_n = std::sqrt(static_cast<double>(n));
    const double halfwidth = 8.0 / sqrt_n; // tail mass < e^{-64}
    const double weight = sqrt_n / std::sqrt(M_PI);
    const Integrand integrand = [&](double t) -> Matrix {
        return (weight * std::exp(-static_cast<double>(n) * t * t)) *
               sys.evolve(a, t).matrix();
    };

    SmearingResult result{n, Operator::zero(a.dim()), 0.0, 0, quad_tol};
    long panels = 0;
    const Matrix smeared =
        integrate(integrand, -halfwidth, halfwidth, 0.5 * quad_tol, panels);
    result.smeared = Operator(smeared);
    result.error_norm = op_norm(Operator(smeared - a.matrix()));
    result.quad_panels = panels;
    return result;
}

Operator gaussian_smear_spectral(const DynamicalSystem& sys, const Operator& a, int n) {
    if (n < 1) throw ValidationError("gaussian_smear_spectral: n must be >= 1");
    require_same_dim(sys.hamiltonian().matrix(), a.matrix(), "gaussian_smear_spectral");
    const Matrix& v = sys.eigenvectors();
    const RealVector& e = sys.eigenvalues();
    Matrix b = v.adjoint() * a.matrix() * v;
    for (Eigen::Index j = 0; j < b.rows(); ++j)
        for (Eigen::Index k = 0; k < b.cols(); ++k) {
            const double gap = e(j) - e(k);
            b(j, k) *= std::exp(-gap * gap / (4.0 * n));
        }
    return Operator(v * b * v.adjoint());
}

std::vector<std::pair<int, double>> smear_convergence(const DynamicalSystem& sys,
                                                      const Operator& a,
                                                      const std::vector<int>& n_list,
                                                      double quad_tol) {
    if (n_list.empty()) throw ValidationError("smear_convergence: n_list must be nonempty");
    for (std::size_t i = 0; i + 1 < n_list.size(); ++i)
        if (n_list[i + 1] <= n_list[i])
            throw ValidationError("smear_convergence: n_list must be strictly increasing");
    std::vector<std::pair<int, double>> table;
    table.reserve(n_list.size());
    for (int n : n_list) table.emplace_back(n, gaussian_smear(sys, a, n, quad_tol).error_norm);
    return table;
}

Projection nearest_projection(const Operator& a, double tol) {
    ensure_selfadjoint(a, tol);
    Eigen::SelfAdjointEigenSolver<Matrix> es(a.matrix());
    const RealVector& vals = es.eigenvalues();
    for (Eigen::Index i = 0; i < vals.size(); ++i)
        if (std::abs(vals(i) - 0.5) < 1e-9)
            throw ValidationError(
                "nearest_projection: eigenvalue within 1e-9 of 1/2, rounding ambiguous; "
                "perturb the input");
    Matrix p = Matrix::Zero(a.dim(), a.dim());
    for (Eigen::Index i = 0; i < vals.size(); ++i)
        if (vals(i) >= 0.5) p += es.eigenvectors().col(i) * es.eigenvectors().col(i).adjoint();
    return Projection::validated(Operator(p), tol);
}

IndistinguishabilityReport delta_indistinguishable(const Projection& p, const Projection& p2,
                                                   double delta) {
    if (!(delta > 0.0))
        throw ValidationError("delta_indistinguishable: delta must be positive");
    require_same_dim(p.matrix(), p2.matrix(), "delta_indistinguishable");
    IndistinguishabilityReport report;
    report.norm = op_norm(Operator(p.matrix() - p2.matrix()));
    report.close = report.norm < delta;
    report.expectation_gap_bound = report.norm;
    return report;
}

} // namespace markdyn
