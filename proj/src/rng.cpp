#include "markdyn/rng.hpp"

namespace markdyn {

Matrix random_hermitian(Rng& rng, Eigen::Index dim) {
    Matrix g(dim, dim);
    for (Eigen::Index i = 0; i < dim; ++i)
        for (Eigen::Index j = 0; j < dim; ++j)
            g(i, j) = rng.cnormal();
    return 0.5 * (g + g.adjoint().eval());
}

Matrix random_unitary(Rng& rng, Eigen::Index dim) {
    Matrix g(dim, dim);
    for (Eigen::Index i = 0; i < dim; ++i)
        for (Eigen::Index j = 0; j < dim; ++j)
            g(i, j) = rng.cnormal();
    Eigen::HouseholderQR<Matrix> qr(g);
    Matrix q = qr.householderQ();
    const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    // Fix the gauge so the distribution is Haar rather than QR-convention
    // dependent: rotate each column by the phase of the matching R diagonal.
    for (Eigen::Index j = 0; j < dim; ++j) {
        const Complex d = r(j, j);
        const double a = std::abs(d);
        q.col(j) *= (a > 0.0) ? d / a : Complex(1.0, 0.0);
    }
    return q;
}

Vector random_pure_state(Rng& rng, Eigen::Index dim) {
    Vector psi(dim);
    for (Eigen::Index i = 0; i < dim; ++i) psi(i) = rng.cnormal();
    psi.normalize();
    return psi;
}

} // namespace markdyn
