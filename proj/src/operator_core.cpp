#include "markdyn/operator_core.hpp"

#include <cmath>
#include <sstream>

namespace markdyn {

namespace {

bool all_finite(const Matrix& m) {
    for (Eigen::Index j = 0; j < m.cols(); ++j)
        for (Eigen::Index i = 0; i < m.rows(); ++i)
            if (!std::isfinite(m(i, j).real()) || !std::isfinite(m(i, j).imag())) return false;
    return true;
}

std::string fmt(double x) {
    std::ostringstream os;
    os.precision(6);
    os << x;
    return os.str();
}

} // namespace

Operator::Operator(Matrix m) : m_(std::move(m)) {
    if (m_.rows() < 1 || m_.rows() != m_.cols())
        throw ValidationError("operator: must be square with dim >= 1, got " +
                              std::to_string(m_.rows()) + "x" + std::to_string(m_.cols()));
    if (!all_finite(m_)) throw ValidationError("operator: non-finite entry");
}

Operator Operator::identity(Eigen::Index dim) { return Operator(Matrix::Identity(dim, dim)); }

Operator Operator::zero(Eigen::Index dim) { return Operator(Matrix::Zero(dim, dim)); }

Projection Projection::validated(const Operator& op, double tol) {
    const Matrix& m = op.matrix();
    const double herm = op_norm(Operator(m - m.adjoint().eval()));
    if (herm > tol)
        throw ValidationError("projection: not self-adjoint, ||P - P'|| = " + fmt(herm));
    const double idem = op_norm(Operator((m * m).eval() - m));
    if (idem > tol)
        throw ValidationError("projection: not idempotent, ||P^2 - P|| = " + fmt(idem));
    return Projection(op);
}

Projection Projection::rank_one(const Vector& psi) {
    const double norm = psi.norm();
    if (!(norm > 0.0)) throw ValidationError("projection: rank_one vector has zero norm");
    const Vector unit = psi / norm;
    return Projection(Operator(unit * unit.adjoint()));
}

DensityState DensityState::validated(const Operator& op, double tol) {
    const Matrix& m = op.matrix();
    const double herm = op_norm(Operator(m - m.adjoint().eval()));
    if (herm > tol)
        throw ValidationError("density: not self-adjoint, ||W - W'|| = " + fmt(herm));
    Eigen::SelfAdjointEigenSolver<Matrix> es(m, Eigen::EigenvaluesOnly);
    const double min_eig = es.eigenvalues().minCoeff();
    if (min_eig < -tol)
        throw ValidationError("density: negative eigenvalue " + fmt(min_eig));
    const double tr_err = std::abs(m.trace() - Complex(1.0, 0.0));
    if (tr_err > tol)
        throw ValidationError("density: trace differs from 1 by " + fmt(tr_err));
    return DensityState(op);
}

DensityState DensityState::pure(const Vector& psi) {
    const double norm = psi.norm();
    if (!(norm > 0.0)) throw ValidationError("density: pure state vector has zero norm");
    const Vector unit = psi / norm;
    return DensityState(Operator(unit * unit.adjoint()));
}

DensityState DensityState::maximally_mixed(Eigen::Index dim) {
    return DensityState(Operator(Matrix::Identity(dim, dim) / static_cast<double>(dim)));
}

Complex expectation(const DensityState& w, const Operator& a) {
    require_same_dim(w.matrix(), a.matrix(), "expectation");
    return (w.matrix() * a.matrix()).trace();
}

Operator commutator(const Operator& a, const Operator& b) {
    require_same_dim(a.matrix(), b.matrix(), "commutator");
    return Operator(a.matrix() * b.matrix() - b.matrix() * a.matrix());
}

Operator double_commutator(const Projection& p, const Operator& q) {
    require_same_dim(p.matrix(), q.matrix(), "double_commutator");
    const Matrix& pm = p.matrix();
    const Matrix& qm = q.matrix();
    const Matrix pq = pm * qm;
    return Operator(pq + qm * pm - 2.0 * (pq * pm));
}

double op_norm(const Operator& a) {
    const Matrix& m = a.matrix();
    Eigen::SelfAdjointEigenSolver<Matrix> es(m.adjoint() * m, Eigen::EigenvaluesOnly);
    const double top = es.eigenvalues().maxCoeff();
    return std::sqrt(std::max(top, 0.0));
}

double max_abs_diff(const Matrix& a, const Matrix& b) {
    return (a - b).cwiseAbs().maxCoeff();
}

const Operator& ensure_selfadjoint(const Operator& a, double tol) {
    const double herm = op_norm(Operator(a.matrix() - a.matrix().adjoint().eval()));
    if (herm > tol)
        throw ValidationError("operator: not self-adjoint, ||A - A'|| = " + fmt(herm));
    return a;
}

const Operator& validate(const Operator& a, ValidationKind kind, double tol) {
    switch (kind) {
        case ValidationKind::Projection: Projection::validated(a, tol); break;
        case ValidationKind::Density: DensityState::validated(a, tol); break;
        case ValidationKind::SelfAdjoint: ensure_selfadjoint(a, tol); break;
    }
    return a;
}

} // namespace markdyn
