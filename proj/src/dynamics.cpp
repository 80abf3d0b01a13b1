#include "markdyn/dynamics.hpp"

namespace markdyn {

DynamicalSystem::DynamicalSystem(Operator hamiltonian, double tol)
    : hamiltonian_(std::move(hamiltonian)) {
    ensure_selfadjoint(hamiltonian_, tol);
    Eigen::SelfAdjointEigenSolver<Matrix> es(hamiltonian_.matrix());
    if (es.info() != Eigen::Success)
        throw ValidationError("dynamical system: eigendecomposition failed");
    eigenvalues_ = es.eigenvalues();
    eigenvectors_ = es.eigenvectors();
    const Matrix recon =
        eigenvectors_ * eigenvalues_.asDiagonal() * eigenvectors_.adjoint();
    const double err = op_norm(Operator(recon - hamiltonian_.matrix()));
    if (err > 1e3 * tol * std::max(1.0, eigenvalues_.cwiseAbs().maxCoeff()))
        throw ValidationError("dynamical system: spectral reconstruction error " +
                              std::to_string(err));
}

Matrix DynamicalSystem::unitary(double t) const {
    const Eigen::Index d = dim();
    Vector phases(d);
    for (Eigen::Index k = 0; k < d; ++k)
        phases(k) = std::exp(Complex(0.0, -eigenvalues_(k) * t));
    return eigenvectors_ * phases.asDiagonal() * eigenvectors_.adjoint();
}

Operator DynamicalSystem::evolve(const Operator& a, double t) const {
    require_same_dim(hamiltonian_.matrix(), a.matrix(), "evolve");
    const Matrix u = unitary(t);
    return Operator(u * a.matrix() * u.adjoint());
}

ProcessInstance::ProcessInstance(DynamicalSystem system_, DensityState state_,
                                 Operator observable_, double tol)
    : system(std::move(system_)), state(std::move(state_)), observable(std::move(observable_)) {
    require_same_dim(system.hamiltonian().matrix(), state.matrix(), "process instance");
    require_same_dim(system.hamiltonian().matrix(), observable.matrix(), "process instance");
    ensure_selfadjoint(observable, tol);
}

} // namespace markdyn
