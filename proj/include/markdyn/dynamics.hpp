#pragma once

#include "markdyn/operator_core.hpp"

namespace markdyn {

/// One-parameter automorphism group τₜ(X) = Uₜ X Uₜ⁻¹ generated by a
/// Hermitian Hamiltonian. The spectral decomposition H = VΛV† is computed
/// once at construction; Uₜ = V e^{−iΛt} V† is assembled per call, so
/// evolution is exact for any t with no integrator drift. Immutable after
/// construction and safe to share across threads.
class DynamicalSystem {
public:
    explicit DynamicalSystem(Operator hamiltonian, double tol = kTolStruct);

    Eigen::Index dim() const { return hamiltonian_.dim(); }
    const Operator& hamiltonian() const { return hamiltonian_; }
    const RealVector& eigenvalues() const { return eigenvalues_; }
    const Matrix& eigenvectors() const { return eigenvectors_; }

    /// Uₜ = exp(−iHt).
    Matrix unitary(double t) const;

    /// τₜ(A) = Uₜ A Uₜ†. Norm- and adjoint-preserving.
    Operator evolve(const Operator& a, double t) const;

    /// Minimum eigenvalue of H. Finite dimension makes the spectrum
    /// bounded below automatically; the value is recorded for reports.
    double ground_energy() const { return eigenvalues_.minCoeff(); }

private:
    Operator hamiltonian_;
    RealVector eigenvalues_;
    Matrix eigenvectors_;
};

/// A dynamical system together with a normal state and a self-adjoint
/// observable whose evolving expectation t ↦ ω(τₜ(Q)) exhibits the
/// uniformity of the process.
struct ProcessInstance {
    ProcessInstance(DynamicalSystem system, DensityState state, Operator observable,
                    double tol = kTolStruct);

    DynamicalSystem system;
    DensityState state;
    Operator observable;
};

} // namespace markdyn
