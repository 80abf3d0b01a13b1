#pragma once

#include <string>

#include "markdyn/common.hpp"

namespace markdyn {

/// Dense complex square matrix, the generic algebra element. Construction
/// rejects empty or non-square matrices and non-finite entries; beyond that
/// an Operator carries no structure.
class Operator {
public:
    explicit Operator(Matrix m);

    Eigen::Index dim() const { return m_.rows(); }
    const Matrix& matrix() const { return m_; }

    Operator adjoint() const { return Operator(m_.adjoint()); }

    static Operator identity(Eigen::Index dim);
    static Operator zero(Eigen::Index dim);

private:
    Matrix m_;
};

/// Self-adjoint idempotent, validated within a structural tolerance.
class Projection {
public:
    /// Validates ‖op − op†‖ and ‖op² − op‖ against tol.
    static Projection validated(const Operator& op, double tol = kTolStruct);

    const Operator& op() const { return op_; }
    const Matrix& matrix() const { return op_.matrix(); }
    Eigen::Index dim() const { return op_.dim(); }

    /// Rank-one projection |psi><psi| from a (not necessarily normalized) vector.
    static Projection rank_one(const Vector& psi);

private:
    explicit Projection(Operator op) : op_(std::move(op)) {}
    Operator op_;
};

/// Density operator: self-adjoint, positive semidefinite and unit trace
/// within a structural tolerance. Pairs with observables through the trace.
class DensityState {
public:
    static DensityState validated(const Operator& op, double tol = kTolStruct);

    const Operator& op() const { return op_; }
    const Matrix& matrix() const { return op_.matrix(); }
    Eigen::Index dim() const { return op_.dim(); }

    static DensityState pure(const Vector& psi);
    static DensityState maximally_mixed(Eigen::Index dim);

private:
    explicit DensityState(Operator op) : op_(std::move(op)) {}
    Operator op_;
};

/// tr(W·A). Real within kTolStruct when A is self-adjoint.
Complex expectation(const DensityState& w, const Operator& a);

/// AB − BA.
Operator commutator(const Operator& a, const Operator& b);

/// [P,[P,Q]] computed as PQ + QP − 2PQP, valid because P² = P.
/// Self-adjoint whenever Q is.
Operator double_commutator(const Projection& p, const Operator& q);

/// Spectral norm (largest singular value), obtained from the top
/// eigenvalue of A†A. Hermitian eigendecomposition is the single
/// spectral primitive of the library.
double op_norm(const Operator& a);

/// Largest entrywise absolute difference, for agreement checks.
double max_abs_diff(const Matrix& a, const Matrix& b);

enum class ValidationKind { Projection, Density, SelfAdjoint };

/// Checks the invariants of the requested kind, throwing ValidationError
/// with the violated invariant and its size. Returns the operator unchanged
/// on success; use Projection::validated / DensityState::validated to
/// obtain the typed value.
const Operator& validate(const Operator& a, ValidationKind kind, double tol = kTolStruct);

/// Throws unless ‖A − A†‖ ≤ tol.
const Operator& ensure_selfadjoint(const Operator& a, double tol = kTolStruct);

} // namespace markdyn
