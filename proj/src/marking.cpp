#include "markdyn/marking.hpp"

#include <cassert>

namespace markdyn {

MarkSpec::MarkSpec(Projection projection_, double detect_delta_)
    : projection(std::move(projection_)), detect_delta(detect_delta_) {
    if (!(detect_delta > 0.0))
        throw ValidationError("mark spec: detect_delta must be positive");
}

ClassicalChannel ClassicalChannel::validated(RealMatrix transition, double tol) {
    if (transition.rows() < 1 || transition.rows() != transition.cols())
        throw ValidationError("classical channel: matrix must be square with n >= 1");
    for (Eigen::Index j = 0; j < transition.cols(); ++j) {
        double sum = 0.0;
        for (Eigen::Index i = 0; i < transition.rows(); ++i) {
            if (transition(i, j) < 0.0)
                throw ValidationError("classical channel: negative entry at (" +
                                      std::to_string(i) + "," + std::to_string(j) + ")");
            sum += transition(i, j);
        }
        if (std::abs(sum - 1.0) > tol)
            throw ValidationError("classical channel: column " + std::to_string(j) +
                                  " sums to " + std::to_string(sum));
    }
    return ClassicalChannel(std::move(transition));
}

ClassicalChannel ClassicalChannel::identity(int n_states) {
    return ClassicalChannel(RealMatrix::Identity(n_states, n_states));
}

ClassicalChannel ClassicalChannel::uniform_mixing(int n_states) {
    return ClassicalChannel(RealMatrix::Constant(n_states, n_states, 1.0 / n_states));
}

DensityState luders_update(const DensityState& w, const Projection& p) {
    require_same_dim(w.matrix(), p.matrix(), "luders_update");
    const Matrix& wm = w.matrix();
    const Matrix& pm = p.matrix();
    const Matrix comp = Matrix::Identity(pm.rows(), pm.cols()) - pm;
    const Matrix updated = pm * wm * pm + comp * wm * comp;
    return DensityState::validated(Operator(updated));
}

RealVector classical_channel_update(const RealVector& p, const ClassicalChannel& t, double tol) {
    if (p.size() != t.matrix().rows())
        throw DimensionError("classical_channel_update: distribution size " +
                             std::to_string(p.size()) + " vs channel " +
                             std::to_string(t.matrix().rows()));
    double sum = 0.0;
    for (Eigen::Index i = 0; i < p.size(); ++i) {
        if (p(i) < 0.0)
            throw ValidationError("classical_channel_update: negative probability p[" +
                                  std::to_string(i) + "]");
        sum += p(i);
    }
    if (std::abs(sum - 1.0) > tol)
        throw ValidationError("classical_channel_update: probabilities sum to " +
                              std::to_string(sum));
    return t.matrix() * p;
}

double mark_delta(const ProcessInstance& inst, const Projection& p, double t) {
    require_same_dim(inst.state.matrix(), p.matrix(), "mark_delta");
    const Operator q_t = inst.system.evolve(inst.observable, t);
    const DensityState w_p = luders_update(inst.state, p);
    const double direct =
        expectation(inst.state, q_t).real() - expectation(w_p, q_t).real();
#ifndef NDEBUG
    const double via_identity =
        expectation(inst.state, double_commutator(p, q_t)).real();
    assert(std::abs(direct - via_identity) <= 1e-8);
#endif
    return direct;
}

double mark_delta_via_identity(const ProcessInstance& inst, const Projection& p, double t) {
    require_same_dim(inst.state.matrix(), p.matrix(), "mark_delta");
    const Operator q_t = inst.system.evolve(inst.observable, t);
    return expectation(inst.state, double_commutator(p, q_t)).real();
}

bool manifested(const ProcessInstance& inst, const MarkSpec& mark, double t) {
    if (!(mark.detect_delta > 0.0))
        throw ValidationError("manifested: detect_delta must be positive");
    return std::abs(mark_delta(inst, mark.projection, t)) >= mark.detect_delta;
}

bool invariance_criterion_operator(const Projection& p, const Operator& q, double tol) {
    ensure_selfadjoint(q);
    return op_norm(commutator(p.op(), q)) <= tol;
}

bool invariance_criterion_state(const DensityState& w, const Projection& p, const Operator& q,
                                double tol) {
    ensure_selfadjoint(q);
    return std::abs(expectation(w, double_commutator(p, q))) <= tol;
}

} // namespace markdyn
