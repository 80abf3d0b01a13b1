#pragma once

#include "markdyn/dynamics.hpp"

namespace markdyn {

/// A marking interaction: the projection measured non-selectively plus the
/// detectability threshold δ below which an expectation-value change does
/// not count as a manifestation.
struct MarkSpec {
    MarkSpec(Projection projection, double detect_delta = kDefaultDetectDelta);

    Projection projection;
    double detect_delta;
};

/// Column-stochastic transition matrix acting on classical probability
/// distributions.
class ClassicalChannel {
public:
    static ClassicalChannel validated(RealMatrix transition, double tol = kTolStruct);

    int n_states() const { return static_cast<int>(matrix_.rows()); }
    const RealMatrix& matrix() const { return matrix_; }

    static ClassicalChannel identity(int n_states);
    /// Every column the uniform distribution.
    static ClassicalChannel uniform_mixing(int n_states);

private:
    explicit ClassicalChannel(RealMatrix m) : matrix_(std::move(m)) {}
    RealMatrix matrix_;
};

/// Non-selective Lüders update W ↦ PWP + (1−P)W(1−P). The result is
/// revalidated as a density state; failure signals upstream numerical
/// corruption. Preserves tr(W·P).
DensityState luders_update(const DensityState& w, const Projection& p);

/// T·p for a column-stochastic T; preserves the probability simplex.
RealVector classical_channel_update(const RealVector& p, const ClassicalChannel& t,
                                    double tol = kTolStruct);

/// Mark manifestation quantity
///   Δ(t) = ω(τₜ(Q)) − ω_P(τₜ(Q)),
/// computed directly as the difference of the two expectations. Equals
/// ω([P,[P,τₜ(Q)]]) (the trace identity behind the state criterion);
/// mark_delta_via_identity evaluates that second route for cross-checking.
double mark_delta(const ProcessInstance& inst, const Projection& p, double t);
double mark_delta_via_identity(const ProcessInstance& inst, const Projection& p, double t);

/// |Δ(t)| ≥ detect_delta.
bool manifested(const ProcessInstance& inst, const MarkSpec& mark, double t);

/// Operator criterion: ‖[P,Q]‖ ≤ tol. Equivalent to invariance of ω(Q)
/// under the Lüders update for every state.
bool invariance_criterion_operator(const Projection& p, const Operator& q,
                                   double tol = kTolStruct);

/// State criterion: |ω([P,[P,Q]])| ≤ tol, i.e. the mark is not manifested
/// at Q in the given state.
bool invariance_criterion_state(const DensityState& w, const Projection& p,
                                const Operator& q, double tol = kTolStruct);

} // namespace markdyn
