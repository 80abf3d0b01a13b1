#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "markdyn/marking.hpp"

namespace markdyn {

/// Inclusive interval of chain sites.
struct LatticeRegion {
    int lo = 0;
    int hi = 0;

    int size() const { return hi - lo + 1; }
    bool intersects(const LatticeRegion& other) const {
        return lo <= other.hi && other.lo <= hi;
    }
};

enum class GateKind { Cnot, Random, Identity };
enum class StepDirection { Heisenberg, Schrodinger };

/// Qubit chain with brickwork dynamics: one step applies a layer of
/// two-qubit gates on even pairs (0,1),(2,3),… then on odd pairs
/// (1,2),(3,4),…. Discrete time replaces the continuous τₜ so that the
/// light cone is exact (2 sites per step per side) rather than a
/// Lieb-Robinson bound, which makes the causality-locality contract
/// testable to machine precision. Tensor ordering is site-major: site 0 is
/// the most significant factor. Immutable after seeding.
class LatticeSystem {
public:
    LatticeSystem(int n_sites, GateKind kind, std::uint64_t seed);

    int n_sites() const { return n_sites_; }
    GateKind gate_kind() const { return kind_; }
    std::uint64_t seed() const { return seed_; }
    Eigen::Index dim() const { return Eigen::Index(1) << n_sites_; }

    /// Gates of the even/odd layer, one per pair, in pair order.
    const std::vector<Matrix>& even_gates() const { return even_gates_; }
    const std::vector<Matrix>& odd_gates() const { return odd_gates_; }

    /// Full-chain unitary of one brickwork step (odd layer after even).
    const Matrix& step_unitary() const { return step_; }

private:
    int n_sites_;
    GateKind kind_;
    std::uint64_t seed_;
    std::vector<Matrix> even_gates_;
    std::vector<Matrix> odd_gates_;
    Matrix step_;
};

/// A ⊗ identity on all sites outside the region, in global site order.
/// dim(A) must be 2^(region size).
Operator embed_local(const LatticeSystem& sys, const Operator& a, const LatticeRegion& region);

/// One brickwork step. Schrödinger conjugates states by the step unitary,
/// Heisenberg conjugates observables by its inverse ordering.
Operator brickwork_step(const LatticeSystem& sys, const Operator& x, StepDirection direction);

/// Maximal support a region can reach after the given number of steps,
/// clamped to the chain.
LatticeRegion lightcone(const LatticeRegion& region, int steps, int n_sites);

/// tr_s of the single site, re-tensored with identity at s (normalized).
/// An operator's support excludes site s iff this reproduces it.
Matrix trace_out_site(const Matrix& x, int site, int n_sites);

bool support_excludes_site(const Matrix& x, int site, int n_sites, double tol = 1e-10);

/// Smallest region containing the support, by the partial-trace criterion;
/// empty for multiples of the identity.
std::optional<LatticeRegion> support_region(const Matrix& x, int n_sites, double tol = 1e-10);

struct ShieldingResult {
    double delta = 0.0;
    bool spacelike = false;
};

/// Marks the chain with the embedded projection, evolves the embedded
/// observable the given number of brickwork steps in the Heisenberg
/// picture, and reports the manifestation delta. spacelike means the
/// observable's light cone cannot reach the mark region; the
/// causality-locality contract then forces delta = 0 to machine precision.
ShieldingResult shielding_check(const LatticeSystem& sys, const DensityState& w,
                                const LatticeRegion& p_region, const Projection& p_local,
                                const LatticeRegion& q_region, const Operator& q_local,
                                int steps);

struct StepDelta {
    int step = 0;
    double delta = 0.0;
    bool spacelike = false;
    double omega_q = 0.0;
    double omega_p_q = 0.0;
};

/// Delta per integer step from 0 to max_steps, each entry flagged with
/// whether the evolved observable region is still spacelike to the mark.
std::vector<StepDelta> local_mark_profile(const LatticeSystem& sys, const DensityState& w,
                                          const LatticeRegion& p_region, const Projection& p_local,
                                          const LatticeRegion& q_region, const Operator& q_local,
                                          int max_steps);

} // namespace markdyn
