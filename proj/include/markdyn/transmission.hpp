#pragma once

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "markdyn/marking.hpp"

namespace markdyn {

enum class Classification {
    Continuous,       ///< manifested at every grid point of (0, t_end]
    CSIP,             ///< manifested except at isolated zeros
    NeverManifested,  ///< |Δ| ≤ tol_zero everywhere on (0, t_end]
    NotManifestAtEnd, ///< |Δ(t_end)| below the detection threshold
    Indeterminate     ///< zeros not isolated at grid resolution
};

const char* to_string(Classification c);

enum class ZeroKind { SignChange, Tangential };

struct Zero {
    double location;
    ZeroKind kind;
};

struct ZeroScan {
    std::vector<Zero> zeros;
    bool identically_zero = false; ///< sentinel: |Δ| ≤ tol_zero at every grid point
};

/// Locates and refines the zeros of a sampled function. Sign changes are
/// bracketed and bisected until the bracket is narrower than refine_tol;
/// same-sign dips of |f| are refined by three-point (golden-section)
/// minimization and reported as tangential when the refined value drops
/// below tol_zero. Grid points already below tol_zero count as zeros at
/// their own location. Results are sorted and deduplicated within
/// 2·refine_tol, sign-change kind winning on merge.
ZeroScan find_zeros(const std::function<double(double)>& f, std::span<const double> grid,
                    std::span<const double> values, double tol_zero, double refine_tol);

struct ProfileOptions {
    double t_end = 1.0;
    int n_grid = 4096;
    double tol_zero = 1e-9;
    double refine_tol = 1e-10;
    double detect_delta = kDefaultDetectDelta;
};

/// Sampled mark-manifestation profile Δ(t) on [0, t_end] with its refined
/// zero set and classification. omega_q / omega_p_q keep the two underlying
/// expectation curves for serialization.
struct TransmissionProfile {
    ProfileOptions options;
    double gap_min = 0.0; ///< isolation scale, 2·(t_end / n_grid)
    std::vector<double> grid;
    std::vector<double> delta;
    std::vector<double> omega_q;
    std::vector<double> omega_p_q;
    std::vector<Zero> zeros; ///< zeros inside (0, t_end]
    bool identically_zero = false;
    Classification classification = Classification::Indeterminate;
};

/// Samples Δ over a uniform grid on [0, t_end], finds and refines the zeros
/// and assigns the classification. n_grid counts the grid points including
/// both endpoints; anything below 2 is rejected.
TransmissionProfile profile(const ProcessInstance& inst, const Projection& p,
                            const ProfileOptions& options);

/// Classification rules, in order: NeverManifested if max|Δ| on (0, t_end]
/// is below tol_zero; NotManifestAtEnd if |Δ(t_end)| < detect_delta;
/// Continuous if no zeros lie in (0, t_end]; CSIP if all zeros are pairwise
/// separated by more than gap_min; Indeterminate otherwise.
Classification classify(const TransmissionProfile& in_progress);

/// Desk-scale witness for manifestation at infinitely many stages: counts
/// grid points of (0, t_end] with |Δ| ≥ detect_delta. The grid-count
/// threshold max(10, n_grid/10) is a proxy for infinitude, which is not
/// decidable from samples.
struct ManifestationWitness {
    bool applicable = false;
    long count = 0;
    double fraction = 0.0;
    bool pass = false;
};

ManifestationWitness manifestation_witness(const TransmissionProfile& prof, double detect_delta);

/// Falsification harness for the spectrum-condition lemma: if two
/// projections with E·F = 0 have [τₜ(E), F] = 0 on a neighbourhood of 0,
/// then τₜ(E)·F = 0 for all t. Trials draw (E, F) from disjoint spectral
/// subspaces, alternating between the eigenbasis of H itself (premise
/// holds; nonvacuous) and an independent random Hermitian basis (premise
/// generically fails; vacuous). Counterexamples would falsify the lemma;
/// none exist.
struct FalsifierReport {
    int trials = 0;
    int vacuous = 0;       ///< premise never satisfied
    int nonvacuous = 0;
    int counterexamples = 0;
    double max_product_norm = 0.0; ///< max ‖τₜ(E)F‖ seen over nonvacuous trials
};

FalsifierReport spectrum_condition_falsifier(const DynamicalSystem& sys, int trials,
                                             double eps, std::uint64_t seed);

} // namespace markdyn
