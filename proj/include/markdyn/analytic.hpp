#pragma once

#include <vector>

#include "markdyn/dynamics.hpp"

namespace markdyn {

/// Gaussian smearing of A over the orbit of the dynamics,
///   Aₙ = √(n/π) ∫ e^{−nt²} τₜ(A) dt.
/// At finite dimension every element is already entire-analytic for τₜ, so
/// the construction is not needed to *produce* analyticity here; it is kept
/// as the measurable object: Aₙ contracts off-diagonal matrix elements in
/// the H-eigenbasis by e^{−(Eⱼ−Eₖ)²/(4n)} and converges to A as n grows.
struct SmearingResult {
    int n = 1;
    Operator smeared;
    double error_norm = 0.0; ///< ‖Aₙ − A‖
    long quad_panels = 0;    ///< leaf panels of the adaptive quadrature
    double quad_tol = 0.0;
};

/// Quadrature route: adaptive composite Simpson over |t| ≤ 8/√n (tail mass
/// below e^{−64}), bisecting panels until the entrywise error estimate is
/// below quad_tol. Deterministic left-to-right summation.
SmearingResult gaussian_smear(const DynamicalSystem& sys, const Operator& a, int n,
                              double quad_tol = 1e-10);

/// Closed-form route: in the H-eigenbasis, entry (j,k) of Aₙ is
/// A_{jk}·e^{−(Eⱼ−Eₖ)²/(4n)} (the Gaussian characteristic function).
Operator gaussian_smear_spectral(const DynamicalSystem& sys, const Operator& a, int n);

/// Convergence table (n, ‖Aₙ − A‖) for an increasing list of n.
std::vector<std::pair<int, double>> smear_convergence(const DynamicalSystem& sys,
                                                      const Operator& a,
                                                      const std::vector<int>& n_list,
                                                      double quad_tol = 1e-10);

/// Spectral rounding of a self-adjoint operator to the projection onto the
/// eigenspaces with eigenvalue ≥ 1/2. An eigenvalue within 1e-9 of 1/2 makes
/// the rounding ambiguous and throws; the caller must perturb.
Projection nearest_projection(const Operator& a, double tol = kTolStruct);

/// ‖P−P′‖ < δ makes the two marks practically indistinguishable: the
/// expectation gap |ω(P)−ω(P′)| is bounded by ‖P−P′‖ uniformly over states.
struct IndistinguishabilityReport {
    bool close = false;
    double norm = 0.0;
    double expectation_gap_bound = 0.0;
};

IndistinguishabilityReport delta_indistinguishable(const Projection& p, const Projection& p2,
                                                   double delta);

} // namespace markdyn
