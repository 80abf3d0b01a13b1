#include "markdyn/localnet.hpp"

#include <cmath>

#include "markdyn/rng.hpp"

namespace markdyn {

namespace {

Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

Matrix cnot_gate() {
    Matrix g = Matrix::Zero(4, 4);
    g(0, 0) = 1.0;
    g(1, 1) = 1.0;
    g(2, 3) = 1.0;
    g(3, 2) = 1.0; // control on the lower site index (most significant factor)
    return g;
}

Matrix make_gate(GateKind kind, Rng& rng) {
    switch (kind) {
        case GateKind::Cnot: return cnot_gate();
        case GateKind::Identity: return Matrix::Identity(4, 4);
        case GateKind::Random: return random_unitary(rng, 4);
    }
    return Matrix::Identity(4, 4);
}

/// Full-chain unitary of one layer of gates on pairs (start, start+1),
/// (start+2, start+3), …, identity on unpaired sites.
Matrix layer_unitary(int n_sites, int start, const std::vector<Matrix>& gates) {
    Matrix layer = Matrix::Identity(1, 1);
    int site = 0;
    std::size_t g = 0;
    while (site < n_sites) {
        if (site >= start && site + 1 < n_sites && (site - start) % 2 == 0) {
            layer = kron(layer, gates[g++]);
            site += 2;
        } else {
            layer = kron(layer, Matrix::Identity(2, 2));
            site += 1;
        }
    }
    return layer;
}

void check_region(const LatticeRegion& region, int n_sites, const char* what) {
    if (region.lo < 0 || region.lo > region.hi || region.hi >= n_sites)
        throw ValidationError(std::string(what) + ": region [" + std::to_string(region.lo) +
                              "," + std::to_string(region.hi) + "] invalid for " +
                              std::to_string(n_sites) + " sites");
}

} // namespace

LatticeSystem::LatticeSystem(int n_sites, GateKind kind, std::uint64_t seed)
    : n_sites_(n_sites), kind_(kind), seed_(seed) {
    if (n_sites < 2 || n_sites > 12)
        throw ValidationError("lattice: n_sites must be in [2, 12], got " +
                              std::to_string(n_sites));
    Rng rng(seed);
    for (int s = 0; s + 1 < n_sites; s += 2) even_gates_.push_back(make_gate(kind, rng));
    for (int s = 1; s + 1 < n_sites; s += 2) odd_gates_.push_back(make_gate(kind, rng));
    const Matrix even = layer_unitary(n_sites, 0, even_gates_);
    const Matrix odd = layer_unitary(n_sites, 1, odd_gates_);
    step_ = odd * even;
}

Operator embed_local(const LatticeSystem& sys, const Operator& a, const LatticeRegion& region) {
    check_region(region, sys.n_sites(), "embed_local");
    const Eigen::Index region_dim = Eigen::Index(1) << region.size();
    if (a.dim() != region_dim)
        throw DimensionError("embed_local: operator dim " + std::to_string(a.dim()) +
                             " does not match region dim " + std::to_string(region_dim));
    const Eigen::Index left = Eigen::Index(1) << region.lo;
    const Eigen::Index right = Eigen::Index(1) << (sys.n_sites() - 1 - region.hi);
    return Operator(kron(Matrix::Identity(left, left),
                         kron(a.matrix(), Matrix::Identity(right, right))));
}

Operator brickwork_step(const LatticeSystem& sys, const Operator& x, StepDirection direction) {
    if (x.dim() != sys.dim())
        throw DimensionError("brickwork_step: operator dim " + std::to_string(x.dim()) +
                             " vs chain dim " + std::to_string(sys.dim()));
    const Matrix& s = sys.step_unitary();
    if (direction == StepDirection::Schrodinger) return Operator(s * x.matrix() * s.adjoint());
    return Operator(s.adjoint() * x.matrix() * s);
}

LatticeRegion lightcone(const LatticeRegion& region, int steps, int n_sites) {
    if (steps < 0) throw ValidationError("lightcone: steps must be >= 0");
    check_region(region, n_sites, "lightcone");
    LatticeRegion cone;
    cone.lo = std::max(0, region.lo - 2 * steps);
    cone.hi = std::min(n_sites - 1, region.hi + 2 * steps);
    return cone;
}

Matrix trace_out_site(const Matrix& x, int site, int n_sites) {
    if (site < 0 || site >= n_sites) throw ValidationError("trace_out_site: site out of range");
    const Eigen::Index left = Eigen::Index(1) << site;
    const Eigen::Index right = Eigen::Index(1) << (n_sites - 1 - site);
    const Eigen::Index dim = left * 2 * right;
    if (x.rows() != dim || x.cols() != dim)
        throw DimensionError("trace_out_site: operator dim does not match chain");
    Matrix out = Matrix::Zero(dim, dim);
    for (Eigen::Index l = 0; l < left; ++l)
        for (Eigen::Index lp = 0; lp < left; ++lp)
            for (Eigen::Index r = 0; r < right; ++r)
                for (Eigen::Index rp = 0; rp < right; ++rp) {
                    Complex sum = 0.0;
                    for (Eigen::Index c = 0; c < 2; ++c)
                        sum += x((l * 2 + c) * right + r, (lp * 2 + c) * right + rp);
                    sum *= 0.5;
                    for (Eigen::Index b = 0; b < 2; ++b)
                        out((l * 2 + b) * right + r, (lp * 2 + b) * right + rp) = sum;
                }
    return out;
}

bool support_excludes_site(const Matrix& x, int site, int n_sites, double tol) {
    return max_abs_diff(trace_out_site(x, site, n_sites), x) <= tol;
}

std::optional<LatticeRegion> support_region(const Matrix& x, int n_sites, double tol) {
    int lo = -1;
    int hi = -1;
    for (int s = 0; s < n_sites; ++s) {
        if (support_excludes_site(x, s, n_sites, tol)) continue;
        if (lo < 0) lo = s;
        hi = s;
    }
    if (lo < 0) return std::nullopt;
    return LatticeRegion{lo, hi};
}

ShieldingResult shielding_check(const LatticeSystem& sys, const DensityState& w,
                                const LatticeRegion& p_region, const Projection& p_local,
                                const LatticeRegion& q_region, const Operator& q_local,
                                int steps) {
    if (steps < 0) throw ValidationError("shielding_check: steps must be >= 0");
    require_same_dim(w.matrix(), sys.step_unitary(), "shielding_check");
    const Projection p_global =
        Projection::validated(embed_local(sys, p_local.op(), p_region));
    Operator q_global = embed_local(sys, ensure_selfadjoint(q_local), q_region);
    for (int k = 0; k < steps; ++k)
        q_global = brickwork_step(sys, q_global, StepDirection::Heisenberg);
    const DensityState w_p = luders_update(w, p_global);
    ShieldingResult result;
    result.delta = expectation(w, q_global).real() - expectation(w_p, q_global).real();
    result.spacelike = !lightcone(q_region, steps, sys.n_sites()).intersects(p_region);
    return result;
}

std::vector<StepDelta> local_mark_profile(const LatticeSystem& sys, const DensityState& w,
                                          const LatticeRegion& p_region,
                                          const Projection& p_local,
                                          const LatticeRegion& q_region, const Operator& q_local,
                                          int max_steps) {
    if (max_steps < 1) throw ValidationError("local_mark_profile: max_steps must be >= 1");
    require_same_dim(w.matrix(), sys.step_unitary(), "local_mark_profile");
    const Projection p_global =
        Projection::validated(embed_local(sys, p_local.op(), p_region));
    const DensityState w_p = luders_update(w, p_global);
    Operator q_global = embed_local(sys, ensure_selfadjoint(q_local), q_region);

    std::vector<StepDelta> out;
    out.reserve(max_steps + 1);
    for (int step = 0; step <= max_steps; ++step) {
        if (step > 0) q_global = brickwork_step(sys, q_global, StepDirection::Heisenberg);
        StepDelta row;
        row.step = step;
        row.omega_q = expectation(w, q_global).real();
        row.omega_p_q = expectation(w_p, q_global).real();
        row.delta = row.omega_q - row.omega_p_q;
        row.spacelike = !lightcone(q_region, step, sys.n_sites()).intersects(p_region);
        out.push_back(row);
    }
    return out;
}

} // namespace markdyn
