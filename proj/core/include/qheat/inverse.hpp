#pragma once

#include <functional>

#include "qheat/direct.hpp"
#include "qheat/growth.hpp"
#include "qheat/spectral.hpp"

namespace qheat {

/// Known time shape g of the separable source g(t) f, with certified bounds
/// 0 < alpha0 <= int_0^T g d_q s <= beta0. g must be positive at interior
/// lattice points; the endpoints may vanish.
struct SourceProfile {
    std::function<double(double)> g;
    double alpha0 = 0.0;
    double beta0 = 0.0;

    static SourceProfile validated(std::function<double(double)> g, double alpha0, double beta0,
                                   const QLattice& lat, const QParams& params);
};

/// Inverse source problem: D_q u + upsilon L u = g(t) f with u(0) = phi and
/// the final determination condition u(T) = eta; recover (f, u).
struct InverseProblem {
    Spectrum spectrum;
    CoefficientProfile profile;
    QParams qparams;
    double horizon = 1.0;
    int lattice_depth = 64;
    double sobolev_order = 0.0;
    CoeffVec phi;
    CoeffVec eta;
    SourceProfile source_shape;

    QLattice lattice() const { return QLattice(horizon, qparams.q, lattice_depth); }
    void validate() const;
};

struct StabilityReport {
    bool holds = false;            // per-mode bound and the estimate both hold
    bool per_mode_holds = false;   // |f_k| <= E (|eta_k| + |phi_k|) for all k
    bool estimate_holds = false;
    double lhs = 0.0;              // sup ||u||_{H^{d+2}} + sup ||D_q u||^2_{H^d}
    double rhs = 0.0;              // ||phi||^2 + ||eta||^2 in H^{d+2}
    double constant = 0.0;         // effective C with lhs <= C rhs
    double state_bound = 0.0;
    double rate_bound = 0.0;
    double source_bound_factor = 0.0;  // E = q_exp_big(beta T) / alpha0
    double worst_source_margin = 0.0;  // min_k (bound_k - |f_k|)
    int worst_mode = 0;                // 1-based, mode attaining the margin
};

struct InverseDiagnostics {
    double roundtrip_error = 0.0;  // max_k |u_k(T) - eta_k| / (1 + |eta_k|)
    StabilityReport stability;
    double truncation_tail = 0.0;
};

struct InverseSolution {
    CoeffVec f;
    CoeffTrajectory trajectory;
    InverseDiagnostics diagnostics;
};

/// Source recovery
///   f_k = (growth(lambda_k, T) eta_k - phi_k) / int_0^T growth(lambda_k, q s) g(s) d_q s.
/// Degenerate denominators (<= tol) are a hard failure naming the mode; when
/// growth(lambda_k, T) exceeds 1e100 the ratio is formed in log space.
CoeffVec recover_source(const InverseProblem& p);

/// State reconstruction u_k(t) = decay(lambda_k,t) [phi_k + f_k int_0^t growth(lambda_k,qs) g ds],
/// with u(0) = phi assigned exactly.
CoeffTrajectory reconstruct_state(const InverseProblem& p, const CoeffVec& f);

/// recover_source + reconstruct_state + diagnostics.
InverseSolution solve_inverse(const InverseProblem& p);

/// (a) per-mode source bound |f_k| <= (q_exp_big(beta T)/alpha0)(|eta_k| + |phi_k|) and
/// (b) the final stability estimate with the constant composed from
///     (q_exp_big(beta T)/alpha0, beta0, beta, 1/lambda0, sup g):
///   sup ||u||_{H^{d+2}}   <= sqrt(2) (1 + beta0 E) sqrt(rhs)
///   sup ||D_q u||^2_{H^d} <= 2 (beta (1 + beta0 E) + (sup g / lambda0) E)^2 rhs.
StabilityReport stability_check(const InverseSolution& sol, const InverseProblem& p);

}  // namespace qheat
