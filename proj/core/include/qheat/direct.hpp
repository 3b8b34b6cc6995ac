#pragma once

#include <functional>
#include <optional>

#include "qheat/growth.hpp"
#include "qheat/spectral.hpp"

namespace qheat {

/// Per-mode source amplitudes f_k(t); an unset function means f == 0.
using ModeSource = std::function<double(int k, double t)>;

/// Direct Cauchy problem D_q u + upsilon(t) L u = f, u(0) = phi,
/// posed in coefficient space on the lattice {T q^m}.
struct DirectProblem {
    Spectrum spectrum;
    CoefficientProfile profile;
    CoeffVec phi;
    ModeSource source;  // empty -> homogeneous
    double horizon = 1.0;
    QParams qparams;
    int lattice_depth = 64;
    double sobolev_order = 0.0;  // d

    QLattice lattice() const { return QLattice(horizon, qparams.q, lattice_depth); }
    void validate() const;
    double source_at(int k, double t) const { return source ? source(k, t) : 0.0; }
};

/// Fraction of (1-q) t / T below which a stored-double difference quotient can
/// no longer resolve the equation; residual maxima are reported both over the
/// resolvable points and over everything.
inline constexpr double kResidualFloor = 2e-3;

struct OdeResidualReport {
    double resolved = 0.0;  // max over interior points with (1-q) t >= floor * T
    double all = 0.0;       // max over every interior point (fp-noise included)
    double floor = kResidualFloor;
};

struct AprioriReport {
    double lhs = 0.0;       // sup ||u||_{H^{d+2}} + sup ||D_q u||^2_{H^d}
    double rhs = 0.0;       // ||phi||^2_{H^{d+2}} + sup ||f(t)||^2_{H^{d+2}}
    double constant = 0.0;  // effective C with lhs <= C rhs
    bool holds = false;
    double state_bound = 0.0;  // sqrt(2) max(1,T) sqrt(rhs_aligned)
    double rate_bound = 0.0;   // 2 (beta max(1,T) + 1/lambda0)^2 rhs_aligned
    double rhs_aligned = 0.0;  // ||phi||^2 + sum_k sup_t lambda_k^{d+2} f_k(t)^2
};

struct DirectDiagnostics {
    OdeResidualReport ode_residual;
    AprioriReport apriori;
    double truncation_tail = 0.0;  // q^(n_terms+1)
    double mode_tail = 0.0;        // lambda_K^{(d+2)/2} |phi_K|
};

struct DirectSolution {
    CoeffTrajectory trajectory;
    DirectDiagnostics diagnostics;
};

/// Closed-form series solution: per mode and lattice point
///   u_k(t) = decay(lambda_k, t) [ phi_k + int_0^t growth(lambda_k, q s) f_k(s) d_q s ],
/// with u_k(0) = phi_k assigned exactly.
DirectSolution solve_direct(const DirectProblem& p);

/// Independent oracle: steps the exact lattice rearrangement
///   u_k(t) = (u_k(q t) + (1-q) t f_k(t)) / (1 + (1-q) t lambda_k upsilon(t))
/// upward from a phi seed at the deepest point. Never touches the growth factor.
CoeffTrajectory lattice_stepper_oracle(const DirectProblem& p);

/// Max over modes and interior lattice points of
/// |D_q u_k + lambda_k upsilon u_k - f_k| / (1 + |f_k|); `resolved` restricts to
/// points where the quotient is fp-meaningful (see kResidualFloor).
OdeResidualReport ode_residual_report(const CoeffTrajectory& tr, const DirectProblem& p);
double ode_residual(const DirectSolution& sol, const DirectProblem& p);

/// Stability estimate check with the constant composed from the proof chain
/// (max{1,T}, beta, 1/lambda0, and the vacuous max{1/E_q^{alpha t}, 1} = 1):
///   sup_t ||u||_{H^{d+2}}   <= sqrt(2) max{1,T} sqrt(rhs_aligned)
///   sup_t ||D_q u||^2_{H^d} <= 2 (beta max{1,T} + 1/lambda0)^2 rhs_aligned
/// holds() asserts lhs <= state_bound + rate_bound (+ tol slack); the reported
/// `constant` is (state_bound + rate_bound)/rhs so lhs <= constant * rhs.
AprioriReport apriori_check(const DirectSolution& sol, const DirectProblem& p);

}  // namespace qheat
