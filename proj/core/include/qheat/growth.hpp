#pragma once

#include <functional>
#include <memory>
#include <mutex>
#include <unordered_map>
#include <vector>

#include "qheat/qlattice.hpp"

namespace qheat {

/// Fraction of (1-q) t / scale below which even the extended-precision
/// difference quotient of the growth factor is dominated by rounding.
inline constexpr double kIdentityFloor = 1e-4;

/// Time-dependent diffusion coefficient with certified bounds
/// 0 < alpha <= upsilon(t) <= beta on [0, T].
struct CoefficientProfile {
    std::function<double(double)> upsilon;
    double alpha = 0.0;
    double beta = 0.0;

    /// Checks the declared bounds by sampling every point of `lat` (plus 0).
    static CoefficientProfile validated(std::function<double(double)> upsilon, double alpha,
                                        double beta, const QLattice& lat);
};

/// Evaluator for the growth factor
///   growth_factor(lambda, t) = prod_{i=0}^{n_terms} (1 + (1-q) lambda t q^i upsilon(q^i t))
/// and its reciprocal decay factor. The two-argument normalization keeps the
/// difference identity D_q[growth(lambda,.)](t) = lambda upsilon(t) growth(lambda, qt)
/// exact for non-constant upsilon; for constant upsilon == a the value equals
/// q_exp_big(a lambda t).
///
/// Arguments t must lie on the extended lattice {scale * q^m : m >= 0} or be 0;
/// off-lattice times are rejected, not interpolated. Evaluations are memoized
/// per (lambda, m); the cache is internally synchronized and idempotent, so
/// results match the uncached path bit for bit.
class GrowthEvaluator {
  public:
    GrowthEvaluator(CoefficientProfile profile, QParams params, double scale);

    /// gamma^-1; >= 1 for lambda > 0, t >= 0, equals 1 at t = 0.
    double growth_factor(double lambda, double t) const;
    /// gamma = 1 / gamma^-1, in (0, 1].
    double decay_factor(double lambda, double t) const;
    /// log(gamma^-1) via log1p; overflow-free route for huge lambda t.
    double log_growth_factor(double lambda, double t) const;

    /// |D_q[growth_factor(lambda,.)](t) - lambda upsilon(t) growth_factor(lambda, qt)|
    /// from two independent product evaluations and the plain difference
    /// quotient, carried out in extended precision so the result reflects the
    /// truncation error rather than the fp resolution of the quotient.
    /// Meaningful while (1-q) t >= kIdentityFloor * scale.
    double identity_residual(double lambda, double t) const;

    /// Same identity in the cancellation-free ratio form
    /// |growth(t)/growth(qt) - 1 - (1-q) t lambda upsilon(t)| / (1 + (1-q) t lambda upsilon(t));
    /// certifiable at every lattice depth.
    double ratio_identity_residual(double lambda, double t) const;

    /// Jackson integral int_0^t growth_factor(lambda, q s) w(s) d_q s.
    double weighted_integral(double lambda, double t,
                             const std::function<double(double)>& weight) const;
    /// log of the same integral (log-sum-exp over the Jackson terms); terms with
    /// w <= 0 contribute nothing, so this route requires w >= 0.
    double log_weighted_integral(double lambda, double t,
                                 const std::function<double(double)>& weight) const;

    /// Bypasses the memo; used to attest memoization transparency.
    double growth_factor_uncached(double lambda, double t) const;

    /// Exponent m with t = scale * q^m (within 1e-9 relative), or -1 for t = 0.
    int snap_exponent(double t) const;
    double lattice_time(int m) const;

    const CoefficientProfile& profile() const { return profile_; }
    const QParams& params() const { return params_; }
    double scale() const { return scale_; }

  private:
    double growth_at(int m, double lambda) const;
    double compute_growth(int m, double lambda) const;
    double log_growth_at(int m, double lambda) const;
    long double growth_extended(int m, double lambda) const;

    CoefficientProfile profile_;
    QParams params_;
    double scale_;
    mutable std::mutex mutex_;
    mutable std::vector<double> times_;  // scale * q^m cache
    mutable std::unordered_map<long long, std::unordered_map<double, double>> memo_;
};

}  // namespace qheat
