#include "qheat/growth.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace qheat {

CoefficientProfile CoefficientProfile::validated(std::function<double(double)> upsilon,
                                                 double alpha, double beta, const QLattice& lat) {
    if (!upsilon) throw std::invalid_argument("CoefficientProfile: upsilon must be callable");
    if (!(alpha > 0.0) || !(alpha <= beta) || !std::isfinite(beta))
        throw std::invalid_argument("CoefficientProfile: need 0 < alpha <= beta < inf");
    const double slack = 1e-12 * (1.0 + std::abs(beta));
    for (double t : lat.points()) {
        double v = upsilon(t);
        if (!std::isfinite(v))
            throw std::invalid_argument("CoefficientProfile: upsilon non-finite at t = " +
                                        std::to_string(t));
        if (v < alpha - slack || v > beta + slack)
            throw std::invalid_argument("CoefficientProfile: upsilon(t) = " + std::to_string(v) +
                                        " violates declared bounds [" + std::to_string(alpha) +
                                        ", " + std::to_string(beta) + "] at t = " +
                                        std::to_string(t));
    }
    CoefficientProfile p;
    p.upsilon = std::move(upsilon);
    p.alpha = alpha;
    p.beta = beta;
    return p;
}

GrowthEvaluator::GrowthEvaluator(CoefficientProfile profile, QParams params, double scale)
    : profile_(std::move(profile)), params_(params), scale_(scale) {
    params_.validate();
    if (!(scale > 0.0) || !std::isfinite(scale))
        throw std::invalid_argument("GrowthEvaluator: scale must be positive");
    if (!profile_.upsilon)
        throw std::invalid_argument("GrowthEvaluator: profile must carry a callable upsilon");
    times_.push_back(scale_);
}

int GrowthEvaluator::snap_exponent(double t) const {
    if (t == 0.0) return -1;
    if (!(t > 0.0) || !std::isfinite(t))
        throw std::invalid_argument("GrowthEvaluator: t must be >= 0, got " + std::to_string(t));
    double m_real = std::log(t / scale_) / std::log(params_.q);
    long long m = std::llround(m_real);
    if (m < 0) m = 0;
    double tm = lattice_time(static_cast<int>(m));
    if (std::abs(t - tm) > 1e-9 * tm)
        throw std::invalid_argument("GrowthEvaluator: t = " + std::to_string(t) +
                                    " is not on the lattice {scale q^m}; off-lattice times are "
                                    "rejected, not interpolated");
    return static_cast<int>(m);
}

double GrowthEvaluator::lattice_time(int m) const {
    std::lock_guard<std::mutex> lock(mutex_);
    while (static_cast<int>(times_.size()) <= m) times_.push_back(times_.back() * params_.q);
    return times_[static_cast<size_t>(m)];
}

double GrowthEvaluator::compute_growth(int m, double lambda) const {
    double t = lattice_time(m);
    double prod = 1.0;
    double base = (1.0 - params_.q) * lambda * t;  // (1-q) lambda t q^i as i grows
    for (int i = 0; i <= params_.n_terms; ++i) {
        double c = base * profile_.upsilon(lattice_time(m + i));
        double factor = 1.0 + c;
        if (factor == 1.0) break;
        prod *= factor;
        base *= params_.q;
    }
    return prod;
}

double GrowthEvaluator::growth_at(int m, double lambda) const {
    {
        std::lock_guard<std::mutex> lock(mutex_);
        auto row = memo_.find(m);
        if (row != memo_.end()) {
            auto hit = row->second.find(lambda);
            if (hit != row->second.end()) return hit->second;
        }
    }
    double value = compute_growth(m, lambda);
    std::lock_guard<std::mutex> lock(mutex_);
    memo_[m].emplace(lambda, value);  // idempotent: recomputation yields the same bits
    return value;
}

double GrowthEvaluator::growth_factor(double lambda, double t) const {
    if (!(lambda > 0.0))
        throw std::invalid_argument("GrowthEvaluator: lambda must be > 0");
    int m = snap_exponent(t);
    if (m < 0) return 1.0;
    return growth_at(m, lambda);
}

double GrowthEvaluator::growth_factor_uncached(double lambda, double t) const {
    if (!(lambda > 0.0))
        throw std::invalid_argument("GrowthEvaluator: lambda must be > 0");
    int m = snap_exponent(t);
    if (m < 0) return 1.0;
    return compute_growth(m, lambda);
}

double GrowthEvaluator::decay_factor(double lambda, double t) const {
    return 1.0 / growth_factor(lambda, t);
}

double GrowthEvaluator::log_growth_at(int m, double lambda) const {
    double t = lattice_time(m);
    double acc = 0.0;
    double base = (1.0 - params_.q) * lambda * t;
    for (int i = 0; i <= params_.n_terms; ++i) {
        double c = base * profile_.upsilon(lattice_time(m + i));
        if (c == 0.0) break;
        acc += std::log1p(c);
        base *= params_.q;
    }
    return acc;
}

double GrowthEvaluator::log_growth_factor(double lambda, double t) const {
    if (!(lambda > 0.0))
        throw std::invalid_argument("GrowthEvaluator: lambda must be > 0");
    int m = snap_exponent(t);
    if (m < 0) return 0.0;
    return log_growth_at(m, lambda);
}

long double GrowthEvaluator::growth_extended(int m, double lambda) const {
    long double t = lattice_time(m);
    long double prod = 1.0L;
    long double base = (1.0L - static_cast<long double>(params_.q)) * lambda * t;
    for (int i = 0; i <= params_.n_terms; ++i) {
        long double c = base * profile_.upsilon(lattice_time(m + i));
        if (1.0L + c == 1.0L) break;
        prod *= 1.0L + c;
        base *= params_.q;
    }
    return prod;
}

double GrowthEvaluator::identity_residual(double lambda, double t) const {
    int m = snap_exponent(t);
    if (m < 0)
        throw std::invalid_argument("GrowthEvaluator: identity residual needs t > 0");
    // extended precision: the quotient below loses ~eps/((1-q)t) when formed
    // from double products, which would mask the truncation-level residual at
    // depth; see kIdentityFloor for the domain where this stays meaningful
    long double g_t = growth_extended(m, lambda);
    long double g_qt = growth_extended(m + 1, lambda);
    long double dq = (g_t - g_qt) / (static_cast<long double>(t) * (1.0L - params_.q));
    long double res = dq - static_cast<long double>(lambda) * profile_.upsilon(t) * g_qt;
    return static_cast<double>(res < 0.0L ? -res : res);
}

double GrowthEvaluator::ratio_identity_residual(double lambda, double t) const {
    int m = snap_exponent(t);
    if (m < 0)
        throw std::invalid_argument("GrowthEvaluator: identity residual needs t > 0");
    double g_t = growth_at(m, lambda);
    double g_qt = growth_at(m + 1, lambda);
    double c0 = (1.0 - params_.q) * t * lambda * profile_.upsilon(t);
    return std::abs(g_t / g_qt - 1.0 - c0) / (1.0 + c0);
}

double GrowthEvaluator::weighted_integral(double lambda, double t,
                                          const std::function<double(double)>& weight) const {
    if (!weight) throw std::invalid_argument("GrowthEvaluator: weight must be callable");
    snap_exponent(t);  // domain check; jackson_integral re-samples t q^m below
    return jackson_integral(
        [&](double s) { return growth_factor(lambda, params_.q * s) * weight(s); }, t, params_);
}

double GrowthEvaluator::log_weighted_integral(double lambda, double t,
                                              const std::function<double(double)>& weight) const {
    if (!weight) throw std::invalid_argument("GrowthEvaluator: weight must be callable");
    int m0 = snap_exponent(t);
    if (m0 < 0) return -std::numeric_limits<double>::infinity();
    // log of (1-q) t sum_m q^m growth(lambda, t q^(m+1)) w(t q^m), by log-sum-exp
    double max_log = -std::numeric_limits<double>::infinity();
    std::vector<double> logs;
    logs.reserve(static_cast<size_t>(params_.n_terms) + 1);
    double log_q = std::log(params_.q);
    for (int m = 0; m <= params_.n_terms; ++m) {
        double w = weight(lattice_time(m0 + m));
        if (!std::isfinite(w) || w < 0.0)
            throw std::domain_error("log_weighted_integral: weight must be finite and >= 0");
        if (w == 0.0) continue;
        double lw = m * log_q + log_growth_at(m0 + m + 1, lambda) + std::log(w);
        logs.push_back(lw);
        if (lw > max_log) max_log = lw;
    }
    if (logs.empty()) return -std::numeric_limits<double>::infinity();
    double acc = 0.0;
    for (double lw : logs) acc += std::exp(lw - max_log);
    return std::log((1.0 - params_.q) * t) + max_log + std::log(acc);
}

}  // namespace qheat
