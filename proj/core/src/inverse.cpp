#include "qheat/inverse.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace qheat {

SourceProfile SourceProfile::validated(std::function<double(double)> g, double alpha0,
                                       double beta0, const QLattice& lat, const QParams& params) {
    if (!g) throw std::invalid_argument("SourceProfile: g must be callable");
    if (!(alpha0 > 0.0) || !(alpha0 <= beta0) || !std::isfinite(beta0))
        throw std::invalid_argument("SourceProfile: need 0 < alpha0 <= beta0 < inf");
    for (int m = 0; m < lat.size(); ++m) {
        double v = g(lat.point(m));
        if (!std::isfinite(v) || v < 0.0)
            throw std::invalid_argument("SourceProfile: g must be finite and >= 0, got " +
                                        std::to_string(v) + " at t = " +
                                        std::to_string(lat.point(m)));
        const bool interior = m >= 1 && m <= lat.depth();
        if (interior && !(v > 0.0))
            throw std::invalid_argument("SourceProfile: g must be > 0 on the open interval; "
                                        "vanishes at interior t = " + std::to_string(lat.point(m)));
    }
    double total = jackson_integral(g, lat.scale(), params);
    const double slack = 1e-12 * (1.0 + std::abs(total));
    if (total < alpha0 - slack || total > beta0 + slack)
        throw std::invalid_argument("SourceProfile: int g d_q s = " + std::to_string(total) +
                                    " outside declared [alpha0, beta0] = [" +
                                    std::to_string(alpha0) + ", " + std::to_string(beta0) + "]");
    SourceProfile s;
    s.g = std::move(g);
    s.alpha0 = alpha0;
    s.beta0 = beta0;
    return s;
}

void InverseProblem::validate() const {
    qparams.validate();
    if (!(horizon > 0.0) || !std::isfinite(horizon))
        throw std::invalid_argument("InverseProblem: horizon must be > 0");
    if (lattice_depth < 1)
        throw std::invalid_argument("InverseProblem: lattice_depth must be >= 1");
    if (static_cast<int>(phi.size()) != spectrum.modes() ||
        static_cast<int>(eta.size()) != spectrum.modes())
        throw std::invalid_argument("InverseProblem: phi/eta length must match mode count");
    if (!std::isfinite(sobolev_norm(phi, sobolev_order + 2.0, spectrum)))
        throw std::invalid_argument("InverseProblem: ||phi||_{H^{d+2}} is not finite");
    if (!std::isfinite(sobolev_norm(eta, sobolev_order + 2.0, spectrum)))
        throw std::invalid_argument("InverseProblem: ||eta||_{H^{d+2}} is not finite");
    if (!source_shape.g) throw std::invalid_argument("InverseProblem: source shape g missing");
}

CoeffVec recover_source(const InverseProblem& p) {
    p.validate();
    GrowthEvaluator ev(p.profile, p.qparams, p.horizon);
    const double T = p.horizon;
    CoeffVec f(p.phi.size());
    for (int k = 0; k < p.spectrum.modes(); ++k) {
        const double lam = p.spectrum.eigenvalues[static_cast<size_t>(k)];
        const double eta_k = p.eta[static_cast<size_t>(k)];
        const double phi_k = p.phi[static_cast<size_t>(k)];
        const double gf = ev.growth_factor(lam, T);
        if (gf > 1e100) {
            // growth overflows long before the denominator does not; form the
            // ratio growth/denominator in log space
            double log_den = ev.log_weighted_integral(lam, T, p.source_shape.g);
            double log_ratio = ev.log_growth_factor(lam, T) - log_den;
            double phi_term = log_den > 700.0 ? 0.0 : phi_k / std::exp(log_den);
            f[static_cast<size_t>(k)] = std::exp(log_ratio) * eta_k - phi_term;
            continue;
        }
        const double den = ev.weighted_integral(lam, T, p.source_shape.g);
        if (!(den > p.qparams.tol))
            throw std::domain_error("recover_source: degenerate denominator " +
                                    std::to_string(den) + " at mode " + std::to_string(k + 1));
        f[static_cast<size_t>(k)] = (gf * eta_k - phi_k) / den;
    }
    return f;
}

CoeffTrajectory reconstruct_state(const InverseProblem& p, const CoeffVec& f) {
    p.validate();
    if (f.size() != p.phi.size())
        throw std::invalid_argument("reconstruct_state: f length must match mode count");
    const QLattice lat = p.lattice();
    GrowthEvaluator ev(p.profile, p.qparams, p.horizon);
    CoeffTrajectory tr(lat, p.spectrum.modes());
    for (int k = 0; k < p.spectrum.modes(); ++k) {
        const double lam = p.spectrum.eigenvalues[static_cast<size_t>(k)];
        for (int j = 0; j < lat.size() - 1; ++j) {
            const double t = lat.point(j);
            double acc = p.phi[static_cast<size_t>(k)] +
                         f[static_cast<size_t>(k)] *
                             ev.weighted_integral(lam, t, p.source_shape.g);
            tr.states[static_cast<size_t>(j)][static_cast<size_t>(k)] =
                ev.decay_factor(lam, t) * acc;
        }
        tr.states.back()[static_cast<size_t>(k)] = p.phi[static_cast<size_t>(k)];
    }
    return tr;
}

InverseSolution solve_inverse(const InverseProblem& p) {
    CoeffVec f = recover_source(p);
    CoeffTrajectory tr = reconstruct_state(p, f);
    InverseSolution sol{std::move(f), std::move(tr), {}};
    double rt = 0.0;
    for (int k = 0; k < p.spectrum.modes(); ++k) {
        double got = sol.trajectory.at_horizon()[static_cast<size_t>(k)];
        double want = p.eta[static_cast<size_t>(k)];
        rt = std::max(rt, std::abs(got - want) / (1.0 + std::abs(want)));
    }
    sol.diagnostics.roundtrip_error = rt;
    sol.diagnostics.truncation_tail = truncation_tail(p.qparams);
    sol.diagnostics.stability = stability_check(sol, p);
    return sol;
}

StabilityReport stability_check(const InverseSolution& sol, const InverseProblem& p) {
    const Spectrum& s = p.spectrum;
    const double d = p.sobolev_order;
    StabilityReport rep;

    rep.source_bound_factor = q_exp_big(p.profile.beta * p.horizon, p.qparams) /
                              p.source_shape.alpha0;
    rep.per_mode_holds = true;
    bool first = true;
    for (int k = 0; k < s.modes(); ++k) {
        double bound = rep.source_bound_factor * (std::abs(p.eta[static_cast<size_t>(k)]) +
                                                  std::abs(p.phi[static_cast<size_t>(k)]));
        double margin = bound - std::abs(sol.f[static_cast<size_t>(k)]);
        if (first || margin < rep.worst_source_margin) {
            rep.worst_source_margin = margin;
            rep.worst_mode = k + 1;
            first = false;
        }
        if (margin < -p.qparams.tol * (1.0 + bound)) rep.per_mode_holds = false;
    }

    TrajectoryNorms state = trajectory_norms(sol.trajectory, d + 2.0, s);
    TrajectoryNorms rate = trajectory_norms(sol.trajectory, d, s);
    rep.lhs = state.sup_state + rate.sup_rate * rate.sup_rate;
    const double nphi = sobolev_norm(p.phi, d + 2.0, s);
    const double neta = sobolev_norm(p.eta, d + 2.0, s);
    rep.rhs = nphi * nphi + neta * neta;

    double g_sup = 0.0;
    for (double t : sol.trajectory.lattice.points())
        g_sup = std::max(g_sup, std::abs(p.source_shape.g(t)));
    const double c_state = 1.0 + p.source_shape.beta0 * rep.source_bound_factor;
    const double c_rate = p.profile.beta * c_state + (g_sup / s.lambda0) * rep.source_bound_factor;
    rep.state_bound = std::sqrt(2.0) * c_state * std::sqrt(rep.rhs);
    rep.rate_bound = 2.0 * c_rate * c_rate * rep.rhs;

    const double bound = rep.state_bound + rep.rate_bound;
    rep.estimate_holds = rep.rhs == 0.0 ? rep.lhs <= p.qparams.tol
                                        : rep.lhs <= bound + p.qparams.tol * (1.0 + rep.lhs);
    rep.constant = rep.rhs > 0.0 ? bound / rep.rhs : 0.0;
    rep.holds = rep.per_mode_holds && rep.estimate_holds;
    return rep;
}

}  // namespace qheat
