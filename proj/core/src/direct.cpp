#include "qheat/direct.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace qheat {

void DirectProblem::validate() const {
    qparams.validate();
    if (!(horizon > 0.0) || !std::isfinite(horizon))
        throw std::invalid_argument("DirectProblem: horizon must be > 0");
    if (lattice_depth < 1) throw std::invalid_argument("DirectProblem: lattice_depth must be >= 1");
    if (static_cast<int>(phi.size()) != spectrum.modes())
        throw std::invalid_argument("DirectProblem: phi has " + std::to_string(phi.size()) +
                                    " entries for " + std::to_string(spectrum.modes()) + " modes");
    if (!std::isfinite(sobolev_norm(phi, sobolev_order + 2.0, spectrum)))
        throw std::invalid_argument("DirectProblem: ||phi||_{H^{d+2}} is not finite");
    if (source) {
        QLattice lat = lattice();
        CoeffVec f(phi.size());
        for (double t : lat.points()) {
            for (int k = 0; k < spectrum.modes(); ++k) f[static_cast<size_t>(k)] = source(k, t);
            if (!std::isfinite(sobolev_norm(f, sobolev_order + 2.0, spectrum)))
                throw std::invalid_argument("DirectProblem: ||f(t)||_{H^{d+2}} not finite at t = " +
                                            std::to_string(t));
        }
    }
}

DirectSolution solve_direct(const DirectProblem& p) {
    p.validate();
    const QLattice lat = p.lattice();
    const int K = p.spectrum.modes();
    GrowthEvaluator ev(p.profile, p.qparams, p.horizon);

    CoeffTrajectory tr(lat, K);
    for (int k = 0; k < K; ++k) {
        const double lam = p.spectrum.eigenvalues[static_cast<size_t>(k)];
        const double phik = p.phi[static_cast<size_t>(k)];
        for (int j = 0; j < lat.size() - 1; ++j) {  // all positive lattice points
            const double t = lat.point(j);
            double value = phik;
            if (p.source)
                value += ev.weighted_integral(lam, t, [&](double s) { return p.source(k, s); });
            tr.states[static_cast<size_t>(j)][static_cast<size_t>(k)] =
                ev.decay_factor(lam, t) * value;
        }
        tr.states.back()[static_cast<size_t>(k)] = phik;  // u(0) = phi, assigned not computed
    }

    DirectSolution sol{std::move(tr), {}};
    sol.diagnostics.ode_residual = ode_residual_report(sol.trajectory, p);
    sol.diagnostics.apriori = apriori_check(sol, p);
    sol.diagnostics.truncation_tail = truncation_tail(p.qparams);
    sol.diagnostics.mode_tail =
        mode_tail_proxies(p.phi, p.sobolev_order + 2.0, p.spectrum).back();
    return sol;
}

CoeffTrajectory lattice_stepper_oracle(const DirectProblem& p) {
    p.validate();
    const QLattice lat = p.lattice();
    const int K = p.spectrum.modes();
    const double q = p.qparams.q;
    CoeffTrajectory tr(lat, K);

    tr.states.back() = p.phi;                    // t = 0
    tr.states[static_cast<size_t>(lat.depth())] = p.phi;  // seed at t_M = T q^M
    for (int j = lat.depth() - 1; j >= 0; --j) {
        const double t = lat.point(j);
        const CoeffVec& below = tr.states[static_cast<size_t>(j) + 1];
        CoeffVec& here = tr.states[static_cast<size_t>(j)];
        for (int k = 0; k < K; ++k) {
            const double lam = p.spectrum.eigenvalues[static_cast<size_t>(k)];
            double num = below[static_cast<size_t>(k)] + (1.0 - q) * t * p.source_at(k, t);
            double den = 1.0 + (1.0 - q) * t * lam * p.profile.upsilon(t);
            here[static_cast<size_t>(k)] = num / den;
        }
    }
    return tr;
}

OdeResidualReport ode_residual_report(const CoeffTrajectory& tr, const DirectProblem& p) {
    if (tr.lattice.size() < 2)
        throw std::invalid_argument("ode_residual: trajectory needs >= 2 lattice points");
    if (tr.modes() != p.spectrum.modes())
        throw std::invalid_argument("ode_residual: mode count must match spectrum");
    const double q = tr.lattice.q();
    const double T = tr.lattice.scale();
    OdeResidualReport rep;
    for (int j = 0; tr.lattice.is_interior(j); ++j) {
        const double t = tr.lattice.point(j);
        const bool resolvable = (1.0 - q) * t >= rep.floor * T;
        const CoeffVec& here = tr.states[static_cast<size_t>(j)];
        const CoeffVec& below = tr.states[static_cast<size_t>(j) + 1];
        const double ups = p.profile.upsilon(t);
        for (int k = 0; k < tr.modes(); ++k) {
            const double lam = p.spectrum.eigenvalues[static_cast<size_t>(k)];
            const double fv = p.source_at(k, t);
            const double dq = (here[static_cast<size_t>(k)] - below[static_cast<size_t>(k)]) /
                              (t * (1.0 - q));
            const double r =
                std::abs(dq + lam * ups * here[static_cast<size_t>(k)] - fv) / (1.0 + std::abs(fv));
            rep.all = std::max(rep.all, r);
            if (resolvable) rep.resolved = std::max(rep.resolved, r);
        }
    }
    return rep;
}

double ode_residual(const DirectSolution& sol, const DirectProblem& p) {
    return ode_residual_report(sol.trajectory, p).resolved;
}

AprioriReport apriori_check(const DirectSolution& sol, const DirectProblem& p) {
    const Spectrum& s = p.spectrum;
    const double d = p.sobolev_order;
    const QLattice& lat = sol.trajectory.lattice;
    AprioriReport rep;

    TrajectoryNorms state = trajectory_norms(sol.trajectory, d + 2.0, s);
    TrajectoryNorms rate = trajectory_norms(sol.trajectory, d, s);
    rep.lhs = state.sup_state + rate.sup_rate * rate.sup_rate;

    const double phi_sq = std::pow(sobolev_norm(p.phi, d + 2.0, s), 2);
    double sup_f_sq = 0.0;                       // sup_t ||f(t)||^2_{H^{d+2}}
    std::vector<double> per_mode_sup(p.phi.size(), 0.0);  // sup_t lambda^{(d+2)/2} |f_k(t)|
    if (p.source) {
        CoeffVec f(p.phi.size());
        for (double t : lat.points()) {
            for (int k = 0; k < s.modes(); ++k) f[static_cast<size_t>(k)] = p.source(k, t);
            double nf = sobolev_norm(f, d + 2.0, s);
            sup_f_sq = std::max(sup_f_sq, nf * nf);
            for (size_t k = 0; k < f.size(); ++k)
                per_mode_sup[k] = std::max(per_mode_sup[k],
                                           std::pow(s.eigenvalues[k], (d + 2.0) / 2.0) *
                                               std::abs(f[k]));
        }
    }
    rep.rhs = phi_sq + sup_f_sq;
    double aligned_f = 0.0;
    for (double v : per_mode_sup) aligned_f += v * v;
    rep.rhs_aligned = phi_sq + aligned_f;

    const double mt = std::max(1.0, p.horizon);
    rep.state_bound = std::sqrt(2.0) * mt * std::sqrt(rep.rhs_aligned);
    const double c_rate = p.profile.beta * mt + 1.0 / s.lambda0;
    rep.rate_bound = 2.0 * c_rate * c_rate * rep.rhs_aligned;

    const double bound = rep.state_bound + rep.rate_bound;
    rep.holds = rep.lhs <= bound + p.qparams.tol * (1.0 + rep.lhs);
    rep.constant = rep.rhs > 0.0 ? bound / rep.rhs : 0.0;
    if (rep.rhs == 0.0) rep.holds = rep.lhs <= p.qparams.tol;
    return rep;
}

}  // namespace qheat
