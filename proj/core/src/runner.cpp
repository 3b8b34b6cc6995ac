#include "qheat/runner.hpp"

#include <cmath>
#include <filesystem>
#include <functional>
#include <numbers>
#include <random>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "qheat/direct.hpp"
#include "qheat/inverse.hpp"
#include "qheat/io.hpp"
#include "qheat/operators.hpp"

namespace qheat {

using ordered_json = nlohmann::ordered_json;

namespace {

// -------------------------------------------------------------------------
// config -> problem assembly

struct OperatorContext {
    Spectrum spectrum;
    bool spatial = false;  // involution carries a grid
    InvolutionOperator involution;
};

OperatorContext make_operator(const RunConfig& c) {
    OperatorContext ctx;
    switch (c.op.kind) {
        case RunConfig::OperatorSpec::Kind::involution:
            ctx.involution = InvolutionOperator::make(c.op.epsilon, c.modes, c.op.grid_points);
            ctx.spectrum = involution_spectrum(c.op.epsilon, c.modes);
            ctx.spatial = true;
            break;
        case RunConfig::OperatorSpec::Kind::landau:
            ctx.spectrum = landau_spectrum(c.op.field, c.modes);
            break;
        case RunConfig::OperatorSpec::Kind::custom:
            ctx.spectrum = custom_spectrum(c.op.eigenvalues, c.op.lambda0);
            if (ctx.spectrum.modes() != c.modes)
                throw std::invalid_argument("config: custom operator supplies " +
                                            std::to_string(ctx.spectrum.modes()) +
                                            " eigenvalues for modes = " + std::to_string(c.modes));
            break;
    }
    return ctx;
}

QParams make_params(const RunConfig& c) {
    QParams p;
    p.q = c.q;
    p.n_terms = c.effective_n_terms();
    p.tol = c.tol;
    p.validate();
    return p;
}

CoeffVec resolve_data(const RunConfig::DataSpec& d, const OperatorContext& ctx, int modes,
                      const std::string& name) {
    if (!d.provided) throw std::invalid_argument("config: missing field '" + name + "'");
    if (!d.spatial_csv.empty()) {
        if (!ctx.spatial)
            throw std::invalid_argument("config: " + name +
                                        ".spatial_csv requires the involution operator");
        SpatialFn f = read_spatial_csv(d.spatial_csv);
        return forward_transform(f, ctx.involution);
    }
    if (static_cast<int>(d.coeffs.size()) != modes)
        throw std::invalid_argument("config: " + name + " has " +
                                    std::to_string(d.coeffs.size()) + " coefficients for modes = " +
                                    std::to_string(modes));
    return d.coeffs;
}

CoeffVec source_amplitudes(const RunConfig& c, const OperatorContext& ctx) {
    const auto& s = c.source;
    switch (s.amp) {
        case RunConfig::SourceSpec::Amplitudes::list:
            if (!s.spatial_csv.empty()) break;
            if (static_cast<int>(s.amplitudes.size()) != c.modes)
                throw std::invalid_argument("config: source.amplitudes has " +
                                            std::to_string(s.amplitudes.size()) +
                                            " entries for modes = " + std::to_string(c.modes));
            return s.amplitudes;
        case RunConfig::SourceSpec::Amplitudes::exponential: {
            CoeffVec a(static_cast<size_t>(c.modes));
            for (int k = 0; k < c.modes; ++k) a[static_cast<size_t>(k)] = std::exp(-double(k));
            return a;
        }
        case RunConfig::SourceSpec::Amplitudes::geometric: {
            CoeffVec a(static_cast<size_t>(c.modes));
            double v = 1.0;
            for (int k = 0; k < c.modes; ++k, v *= s.ratio) a[static_cast<size_t>(k)] = v;
            return a;
        }
    }
    // spatial amplitudes by projection
    if (!ctx.spatial)
        throw std::invalid_argument("config: source.spatial_csv requires the involution operator");
    return forward_transform(read_spatial_csv(c.source.spatial_csv), ctx.involution);
}

ModeSource make_mode_source(const RunConfig& c, const OperatorContext& ctx) {
    if (!c.source.provided) return {};
    CoeffVec amps = source_amplitudes(c, ctx);
    RunConfig::SourceSpec shape = c.source;
    return [amps, shape](int k, double t) {
        return amps[static_cast<size_t>(k)] * shape.shape(t);
    };
}

DirectProblem make_direct_problem(const RunConfig& c) {
    OperatorContext ctx = make_operator(c);
    DirectProblem p;
    p.spectrum = ctx.spectrum;
    p.qparams = make_params(c);
    p.horizon = c.horizon;
    p.lattice_depth = c.effective_depth();
    p.sobolev_order = c.sobolev_order;
    p.profile = CoefficientProfile::validated([u = c.upsilon](double t) { return u(t); },
                                              c.upsilon.lower, c.upsilon.upper, p.lattice());
    p.phi = resolve_data(c.phi, ctx, c.modes, "phi");
    p.source = make_mode_source(c, ctx);
    p.validate();
    return p;
}

InverseProblem make_inverse_problem(const RunConfig& c) {
    OperatorContext ctx = make_operator(c);
    InverseProblem p;
    p.spectrum = ctx.spectrum;
    p.qparams = make_params(c);
    p.horizon = c.horizon;
    p.lattice_depth = c.effective_depth();
    p.sobolev_order = c.sobolev_order;
    p.profile = CoefficientProfile::validated([u = c.upsilon](double t) { return u(t); },
                                              c.upsilon.lower, c.upsilon.upper, p.lattice());
    p.phi = resolve_data(c.phi, ctx, c.modes, "phi");
    p.eta = resolve_data(c.eta, ctx, c.modes, "eta");
    p.source_shape = SourceProfile::validated([g = c.g](double t) { return g(t); }, c.g.lower,
                                              c.g.upper, p.lattice(), p.qparams);
    p.validate();
    return p;
}

void write_artifact(const std::string& out_dir, const std::string& name,
                    const std::string& content) {
    std::filesystem::create_directories(out_dir);
    write_text_file((std::filesystem::path(out_dir) / name).string(), content);
}

ordered_json residual_json(const OdeResidualReport& r, double bound) {
    return ordered_json{{"resolved", r.resolved}, {"all_points", r.all},
                        {"noise_floor", r.floor}, {"bound", bound},
                        {"pass", r.resolved <= bound}};
}

ordered_json apriori_json(const AprioriReport& a) {
    return ordered_json{{"lhs", a.lhs},
                        {"rhs", a.rhs},
                        {"rhs_aligned", a.rhs_aligned},
                        {"constant", a.constant},
                        {"state_bound", a.state_bound},
                        {"rate_bound", a.rate_bound},
                        {"pass", a.holds}};
}

constexpr double kOdeResidualBound = 1e-10;
constexpr double kRoundtripBound = 1e-8;

// -------------------------------------------------------------------------

RunOutcome run_direct_impl(const RunConfig& c, const std::string& out_dir) {
    DirectProblem p = make_direct_problem(c);
    DirectSolution sol = solve_direct(p);

    ordered_json diag;
    diag["command"] = "direct";
    diag["q"] = c.q;
    diag["T"] = c.horizon;
    diag["modes"] = c.modes;
    diag["d"] = c.sobolev_order;
    diag["n_terms"] = p.qparams.n_terms;
    diag["lattice_depth"] = p.lattice_depth;
    diag["checks"] = ordered_json{
        {"ode_residual", residual_json(sol.diagnostics.ode_residual, kOdeResidualBound)},
        {"apriori_estimate", apriori_json(sol.diagnostics.apriori)}};
    diag["truncation"] = ordered_json{{"geometric_tail", sol.diagnostics.truncation_tail},
                                      {"mode_tail", sol.diagnostics.mode_tail}};
    bool ok = sol.diagnostics.ode_residual.resolved <= kOdeResidualBound &&
              sol.diagnostics.apriori.holds;
    diag["all_pass"] = ok;

    write_artifact(out_dir, "trajectory.csv", trajectory_csv(sol.trajectory));
    write_artifact(out_dir, "diagnostics.json", diag.dump(2) + "\n");
    if (!ok) {
        std::string which = sol.diagnostics.ode_residual.resolved > kOdeResidualBound
                                ? "ode_residual"
                                : "apriori_estimate";
        return {kExitCheckFailed, which};
    }
    return {kExitOk, ""};
}

RunOutcome run_inverse_impl(const RunConfig& c, const std::string& out_dir) {
    OperatorContext op_ctx = make_operator(c);
    InverseProblem p = make_inverse_problem(c);
    InverseSolution sol = solve_inverse(p);

    // the reconstructed state must satisfy the lattice equation with source g f
    DirectProblem dp;
    dp.spectrum = p.spectrum;
    dp.profile = p.profile;
    dp.phi = p.phi;
    dp.horizon = p.horizon;
    dp.qparams = p.qparams;
    dp.lattice_depth = p.lattice_depth;
    dp.sobolev_order = p.sobolev_order;
    CoeffVec f = sol.f;
    auto g = p.source_shape.g;
    dp.source = [f, g](int k, double t) { return f[static_cast<size_t>(k)] * g(t); };
    OdeResidualReport ode = ode_residual_report(sol.trajectory, dp);

    const StabilityReport& st = sol.diagnostics.stability;
    ordered_json margins = ordered_json::array();
    for (int k = 0; k < p.spectrum.modes(); ++k) {
        double bound = st.source_bound_factor * (std::abs(p.eta[static_cast<size_t>(k)]) +
                                                 std::abs(p.phi[static_cast<size_t>(k)]));
        margins.push_back(bound - std::abs(sol.f[static_cast<size_t>(k)]));
    }

    ordered_json diag;
    diag["command"] = "inverse";
    diag["q"] = c.q;
    diag["T"] = c.horizon;
    diag["modes"] = c.modes;
    diag["d"] = c.sobolev_order;
    diag["n_terms"] = p.qparams.n_terms;
    diag["lattice_depth"] = p.lattice_depth;
    diag["checks"] = ordered_json{
        {"roundtrip",
         ordered_json{{"error", sol.diagnostics.roundtrip_error},
                      {"bound", kRoundtripBound},
                      {"pass", sol.diagnostics.roundtrip_error <= kRoundtripBound}}},
        {"ode_residual", residual_json(ode, kOdeResidualBound)},
        {"source_bound", ordered_json{{"factor", st.source_bound_factor},
                                      {"worst_margin", st.worst_source_margin},
                                      {"worst_mode", st.worst_mode},
                                      {"margins", margins},
                                      {"pass", st.per_mode_holds}}},
        {"stability", ordered_json{{"lhs", st.lhs},
                                   {"rhs", st.rhs},
                                   {"constant", st.constant},
                                   {"state_bound", st.state_bound},
                                   {"rate_bound", st.rate_bound},
                                   {"pass", st.estimate_holds}}}};
    diag["truncation"] = ordered_json{{"geometric_tail", sol.diagnostics.truncation_tail}};

    bool rt_ok = sol.diagnostics.roundtrip_error <= kRoundtripBound;
    bool ode_ok = ode.resolved <= kOdeResidualBound;
    bool ok = rt_ok && ode_ok && st.holds;
    diag["all_pass"] = ok;

    write_artifact(out_dir, "source.csv", source_csv(sol.f));
    if (op_ctx.spatial)  // (x, value) rendering of the recovered source
        write_artifact(out_dir, "source_spatial.csv",
                       spatial_csv(inverse_transform(sol.f, op_ctx.involution)));
    write_artifact(out_dir, "trajectory.csv", trajectory_csv(sol.trajectory));
    write_artifact(out_dir, "diagnostics.json", diag.dump(2) + "\n");
    if (!ok) {
        std::string which = !rt_ok            ? "roundtrip"
                            : !ode_ok         ? "ode_residual"
                            : !st.per_mode_holds ? "source_bound"
                                                 : "stability";
        return {kExitCheckFailed, which};
    }
    return {kExitOk, ""};
}

RunOutcome run_sweep_impl(const RunConfig& c, const std::string& out_dir) {
    for (size_t i = 1; i < c.sweep.q_values.size(); ++i)
        if (!(c.sweep.q_values[i] > c.sweep.q_values[i - 1]))
            throw std::invalid_argument("config: sweep.q_values must be strictly increasing");

    const double lam = c.sweep.lambda;
    const double phi = c.sweep.phi;
    std::vector<SweepRow> rows;
    for (double qv : c.sweep.q_values) {
        QParams params = QParams::make(qv, c.tol);
        if (c.n_terms > 0) params.n_terms = c.n_terms;
        const int depth = c.lattice_depth > 0 ? c.lattice_depth : 64;

        DirectProblem p;
        p.spectrum = custom_spectrum({lam}, lam / 2.0);
        p.qparams = params;
        p.horizon = c.horizon;
        p.lattice_depth = depth;
        p.phi = {phi};
        p.profile = CoefficientProfile::validated([](double) { return 1.0; }, 1.0 - 1e-9,
                                                  1.0 + 1e-9, p.lattice());
        DirectSolution sol = solve_direct(p);

        SweepRow row;
        row.q = qv;
        row.n_terms = params.n_terms;
        row.u_horizon = sol.trajectory.at_horizon()[0];
        row.classical = phi * std::exp(-lam * c.horizon);
        row.abs_error = std::abs(row.u_horizon - row.classical);
        rows.push_back(row);
    }
    write_artifact(out_dir, "sweep.csv", sweep_csv(rows));

    for (size_t i = 1; i < rows.size(); ++i)
        if (!(rows[i].abs_error < rows[i - 1].abs_error))
            return {kExitCheckFailed, "classical_limit"};
    return {kExitOk, ""};
}

// -------------------------------------------------------------------------
// verify suite

struct CheckResult {
    std::string name;
    bool pass = false;
    bool skipped = false;
    double worst = 0.0;
    double bound = 0.0;
    std::string detail;
};

// polynomials with exact q-calculus rules, the independent route for the
// q-identity checks
struct Poly {
    std::vector<double> c;  // c[i] x^i
    double operator()(double x) const {
        double acc = 0.0;
        for (size_t i = c.size(); i-- > 0;) acc = acc * x + c[i];
        return acc;
    }
    Poly q_derivative_rule(double q) const {  // D_q x^n = [n]_q x^(n-1)
        Poly d;
        for (size_t i = 1; i < c.size(); ++i)
            d.c.push_back(c[i] * q_number(static_cast<double>(i), q));
        if (d.c.empty()) d.c.push_back(0.0);
        return d;
    }
};

Poly random_poly(std::mt19937_64& rng, int max_deg) {
    std::uniform_real_distribution<double> coeff(-1.0, 1.0);
    std::uniform_int_distribution<int> deg(1, max_deg);
    Poly p;
    int n = deg(rng);
    for (int i = 0; i <= n; ++i) p.c.push_back(coeff(rng));
    return p;
}

/// Deepest lattice size for which the stored-double difference quotient still
/// resolves 1e-12-level identities: (1-q) q^(M-1) >= kResidualFloor.
int verification_depth(double q) {
    double m = std::floor(std::log(kResidualFloor / (1.0 - q)) / std::log(q)) + 1.0;
    return std::max(2, static_cast<int>(m));
}

/// Deepest point where the extended-precision growth-identity quotient is
/// meaningful: (1-q) q^m >= kIdentityFloor.
int identity_depth(double q) {
    double m = std::floor(std::log(kIdentityFloor / (1.0 - q)) / std::log(q));
    return std::max(1, static_cast<int>(m));
}

struct AffineProfileDraw {
    double a = 1.0, b = 0.0, alpha = 1.0, beta = 1.0;
    double operator()(double t) const { return a + b * t; }
};

AffineProfileDraw draw_profile(std::mt19937_64& rng, double T) {
    std::uniform_real_distribution<double> ua(0.5, 1.5), ub(-0.3, 0.5);
    AffineProfileDraw p;
    p.a = ua(rng);
    p.b = ub(rng);
    if (p.a + p.b * T < 0.2) p.b = (0.2 - p.a) / T;
    p.alpha = std::min(p.a, p.a + p.b * T) * (1.0 - 1e-9);
    p.beta = std::max(p.a, p.a + p.b * T) * (1.0 + 1e-9);
    return p;
}

class VerifySuite {
  public:
    VerifySuite(const RunConfig& c, unsigned long long seed)
        : config_(c), rng_(seed), ctx_(make_operator_lenient(c)), params_(make_params(c)) {}

    std::vector<CheckResult> run_all() {
        std::vector<CheckResult> out;
        out.push_back(guard("product_rule", [&] { return product_rule(); }));
        out.push_back(guard("fundamental_theorem", [&] { return fundamental_theorem(); }));
        out.push_back(guard("integration_by_parts", [&] { return integration_by_parts(); }));
        out.push_back(guard("q_exp_reciprocal", [&] { return q_exp_reciprocal(); }));
        out.push_back(guard("q_exp_forms_agree", [&] { return q_exp_forms(); }));
        out.push_back(guard("growth_sandwich", [&] { return growth_sandwich(); }));
        out.push_back(guard("growth_identity", [&] { return growth_identity(false); }));
        out.push_back(guard("growth_identity_ratio", [&] { return growth_identity(true); }));
        out.push_back(guard("integral_lower_bound", [&] { return integral_bound(false); }));
        out.push_back(guard("integral_upper_bound", [&] { return integral_bound(true); }));
        out.push_back(guard("decay_monotone", [&] { return decay_monotone(); }));
        out.push_back(guard("oracle_equivalence", [&] { return oracle_equivalence(); }));
        out.push_back(guard("ode_residual", [&] { return ode_resid(); }));
        out.push_back(guard("apriori_estimate", [&] { return apriori(); }));
        out.push_back(guard("constant_decay_closed_form", [&] { return constant_decay(); }));
        out.push_back(guard("inverse_roundtrip", [&] { return roundtrip(); }));
        out.push_back(guard("source_bound", [&] { return source_bound(); }));
        out.push_back(guard("inverse_stability", [&] { return inverse_stability(); }));
        out.push_back(guard("plancherel_bridge", [&] { return plancherel_bridge(); }));
        out.push_back(guard("eigenpair_consistency", [&] { return eigenpair_consistency(); }));
        out.push_back(guard("gram_identity", [&] { return gram_identity(); }));
        out.push_back(guard("spectrum_ordering", [&] { return spectrum_ordering(); }));
        out.push_back(guard("classical_limit", [&] { return classical_limit(); }));
        return out;
    }

  private:
    // verify must let declared-bound lies reach the mathematical checks, so the
    // upsilon profile is NOT validated here (direct/inverse runs do validate)
    static OperatorContext make_operator_lenient(const RunConfig& c) { return make_operator(c); }

    CoefficientProfile config_profile() const {
        CoefficientProfile p;
        p.upsilon = [u = config_.upsilon](double t) { return u(t); };
        p.alpha = config_.upsilon.lower;
        p.beta = config_.upsilon.upper;
        return p;
    }

    std::function<double(double)> config_g() const {
        if (config_.g.provided) return [g = config_.g](double t) { return g(t); };
        return [](double) { return 1.0; };
    }
    double config_alpha0() const {
        if (config_.g.provided) return config_.g.lower;
        return 0.9 * config_.horizon;
    }
    double config_beta0() const {
        if (config_.g.provided) return config_.g.upper;
        return 1.1 * config_.horizon;
    }

    template <class Fn>
    CheckResult guard(const std::string& name, Fn&& fn) {
        try {
            CheckResult r = fn();
            r.name = name;
            return r;
        } catch (const std::exception& e) {
            CheckResult r;
            r.name = name;
            r.pass = false;
            r.detail = std::string("exception: ") + e.what();
            return r;
        }
    }

    static CheckResult make_result(double worst, double bound, std::string detail = "") {
        CheckResult r;
        r.worst = worst;
        r.bound = bound;
        r.pass = worst <= bound;
        r.detail = std::move(detail);
        return r;
    }

    static CheckResult skipped_result(std::string why) {
        CheckResult r;
        r.pass = true;
        r.skipped = true;
        r.detail = std::move(why);
        return r;
    }

    CheckResult product_rule() {
        const double q = config_.q;
        QLattice lat(config_.horizon, q, verification_depth(q));
        double worst = 0.0;
        for (int trial = 0; trial < 20; ++trial) {
            Poly f = random_poly(rng_, 5), g = random_poly(rng_, 5);
            LatticeFn lf = LatticeFn::sample(lat, [&](double t) { return f(t); });
            LatticeFn lg = LatticeFn::sample(lat, [&](double t) { return g(t); });
            LatticeFn lfg = LatticeFn::sample(lat, [&](double t) { return f(t) * g(t); });
            for (int j = 0; lat.is_interior(j); ++j) {
                double t = lat.point(j);
                double lhs = q_derivative(lfg, j);
                double rhs = f(q * t) * q_derivative(lg, j) + q_derivative(lf, j) * g(t);
                worst = std::max(worst, std::abs(lhs - rhs) / (1.0 + std::abs(f(t) * g(t))));
            }
        }
        return make_result(worst, 1e-12);
    }

    CheckResult fundamental_theorem() {
        double worst = 0.0;
        for (int trial = 0; trial < 20; ++trial) {
            Poly f = random_poly(rng_, 5);
            Poly df = f.q_derivative_rule(config_.q);
            double x = config_.horizon;
            double integral = jackson_integral([&](double t) { return df(t); }, x, params_);
            worst = std::max(worst,
                             std::abs(integral - (f(x) - f(0.0))) / (1.0 + std::abs(f(x))));
        }
        return make_result(worst, params_.tol);
    }

    CheckResult integration_by_parts() {
        const double q = config_.q;
        double worst = 0.0;
        for (int trial = 0; trial < 20; ++trial) {
            Poly f = random_poly(rng_, 5), g = random_poly(rng_, 5);
            Poly df = f.q_derivative_rule(q), dg = g.q_derivative_rule(q);
            double b = config_.horizon;
            double left = jackson_integral([&](double t) { return f(t) * dg(t); }, b, params_);
            double right = jackson_integral([&](double t) { return g(q * t) * df(t); }, b,
                                            params_);
            double boundary = f(b) * g(b) - f(0.0) * g(0.0);
            worst = std::max(worst,
                             std::abs(left - boundary + right) / (1.0 + std::abs(boundary)));
        }
        return make_result(worst, params_.tol);
    }

    CheckResult q_exp_reciprocal() {
        const double span = 0.9 / (1.0 - config_.q);
        double worst = 0.0;
        for (int i = 0; i < 20; ++i) {
            double x = -span + (2.0 * span) * i / 19.0;
            double v = q_exp_small(x, params_) * q_exp_big(-x, params_);
            worst = std::max(worst, std::abs(v - 1.0));
        }
        return make_result(worst, 1e-10);
    }

    CheckResult q_exp_forms() {
        // series with the q^(k(k-1)/2) weights, summed until inert
        auto series = [&](double x) {
            double sum = 1.0, term = 1.0, qk = 1.0, qpow = 1.0;
            for (int k = 1; k <= 512; ++k) {
                qk *= config_.q;
                term *= x * (1.0 - config_.q) / (1.0 - qk);
                qpow *= (k >= 2) ? std::pow(config_.q, k - 1) : 1.0;  // q^(k(k-1)/2) increment
                double add = term * qpow;
                double next = sum + add;
                if (next == sum) break;
                sum = next;
            }
            return sum;
        };
        double worst = 0.0;
        for (double x : {0.25, 0.5, 1.0, 2.0}) {
            double p = q_exp_big(x, params_);
            double s = series(x);
            worst = std::max(worst, std::abs(p - s) / std::abs(s));
        }
        return make_result(worst, 1e-12);
    }

    CheckResult growth_sandwich() {
        double worst = 0.0;
        std::uniform_real_distribution<double> ulam(0.5, 30.0);
        QLattice lat(config_.horizon, config_.q,
                     std::min(config_.effective_depth(), 2 * verification_depth(config_.q)));
        for (int trial = 0; trial < 50; ++trial) {
            AffineProfileDraw draw = draw_profile(rng_, config_.horizon);
            CoefficientProfile prof;
            prof.upsilon = [draw](double t) { return draw(t); };
            // deliberately the *declared* config bounds when the config lies about
            // them, so a bad declaration surfaces here
            prof.alpha = trial == 0 && config_.upsilon.provided ? config_.upsilon.lower
                                                                : draw.alpha;
            prof.beta = trial == 0 && config_.upsilon.provided ? config_.upsilon.upper : draw.beta;
            if (trial == 0 && config_.upsilon.provided)
                prof.upsilon = [u = config_.upsilon](double t) { return u(t); };
            GrowthEvaluator ev(prof, params_, config_.horizon);
            double lam = ulam(rng_);
            for (int j = 0; j < lat.size() - 1; ++j) {
                double t = lat.point(j);
                double g = ev.growth_factor(lam, t);
                double lo = q_exp_big(prof.alpha * lam * t, params_);
                double hi = q_exp_big(prof.beta * lam * t, params_);
                double viol = std::max((lo - g) / g, (g - hi) / g);
                worst = std::max(worst, viol);
            }
        }
        return make_result(worst, 1e-12);
    }

    CheckResult growth_identity(bool ratio_form) {
        double worst = 0.0;
        std::uniform_real_distribution<double> ulam(0.5, 30.0);
        const int depth = ratio_form ? std::min(config_.effective_depth(), 256)
                                     : identity_depth(config_.q) + 1;
        QLattice lat(config_.horizon, config_.q, depth);
        for (int trial = 0; trial < 50; ++trial) {
            AffineProfileDraw draw = draw_profile(rng_, config_.horizon);
            CoefficientProfile prof;
            prof.upsilon = [draw](double t) { return draw(t); };
            prof.alpha = draw.alpha;
            prof.beta = draw.beta;
            GrowthEvaluator ev(prof, params_, config_.horizon);
            double lam = ulam(rng_);
            for (int j = 0; lat.is_interior(j); ++j) {
                double t = lat.point(j);
                double r = ratio_form
                               ? ev.ratio_identity_residual(lam, t)
                               : ev.identity_residual(lam, t) / ev.growth_factor(lam, t);
                worst = std::max(worst, r);
            }
        }
        return make_result(worst, 1e-12);
    }

    CheckResult integral_bound(bool upper) {
        double worst = 0.0;
        std::uniform_real_distribution<double> ulam(0.5, 30.0);
        for (int trial = 0; trial < 50; ++trial) {
            AffineProfileDraw draw = draw_profile(rng_, config_.horizon);
            CoefficientProfile prof;
            prof.upsilon = [draw](double t) { return draw(t); };
            prof.alpha = draw.alpha;
            prof.beta = draw.beta;
            GrowthEvaluator ev(prof, params_, config_.horizon);
            double lam = ulam(rng_);
            for (int step = 0; step < 3; ++step) {
                double t = config_.horizon * std::pow(config_.q, step);
                // the weighted q-integral of the solution formulas (growth at q s)
                double integral = ev.weighted_integral(lam, t, [](double) { return 1.0; });
                if (upper) {
                    double bound = ev.growth_factor(lam, t) / (lam * prof.alpha);
                    worst = std::max(worst, (integral - bound) / (1.0 + bound));
                } else {
                    // lower bound with the fundamental-theorem constant -1 restored
                    double bound = (ev.growth_factor(lam, t) - 1.0) / (lam * prof.beta);
                    worst = std::max(worst, (bound - integral) / (1.0 + bound));
                }
            }
        }
        return make_result(worst, 1e-12);
    }

    CheckResult decay_monotone() {
        double worst = 0.0;
        std::uniform_real_distribution<double> ulam(0.5, 30.0);
        const int depth = std::min(config_.effective_depth(), 256);
        for (int trial = 0; trial < 50; ++trial) {
            AffineProfileDraw draw = draw_profile(rng_, config_.horizon);
            CoefficientProfile prof;
            prof.upsilon = [draw](double t) { return draw(t); };
            prof.alpha = draw.alpha;
            prof.beta = draw.beta;
            GrowthEvaluator ev(prof, params_, config_.horizon);
            double lam = ulam(rng_);
            double above = ev.growth_factor(lam, config_.horizon);
            for (int m = 1; m <= depth; ++m) {
                double below = ev.growth_factor(lam, ev.lattice_time(m));
                worst = std::max(worst, (below - above) / above);  // must be <= 0
                above = below;
            }
        }
        return make_result(worst, 1e-12);
    }

    DirectProblem random_direct_problem() {
        OperatorContext ctx = make_operator(config_);
        DirectProblem p;
        p.spectrum = ctx.spectrum;
        p.qparams = params_;
        p.horizon = config_.horizon;
        p.lattice_depth = config_.effective_depth();
        p.sobolev_order = config_.sobolev_order;
        AffineProfileDraw draw = draw_profile(rng_, config_.horizon);
        CoefficientProfile prof;
        prof.upsilon = [draw](double t) { return draw(t); };
        prof.alpha = draw.alpha;
        prof.beta = draw.beta;
        p.profile = prof;
        std::uniform_real_distribution<double> uphi(0.5, 1.5);
        std::bernoulli_distribution sign(0.5);
        p.phi.resize(static_cast<size_t>(config_.modes));
        for (double& v : p.phi) v = uphi(rng_) * (sign(rng_) ? 1.0 : -1.0);
        std::uniform_real_distribution<double> usa(0.0, 1.0), usb(-0.5, 1.0);
        double sa = usa(rng_), sb = usb(rng_);
        CoeffVec amps(static_cast<size_t>(config_.modes));
        for (int k = 0; k < config_.modes; ++k) amps[static_cast<size_t>(k)] = std::exp(-double(k));
        p.source = [amps, sa, sb](int k, double t) {
            return amps[static_cast<size_t>(k)] * (sa + sb * t);
        };
        return p;
    }

    CheckResult oracle_equivalence() {
        double worst = 0.0;
        for (int trial = 0; trial < 10; ++trial) {
            DirectProblem p = trial == 0 && config_.phi.provided ? make_direct_problem(config_)
                                                                 : random_direct_problem();
            DirectSolution sol = solve_direct(p);
            CoeffTrajectory oracle = lattice_stepper_oracle(p);
            for (int k = 0; k < p.spectrum.modes(); ++k) {
                double sup = 0.0;
                for (int j = 0; j < sol.trajectory.lattice.size(); ++j)
                    sup = std::max({sup,
                                    std::abs(sol.trajectory.states[static_cast<size_t>(j)]
                                                                  [static_cast<size_t>(k)]),
                                    std::abs(oracle.states[static_cast<size_t>(j)]
                                                          [static_cast<size_t>(k)])});
                if (sup == 0.0) continue;
                for (int j = 0; j < sol.trajectory.lattice.size(); ++j) {
                    double a = sol.trajectory.states[static_cast<size_t>(j)]
                                                    [static_cast<size_t>(k)];
                    double b =
                        oracle.states[static_cast<size_t>(j)][static_cast<size_t>(k)];
                    worst = std::max(worst, std::abs(a - b) / sup);
                }
            }
        }
        return make_result(worst, 1e-10);
    }

    CheckResult ode_resid() {
        double worst = 0.0;
        for (int trial = 0; trial < 10; ++trial) {
            DirectProblem p = trial == 0 && config_.phi.provided ? make_direct_problem(config_)
                                                                 : random_direct_problem();
            DirectSolution sol = solve_direct(p);
            worst = std::max(worst, sol.diagnostics.ode_residual.resolved);
        }
        return make_result(worst, kOdeResidualBound);
    }

    CheckResult apriori() {
        double worst = 0.0;  // lhs / (bound part), must stay <= 1
        for (int trial = 0; trial < 10; ++trial) {
            DirectProblem p = trial == 0 && config_.phi.provided ? make_direct_problem(config_)
                                                                 : random_direct_problem();
            DirectSolution sol = solve_direct(p);
            const AprioriReport& a = sol.diagnostics.apriori;
            double bound = a.state_bound + a.rate_bound;
            worst = std::max(worst, bound > 0.0 ? a.lhs / bound : 0.0);
        }
        return make_result(worst, 1.0);
    }

    CheckResult constant_decay() {
        OperatorContext ctx = make_operator(config_);
        const double a = 1.0;
        DirectProblem p;
        p.spectrum = ctx.spectrum;
        p.qparams = params_;
        p.horizon = config_.horizon;
        p.lattice_depth = std::min(config_.effective_depth(), 256);
        p.profile = CoefficientProfile::validated([a](double) { return a; }, a * (1.0 - 1e-9),
                                                  a * (1.0 + 1e-9), p.lattice());
        p.phi.assign(static_cast<size_t>(config_.modes), 1.0);
        DirectSolution sol = solve_direct(p);
        double worst = 0.0;
        for (int k = 0; k < p.spectrum.modes(); ++k) {
            double lam = p.spectrum.eigenvalues[static_cast<size_t>(k)];
            for (int j = 0; j < sol.trajectory.lattice.size() - 1; ++j) {
                double t = sol.trajectory.lattice.point(j);
                double expect = 1.0 / q_exp_big(a * lam * t, params_);
                double got =
                    sol.trajectory.states[static_cast<size_t>(j)][static_cast<size_t>(k)];
                worst = std::max(worst, std::abs(got - expect) / std::abs(expect));
            }
        }
        return make_result(worst, 1e-10);
    }

    InverseProblem random_inverse_roundtrip(CoeffVec& f_star) {
        OperatorContext ctx = make_operator(config_);
        InverseProblem p;
        p.spectrum = ctx.spectrum;
        p.qparams = params_;
        p.horizon = config_.horizon;
        p.lattice_depth = config_.effective_depth();
        p.sobolev_order = config_.sobolev_order;
        AffineProfileDraw draw = draw_profile(rng_, config_.horizon);
        CoefficientProfile prof;
        prof.upsilon = [draw](double t) { return draw(t); };
        prof.alpha = draw.alpha;
        prof.beta = draw.beta;
        p.profile = prof;

        auto g = config_g();
        double total = jackson_integral(g, p.horizon, params_);
        SourceProfile shape;
        shape.g = g;
        shape.alpha0 = std::min(config_alpha0(), total * 0.999);
        shape.beta0 = std::max(config_beta0(), total * 1.001);

        p.source_shape = shape;
        std::uniform_real_distribution<double> uphi(0.6, 1.5), uf(0.6, 1.5);
        std::bernoulli_distribution sign(0.5);
        p.phi.resize(static_cast<size_t>(config_.modes));
        for (double& v : p.phi) v = uphi(rng_) * (sign(rng_) ? 1.0 : -1.0);
        // keep the drawn source inside the certified regime of the per-mode
        // bound: max |f| <= 0.8 E min |phi|
        double E = q_exp_big(prof.beta * p.horizon, params_) / shape.alpha0;
        double scale = std::min(1.0, 0.8 * E * 0.6 / 1.5);
        f_star.resize(static_cast<size_t>(config_.modes));
        for (double& v : f_star) v = scale * uf(rng_) * (sign(rng_) ? 1.0 : -1.0);

        DirectProblem dp;
        dp.spectrum = p.spectrum;
        dp.profile = p.profile;
        dp.phi = p.phi;
        dp.horizon = p.horizon;
        dp.qparams = p.qparams;
        dp.lattice_depth = p.lattice_depth;
        dp.sobolev_order = p.sobolev_order;
        CoeffVec fs = f_star;
        dp.source = [fs, g](int k, double t) { return fs[static_cast<size_t>(k)] * g(t); };
        DirectSolution direct = solve_direct(dp);
        p.eta = direct.trajectory.at_horizon();
        return p;
    }

    CheckResult roundtrip() {
        double worst = 0.0;
        for (int trial = 0; trial < 10; ++trial) {
            CoeffVec f_star;
            InverseProblem p = random_inverse_roundtrip(f_star);
            InverseSolution sol = solve_inverse(p);
            for (int k = 0; k < p.spectrum.modes(); ++k)
                worst = std::max(worst,
                                 std::abs(sol.f[static_cast<size_t>(k)] -
                                          f_star[static_cast<size_t>(k)]) /
                                     std::abs(f_star[static_cast<size_t>(k)]));
            worst = std::max(worst, sol.diagnostics.roundtrip_error);
        }
        return make_result(worst, kRoundtripBound);
    }

    CheckResult source_bound() {
        double worst = 0.0;  // negative margins violate the bound
        for (int trial = 0; trial < 10; ++trial) {
            CoeffVec f_star;
            InverseProblem p = random_inverse_roundtrip(f_star);
            InverseSolution sol = solve_inverse(p);
            worst = std::max(worst, -sol.diagnostics.stability.worst_source_margin);
        }
        return make_result(worst, 0.0);
    }

    CheckResult inverse_stability() {
        double worst = 0.0;
        for (int trial = 0; trial < 10; ++trial) {
            CoeffVec f_star;
            InverseProblem p = random_inverse_roundtrip(f_star);
            InverseSolution sol = solve_inverse(p);
            const StabilityReport& st = sol.diagnostics.stability;
            double bound = st.state_bound + st.rate_bound;
            worst = std::max(worst, bound > 0.0 ? st.lhs / bound : 0.0);
        }
        return make_result(worst, 1.0);
    }

    CheckResult plancherel_bridge() {
        if (!ctx_.spatial) return skipped_result("requires the involution operator");
        double worst = 0.0;
        std::uniform_real_distribution<double> uc(-1.0, 1.0);
        for (int trial = 0; trial < 10; ++trial) {
            CoeffVec c(static_cast<size_t>(config_.modes));
            for (double& v : c) v = uc(rng_);
            SpatialFn f = inverse_transform(c, ctx_.involution);
            double spatial = spatial_l2_norm(f);
            double coeff = plancherel_norm(forward_transform(f, ctx_.involution));
            worst = std::max(worst, std::abs(spatial - coeff) / (1.0 + coeff));
        }
        return make_result(worst, 1e-8);
    }

    CheckResult eigenpair_consistency() {
        if (!ctx_.spatial) return skipped_result("requires the involution operator");
        const InvolutionOperator& op = ctx_.involution;
        const Spectrum spec = involution_spectrum(op.epsilon, op.modes);
        const double h = std::numbers::pi / op.grid_points;
        double worst = 0.0;
        for (int k = 0; k < std::min(op.modes, 8); ++k) {
            int n = spec.labels[static_cast<size_t>(k)];
            double lam = spec.eigenvalues[static_cast<size_t>(k)];
            SpatialFn u = involution_eigenfunction(n, op.grid_points);
            SpatialFn Lu = apply_involution(u, op.epsilon);
            double err = 0.0;
            for (int i = 1; i < op.grid_points; ++i)
                err = std::max(err, std::abs(Lu.values[static_cast<size_t>(i)] -
                                             lam * u.values[static_cast<size_t>(i)]));
            worst = std::max(worst, (err / lam) / (8.0 * h * h));
        }
        return make_result(worst, 1.0, "normalized by C (pi/N_x)^2, C = 8");
    }

    CheckResult gram_identity() {
        if (!ctx_.spatial) return skipped_result("requires the involution operator");
        const InvolutionOperator& op = ctx_.involution;
        const Spectrum spec = involution_spectrum(op.epsilon, op.modes);
        double worst = 0.0;
        std::vector<SpatialFn> basis;
        for (int k = 0; k < op.modes; ++k)
            basis.push_back(
                involution_eigenfunction(spec.labels[static_cast<size_t>(k)], op.grid_points));
        for (int r = 0; r < op.modes; ++r) {
            CoeffVec row = forward_transform(basis[static_cast<size_t>(r)], op);
            for (int s = 0; s < op.modes; ++s) {
                double expected = r == s ? 1.0 : 0.0;
                worst = std::max(worst, std::abs(row[static_cast<size_t>(s)] - expected));
            }
        }
        return make_result(worst, 1e-10);
    }

    CheckResult spectrum_ordering() {
        double worst = 0.0;
        std::vector<double> eps_list = {0.0, 0.5, -0.5, 5.0 / 13.0, 0.9, -0.9};
        if (config_.op.kind == RunConfig::OperatorSpec::Kind::involution)
            eps_list.push_back(config_.op.epsilon);
        for (double eps : eps_list) {
            Spectrum s = involution_spectrum(eps, std::max(config_.modes, 12));
            for (size_t k = 1; k < s.eigenvalues.size(); ++k)
                worst = std::max(worst, s.eigenvalues[k - 1] - s.eigenvalues[k]);
        }
        return make_result(worst, 0.0);
    }

    CheckResult classical_limit() {
        double prev = -1.0;
        double worst = -1.0;  // max err(q_{i+1}) - err(q_i); must stay negative
        for (double qv : {0.9, 0.99, 0.999}) {
            QParams params = QParams::make(qv, config_.tol);
            double u = 1.0 / q_exp_big(1.0, params);  // lambda = 1, T = 1, phi = 1
            double err = std::abs(u - std::exp(-1.0));
            if (prev >= 0.0) worst = std::max(worst, err - prev);
            prev = err;
        }
        return make_result(worst, 0.0, "error differences across q = 0.9, 0.99, 0.999");
    }

    const RunConfig& config_;
    std::mt19937_64 rng_;
    OperatorContext ctx_;
    QParams params_;
};

RunOutcome run_verify_impl(const RunConfig& c, const std::string& out_dir,
                           unsigned long long seed) {
    VerifySuite suite(c, seed);
    std::vector<CheckResult> results = suite.run_all();

    ordered_json report;
    report["command"] = "verify";
    report["seed"] = seed;
    report["q"] = c.q;
    report["T"] = c.horizon;
    report["modes"] = c.modes;
    report["n_terms"] = c.effective_n_terms();
    ordered_json checks = ordered_json::array();
    bool all_pass = true;
    std::string first_fail;
    for (const CheckResult& r : results) {
        ordered_json jr;
        jr["name"] = r.name;
        jr["pass"] = r.pass;
        if (r.skipped) jr["skipped"] = true;
        else {
            jr["worst"] = r.worst;
            jr["bound"] = r.bound;
        }
        if (!r.detail.empty()) jr["detail"] = r.detail;
        checks.push_back(jr);
        if (!r.pass && !r.skipped) {
            all_pass = false;
            if (first_fail.empty()) first_fail = r.name;
        }
    }
    report["checks"] = checks;
    report["all_pass"] = all_pass;
    write_artifact(out_dir, "report.json", report.dump(2) + "\n");
    if (!all_pass) return {kExitCheckFailed, first_fail};
    return {kExitOk, ""};
}

}  // namespace

RunOutcome run_direct(const RunConfig& c, const std::string& out_dir) {
    return run_direct_impl(c, out_dir);
}
RunOutcome run_inverse(const RunConfig& c, const std::string& out_dir) {
    return run_inverse_impl(c, out_dir);
}
RunOutcome run_verify(const RunConfig& c, const std::string& out_dir,
                      unsigned long long seed) {
    return run_verify_impl(c, out_dir, seed);
}
RunOutcome run_sweep(const RunConfig& c, const std::string& out_dir) {
    return run_sweep_impl(c, out_dir);
}

RunOutcome run(const RunConfig& c, const std::string& out_dir, unsigned long long seed) {
    switch (c.command) {
        case RunConfig::Command::direct: return run_direct(c, out_dir);
        case RunConfig::Command::inverse: return run_inverse(c, out_dir);
        case RunConfig::Command::verify: return run_verify(c, out_dir, seed);
        case RunConfig::Command::sweep: return run_sweep(c, out_dir);
    }
    return {kExitConfigError, "unknown command"};
}

}  // namespace qheat
