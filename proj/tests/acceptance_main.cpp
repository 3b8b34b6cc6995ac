// Acceptance suite: runs every acceptance criterion at its stated tolerance
// and prints one pass/fail line per criterion. Returns the number of failures.
//
// Criterion 8 drives the installed CLI binary; set QHEAT_CLI, QHEAT_FIXTURES
// and QHEAT_WORK (the CTest registration does).

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "qheat/direct.hpp"
#include "qheat/inverse.hpp"
#include "qheat/io.hpp"
#include "qheat/operators.hpp"
#include "qheat/runner.hpp"
#include "support/oracles.hpp"

using namespace qheat;
using testsupport::Poly;

namespace {

struct Criterion {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            if (!detail.empty()) detail += "; ";
            detail += what;
        }
    }
};

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3g", v);
    return buf;
}

// ---------------------------------------------------------------- criterion 1

Criterion criterion1() {
    Criterion c;
    std::mt19937_64 rng(20240901);
    double worst = 0.0;
    for (double q : {0.3, 0.5, 0.9}) {
        QParams p = QParams::make(q);
        QLattice lat(1.0, q, testsupport::verification_depth(q));
        std::uniform_real_distribution<double> ux(0.1, 1.5);
        for (int trial = 0; trial < 100; ++trial) {
            Poly f = Poly::random(rng, 5), g = Poly::random(rng, 5);
            Poly df = f.q_derivative_rule(q), dg = g.q_derivative_rule(q);

            LatticeFn lf = LatticeFn::sample(lat, [&](double t) { return f(t); });
            LatticeFn lg = LatticeFn::sample(lat, [&](double t) { return g(t); });
            LatticeFn lfg = LatticeFn::sample(lat, [&](double t) { return f(t) * g(t); });
            for (int j = 0; lat.is_interior(j); ++j) {
                double t = lat.point(j);
                double r = std::abs(q_derivative(lfg, j) - f(q * t) * q_derivative(lg, j) -
                                    q_derivative(lf, j) * g(t)) /
                           (1.0 + std::abs(f(t) * g(t)));
                worst = std::max(worst, r);
            }

            double x = ux(rng);
            double ft = std::abs(jackson_integral([&](double t) { return df(t); }, x, p) -
                                 (f(x) - f(0.0))) /
                        (1.0 + std::abs(f(x)));
            worst = std::max(worst, ft);

            double left = jackson_integral([&](double t) { return f(t) * dg(t); }, x, p);
            double right = jackson_integral([&](double t) { return g(q * t) * df(t); }, x, p);
            double boundary = f(x) * g(x) - f(0.0) * g(0.0);
            worst = std::max(worst,
                             std::abs(left - boundary + right) / (1.0 + std::abs(boundary)));

            std::uniform_real_distribution<double> ustrip(-0.9 / (1.0 - q), 0.9 / (1.0 - q));
            double xs = ustrip(rng);
            worst = std::max(worst, std::abs(q_exp_small(xs, p) * q_exp_big(-xs, p) - 1.0));
        }
    }
    c.require(worst <= 1e-10, "identity residual " + fmt(worst) + " > 1e-10");
    c.detail = "worst residual " + fmt(worst) + " (bound 1e-10)";
    return c;
}

// ---------------------------------------------------------------- criterion 2

Criterion criterion2() {
    Criterion c;
    std::mt19937_64 rng(20240902);
    std::uniform_real_distribution<double> ulam(0.5, 30.0);
    double worst_ident = 0.0, worst_ratio = 0.0, worst_sandwich = 0.0, worst_bounds = 0.0;
    for (int trial = 0; trial < 50; ++trial) {
        double q = trial % 3 == 0 ? 0.3 : (trial % 3 == 1 ? 0.5 : 0.9);
        QParams p = QParams::make(q);
        testsupport::AffineProfile ap = testsupport::draw_affine_profile(rng, 1.0);
        GrowthEvaluator ev(testsupport::to_profile(ap), p, 1.0);
        double lam = ulam(rng);

        for (int m = 0; m <= testsupport::identity_depth(q); ++m) {
            double t = ev.lattice_time(m);
            worst_ident = std::max(worst_ident,
                                   ev.identity_residual(lam, t) / ev.growth_factor(lam, t));
        }
        int full = std::min(p.n_terms, 256);
        for (int m = 0; m < full; ++m)
            worst_ratio = std::max(worst_ratio,
                                   ev.ratio_identity_residual(lam, ev.lattice_time(m)));

        for (int m = 0; m < std::min(p.n_terms, 96); ++m) {
            double t = ev.lattice_time(m);
            double g = ev.growth_factor(lam, t);
            double lo = q_exp_big(ap.alpha * lam * t, p);
            double hi = q_exp_big(ap.beta * lam * t, p);
            worst_sandwich = std::max({worst_sandwich, (lo - g) / g, (g - hi) / g});
        }

        double integral = ev.weighted_integral(lam, 1.0, [](double) { return 1.0; });
        double lower = (ev.growth_factor(lam, 1.0) - 1.0) / (lam * ap.beta);
        double upper = ev.growth_factor(lam, 1.0) / (lam * ap.alpha);
        worst_bounds = std::max({worst_bounds, (lower - integral) / (1.0 + lower),
                                 (integral - upper) / (1.0 + upper)});
    }
    c.require(worst_ident <= 1e-12, "difference identity " + fmt(worst_ident) + " > 1e-12");
    c.require(worst_ratio <= 1e-12, "ratio identity " + fmt(worst_ratio) + " > 1e-12");
    c.require(worst_sandwich <= 1e-12, "sandwich violation " + fmt(worst_sandwich));
    c.require(worst_bounds <= 1e-12, "integral bound violation " + fmt(worst_bounds));
    c.detail = "identity " + fmt(worst_ident) + ", ratio " + fmt(worst_ratio) + ", sandwich " +
               fmt(worst_sandwich) + ", bounds " + fmt(worst_bounds);
    return c;
}

// ------------------------------------------------------- criteria 3 and 4

DirectProblem random_direct(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> uT(0.5, 1.5), uphi(0.5, 1.5), uB(0.5, 2.0);
    std::uniform_int_distribution<int> uK(4, 16);
    std::bernoulli_distribution flip(0.5);
    DirectProblem p;
    double q = flip(rng) ? 0.5 : 0.9;
    int K = uK(rng);
    p.spectrum = flip(rng)
                     ? involution_spectrum(flip(rng) ? 0.5 : (flip(rng) ? -0.5 : 0.0), K)
                     : landau_spectrum(uB(rng), K);
    p.qparams = QParams::make(q);
    p.horizon = uT(rng);
    p.lattice_depth = p.qparams.n_terms;
    p.profile = testsupport::to_profile(testsupport::draw_affine_profile(rng, p.horizon));
    p.phi.resize(static_cast<size_t>(K));
    for (double& v : p.phi) v = uphi(rng) * (flip(rng) ? 1.0 : -1.0);
    std::uniform_real_distribution<double> usa(0.0, 1.0), usb(-0.5, 1.0);
    double sa = usa(rng), sb = usb(rng);
    CoeffVec amps(static_cast<size_t>(K));
    for (int k = 0; k < K; ++k) amps[static_cast<size_t>(k)] = std::exp(-double(k));
    p.source = [amps, sa, sb](int k, double t) {
        return amps[static_cast<size_t>(k)] * (sa + sb * t);
    };
    return p;
}

Criterion criterion3(std::vector<DirectSolution>& solutions,
                     std::vector<DirectProblem>& problems) {
    Criterion c;
    std::mt19937_64 rng(20240903);
    double worst_dist = 0.0, worst_res = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
        DirectProblem p = random_direct(rng);
        DirectSolution sol = solve_direct(p);
        CoeffTrajectory oracle = lattice_stepper_oracle(p);
        worst_dist = std::max(worst_dist,
                              testsupport::trajectory_distance(sol.trajectory, oracle));
        worst_res = std::max(worst_res, sol.diagnostics.ode_residual.resolved);
        problems.push_back(std::move(p));
        solutions.push_back(std::move(sol));
    }
    c.require(worst_dist <= 1e-10, "oracle distance " + fmt(worst_dist) + " > 1e-10");
    c.require(worst_res <= 1e-10, "ode residual " + fmt(worst_res) + " > 1e-10");
    c.detail = "oracle distance " + fmt(worst_dist) + ", residual " + fmt(worst_res);
    return c;
}

Criterion criterion4(const std::vector<DirectSolution>& solutions,
                     const std::vector<DirectProblem>& problems) {
    Criterion c;
    int held = 0;
    for (size_t i = 0; i < solutions.size(); ++i)
        if (solutions[i].diagnostics.apriori.holds) ++held;
    c.require(held == static_cast<int>(solutions.size()),
              "a-priori estimate failed on " +
                  std::to_string(static_cast<int>(solutions.size()) - held) + " problems");

    // constant-coefficient, zero-source closed form u_k(t) = phi_k / E_q(a lambda_k t)
    double worst = 0.0;
    for (double q : {0.5, 0.9}) {
        DirectProblem p;
        p.spectrum = involution_spectrum(0.5, 8);
        p.qparams = QParams::make(q);
        p.horizon = 1.0;
        p.lattice_depth = p.qparams.n_terms;
        const double a = 1.25;
        p.profile.upsilon = [a](double) { return a; };
        p.profile.alpha = a * (1.0 - 1e-12);
        p.profile.beta = a * (1.0 + 1e-12);
        p.phi.assign(8, 1.0);
        DirectSolution sol = solve_direct(p);
        for (int k = 0; k < 8; ++k) {
            double lam = p.spectrum.eigenvalues[static_cast<size_t>(k)];
            for (int j = 0; j < sol.trajectory.lattice.size() - 1; ++j) {
                double expect =
                    1.0 / q_exp_big(a * lam * sol.trajectory.lattice.point(j), p.qparams);
                double got =
                    sol.trajectory.states[static_cast<size_t>(j)][static_cast<size_t>(k)];
                worst = std::max(worst, std::abs(got - expect) / std::abs(expect));
            }
        }
    }
    c.require(worst <= 1e-10, "closed form mismatch " + fmt(worst) + " > 1e-10");
    c.detail = std::to_string(held) + "/" + std::to_string(solutions.size()) +
               " estimates hold, closed form " + fmt(worst);
    return c;
}

// ---------------------------------------------------------------- criterion 5

Criterion criterion5() {
    Criterion c;
    std::mt19937_64 rng(20240905);
    std::uniform_real_distribution<double> uT(0.5, 1.5), uphi(0.6, 1.5), uf(0.6, 1.5),
        ug(0.5, 2.0);
    std::uniform_int_distribution<int> uK(4, 16);
    std::bernoulli_distribution flip(0.5);
    double worst_f = 0.0, worst_traj = 0.0, worst_margin = 1e300;
    int stable = 0;
    for (int trial = 0; trial < 20; ++trial) {
        InverseProblem p;
        double q = flip(rng) ? 0.5 : 0.9;
        int K = uK(rng);
        p.spectrum = flip(rng) ? involution_spectrum(flip(rng) ? 0.5 : 0.0, K)
                               : landau_spectrum(ug(rng), K);
        p.qparams = QParams::make(q);
        p.horizon = uT(rng);
        p.lattice_depth = p.qparams.n_terms;
        testsupport::AffineProfile ap = testsupport::draw_affine_profile(rng, p.horizon);
        p.profile = testsupport::to_profile(ap);
        double ga = ug(rng);
        auto g = [ga](double) { return ga; };
        double total = jackson_integral(g, p.horizon, p.qparams);
        p.source_shape = SourceProfile::validated(g, total * 0.999, total * 1.001, p.lattice(),
                                                  p.qparams);
        p.phi.resize(static_cast<size_t>(K));
        for (double& v : p.phi) v = uphi(rng) * (flip(rng) ? 1.0 : -1.0);
        double E = q_exp_big(ap.beta * p.horizon, p.qparams) / p.source_shape.alpha0;
        double scale = std::min(1.0, 0.8 * E * 0.6 / 1.5);
        CoeffVec f_star(static_cast<size_t>(K));
        for (double& v : f_star) v = scale * uf(rng) * (flip(rng) ? 1.0 : -1.0);

        DirectProblem dp;
        dp.spectrum = p.spectrum;
        dp.profile = p.profile;
        dp.phi = p.phi;
        dp.horizon = p.horizon;
        dp.qparams = p.qparams;
        dp.lattice_depth = p.lattice_depth;
        CoeffVec fs = f_star;
        dp.source = [fs, g](int k, double t) { return fs[static_cast<size_t>(k)] * g(t); };
        DirectSolution direct = solve_direct(dp);
        p.eta = direct.trajectory.at_horizon();

        InverseSolution sol = solve_inverse(p);
        for (size_t k = 0; k < f_star.size(); ++k)
            worst_f = std::max(worst_f, std::abs(sol.f[k] - f_star[k]) / std::abs(f_star[k]));
        worst_traj = std::max(
            worst_traj, testsupport::trajectory_distance(sol.trajectory, direct.trajectory));
        worst_margin = std::min(worst_margin, sol.diagnostics.stability.worst_source_margin);
        if (sol.diagnostics.stability.holds) ++stable;
    }
    c.require(worst_f <= 1e-8, "recovered source error " + fmt(worst_f) + " > 1e-8");
    c.require(worst_traj <= 1e-8, "reconstruction error " + fmt(worst_traj) + " > 1e-8");
    c.require(worst_margin >= 0.0, "per-mode bound margin " + fmt(worst_margin) + " < 0");
    c.require(stable == 20, "stability estimate failed on " + std::to_string(20 - stable));
    c.detail = "f " + fmt(worst_f) + ", trajectory " + fmt(worst_traj) + ", margin " +
               fmt(worst_margin) + ", stable 20/20";
    return c;
}

// ---------------------------------------------------------------- criterion 6

Criterion criterion6() {
    Criterion c;
    double worst_eig = 0.0;
    for (double eps : {0.0, 0.5, -0.5}) {
        double errs512[9] = {0};
        double errs256[9] = {0};
        for (int n = 1; n <= 8; ++n) {
            for (int N : {256, 512}) {
                SpatialFn u = involution_eigenfunction(n, N);
                SpatialFn Lu = apply_involution(u, eps);
                double lam = n % 2 == 0 ? 4.0 * (1.0 + eps) * (n / 2) * (n / 2)
                                        : (1.0 - eps) * n * n;
                double err = 0.0;
                for (int i = 1; i < N; ++i)
                    err = std::max(err, std::abs(Lu.values[static_cast<size_t>(i)] -
                                                 lam * u.values[static_cast<size_t>(i)]));
                (N == 512 ? errs512 : errs256)[n] = err / lam;
            }
            worst_eig = std::max(worst_eig, errs512[n]);
        }
        for (int n = 1; n <= 8; ++n) {
            double ratio = errs256[n] / errs512[n];
            c.require(ratio > 3.0 && ratio < 5.0,
                      "convergence ratio " + fmt(ratio) + " not second order (n=" +
                          std::to_string(n) + ", eps=" + fmt(eps) + ")");
        }
    }
    c.require(worst_eig <= 1e-3, "eigenpair error " + fmt(worst_eig) + " > 1e-3 at N=512");

    InvolutionOperator op = InvolutionOperator::make(0.5, 16, 128);
    Spectrum s = involution_spectrum(op.epsilon, op.modes);
    double worst_gram = 0.0;
    for (int r = 0; r < op.modes; ++r) {
        CoeffVec row = forward_transform(
            involution_eigenfunction(s.labels[static_cast<size_t>(r)], op.grid_points), op);
        for (int j = 0; j < op.modes; ++j)
            worst_gram = std::max(worst_gram,
                                  std::abs(row[static_cast<size_t>(j)] - (j == r ? 1.0 : 0.0)));
    }
    c.require(worst_gram <= 1e-10, "gram deviation " + fmt(worst_gram) + " > 1e-10");

    std::mt19937_64 rng(20240906);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    double worst_bridge = 0.0;
    InvolutionOperator opb = InvolutionOperator::make(0.5, 8, 512);
    for (int trial = 0; trial < 10; ++trial) {
        CoeffVec coef(8);
        for (double& v : coef) v = u(rng);
        SpatialFn f = inverse_transform(coef, opb);
        worst_bridge = std::max(worst_bridge,
                                std::abs(spatial_l2_norm(f) -
                                         plancherel_norm(forward_transform(f, opb))));
    }
    c.require(worst_bridge <= 1e-8, "plancherel bridge " + fmt(worst_bridge) + " > 1e-8");
    c.detail = "eigenpair " + fmt(worst_eig) + ", gram " + fmt(worst_gram) + ", bridge " +
               fmt(worst_bridge);
    return c;
}

// ---------------------------------------------------------------- criterion 7

Criterion criterion7() {
    Criterion c;
    double prev = 1e300;
    std::string seq;
    for (double q : {0.9, 0.99, 0.999}) {
        DirectProblem p;
        p.spectrum = custom_spectrum({1.0}, 0.5);
        p.qparams = QParams::make(q);
        p.horizon = 1.0;
        p.lattice_depth = 64;
        p.profile.upsilon = [](double) { return 1.0; };
        p.profile.alpha = 1.0 - 1e-9;
        p.profile.beta = 1.0 + 1e-9;
        p.phi = {1.0};
        DirectSolution sol = solve_direct(p);
        double err = std::abs(sol.trajectory.at_horizon()[0] - std::exp(-1.0));
        c.require(err < prev, "error not strictly decreasing at q = " + fmt(q));
        prev = err;
        seq += (seq.empty() ? "" : " > ") + fmt(err);
    }
    c.detail = "errors " + seq;
    return c;
}

// ---------------------------------------------------------------- criterion 8

struct Cli {
    std::string binary, fixtures, work;

    int run(const std::string& command, const std::string& config,
            const std::string& out_dir) const {
        std::filesystem::create_directories(out_dir);
        std::string cmd = "\"" + binary + "\" " + command + " \"" + config + "\" --out \"" +
                          out_dir + "\" --seed 1 > \"" + out_dir + "/stdout.txt\" 2> \"" +
                          out_dir + "/stderr.txt\"";
        int status = std::system(cmd.c_str());
        if (status < 0) return -1;
        return WEXITSTATUS(status);
    }
    std::string fixture(const std::string& name) const { return fixtures + "/" + name; }
};

std::vector<double> read_final_state(const std::string& trajectory_csv, int modes) {
    std::ifstream in(trajectory_csv);
    std::string line;
    std::getline(in, line);  // header
    std::vector<double> eta;
    for (int k = 0; k < modes && std::getline(in, line); ++k) {
        size_t c1 = line.find(','), c2 = line.find(',', c1 + 1);
        eta.push_back(std::stod(line.substr(c2 + 1)));
    }
    return eta;
}

std::vector<double> read_source(const std::string& source_csv) {
    std::ifstream in(source_csv);
    std::string line;
    std::getline(in, line);
    std::vector<double> f;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        f.push_back(std::stod(line.substr(line.find(',') + 1)));
    }
    return f;
}

Criterion criterion8() {
    Criterion c;
    const char* bin = std::getenv("QHEAT_CLI");
    const char* fix = std::getenv("QHEAT_FIXTURES");
    const char* work = std::getenv("QHEAT_WORK");
    if (!bin || !fix || !work) {
        c.pass = false;
        c.detail = "QHEAT_CLI / QHEAT_FIXTURES / QHEAT_WORK not set";
        return c;
    }
    Cli cli{bin, fix, work};
    std::filesystem::remove_all(work);
    std::filesystem::create_directories(work);

    struct Case {
        const char* command;
        const char* fixture;
        int expect;
    };
    const Case cases[] = {
        {"direct", "direct_involution.json", 0},  {"direct", "direct_zero.json", 0},
        {"direct", "direct_landau.json", 0},      {"inverse", "inverse_zero.json", 0},
        {"sweep", "sweep_classical.json", 0},     {"sweep", "sweep_single.json", 0},
        {"verify", "verify_default.json", 0},     {"verify", "verify_landau.json", 0},
        {"verify", "verify_bad_beta.json", 1},    {"verify", "verify_small_nterms.json", 1},
        {"direct", "direct_bad_q.json", 2},       {"direct", "direct_unknown_field.json", 2},
        {"direct", "custom_bad_spectrum.json", 2},{"inverse", "inverse_missing_eta.json", 2},
        {"sweep", "sweep_empty.json", 2},
    };
    int exercised = 0;
    for (const Case& k : cases) {
        std::string out = std::string(work) + "/" + k.fixture + ".d";
        int got = cli.run(k.command, cli.fixture(k.fixture), out);
        c.require(got == k.expect, std::string(k.fixture) + " exited " + std::to_string(got) +
                                       " (want " + std::to_string(k.expect) + ")");
        ++exercised;
    }

    // determinism: reruns are byte-identical
    std::string d1 = std::string(work) + "/det1", d2 = std::string(work) + "/det2";
    c.require(cli.run("direct", cli.fixture("direct_involution.json"), d1) == 0, "det run 1");
    c.require(cli.run("direct", cli.fixture("direct_involution.json"), d2) == 0, "det run 2");
    for (const char* name : {"trajectory.csv", "diagnostics.json"})
        c.require(read_text_file(d1 + "/" + name) == read_text_file(d2 + "/" + name),
                  std::string("rerun differs in ") + name);
    std::string v1 = std::string(work) + "/vdet1", v2 = std::string(work) + "/vdet2";
    c.require(cli.run("verify", cli.fixture("verify_default.json"), v1) == 0, "verify det 1");
    c.require(cli.run("verify", cli.fixture("verify_default.json"), v2) == 0, "verify det 2");
    c.require(read_text_file(v1 + "/report.json") == read_text_file(v2 + "/report.json"),
              "verify rerun differs");

    // file-level round trip: direct with a separable source, feed u(T) back in
    std::string dsep = std::string(work) + "/sep";
    c.require(cli.run("direct", cli.fixture("direct_separable.json"), dsep) == 0,
              "separable direct run failed");
    std::vector<double> eta = read_final_state(dsep + "/trajectory.csv", 6);
    c.require(eta.size() == 6, "could not read u(T) from trajectory.csv");

    std::ostringstream cfg;
    cfg << R"({
  "command": "inverse",
  "q": 0.5,
  "T": 1.0,
  "modes": 6,
  "operator": {"type": "involution", "epsilon": 0.5, "grid_points": 64},
  "upsilon": {"type": "affine", "a": 1.0, "b": 0.25, "alpha": 0.999999, "beta": 1.250001},
  "g": {"type": "constant", "a": 1.0, "alpha0": 0.9, "beta0": 1.1},
  "phi": {"coeffs": [1.0, -0.9, 0.8, -0.7, 0.6, -0.5]},
  "eta": {"coeffs": [)";
    for (size_t k = 0; k < eta.size(); ++k) cfg << (k ? ", " : "") << format_double(eta[k]);
    cfg << "]}\n}\n";
    std::string inv_cfg = std::string(work) + "/roundtrip_inverse.json";
    write_text_file(inv_cfg, cfg.str());
    std::string dinv = std::string(work) + "/sep_inverse";
    c.require(cli.run("inverse", inv_cfg, dinv) == 0, "round-trip inverse run failed");
    std::vector<double> f = read_source(dinv + "/source.csv");
    const double f_star[] = {0.8, -0.7, 0.6, -0.5, 0.45, -0.4};
    c.require(f.size() == 6, "could not read source.csv");
    double worst = 0.0;
    for (size_t k = 0; k < f.size(); ++k)
        worst = std::max(worst, std::abs(f[k] - f_star[k]) / std::abs(f_star[k]));
    c.require(worst <= 1e-8, "file round trip error " + fmt(worst) + " > 1e-8");

    c.detail = std::to_string(exercised) + " fixtures, reruns byte-identical, file round trip " +
               fmt(worst);
    return c;
}

}  // namespace

int main() {
    struct Entry {
        const char* name;
        Criterion result;
    };
    std::vector<DirectSolution> solutions;
    std::vector<DirectProblem> problems;
    std::vector<Entry> entries;
    entries.push_back({"1 q-calculus identity suite", criterion1()});
    entries.push_back({"2 growth-function suite", criterion2()});
    entries.push_back({"3 direct-solver oracle equivalence", criterion3(solutions, problems)});
    entries.push_back({"4 a-priori estimate and closed form", criterion4(solutions, problems)});
    entries.push_back({"5 inverse round trip and stability", criterion5()});
    entries.push_back({"6 involution operator", criterion6()});
    entries.push_back({"7 classical limit", criterion7()});
    entries.push_back({"8 CLI contract", criterion8()});

    int failures = 0;
    for (const Entry& e : entries) {
        std::printf("[%s] criterion %s: %s\n", e.result.pass ? "PASS" : "FAIL", e.name,
                    e.result.detail.c_str());
        if (!e.result.pass) ++failures;
    }
    std::printf("%d/%zu acceptance criteria passed\n", static_cast<int>(entries.size()) - failures,
                entries.size());
    return failures;
}
