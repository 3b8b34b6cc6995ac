#include <doctest.h>

#include <cmath>
#include <random>

#include "qheat/direct.hpp"
#include "qheat/operators.hpp"
#include "support/oracles.hpp"

using namespace qheat;

namespace {

DirectProblem base_problem(double q, int K) {
    DirectProblem p;
    p.spectrum = involution_spectrum(0.5, K);
    p.qparams = QParams::make(q);
    p.horizon = 1.0;
    p.lattice_depth = p.qparams.n_terms;
    p.profile.upsilon = [](double t) { return 1.0 + 0.5 * t; };
    p.profile.alpha = 1.0 - 1e-12;
    p.profile.beta = 1.5 + 1e-12;
    p.phi.assign(static_cast<size_t>(K), 1.0);
    return p;
}

DirectProblem random_problem(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> uq(0.0, 1.0), uT(0.5, 1.5), uphi(0.5, 1.5);
    std::uniform_int_distribution<int> uK(4, 16);
    std::bernoulli_distribution flip(0.5);
    DirectProblem p;
    double q = flip(rng) ? 0.5 : 0.9;
    int K = uK(rng);
    if (flip(rng)) {
        double eps = flip(rng) ? 0.5 : (flip(rng) ? -0.5 : 0.0);
        p.spectrum = involution_spectrum(eps, K);
    } else {
        std::uniform_real_distribution<double> uB(0.5, 2.0);
        p.spectrum = landau_spectrum(uB(rng), K);
    }
    p.qparams = QParams::make(q);
    p.horizon = uT(rng);
    p.lattice_depth = p.qparams.n_terms;
    testsupport::AffineProfile ap = testsupport::draw_affine_profile(rng, p.horizon);
    p.profile = testsupport::to_profile(ap);
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

}  // namespace

TEST_CASE("solve_direct: homogeneous constant-coefficient closed form") {
    DirectProblem p = base_problem(0.5, 6);
    p.profile.upsilon = [](double) { return 0.75; };
    p.profile.alpha = 0.75 * (1.0 - 1e-12);
    p.profile.beta = 0.75 * (1.0 + 1e-12);
    DirectSolution sol = solve_direct(p);
    for (int k = 0; k < 6; ++k) {
        double lam = p.spectrum.eigenvalues[static_cast<size_t>(k)];
        for (int j = 0; j < sol.trajectory.lattice.size() - 1; ++j) {
            double t = sol.trajectory.lattice.point(j);
            double expect = 1.0 / q_exp_big(0.75 * lam * t, p.qparams);
            double got = sol.trajectory.states[static_cast<size_t>(j)][static_cast<size_t>(k)];
            CHECK(std::abs(got - expect) <= 1e-10 * std::abs(expect));
        }
    }
}

TEST_CASE("solve_direct: zero data gives the zero trajectory") {
    DirectProblem p = base_problem(0.5, 4);
    p.phi.assign(4, 0.0);
    DirectSolution sol = solve_direct(p);
    for (const CoeffVec& state : sol.trajectory.states)
        for (double v : state) CHECK(v == 0.0);
    CHECK(sol.diagnostics.apriori.holds);
}

TEST_CASE("stepper oracle: zero data and single-mode against the product oracle") {
    DirectProblem p = base_problem(0.5, 4);
    p.phi.assign(4, 0.0);
    CoeffTrajectory tr = lattice_stepper_oracle(p);
    for (const CoeffVec& state : tr.states)
        for (double v : state) CHECK(v == 0.0);

    DirectProblem single = base_problem(0.5, 1);
    single.spectrum = custom_spectrum({1.0}, 0.5);
    single.profile.upsilon = [](double) { return 1.0; };
    single.profile.alpha = 1.0 - 1e-12;
    single.profile.beta = 1.0 + 1e-12;
    single.phi = {1.0};
    CoeffTrajectory u = lattice_stepper_oracle(single);
    for (int j = 0; j < u.lattice.size() - 1; ++j) {
        double t = u.lattice.point(j);
        double expect = 1.0 / q_exp_big(t, single.qparams);
        CHECK(std::abs(u.states[static_cast<size_t>(j)][0] - expect) <= 1e-12 * expect);
    }
}

TEST_CASE("bundled example: q = 1/2, K = 8, affine upsilon, decaying affine source") {
    DirectProblem p = base_problem(0.5, 8);
    CoeffVec amps(8);
    for (int k = 0; k < 8; ++k) amps[static_cast<size_t>(k)] = std::exp(-double(k));
    p.source = [amps](int k, double t) { return amps[static_cast<size_t>(k)] * (1.0 + t); };
    DirectSolution sol = solve_direct(p);
    CoeffTrajectory oracle = lattice_stepper_oracle(p);
    CHECK(testsupport::trajectory_distance(sol.trajectory, oracle) <= 1e-10);
    CHECK(sol.diagnostics.ode_residual.resolved <= 1e-10);
}

TEST_CASE("oracle equivalence on randomized problems") {
    std::mt19937_64 rng(101);
    for (int trial = 0; trial < 8; ++trial) {
        DirectProblem p = random_problem(rng);
        DirectSolution sol = solve_direct(p);
        CoeffTrajectory oracle = lattice_stepper_oracle(p);
        CHECK(testsupport::trajectory_distance(sol.trajectory, oracle) <= 1e-10);
        CHECK(sol.diagnostics.ode_residual.resolved <= 1e-10);
        CHECK(sol.diagnostics.apriori.holds);
    }
}

TEST_CASE("ode residual: stepper satisfies the lattice equation, perturbations detected") {
    std::mt19937_64 rng(55);
    DirectProblem p = random_problem(rng);
    CoeffTrajectory oracle = lattice_stepper_oracle(p);
    OdeResidualReport rep = ode_residual_report(oracle, p);
    CHECK(rep.resolved <= 1e-12);

    // +1e-3 on one stored entry must push the residual above 1e-4
    CoeffTrajectory bumped = oracle;
    bumped.states[2][1] += 1e-3;
    OdeResidualReport bad = ode_residual_report(bumped, p);
    CHECK(bad.resolved >= 1e-4);
}

TEST_CASE("initial condition is assigned exactly") {
    std::mt19937_64 rng(77);
    DirectProblem p = random_problem(rng);
    DirectSolution sol = solve_direct(p);
    CHECK(sol.trajectory.at_origin() == p.phi);
    CoeffTrajectory oracle = lattice_stepper_oracle(p);
    CHECK(oracle.at_origin() == p.phi);
}

TEST_CASE("homogeneous solutions decay in every Sobolev norm along the lattice") {
    std::mt19937_64 rng(88);
    for (int trial = 0; trial < 5; ++trial) {
        DirectProblem p = random_problem(rng);
        p.source = {};
        DirectSolution sol = solve_direct(p);
        for (double d : {0.0, 1.0}) {
            double prev = 0.0;
            for (int j = 0; j < sol.trajectory.lattice.size() - 1; ++j) {
                double n = sobolev_norm(sol.trajectory.states[static_cast<size_t>(j)], d,
                                        p.spectrum);
                // states run from t = T down to 0, so decay in t means the norm
                // grows with the storage index
                CHECK(n >= prev * (1.0 - 1e-12));
                prev = n;
            }
        }
        // with no source the supremum is attained at t = 0
        TrajectoryNorms norms = trajectory_norms(sol.trajectory, 0.0, p.spectrum);
        CHECK(norms.sup_state ==
              doctest::Approx(plancherel_norm(p.phi)).epsilon(1e-12));
    }
}

TEST_CASE("linearity of the solution map") {
    std::mt19937_64 rng(99);
    DirectProblem p1 = random_problem(rng);
    DirectProblem p2 = p1;
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (double& v : p2.phi) v = u(rng);
    CoeffVec amps2(p2.phi.size());
    for (double& v : amps2) v = u(rng);
    p2.source = [amps2](int k, double t) { return amps2[static_cast<size_t>(k)] * (1.0 - t); };

    DirectProblem sum = p1;
    for (size_t k = 0; k < sum.phi.size(); ++k) sum.phi[k] += p2.phi[k];
    auto s1 = p1.source, s2 = p2.source;
    sum.source = [s1, s2](int k, double t) { return s1(k, t) + s2(k, t); };

    DirectSolution a = solve_direct(p1), b = solve_direct(p2), c = solve_direct(sum);
    for (int j = 0; j < c.trajectory.lattice.size(); ++j)
        for (size_t k = 0; k < sum.phi.size(); ++k) {
            double want = a.trajectory.states[static_cast<size_t>(j)][k] +
                          b.trajectory.states[static_cast<size_t>(j)][k];
            double got = c.trajectory.states[static_cast<size_t>(j)][k];
            CHECK(std::abs(got - want) <= 1e-11 * (1.0 + std::abs(want)));
        }
}

TEST_CASE("uniqueness: reruns are bit-identical, phi perturbations propagate as decay") {
    std::mt19937_64 rng(111);
    DirectProblem p = random_problem(rng);
    DirectSolution a = solve_direct(p);
    DirectSolution b = solve_direct(p);
    CHECK(a.trajectory.states == b.trajectory.states);

    const double delta = 1e-3;
    DirectProblem shifted = p;
    shifted.phi[2] += delta;
    DirectSolution c = solve_direct(shifted);
    GrowthEvaluator ev(p.profile, p.qparams, p.horizon);
    double lam = p.spectrum.eigenvalues[2];
    for (int j = 0; j < c.trajectory.lattice.size() - 1; ++j) {
        double t = c.trajectory.lattice.point(j);
        double diff = c.trajectory.states[static_cast<size_t>(j)][2] -
                      a.trajectory.states[static_cast<size_t>(j)][2];
        CHECK(std::abs(diff - ev.decay_factor(lam, t) * delta) <= 1e-12 * (1.0 + delta));
    }
}

TEST_CASE("a-priori estimate") {
    SUBCASE("zero data") {
        DirectProblem p = base_problem(0.5, 4);
        p.phi.assign(4, 0.0);
        AprioriReport rep = solve_direct(p).diagnostics.apriori;
        CHECK(rep.lhs == 0.0);
        CHECK(rep.rhs == 0.0);
        CHECK(rep.holds);
    }
    SUBCASE("single homogeneous mode stays strictly inside the bound") {
        DirectProblem p = base_problem(0.5, 1);
        p.spectrum = custom_spectrum({2.0}, 1.0);
        p.phi = {1.0};
        AprioriReport rep = solve_direct(p).diagnostics.apriori;
        CHECK(rep.holds);
        CHECK(rep.lhs < rep.state_bound + rep.rate_bound);
    }
    SUBCASE("randomized sweep") {
        std::mt19937_64 rng(123);
        for (int trial = 0; trial < 20; ++trial) {
            DirectProblem p = random_problem(rng);
            p.sobolev_order = trial % 3 == 0 ? 1.0 : (trial % 3 == 1 ? 0.0 : -1.0);
            AprioriReport rep = solve_direct(p).diagnostics.apriori;
            CHECK(rep.holds);
            CHECK(rep.lhs <= rep.constant * rep.rhs + 1e-9);
        }
    }
}

TEST_CASE("classical limit of the homogeneous single-mode solution") {
    double prev = 1e9;
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
        CHECK(err < prev);
        prev = err;
    }
}

TEST_CASE("problem validation") {
    DirectProblem p = base_problem(0.5, 4);
    p.phi.resize(3);
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    DirectProblem bad_T = base_problem(0.5, 4);
    bad_T.horizon = -1.0;
    CHECK_THROWS_AS(bad_T.validate(), std::invalid_argument);
    DirectProblem bad_phi = base_problem(0.5, 4);
    bad_phi.phi[1] = std::nan("");
    CHECK_THROWS_AS(bad_phi.validate(), std::invalid_argument);
}
