#include <benchmark/benchmark.h>

#include <cmath>

#include "qheat/direct.hpp"
#include "qheat/inverse.hpp"
#include "qheat/operators.hpp"

using namespace qheat;

namespace {

CoefficientProfile affine_profile() {
    CoefficientProfile p;
    p.upsilon = [](double t) { return 1.0 + 0.5 * t; };
    p.alpha = 1.0 - 1e-12;
    p.beta = 1.5 + 1e-12;
    return p;
}

DirectProblem direct_problem(double q, int K) {
    DirectProblem p;
    p.spectrum = involution_spectrum(0.5, K);
    p.qparams = QParams::make(q);
    p.horizon = 1.0;
    p.lattice_depth = p.qparams.n_terms;
    p.profile = affine_profile();
    p.phi.assign(static_cast<size_t>(K), 1.0);
    CoeffVec amps(static_cast<size_t>(K));
    for (int k = 0; k < K; ++k) amps[static_cast<size_t>(k)] = std::exp(-double(k));
    p.source = [amps](int k, double t) { return amps[static_cast<size_t>(k)] * (1.0 + t); };
    return p;
}

void GrowthFactor(benchmark::State& state) {
    GrowthEvaluator ev(affine_profile(), QParams::make(0.5), 1.0);
    double lam = 10.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(ev.growth_factor_uncached(lam, 0.5));
    }
}
BENCHMARK(GrowthFactor);

void WeightedIntegral(benchmark::State& state) {
    GrowthEvaluator ev(affine_profile(), QParams::make(0.5), 1.0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            ev.weighted_integral(10.0, 1.0, [](double t) { return 1.0 + t; }));
    }
}
BENCHMARK(WeightedIntegral);

void SolveDirect(benchmark::State& state) {
    const double q = state.range(0) == 0 ? 0.5 : 0.9;
    DirectProblem p = direct_problem(q, static_cast<int>(state.range(1)));
    for (auto _ : state) {
        DirectSolution sol = solve_direct(p);
        benchmark::DoNotOptimize(sol.trajectory.states.data());
    }
    state.SetLabel(q == 0.5 ? "q=0.5" : "q=0.9");
}
BENCHMARK(SolveDirect)->Args({0, 8})->Args({0, 16})->Args({1, 8})->Args({1, 16});

void StepperOracle(benchmark::State& state) {
    DirectProblem p = direct_problem(0.5, static_cast<int>(state.range(0)));
    for (auto _ : state) {
        CoeffTrajectory tr = lattice_stepper_oracle(p);
        benchmark::DoNotOptimize(tr.states.data());
    }
}
BENCHMARK(StepperOracle)->Arg(8)->Arg(16);

void RecoverSource(benchmark::State& state) {
    DirectProblem dp = direct_problem(0.5, 8);
    auto g = [](double) { return 1.0; };
    CoeffVec amps(8);
    for (int k = 0; k < 8; ++k) amps[static_cast<size_t>(k)] = std::exp(-double(k));
    dp.source = [amps, g](int k, double t) { return amps[static_cast<size_t>(k)] * g(t); };
    DirectSolution direct = solve_direct(dp);

    InverseProblem p;
    p.spectrum = dp.spectrum;
    p.profile = dp.profile;
    p.qparams = dp.qparams;
    p.horizon = dp.horizon;
    p.lattice_depth = dp.lattice_depth;
    p.phi = dp.phi;
    p.eta = direct.trajectory.at_horizon();
    double total = jackson_integral(g, 1.0, dp.qparams);
    p.source_shape =
        SourceProfile::validated(g, total * 0.999, total * 1.001, p.lattice(), p.qparams);
    for (auto _ : state) {
        CoeffVec f = recover_source(p);
        benchmark::DoNotOptimize(f.data());
    }
}
BENCHMARK(RecoverSource);

void ForwardTransform(benchmark::State& state) {
    InvolutionOperator op = InvolutionOperator::make(0.5, 16, 512);
    CoeffVec c(16, 0.0);
    for (int k = 0; k < 16; ++k) c[static_cast<size_t>(k)] = std::exp(-0.4 * k);
    SpatialFn f = inverse_transform(c, op);
    for (auto _ : state) {
        CoeffVec back = forward_transform(f, op);
        benchmark::DoNotOptimize(back.data());
    }
}
BENCHMARK(ForwardTransform);

}  // namespace

BENCHMARK_MAIN();
