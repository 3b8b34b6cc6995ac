#include "qheat/operators.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace qheat {

namespace {
constexpr double kPi = std::numbers::pi;
}

InvolutionOperator InvolutionOperator::make(double epsilon, int modes, int grid_points) {
    if (!(std::abs(epsilon) < 1.0))
        throw std::invalid_argument("InvolutionOperator: requires |epsilon| < 1");
    if (modes < 1) throw std::invalid_argument("InvolutionOperator: modes must be >= 1");
    InvolutionOperator op;
    op.epsilon = epsilon;
    op.modes = modes;
    op.grid_points = grid_points > 0 ? grid_points : 8 * modes;
    if (op.grid_points % 2 != 0)
        throw std::invalid_argument("InvolutionOperator: grid_points must be even for Simpson");
    if (op.grid_points < 8 * modes)
        throw std::invalid_argument("InvolutionOperator: grid_points must be >= 8 * modes to "
                                    "resolve the highest retained mode");
    return op;
}

SpatialFn::SpatialFn(int grid_points_, std::vector<double> values_)
    : grid_points(grid_points_), values(std::move(values_)) {
    if (grid_points < 2)
        throw std::invalid_argument("SpatialFn: grid must have at least 2 intervals");
    if (values.size() != static_cast<size_t>(grid_points) + 1)
        throw std::invalid_argument("SpatialFn: expected " + std::to_string(grid_points + 1) +
                                    " samples, got " + std::to_string(values.size()));
    for (double v : values)
        if (!std::isfinite(v)) throw std::invalid_argument("SpatialFn: non-finite sample");
}

double SpatialFn::x(int i) const { return kPi * i / grid_points; }

SpatialFn SpatialFn::sample(int grid_points, const std::function<double(double)>& f) {
    std::vector<double> vals(static_cast<size_t>(grid_points) + 1);
    for (int i = 0; i <= grid_points; ++i) vals[static_cast<size_t>(i)] = f(kPi * i / grid_points);
    return SpatialFn(grid_points, std::move(vals));
}

Spectrum involution_spectrum(double epsilon, int K) {
    if (!(std::abs(epsilon) < 1.0))
        throw std::invalid_argument("involution_spectrum: requires |epsilon| < 1");
    if (K < 1) throw std::invalid_argument("involution_spectrum: K must be >= 1");
    // collect K smallest of each family, merge, keep K; tie-break on lower n
    std::vector<std::pair<double, int>> entries;
    for (int k = 1; k <= K; ++k)
        entries.emplace_back(4.0 * (1.0 + epsilon) * k * k, 2 * k);
    for (int k = 0; k < K; ++k)
        entries.emplace_back((1.0 - epsilon) * (2 * k + 1) * (2 * k + 1), 2 * k + 1);
    std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first < b.first;
        return a.second < b.second;
    });
    entries.resize(static_cast<size_t>(K));
    std::vector<double> evs;
    std::vector<int> labels;
    for (const auto& [lam, n] : entries) {
        evs.push_back(lam);
        labels.push_back(n);
    }
    const double lambda0 = evs.front() / 2.0;
    return Spectrum::validated(std::move(evs), lambda0, std::move(labels));
}

Spectrum landau_spectrum(double B, int K) {
    if (!(B > 0.0) || !std::isfinite(B))
        throw std::invalid_argument("landau_spectrum: B must be > 0");
    if (K < 1) throw std::invalid_argument("landau_spectrum: K must be >= 1");
    std::vector<double> evs(static_cast<size_t>(K));
    for (int n = 0; n < K; ++n) evs[static_cast<size_t>(n)] = (2.0 * n + 1.0) * B;
    return Spectrum::validated(std::move(evs), B / 2.0);
}

Spectrum custom_spectrum(std::vector<double> values, double lambda0) {
    return Spectrum::validated(std::move(values), lambda0);
}

namespace {

// composite Simpson weights: h/3 * (1, 4, 2, 4, ..., 4, 1)
double simpson(const std::vector<double>& samples, int n_intervals) {
    if (n_intervals % 2 != 0)
        throw std::invalid_argument("simpson: needs an even interval count");
    double h = kPi / n_intervals;
    double acc = samples.front() + samples.back();
    for (int i = 1; i < n_intervals; ++i)
        acc += samples[static_cast<size_t>(i)] * (i % 2 == 1 ? 4.0 : 2.0);
    return acc * h / 3.0;
}

}  // namespace

CoeffVec forward_transform(const SpatialFn& f, const InvolutionOperator& op) {
    if (f.grid_points != op.grid_points)
        throw std::invalid_argument("forward_transform: grid mismatch");
    const double scale = *std::max_element(f.values.begin(), f.values.end(),
                                           [](double a, double b) {
                                               return std::abs(a) < std::abs(b);
                                           });
    const double btol = 1e-9 * (1.0 + std::abs(scale));
    if (std::abs(f.values.front()) > btol || std::abs(f.values.back()) > btol)
        throw std::invalid_argument("forward_transform: Dirichlet boundary values violated");
    const Spectrum spec = involution_spectrum(op.epsilon, op.modes);
    const double norm = std::sqrt(2.0 / kPi);
    CoeffVec c(static_cast<size_t>(op.modes));
    std::vector<double> integrand(f.values.size());
    for (int k = 0; k < op.modes; ++k) {
        const int n = spec.labels[static_cast<size_t>(k)];
        for (int i = 0; i <= op.grid_points; ++i)
            integrand[static_cast<size_t>(i)] =
                f.values[static_cast<size_t>(i)] * norm * std::sin(n * f.x(i));
        c[static_cast<size_t>(k)] = simpson(integrand, op.grid_points);
    }
    return c;
}

SpatialFn inverse_transform(const CoeffVec& c, const InvolutionOperator& op) {
    if (c.size() != static_cast<size_t>(op.modes))
        throw std::invalid_argument("inverse_transform: coefficient count mismatch");
    const Spectrum spec = involution_spectrum(op.epsilon, op.modes);
    const double norm = std::sqrt(2.0 / kPi);
    std::vector<double> vals(static_cast<size_t>(op.grid_points) + 1, 0.0);
    for (int i = 0; i <= op.grid_points; ++i) {
        double x = kPi * i / op.grid_points;
        double acc = 0.0;
        for (int k = 0; k < op.modes; ++k)
            acc += c[static_cast<size_t>(k)] * norm *
                   std::sin(spec.labels[static_cast<size_t>(k)] * x);
        vals[static_cast<size_t>(i)] = acc;
    }
    return SpatialFn(op.grid_points, std::move(vals));
}

SpatialFn apply_involution(const SpatialFn& f, double epsilon) {
    if (!(std::abs(epsilon) < 1.0))
        throw std::invalid_argument("apply_involution: requires |epsilon| < 1");
    const int N = f.grid_points;
    if (N < 4) throw std::invalid_argument("apply_involution: grid too coarse");
    const double h = kPi / N;
    std::vector<double> second(static_cast<size_t>(N) + 1, 0.0);
    for (int i = 1; i < N; ++i)
        second[static_cast<size_t>(i)] =
            (f.values[static_cast<size_t>(i) - 1] - 2.0 * f.values[static_cast<size_t>(i)] +
             f.values[static_cast<size_t>(i) + 1]) /
            (h * h);
    std::vector<double> out(static_cast<size_t>(N) + 1, 0.0);
    for (int i = 1; i < N; ++i)
        out[static_cast<size_t>(i)] =
            -second[static_cast<size_t>(i)] + epsilon * second[static_cast<size_t>(N - i)];
    return SpatialFn(N, std::move(out));
}

SpatialFn involution_eigenfunction(int n, int grid_points) {
    if (n < 1) throw std::invalid_argument("involution_eigenfunction: n must be >= 1");
    const double norm = std::sqrt(2.0 / kPi);
    return SpatialFn::sample(grid_points, [&](double x) { return norm * std::sin(n * x); });
}

double spatial_l2_norm(const SpatialFn& f) {
    std::vector<double> sq(f.values.size());
    for (size_t i = 0; i < f.values.size(); ++i) sq[i] = f.values[i] * f.values[i];
    return std::sqrt(simpson(sq, f.grid_points));
}

}  // namespace qheat
