#include "qheat/spectral.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace qheat {

Spectrum Spectrum::validated(std::vector<double> eigenvalues, double lambda0,
                             std::vector<int> labels) {
    if (eigenvalues.empty()) throw std::invalid_argument("Spectrum: needs at least one mode");
    if (!(lambda0 > 0.0) || !std::isfinite(lambda0))
        throw std::invalid_argument("Spectrum: lambda0 must be > 0");
    if (!labels.empty() && labels.size() != eigenvalues.size())
        throw std::invalid_argument("Spectrum: labels must be empty or match eigenvalue count");
    for (size_t k = 0; k < eigenvalues.size(); ++k) {
        if (!std::isfinite(eigenvalues[k]) || !(eigenvalues[k] > lambda0))
            throw std::invalid_argument("Spectrum: eigenvalue " + std::to_string(eigenvalues[k]) +
                                        " at index " + std::to_string(k + 1) +
                                        " must exceed lambda0 = " + std::to_string(lambda0));
        if (k > 0 && eigenvalues[k] < eigenvalues[k - 1])
            throw std::invalid_argument("Spectrum: eigenvalues must be nondecreasing; violation "
                                        "at index " + std::to_string(k + 1));
    }
    Spectrum s;
    s.eigenvalues = std::move(eigenvalues);
    s.lambda0 = lambda0;
    s.labels = std::move(labels);
    return s;
}

CoeffTrajectory::CoeffTrajectory(QLattice lat, int modes) : lattice(std::move(lat)) {
    if (modes < 1) throw std::invalid_argument("CoeffTrajectory: needs at least one mode");
    states.assign(static_cast<size_t>(lattice.size()), CoeffVec(static_cast<size_t>(modes), 0.0));
}

int CoeffTrajectory::modes() const {
    return states.empty() ? 0 : static_cast<int>(states.front().size());
}

std::vector<double> mode_tail_proxies(const CoeffVec& c, double d, const Spectrum& s) {
    if (c.size() != s.eigenvalues.size())
        throw std::invalid_argument("mode_tail_proxies: coefficient count must match spectrum");
    std::vector<double> out(c.size());
    for (size_t k = 0; k < c.size(); ++k)
        out[k] = std::pow(s.eigenvalues[k], d / 2.0) * std::abs(c[k]);
    return out;
}

TrajectoryNorms trajectory_norms(const CoeffTrajectory& tr, double d, const Spectrum& s) {
    if (tr.lattice.size() < 2)
        throw std::invalid_argument("trajectory_norms: trajectory needs >= 2 lattice points");
    if (tr.modes() != s.modes())
        throw std::invalid_argument("trajectory_norms: mode count must match spectrum");
    TrajectoryNorms out;
    for (const CoeffVec& state : tr.states)
        out.sup_state = std::max(out.sup_state, sobolev_norm(state, d, s));
    const double q = tr.lattice.q();
    CoeffVec rate(static_cast<size_t>(tr.modes()));
    for (int j = 0; tr.lattice.is_interior(j); ++j) {
        double t = tr.lattice.point(j);
        const CoeffVec& here = tr.states[static_cast<size_t>(j)];
        const CoeffVec& below = tr.states[static_cast<size_t>(j) + 1];
        for (size_t k = 0; k < rate.size(); ++k)
            rate[k] = (here[k] - below[k]) / (t * (1.0 - q));
        out.sup_rate = std::max(out.sup_rate, sobolev_norm(rate, d, s));
    }
    return out;
}

}  // namespace qheat
