#pragma once

#include <complex>
#include <span>
#include <vector>

#include "qheat/qlattice.hpp"

namespace qheat {

/// Ascending positive eigenvalue sequence of a diagonalizable operator,
/// truncated at K modes, with a strict lower bound lambda0 > 0.
/// labels, when present, carry the eigenfunction index of each mode
/// (the involution operator uses them to map mode k -> sin(n x)).
/// The underlying analysis assumes the eigenvalues grow without bound; a
/// finite truncation can only enforce nondecrease, so callers pick K from
/// the mode_tail_proxies diagnostic.
struct Spectrum {
    std::vector<double> eigenvalues;
    double lambda0 = 0.0;
    std::vector<int> labels;

    static Spectrum validated(std::vector<double> eigenvalues, double lambda0,
                              std::vector<int> labels = {});
    int modes() const { return static_cast<int>(eigenvalues.size()); }
};

/// Fourier coefficients <u, phi_k> of a state at a fixed time.
using CoeffVec = std::vector<double>;
using ComplexCoeffVec = std::vector<std::complex<double>>;

/// Coefficients on the whole time lattice: states[j] belongs to
/// lattice.points()[j], so states.front() is t = T and states.back() is t = 0.
struct CoeffTrajectory {
    QLattice lattice;
    std::vector<CoeffVec> states;

    CoeffTrajectory(QLattice lat, int modes);
    int modes() const;
    const CoeffVec& at_time_index(int j) const { return states.at(static_cast<size_t>(j)); }
    const CoeffVec& at_origin() const { return states.back(); }    // t = 0
    const CoeffVec& at_horizon() const { return states.front(); }  // t = T
};

namespace detail {
inline double abs_sq(double v) { return v * v; }
inline double abs_sq(const std::complex<double>& v) { return std::norm(v); }
}  // namespace detail

/// (sum_k |c_k|^2)^(1/2); real and complex coefficients both supported.
template <class Scalar>
double plancherel_norm(std::span<const Scalar> c) {
    double acc = 0.0;
    for (const auto& v : c) acc += detail::abs_sq(v);
    return std::sqrt(acc);
}
inline double plancherel_norm(const CoeffVec& c) {
    return plancherel_norm(std::span<const double>(c));
}
inline double plancherel_norm(const ComplexCoeffVec& c) {
    return plancherel_norm(std::span<const std::complex<double>>(c));
}

/// Sobolev norm (sum_k lambda_k^d |c_k|^2)^(1/2); d = 0 recovers Plancherel.
template <class Scalar>
double sobolev_norm(std::span<const Scalar> c, double d, const Spectrum& s) {
    if (c.size() != s.eigenvalues.size())
        throw std::invalid_argument("sobolev_norm: coefficient count must match spectrum");
    double acc = 0.0;
    for (size_t k = 0; k < c.size(); ++k)
        acc += std::pow(s.eigenvalues[k], d) * detail::abs_sq(c[k]);
    return std::sqrt(acc);
}
inline double sobolev_norm(const CoeffVec& c, double d, const Spectrum& s) {
    return sobolev_norm(std::span<const double>(c), d, s);
}
inline double sobolev_norm(const ComplexCoeffVec& c, double d, const Spectrum& s) {
    return sobolev_norm(std::span<const std::complex<double>>(c), d, s);
}

/// Entrywise lambda_k c_k (the diagonal action of L).
template <class Scalar>
std::vector<Scalar> apply_L(const std::vector<Scalar>& c, const Spectrum& s) {
    if (c.size() != s.eigenvalues.size())
        throw std::invalid_argument("apply_L: coefficient count must match spectrum");
    std::vector<Scalar> out(c.size());
    for (size_t k = 0; k < c.size(); ++k) out[k] = c[k] * s.eigenvalues[k];
    return out;
}

/// Per-mode tail proxies lambda_k^(d/2) |c_k| used as the truncation gate.
std::vector<double> mode_tail_proxies(const CoeffVec& c, double d, const Spectrum& s);

struct TrajectoryNorms {
    double sup_state = 0.0;  // sup over lattice points of ||u(t)||_{H^d}
    double sup_rate = 0.0;   // sup over interior points of ||D_q u(t)||_{H^d}
};

/// Suprema over the lattice; D_q in time is the per-mode difference quotient
/// at interior points.
TrajectoryNorms trajectory_norms(const CoeffTrajectory& tr, double d, const Spectrum& s);

}  // namespace qheat
