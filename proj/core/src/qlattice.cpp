#include "qheat/qlattice.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace qheat {

bool approx_eq(double a, double b, double atol, double rtol) {
    return std::abs(a - b) <= atol + rtol * std::max(std::abs(a), std::abs(b));
}

QParams QParams::make(double q, double tol) {
    QParams p;
    p.q = q;
    p.tol = tol;
    p.n_terms = 64;
    if (q > 0.0 && q < 1.0 && tol > 0.0) {
        double n = std::ceil(std::log(tol * 1e-3) / std::log(q));
        if (n > 64.0) p.n_terms = static_cast<int>(n);
    }
    p.validate();
    return p;
}

void QParams::validate() const {
    if (!(q > 0.0) || !(q < 1.0))
        throw std::invalid_argument("QParams: q must satisfy 0 < q < 1, got " + std::to_string(q));
    if (n_terms < 1)
        throw std::invalid_argument("QParams: n_terms must be >= 1");
    if (!(tol > 0.0) || !std::isfinite(tol))
        throw std::invalid_argument("QParams: tol must be positive");
}

double truncation_tail(const QParams& p) {
    return std::pow(p.q, p.n_terms + 1);
}

QLattice::QLattice(double scale, double q, int depth) : scale_(scale), q_(q), depth_(depth) {
    if (!(scale > 0.0) || !std::isfinite(scale))
        throw std::invalid_argument("QLattice: scale must be positive");
    if (!(q > 0.0) || !(q < 1.0))
        throw std::invalid_argument("QLattice: q must satisfy 0 < q < 1");
    if (depth < 1) throw std::invalid_argument("QLattice: depth must be >= 1");
    points_.reserve(static_cast<size_t>(depth) + 2);
    points_.push_back(scale);
    for (int m = 0; m < depth; ++m) points_.push_back(points_.back() * q);
    points_.push_back(0.0);
}

LatticeFn::LatticeFn(QLattice lat, std::vector<double> vals)
    : lattice(std::move(lat)), values(std::move(vals)) {
    if (values.size() != static_cast<size_t>(lattice.size()))
        throw std::invalid_argument("LatticeFn: values size must match lattice point count");
    for (size_t i = 0; i < values.size(); ++i)
        if (!std::isfinite(values[i]))
            throw std::invalid_argument("LatticeFn: non-finite sample at index " + std::to_string(i));
}

LatticeFn LatticeFn::sample(const QLattice& lat, const std::function<double(double)>& f) {
    std::vector<double> vals;
    vals.reserve(static_cast<size_t>(lat.size()));
    for (double t : lat.points()) vals.push_back(f(t));
    return LatticeFn(lat, std::move(vals));
}

double q_number(double alpha, double q) {
    if (!(q > 0.0) || !(q < 1.0))
        throw std::invalid_argument("q_number: q must satisfy 0 < q < 1");
    return (1.0 - std::pow(q, alpha)) / (1.0 - q);
}

double q_factorial(int n, double q) {
    if (n < 0) throw std::invalid_argument("q_factorial: n must be >= 0");
    double r = 1.0;
    for (int j = 1; j <= n; ++j) r *= q_number(j, q);
    return r;
}

double q_derivative(const LatticeFn& f, int idx) {
    const QLattice& lat = f.lattice;
    if (idx < 0 || idx >= lat.size())
        throw std::invalid_argument("q_derivative: index out of range");
    if (!lat.is_interior(idx))
        throw std::invalid_argument(
            "q_derivative: undefined at t = 0 and at points whose q-scaling leaves the lattice");
    double t = lat.point(idx);
    return (f.values[static_cast<size_t>(idx)] - f.values[static_cast<size_t>(idx) + 1]) /
           (t * (1.0 - lat.q()));
}

double jackson_integral(const std::function<double(double)>& f, double x, const QParams& p) {
    p.validate();
    if (!(x >= 0.0) || !std::isfinite(x))
        throw std::invalid_argument("jackson_integral: x must be >= 0");
    if (x == 0.0) return 0.0;
    double sum = 0.0;
    double w = 1.0;  // q^m
    double s = x;    // x q^m
    for (int m = 0; m <= p.n_terms; ++m) {
        double fs = f(s);
        if (!std::isfinite(fs))
            throw std::domain_error("jackson_integral: non-finite integrand at t = " +
                                    std::to_string(s));
        sum += w * fs;
        w *= p.q;
        s *= p.q;
    }
    return (1.0 - p.q) * x * sum;
}

double q_exp_small(double x, const QParams& p) {
    p.validate();
    double r = (1.0 - p.q) * std::abs(x);
    if (!(r < 1.0))
        throw std::invalid_argument("q_exp_small: requires (1-q)|x| < 1 for convergence");
    if (x == 0.0) return 1.0;
    // terms can grow to a peak before decaying with ratio -> (1-q)|x| < 1, so
    // run to the machine-convergence exit below; the cap is a safety net only
    const int cap = std::max(p.n_terms, 1000000);
    // extended-precision accumulation: near the edge of the convergence strip
    // the alternating partial sums cancel several orders above the limit
    long double sum = 1.0L;
    long double term = 1.0L;
    long double qk = 1.0L;  // q^k
    const long double ratio = x * (1.0L - static_cast<long double>(p.q));
    for (int k = 1; k <= cap; ++k) {
        qk *= p.q;
        term *= ratio / (1.0L - qk);  // x / [k]_q
        long double next = sum + term;
        if (next == sum && std::abs(static_cast<double>(term)) < std::abs(x) * 1e-20 + 1e-300)
            break;
        sum = next;
    }
    return static_cast<double>(sum);
}

double q_exp_big(double x, const QParams& p) {
    p.validate();
    double prod = 1.0;
    double c = (1.0 - p.q) * x;  // (1-q) q^i x
    for (int i = 0; i <= p.n_terms; ++i) {
        double factor = 1.0 + c;
        if (!(factor > 0.0))
            throw std::invalid_argument("q_exp_big: nonpositive product factor at i = " +
                                        std::to_string(i) + " (x too negative)");
        if (factor == 1.0) break;
        prod *= factor;
        c *= p.q;
    }
    return prod;
}

}  // namespace qheat
