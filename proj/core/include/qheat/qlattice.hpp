#pragma once

#include <functional>
#include <vector>

namespace qheat {

/// Mixed absolute/relative comparison: |a - b| <= atol + rtol * max(|a|,|b|).
bool approx_eq(double a, double b, double atol = 1e-12, double rtol = 1e-12);

/// Deformation parameter plus the truncation depths and tolerances that
/// govern every infinite sum/product in the library.
struct QParams {
    double q = 0.5;
    int n_terms = 64;
    double tol = 1e-12;

    /// Default construction: n_terms is chosen so that the geometric tail
    /// q^n_terms of a Jackson sum with bounded integrand sits three decades
    /// below tol (64 suffices for q <= ~0.6, more terms as q -> 1).
    static QParams make(double q, double tol = 1e-12);

    /// Throws std::invalid_argument unless 0 < q < 1 (strict), n_terms >= 1,
    /// tol > 0.
    void validate() const;
};

/// Geometric tail bound q^(n_terms+1) reported as a truncation diagnostic.
double truncation_tail(const QParams& p);

/// Geometric time lattice {T q^m : 0 <= m <= M} with an explicit terminal 0.
/// points() is strictly decreasing and closed under q-scaling up to depth M.
class QLattice {
  public:
    QLattice(double scale, double q, int depth);

    double scale() const { return scale_; }
    double q() const { return q_; }
    int depth() const { return depth_; }
    /// depth+2 entries: [T, Tq, ..., Tq^M, 0].
    const std::vector<double>& points() const { return points_; }
    double point(int idx) const { return points_.at(static_cast<size_t>(idx)); }
    int size() const { return depth_ + 2; }
    /// Interior = q*t is also a lattice point, i.e. idx in [0, depth).
    bool is_interior(int idx) const { return idx >= 0 && idx < depth_; }

  private:
    double scale_;
    double q_;
    int depth_;
    std::vector<double> points_;
};

/// Samples of a time function on a QLattice, one value per point including 0.
struct LatticeFn {
    QLattice lattice;
    std::vector<double> values;

    LatticeFn(QLattice lat, std::vector<double> vals);
    static LatticeFn sample(const QLattice& lat, const std::function<double(double)>& f);
};

/// [alpha]_q = (1 - q^alpha) / (1 - q).
double q_number(double alpha, double q);

/// [n]_q! = [1]_q [2]_q ... [n]_q, empty product for n = 0.
double q_factorial(int n, double q);

/// D_q f(t) = (f(t) - f(qt)) / (t (1-q)) at lattice index idx.
/// Rejects idx at t = 0 or at the deepest positive point (q*t off-lattice).
double q_derivative(const LatticeFn& f, int idx);

/// Jackson integral (1-q) x sum_{m=0}^{n_terms} q^m f(x q^m).
/// Rejects x < 0 and surfaces non-finite integrand samples.
double jackson_integral(const std::function<double(double)>& f, double x, const QParams& p);

/// Small q-exponential, series sum_k x^k/[k]_q!; requires (1-q)|x| < 1.
/// The series ratio tends to (1-q)|x|, so the summation self-extends past
/// n_terms until terms stop moving the partial sum.
double q_exp_small(double x, const QParams& p);

/// Big q-exponential, product prod_{i=0}^{n_terms} (1 + (1-q) q^i x).
/// Requires every retained factor to be positive (always true for x >= 0).
double q_exp_big(double x, const QParams& p);

}  // namespace qheat
