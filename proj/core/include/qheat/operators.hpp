#pragma once

#include <vector>

#include "qheat/spectral.hpp"

namespace qheat {

/// Differential operator with involution on (0, pi) with Dirichlet conditions,
/// realized as -u''(x) + eps u''(pi - x). Eigenfunctions sqrt(2/pi) sin(n x);
/// eigenvalues 4(1+eps)k^2 for n = 2k and (1-eps)(2k+1)^2 for n = 2k+1.
struct InvolutionOperator {
    double epsilon = 0.0;
    int modes = 8;        // K
    int grid_points = 0;  // N_x intervals on [0, pi], even, >= 8K

    static InvolutionOperator make(double epsilon, int modes, int grid_points = 0);
};

/// Samples on the uniform grid {i pi / N_x : 0 <= i <= N_x}.
struct SpatialFn {
    int grid_points = 0;  // N_x
    std::vector<double> values;

    SpatialFn() = default;
    SpatialFn(int grid_points, std::vector<double> values);
    double x(int i) const;
    static SpatialFn sample(int grid_points, const std::function<double(double)>& f);
};

/// Merged ascending eigenvalue sequence of the two involution families,
/// truncated to K modes; labels carry the eigenfunction index n. Ties at
/// degenerate crossings break toward the lower n.
Spectrum involution_spectrum(double epsilon, int K);

/// Landau level sequence (2n+1) B, n = 0..K-1, multiplicity collapsed.
Spectrum landau_spectrum(double B, int K);

/// User-supplied ascending eigenvalues above a strict lower bound.
Spectrum custom_spectrum(std::vector<double> values, double lambda0);

/// c_n = <f, sqrt(2/pi) sin(n x)> by composite Simpson on the grid.
/// Rejects f violating the Dirichlet boundary values.
CoeffVec forward_transform(const SpatialFn& f, const InvolutionOperator& op);

/// Pointwise synthesis sum_n c_n sqrt(2/pi) sin(n x) on the grid.
SpatialFn inverse_transform(const CoeffVec& c, const InvolutionOperator& op);

/// -f''(x) + eps f''(pi - x) by second-order central differences; the
/// reflected argument lands on the mirrored grid index. Boundary entries of
/// the output are zeroed and excluded from comparisons.
SpatialFn apply_involution(const SpatialFn& f, double epsilon);

/// Orthonormal eigenfunction sqrt(2/pi) sin(n x) sampled on the grid.
SpatialFn involution_eigenfunction(int n, int grid_points);

/// L2(0, pi) norm by composite Simpson.
double spatial_l2_norm(const SpatialFn& f);

}  // namespace qheat
