#pragma once

#include <string>
#include <vector>

#include "qheat/operators.hpp"
#include "qheat/spectral.hpp"

namespace qheat {

/// Shortest 17-significant-digit decimal form; reproducible across runs.
std::string format_double(double v);

/// Whole-file write; content is assembled first so reruns are byte-identical.
void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

/// Trajectory CSV, columns t,k,u with k 1-based; rows ordered by lattice
/// index (t descending, ending at 0), modes inner.
std::string trajectory_csv(const CoeffTrajectory& tr);

/// Recovered source CSV, columns k,f.
std::string source_csv(const CoeffVec& f);

struct SweepRow {
    double q = 0.0;
    int n_terms = 0;
    double u_horizon = 0.0;
    double classical = 0.0;
    double abs_error = 0.0;
};
std::string sweep_csv(const std::vector<SweepRow>& rows);

/// Spatial samples as CSV, columns x,value.
std::string spatial_csv(const SpatialFn& f);
SpatialFn read_spatial_csv(const std::string& path);

}  // namespace qheat
