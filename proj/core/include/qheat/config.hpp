#pragma once

#include <string>
#include <vector>

namespace qheat {

/// Batch-run configuration, parsed from a strict JSON document: unknown keys
/// are rejected at every nesting level, and every module-level invariant is
/// re-validated when the run is assembled.
struct RunConfig {
    enum class Command { direct, inverse, verify, sweep };

    struct OperatorSpec {
        enum class Kind { involution, landau, custom };
        Kind kind = Kind::involution;
        double epsilon = 0.0;               // involution
        double field = 1.0;                 // landau B
        std::vector<double> eigenvalues;    // custom
        double lambda0 = 0.0;               // custom
        int grid_points = 0;                // involution N_x; 0 -> 8K
    };

    /// Named time-profile family a (+ b t) with caller-declared bounds.
    struct ProfileSpec {
        bool affine = false;
        double a = 1.0;
        double b = 0.0;
        double lower = 0.0;  // alpha (upsilon) or alpha0 (g)
        double upper = 0.0;  // beta  (upsilon) or beta0  (g)
        bool provided = false;
        double operator()(double t) const { return affine ? a + b * t : a; }
    };

    struct DataSpec {
        std::vector<double> coeffs;
        std::string spatial_csv;
        bool provided = false;
    };

    struct SourceSpec {
        enum class Amplitudes { list, exponential, geometric };
        Amplitudes amp = Amplitudes::list;
        std::vector<double> amplitudes;
        double ratio = 0.5;       // geometric decay ratio
        bool shape_affine = false;
        double shape_a = 1.0;
        double shape_b = 0.0;
        std::string spatial_csv;  // amplitudes by projection instead of a list
        bool provided = false;
        double shape(double t) const { return shape_affine ? shape_a + shape_b * t : shape_a; }
    };

    struct SweepSpec {
        std::vector<double> q_values;
        double lambda = 1.0;
        double phi = 1.0;
        bool provided = false;
    };

    Command command = Command::direct;
    double q = 0.5;
    double horizon = 1.0;   // T
    int modes = 8;          // K
    double sobolev_order = 0.0;
    int lattice_depth = 0;  // 0 -> n_terms
    int n_terms = 0;        // 0 -> adaptive default for q
    double tol = 1e-12;
    OperatorSpec op;
    ProfileSpec upsilon;
    ProfileSpec g;
    DataSpec phi;
    DataSpec eta;
    SourceSpec source;
    SweepSpec sweep;

    static RunConfig parse(const std::string& json_text);
    static RunConfig load(const std::string& path);

    /// Field-level validation (ranges, required sections per command).
    /// Throws std::invalid_argument naming the offending field.
    void validate() const;

    int effective_n_terms() const;
    int effective_depth() const;
};

}  // namespace qheat
