#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "corona_lab/blaschke.hpp"
#include "corona_lab/function_spec.hpp"

namespace corona_lab {

/// Closed-disc sampling grid: the origin, `radial` rings at radii
/// 1 - ratio^i (i = 1..radial) with `angular` points each, and `boundary`
/// points on the unit circle.
struct GridSpec {
    int radial = 48;
    int angular = 128;
    int boundary = 512;
    double ratio = 0.9;

    /// Counts >= 8 and 0 < ratio < 1.
    void validate() const;
    std::vector<Complex> nodes() const;
    /// Doubles every count and takes sqrt(ratio); the result contains every node of *this.
    GridSpec refined() const;
};

struct DeltaReport {
    double delta = 0.0;
    Complex argmin;
};

/// min over the grid of sum_k |f_k|; ties go to the lowest grid index.
DeltaReport measure_delta(std::span<const FunctionSpec> functions, const GridSpec& grid);

struct CoronaInstance {
    std::vector<FunctionSpec> functions;
    GridSpec grid;
    double delta_hat = 0.0;

    /// Measures delta_hat on `grid`.
    static CoronaInstance make(std::vector<FunctionSpec> functions, GridSpec grid = {});
};

struct BezoutCertificate {
    std::vector<FunctionSpec> solutions;
    double residual_sup = 0.0;           // max |sum f_k g_k - 1| on the verification grid
    std::vector<double> norm_report;     // boundary maxima of |g_k|
    std::string method;                  // "exact", "exact_rational" or "numeric"
    int degree = 0;                      // largest solution degree (numeric: degree used)
    double tolerance = 0.0;
    bool passed = false;
};

/// Exact Bezout cofactors for polynomial data by iterated extended Euclid over
/// Gaussian rationals (every double is a dyadic rational, so the arithmetic is
/// exact). A nonconstant gcd without zeros in the closed disc yields rational
/// solutions u_k / gcd; a gcd with a zero in the closed disc throws
/// UnsolvableError.
BezoutCertificate bezout_exact(std::span<const FunctionSpec> polynomials);

struct NumericOptions {
    double tolerance = 1e-8;
    int fit_nodes = 256;        // lower bound; grows with the number of unknowns
    double delta_floor = 1e-12; // delta_hat at or below this violates the corona condition
};

/// Polynomial g_k of degree <= degree_cap minimizing the boundary mean-square
/// residual; degrees 1, 2, 4, ... up to the cap are tried until the residual
/// on the (distinct, finer) verification grid meets the tolerance.
BezoutCertificate bezout_numeric(const CoronaInstance& instance, int degree_cap, const NumericOptions& options = {});

/// max |sum f_k g_k - 1| over the verification nodes used by the solvers.
double certificate_residual(std::span<const FunctionSpec> functions, std::span<const FunctionSpec> solutions,
                            std::span<const Complex> nodes);

struct CheckReport {
    bool pass = false;
    double residual_sup = 0.0;
    Complex worst_point;
    std::vector<double> norm_report;
    std::size_t points_checked = 0;
    bool count_mismatch = false;
};

/// Recomputes the residual at `random_points` seeded random points of the
/// closed disc plus a jittered boundary ring, independent of the solver grids.
CheckReport check_certificate(const CoronaInstance& instance, const BezoutCertificate& cert, double tol,
                              std::uint64_t seed = 0, int random_points = 10000);

struct ClusterReport {
    bool extracted = false;
    std::string message;
    std::vector<std::size_t> indices;   // ascending indices into the sequence
    std::vector<Complex> limit;         // values at the deepest extracted index
    bool neighborhood_ok = false;       // every extracted point within eps of the limit, all k at once
    double max_deviation = 0.0;
};

/// Bolzano-Weierstrass by box halving on the value vectors (f_1(c_j), ..., f_N(c_j)):
/// keep the more populated half until every side is below eps / 2.
ClusterReport cluster_scenario(std::span<const FunctionSpec> functions, const DiscSequence& seq, double eps,
                               std::size_t min_points = 3);

}  // namespace corona_lab
