#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "corona_lab/disc_geometry.hpp"
#include "corona_lab/function_spec.hpp"

namespace corona_lab {

/// Half-open angle range [a, b) with -pi <= a < b <= pi.
struct Interval {
    double a = 0.0;
    double b = 0.0;

    double length() const noexcept { return b - a; }
};

struct DensityPiece {
    double a = 0.0;
    double b = 0.0;
    double coeff = 0.0;
};

/// Nonnegative step density on the circle with unit mass against dm = dtheta / 2pi.
class SimpleDensity {
public:
    /// Validates disjointness, nonnegativity and unit mass (1e-12). Pieces are sorted by a.
    explicit SimpleDensity(std::vector<DensityPiece> pieces);

    /// Rescales the coefficients to unit mass before validating.
    static SimpleDensity normalized(std::vector<DensityPiece> pieces);
    /// Constant density on the union of the intervals.
    static SimpleDensity uniform(std::span<const Interval> intervals);

    const std::vector<DensityPiece>& pieces() const noexcept { return pieces_; }

    double value(double theta) const;
    /// Mass of [lo, hi) against s dm.
    double mass(double lo, double hi) const;
    double total_mass() const { return mass(-kPi, kPi); }
    double cdf(double theta) const { return mass(-kPi, theta); }

private:
    std::vector<DensityPiece> pieces_;
};

struct QuadratureConfig {
    int nodes = 4096;
    double tolerance = 1e-8;
};

struct QuadratureResult {
    Complex value;
    double error_estimate = 0.0;
};

/// Re[(e^{i theta} + z) / (e^{i theta} - z)] = (1 - |z|^2) / |e^{i theta} - z|^2.
double poisson_kernel(DiscPoint z, double theta);

/// Trapezoid rule for the integral of f(e^{i theta}) P_z(theta) dm; the error
/// estimate compares against half the nodes. Throws QuadratureError when it
/// exceeds config.tolerance.
QuadratureResult poisson_integral(const FunctionSpec& f, DiscPoint z, const QuadratureConfig& config = {});

/// Trapezoid rule for the integral of g(theta) P_z(theta) dm.
double poisson_average(const std::function<double(double)>& g, DiscPoint z, int nodes = 4096);

/// Gauss-Legendre panels on [a, b) for the integral of g dtheta / 2pi, with
/// roughly nodes * (b - a) / 2pi evaluation points.
QuadratureResult integrate_arc(const std::function<Complex(double)>& g, double a, double b, int nodes);

/// Integral of f(e^{i theta}) s(theta) dm.
QuadratureResult integrate_against(const FunctionSpec& f, const SimpleDensity& s, int nodes = 4096);

struct TargetEntry {
    FunctionSpec f;
    Complex value;
};

/// Finitely many prescribed values standing in for a representing measure.
struct TargetFunctional {
    std::vector<TargetEntry> entries;

    /// |value| <= sup-norm estimate for every entry.
    bool is_consistent() const;
};

struct FitOptions {
    // Partition intervals must lie inside [-window, window].
    double window = kPi;
    // Weight of the pull toward the uniform density; makes the fit unique.
    double regularization = 1e-8;
    int nodes = 4096;
};

struct DensityFit {
    SimpleDensity density;
    std::vector<double> residuals;  // |value_k - integral f_k s dm|
};

/// Equal-width partition of (-window, window), `per_side` intervals on each side of 0.
std::vector<Interval> make_partition(double window, int per_side);

/// Nonnegative unit-mass step density on `partition` matching every target within eps.
/// Throws InfeasibleError (carrying the best residuals) when it cannot.
DensityFit fit_simple_density(const TargetFunctional& targets, std::span<const Interval> partition,
                              double eps, const FitOptions& options = {});

enum class QuartileCase { left, straddle, right };

std::string to_string(QuartileCase c);

struct QuartilePair {
    double alpha = 0.0;
    double beta = 0.0;
    QuartileCase case_tag = QuartileCase::straddle;
    double mass_on_right = 0.0;  // mass of [0, window)
};

/// Leftmost alpha with cdf = 1/4 and rightmost beta with tail mass 1/4; the
/// case tag classifies the mass on [0, window) against 1/4 and 3/4.
QuartilePair quartiles(const SimpleDensity& s, double window = kPi);

enum class AlignCase { a, b, c };

AlignCase align_case_from_string(const std::string& name);

struct AlignedDensity {
    SimpleDensity density;
    QuartilePair quartiles;
    OrthogonalArc arc;           // arc through the new quartile endpoints
    double midpoint_error = 0.0; // distance of the target midpoint from that arc's circle
};

/// Reweights s_sharp (splitting its pieces at the new quartile points) so that
/// its quartile arc passes through the midpoint of `target`.
AlignedDensity align_arcs(const SimpleDensity& s_sharp, const OrthogonalArc& target, AlignCase which);

/// u(theta) = s(L_c(e^{i theta})) |L_c'(e^{i theta})|.
class PushforwardDensity {
public:
    PushforwardDensity(SimpleDensity s, DiscPoint c);

    double operator()(double theta) const;

    /// Preimages of the pieces of s under theta -> arg L_c(e^{i theta}),
    /// split at -pi when they wrap. `coeff` is the value of s o L_c there.
    const std::vector<DensityPiece>& preimage_pieces() const noexcept { return preimages_; }

    const SimpleDensity& source() const noexcept { return s_; }
    DiscPoint center() const noexcept { return c_; }

    /// Integral of (f o L_c) u dm.
    QuadratureResult integrate(const FunctionSpec& f, int nodes = 4096) const;
    QuadratureResult integrate(const std::function<Complex(Complex)>& f, int nodes = 4096) const;
    /// Mass of u dm over each preimage piece, in preimage_pieces() order.
    std::vector<double> piece_masses(int nodes = 4096) const;
    double total_mass(int nodes = 4096) const;

private:
    SimpleDensity s_;
    DiscPoint c_;
    std::vector<DensityPiece> preimages_;
};

PushforwardDensity pushforward_density(const SimpleDensity& s, DiscPoint c);

}  // namespace corona_lab
