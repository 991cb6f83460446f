#pragma once

#include <complex>
#include <numbers>

namespace corona_lab {

using Complex = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Default tolerances: algebraic identities vs. sampled geometric checks.
inline constexpr double kAlgebraicTol = 1e-12;
inline constexpr double kGeometricTol = 1e-10;

/// Maps any finite angle to its representative in [-pi, pi).
double canonical_angle(double theta);

/// A point of the open unit disc. Construction rejects |z| >= 1.
class DiscPoint {
public:
    DiscPoint() = default;
    explicit DiscPoint(Complex z);
    DiscPoint(double re, double im) : DiscPoint(Complex(re, im)) {}

    /// For images of disc points under exact disc maps: a value pushed onto or
    /// past the unit circle by rounding is pulled back to the largest radius
    /// representable below 1. Non-finite input still throws.
    static DiscPoint from_image(Complex z);

    Complex value() const noexcept { return z_; }
    double re() const noexcept { return z_.real(); }
    double im() const noexcept { return z_.imag(); }
    double abs() const noexcept { return std::abs(z_); }

    friend bool operator==(const DiscPoint&, const DiscPoint&) = default;

private:
    Complex z_{0.0, 0.0};
};

/// A point e^{i theta} of the unit circle, theta kept in [-pi, pi).
class CirclePoint {
public:
    CirclePoint() = default;
    explicit CirclePoint(double theta);

    double theta() const noexcept { return theta_; }
    Complex value() const noexcept { return std::polar(1.0, theta_); }

private:
    double theta_ = 0.0;
};

// Cancellation-free helpers for points close to the boundary point 1.
/// 1 - |z|^2, evaluated as (1 - x)(1 + x) - y^2.
double one_minus_abs_sq(Complex z);
/// 1 - |z|, via (1 - |z|^2) / (1 + |z|).
double one_minus_abs(Complex z);
/// 1 - conj(c) z, evaluated as (1 - conj(c)) + conj(c)(1 - z).
Complex one_minus_conj_product(Complex c, Complex z);

/// The disc automorphism z -> e^{i rotation} (z + c) / (1 + conj(c) z).
class MobiusAut {
public:
    explicit MobiusAut(DiscPoint c, double rotation = 0.0);

    DiscPoint center() const noexcept { return c_; }
    double rotation() const noexcept { return rotation_; }

    /// Accepts |z| <= 1 (+1e-12); throws DomainError otherwise.
    Complex apply(Complex z) const;
    DiscPoint apply(DiscPoint z) const;
    CirclePoint apply(CirclePoint z) const;

    /// Inverse map w -> (e^{-i rotation} w - c) / (1 - conj(c) e^{-i rotation} w).
    Complex inverse_apply(Complex w) const;
    DiscPoint inverse_apply(DiscPoint w) const;
    CirclePoint inverse_apply(CirclePoint w) const;

    /// Complex derivative of apply() at z.
    Complex derivative(Complex z) const;

private:
    DiscPoint c_;
    double rotation_ = 0.0;
};

/// rho(z, w) = |z - w| / |1 - conj(w) z|.
double pseudo_distance(DiscPoint z, DiscPoint w);

struct EuclideanDisc {
    Complex center;
    double radius = 0.0;
};

/// The pseudo-hyperbolic disc {z : rho(z, c) < eta} as a Euclidean disc.
EuclideanDisc pseudo_disc_euclidean(DiscPoint c, double eta);

/// Point where the circle through e^{i alpha}, e^{i beta} orthogonal to the
/// unit circle meets the ray of angle (alpha + beta) / 2.
/// Requires 0 < beta - alpha < pi.
DiscPoint orthogonal_arc_midpoint(double alpha, double beta);

/// Arc from e^{i alpha} to e^{i beta} orthogonal to the unit circle.
struct OrthogonalArc {
    double alpha = 0.0;
    double beta = 0.0;
    DiscPoint midpoint;

    /// Canonicalizes both angles, then requires alpha < beta and beta - alpha < pi.
    static OrthogonalArc make(double alpha, double beta);

    /// Euclidean center and radius of the supporting circle.
    EuclideanDisc circle() const;
    /// | |p - center| - radius |.
    double distance_to_circle(Complex p) const;
};

/// Other endpoint (as an angle) of the orthogonal arc through e^{i theta} and c.
double orthogonal_arc_partner(DiscPoint c, double theta);

}  // namespace corona_lab
