#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "corona_lab/disc_geometry.hpp"

namespace corona_lab {

/// One normalized factor (conj(a)/|a|)(a - z)/(1 - conj(a) z); for a = 0 the
/// factor is z (the -1 convention for conj(a)/|a|).
Complex blaschke_factor(Complex zero, Complex z);
Complex blaschke_factor_derivative(Complex zero, Complex z);

/// Finite Blaschke product e^{i rotation} prod_k factor(z_k, z).
/// Zeros carry multiplicity by repetition.
class BlaschkeProduct {
public:
    BlaschkeProduct() = default;
    explicit BlaschkeProduct(std::vector<DiscPoint> zeros, double rotation = 0.0);

    const std::vector<DiscPoint>& zeros() const noexcept { return zeros_; }
    double rotation() const noexcept { return rotation_; }
    std::size_t degree() const noexcept { return zeros_.size(); }

    /// Requires |z| <= 1 (+1e-12).
    Complex evaluate(Complex z) const;
    Complex evaluate(DiscPoint z) const { return evaluate(z.value()); }
    Complex evaluate(CirclePoint z) const { return evaluate(z.value()); }

    /// Analytic derivative by the product rule (prefix/suffix products), exact at zeros.
    Complex derivative(Complex z) const;

    /// sum_k (1 - |z_k|).
    double blaschke_sum() const;

    /// Product of two Blaschke products: zero lists concatenated, rotations added.
    friend BlaschkeProduct operator*(const BlaschkeProduct& a, const BlaschkeProduct& b);

private:
    std::vector<DiscPoint> zeros_;
    double rotation_ = 0.0;
};

struct TruncatedValue {
    Complex value;
    double tail_radius = 0.0;
};

// Truncation of an infinite product: `head` holds the retained zeros and
// tail_mass bounds sum (1 - |z_k|) over the omitted ones. Each omitted factor
// satisfies |1 - factor(z)| <= (1+|z|)/(1-|z|) (1-|z_k|), so the full product
// differs from the head by at most exp(M tail_mass) - 1.
TruncatedValue evaluate_with_tail(const BlaschkeProduct& head, double tail_mass, Complex z);

/// max(0, 1 - (1+eta)/(1-eta) * sum (1 - |z_k|)); a lower bound for |B| on |z| <= eta.
double modulus_lower_bound(const BlaschkeProduct& b, double eta);
double modulus_lower_bound_from_sum(double blaschke_sum, double eta);

/// B o L_c as a Blaschke product: zeros L_c^{-1}(z_k), rotation chosen so the
/// two agree pointwise.
BlaschkeProduct compose_with_mobius(const BlaschkeProduct& b, DiscPoint c);

struct TransportTerm {
    double transported;  // 1 - |L_c^{-1}(z_k)|
    double bound;        // (1+|c|)/(1-|c|) (1 - |z_k|)
};
std::vector<TransportTerm> transport_diagnostics(const BlaschkeProduct& b, DiscPoint c);

/// 1 - |L_c^{-1}(z)| without cancellation when z and c approach the same boundary point.
double transported_defect(DiscPoint c, DiscPoint z);

struct CarlesonDiagnostics {
    double constant = 1.0;       // min_k tail[k]
    std::vector<double> tail;    // tail[k] = prod_{j != k} rho(z_j, z_k)
};

/// Finite truncation of a disc sequence with its separation diagnostics.
class DiscSequence {
public:
    DiscSequence() = default;
    explicit DiscSequence(std::vector<DiscPoint> points);

    const std::vector<DiscPoint>& points() const noexcept { return points_; }
    std::size_t size() const noexcept { return points_.size(); }
    const DiscPoint& operator[](std::size_t i) const { return points_[i]; }

    double blaschke_sum() const noexcept { return blaschke_sum_; }
    const CarlesonDiagnostics& diagnostics() const noexcept { return diagnostics_; }

private:
    std::vector<DiscPoint> points_;
    double blaschke_sum_ = 0.0;
    CarlesonDiagnostics diagnostics_;
};

CarlesonDiagnostics carleson_diagnostics(std::span<const DiscPoint> points);
inline CarlesonDiagnostics carleson_diagnostics(const DiscSequence& seq) { return seq.diagnostics(); }

/// S[s,t) = { r e^{i theta} : s <= r < t, |theta| <= (1 - ell)/2 }.
struct Sector {
    double ell = 0.5;
    double s = 0.5;
    double t = 1.0;

    /// Validates 0 < ell < 1 and ell <= s < t <= 1.
    static Sector make(double ell, double s, double t);

    double half_angle() const noexcept { return 0.5 * (1.0 - ell); }
    bool contains(Complex z) const;
};

std::vector<DiscPoint> sector_filter(std::span<const DiscPoint> zeros, const Sector& sector);

}  // namespace corona_lab
