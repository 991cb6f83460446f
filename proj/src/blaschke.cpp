#include "corona_lab/blaschke.hpp"

#include <algorithm>
#include <cmath>

#include "corona_lab/errors.hpp"

namespace corona_lab {

namespace {

void require_closed_disc(Complex z) {
    if (!(std::abs(z) <= 1.0 + 1e-12)) {
        throw DomainError("Blaschke evaluation requires |z| <= 1");
    }
}

// Unimodular constant lambda with factor(a, L_c(zeta)) = lambda * factor(L_c^{-1}(a), zeta).
Complex transport_constant(Complex a, Complex c) {
    if (a == Complex(0.0, 0.0)) {
        return c == Complex(0.0, 0.0) ? Complex(1.0, 0.0) : c / std::abs(c);
    }
    const Complex unit = std::conj(a) / std::abs(a);
    const Complex diff = a - c;
    if (diff == Complex(0.0, 0.0)) {
        return -unit;
    }
    // lambda = factor(a, c) / |L_c^{-1}(a)|
    const Complex value_at_c = unit * diff / one_minus_conj_product(a, c);
    const double transported_abs = std::abs(diff) / std::abs(one_minus_conj_product(c, a));
    return value_at_c / transported_abs;
}

}  // namespace

Complex blaschke_factor(Complex zero, Complex z) {
    if (zero == Complex(0.0, 0.0)) {
        return z;
    }
    return (std::conj(zero) / std::abs(zero)) * (zero - z) / one_minus_conj_product(zero, z);
}

Complex blaschke_factor_derivative(Complex zero, Complex z) {
    if (zero == Complex(0.0, 0.0)) {
        return {1.0, 0.0};
    }
    const Complex den = one_minus_conj_product(zero, z);
    return -(std::conj(zero) / std::abs(zero)) * one_minus_abs_sq(zero) / (den * den);
}

BlaschkeProduct::BlaschkeProduct(std::vector<DiscPoint> zeros, double rotation)
    : zeros_(std::move(zeros)), rotation_(canonical_angle(rotation)) {}

Complex BlaschkeProduct::evaluate(Complex z) const {
    require_closed_disc(z);
    Complex value = std::polar(1.0, rotation_);
    for (const DiscPoint& a : zeros_) {
        value *= blaschke_factor(a.value(), z);
    }
    return value;
}

Complex BlaschkeProduct::derivative(Complex z) const {
    require_closed_disc(z);
    const std::size_t n = zeros_.size();
    if (n == 0) {
        return {0.0, 0.0};
    }
    std::vector<Complex> factors(n);
    for (std::size_t k = 0; k < n; ++k) {
        factors[k] = blaschke_factor(zeros_[k].value(), z);
    }
    std::vector<Complex> suffix(n + 1, Complex(1.0, 0.0));
    for (std::size_t k = n; k-- > 0;) {
        suffix[k] = suffix[k + 1] * factors[k];
    }
    Complex prefix(1.0, 0.0);
    Complex sum(0.0, 0.0);
    for (std::size_t k = 0; k < n; ++k) {
        sum += prefix * blaschke_factor_derivative(zeros_[k].value(), z) * suffix[k + 1];
        prefix *= factors[k];
    }
    return std::polar(1.0, rotation_) * sum;
}

double BlaschkeProduct::blaschke_sum() const {
    double total = 0.0;
    for (const DiscPoint& a : zeros_) {
        total += one_minus_abs(a.value());
    }
    return total;
}

BlaschkeProduct operator*(const BlaschkeProduct& a, const BlaschkeProduct& b) {
    std::vector<DiscPoint> zeros = a.zeros_;
    zeros.insert(zeros.end(), b.zeros_.begin(), b.zeros_.end());
    return BlaschkeProduct(std::move(zeros), a.rotation_ + b.rotation_);
}

TruncatedValue evaluate_with_tail(const BlaschkeProduct& head, double tail_mass, Complex z) {
    if (tail_mass < 0.0) {
        throw DomainError("evaluate_with_tail: tail mass must be nonnegative");
    }
    const Complex value = head.evaluate(z);
    const double r = std::abs(z);
    if (tail_mass == 0.0) {
        return {value, 0.0};
    }
    if (r >= 1.0) {
        // Boundary values of the omitted factors are not controlled pointwise.
        return {value, 2.0};
    }
    const double m = (1.0 + r) / (1.0 - r);
    return {value, std::min(2.0, std::expm1(m * tail_mass))};
}

double modulus_lower_bound_from_sum(double blaschke_sum, double eta) {
    if (!(eta > 0.0 && eta < 1.0)) {
        throw DomainError("modulus_lower_bound: eta must lie in (0, 1)");
    }
    const double m = (1.0 + eta) / (1.0 - eta);
    return std::max(0.0, 1.0 - m * blaschke_sum);
}

double modulus_lower_bound(const BlaschkeProduct& b, double eta) {
    return modulus_lower_bound_from_sum(b.blaschke_sum(), eta);
}

double transported_defect(DiscPoint c, DiscPoint z) {
    // 1 - |L_c^{-1}(z)|^2 = (1 - |c|^2)(1 - |z|^2) / |1 - conj(c) z|^2
    const Complex den = one_minus_conj_product(c.value(), z.value());
    const double defect_sq = one_minus_abs_sq(c.value()) * one_minus_abs_sq(z.value()) / std::norm(den);
    const double modulus = std::abs(z.value() - c.value()) / std::abs(den);
    return defect_sq / (1.0 + modulus);
}

BlaschkeProduct compose_with_mobius(const BlaschkeProduct& b, DiscPoint c) {
    if (c.value() == Complex(0.0, 0.0)) {
        return b;
    }
    const MobiusAut lc(c);
    std::vector<DiscPoint> zeros;
    zeros.reserve(b.degree());
    Complex rotation = std::polar(1.0, b.rotation());
    for (const DiscPoint& a : b.zeros()) {
        zeros.push_back(lc.inverse_apply(a));
        rotation *= transport_constant(a.value(), c.value());
    }
    return BlaschkeProduct(std::move(zeros), std::arg(rotation));
}

std::vector<TransportTerm> transport_diagnostics(const BlaschkeProduct& b, DiscPoint c) {
    const double rc = c.abs();
    const double m = (1.0 + rc) / (1.0 - rc);
    std::vector<TransportTerm> out;
    out.reserve(b.degree());
    for (const DiscPoint& a : b.zeros()) {
        out.push_back({transported_defect(c, a), m * one_minus_abs(a.value())});
    }
    return out;
}

CarlesonDiagnostics carleson_diagnostics(std::span<const DiscPoint> points) {
    CarlesonDiagnostics d;
    d.tail.assign(points.size(), 1.0);
    for (std::size_t k = 0; k < points.size(); ++k) {
        double product = 1.0;
        for (std::size_t j = 0; j < points.size(); ++j) {
            if (j != k) {
                product *= pseudo_distance(points[j], points[k]);
            }
        }
        d.tail[k] = product;
    }
    d.constant = d.tail.empty() ? 1.0 : *std::min_element(d.tail.begin(), d.tail.end());
    return d;
}

DiscSequence::DiscSequence(std::vector<DiscPoint> points)
    : points_(std::move(points)), diagnostics_(carleson_diagnostics(points_)) {
    for (const DiscPoint& p : points_) {
        blaschke_sum_ += one_minus_abs(p.value());
    }
}

Sector Sector::make(double ell, double s, double t) {
    if (!(ell > 0.0 && ell < 1.0)) {
        throw DomainError("Sector: ell must lie in (0, 1)");
    }
    if (!(ell <= s && s < t && t <= 1.0)) {
        throw DomainError("Sector: require ell <= s < t <= 1");
    }
    return Sector{ell, s, t};
}

bool Sector::contains(Complex z) const {
    const double r = std::abs(z);
    if (!(r >= s && r < t)) {
        return false;
    }
    return std::abs(std::arg(z)) <= half_angle();
}

std::vector<DiscPoint> sector_filter(std::span<const DiscPoint> zeros, const Sector& sector) {
    std::vector<DiscPoint> out;
    for (const DiscPoint& z : zeros) {
        if (sector.contains(z.value())) {
            out.push_back(z);
        }
    }
    return out;
}

}  // namespace corona_lab
