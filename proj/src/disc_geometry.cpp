#include "corona_lab/disc_geometry.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "corona_lab/errors.hpp"

namespace corona_lab {

namespace {

constexpr double kBoundarySlack = 1e-12;

void require_closed_disc(Complex z, const char* what) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()) || std::abs(z) > 1.0 + kBoundarySlack) {
        std::ostringstream os;
        os << what << ": point (" << z.real() << ", " << z.imag() << ") is outside the closed unit disc";
        throw DomainError(os.str());
    }
}

Complex checked_quotient(Complex num, Complex den) {
    if (std::abs(den) < kAlgebraicTol) {
        throw DomainError("Mobius map: denominator vanishes (conj(c) z = -1)");
    }
    return num / den;
}

}  // namespace

double canonical_angle(double theta) {
    if (!std::isfinite(theta)) {
        throw DomainError("angle must be finite");
    }
    if (theta >= -kPi && theta < kPi) {
        return theta;
    }
    double t = std::fmod(theta + kPi, kTwoPi);
    if (t < 0.0) {
        t += kTwoPi;
    }
    t -= kPi;
    // fmod can land exactly on +pi after the shift.
    return t >= kPi ? -kPi : t;
}

DiscPoint::DiscPoint(Complex z) : z_(z) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()) || std::norm(z) >= 1.0 || std::abs(z) >= 1.0) {
        std::ostringstream os;
        os << "DiscPoint: (" << z.real() << ", " << z.imag() << ") is not in the open unit disc";
        throw DomainError(os.str());
    }
}

DiscPoint DiscPoint::from_image(Complex z) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
        throw DomainError("DiscPoint: non-finite image");
    }
    const double r = std::abs(z);
    if (r < 1.0 && std::norm(z) < 1.0) {
        return DiscPoint(z);
    }
    const double inside = std::nextafter(1.0, 0.0);
    Complex pulled = z * (inside / r);
    while (std::abs(pulled) >= 1.0 || std::norm(pulled) >= 1.0) {
        pulled *= inside;
    }
    return DiscPoint(pulled);
}

CirclePoint::CirclePoint(double theta) : theta_(canonical_angle(theta)) {}

double one_minus_abs_sq(Complex z) {
    const double x = z.real();
    const double y = z.imag();
    return (1.0 - x) * (1.0 + x) - y * y;
}

double one_minus_abs(Complex z) {
    return one_minus_abs_sq(z) / (1.0 + std::abs(z));
}

Complex one_minus_conj_product(Complex c, Complex z) {
    const Complex cb = std::conj(c);
    return (1.0 - cb) + cb * (1.0 - z);
}

MobiusAut::MobiusAut(DiscPoint c, double rotation) : c_(c), rotation_(canonical_angle(rotation)) {}

Complex MobiusAut::apply(Complex z) const {
    require_closed_disc(z, "mobius_apply");
    const Complex c = c_.value();
    // 1 + conj(c) z = 1 - conj(c)(-z)
    const Complex w = checked_quotient(z + c, one_minus_conj_product(c, -z));
    return rotation_ == 0.0 ? w : std::polar(1.0, rotation_) * w;
}

DiscPoint MobiusAut::apply(DiscPoint z) const {
    return DiscPoint::from_image(apply(z.value()));
}

CirclePoint MobiusAut::apply(CirclePoint z) const {
    return CirclePoint(std::arg(apply(z.value())));
}

Complex MobiusAut::inverse_apply(Complex w) const {
    require_closed_disc(w, "mobius_inverse_apply");
    const Complex c = c_.value();
    const Complex u = rotation_ == 0.0 ? w : std::polar(1.0, -rotation_) * w;
    return checked_quotient(u - c, one_minus_conj_product(c, u));
}

DiscPoint MobiusAut::inverse_apply(DiscPoint w) const {
    return DiscPoint::from_image(inverse_apply(w.value()));
}

CirclePoint MobiusAut::inverse_apply(CirclePoint w) const {
    return CirclePoint(std::arg(inverse_apply(w.value())));
}

Complex MobiusAut::derivative(Complex z) const {
    require_closed_disc(z, "mobius_derivative");
    const Complex c = c_.value();
    const Complex den = checked_quotient(1.0, one_minus_conj_product(c, -z));
    return std::polar(1.0, rotation_) * one_minus_abs_sq(c) * den * den;
}

double pseudo_distance(DiscPoint z, DiscPoint w) {
    const Complex num = z.value() - w.value();
    if (num == Complex(0.0, 0.0)) {
        return 0.0;
    }
    return std::abs(num) / std::abs(one_minus_conj_product(w.value(), z.value()));
}

EuclideanDisc pseudo_disc_euclidean(DiscPoint c, double eta) {
    if (!(eta > 0.0 && eta < 1.0)) {
        throw DomainError("pseudo_disc_euclidean: eta must lie in (0, 1)");
    }
    const double eta2 = eta * eta;
    const double c2 = std::norm(c.value());
    const double den = 1.0 - eta2 * c2;
    return {(1.0 - eta2) * c.value() / den, eta * one_minus_abs_sq(c.value()) / den};
}

DiscPoint orthogonal_arc_midpoint(double alpha, double beta) {
    const double width = beta - alpha;
    if (!(width > 0.0 && width < kPi)) {
        throw DomainError("orthogonal_arc_midpoint: beta - alpha must lie in (0, pi)");
    }
    const double gamma = 0.5 * width;
    // (1 - sin g) / cos g, written without cancellation as cos g / (1 + sin g)
    const double radius = std::cos(gamma) / (1.0 + std::sin(gamma));
    return DiscPoint(std::polar(radius, 0.5 * (alpha + beta)));
}

OrthogonalArc OrthogonalArc::make(double alpha, double beta) {
    const double a = canonical_angle(alpha);
    const double b = canonical_angle(beta);
    if (!(a < b)) {
        throw DomainError("OrthogonalArc: alpha must be smaller than beta after canonicalization");
    }
    return OrthogonalArc{a, b, orthogonal_arc_midpoint(a, b)};
}

EuclideanDisc OrthogonalArc::circle() const {
    const double gamma = 0.5 * (beta - alpha);
    return {std::polar(1.0 / std::cos(gamma), 0.5 * (alpha + beta)), std::tan(gamma)};
}

double OrthogonalArc::distance_to_circle(Complex p) const {
    const EuclideanDisc c = circle();
    return std::abs(std::abs(p - c.center) - c.radius);
}

double orthogonal_arc_partner(DiscPoint c, double theta) {
    // L_c^{-1} sends c to 0, so the arc becomes a diameter.
    const MobiusAut lc(c);
    const Complex w = lc.inverse_apply(std::polar(1.0, theta));
    return canonical_angle(std::arg(lc.apply(-w / std::abs(w))));
}

}  // namespace corona_lab
