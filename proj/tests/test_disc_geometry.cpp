#include <doctest.h>

#include "corona_lab/disc_geometry.hpp"
#include "corona_lab/errors.hpp"
#include "oracles.hpp"

using namespace corona_lab;

TEST_CASE("disc point rejects the boundary") {
    CHECK_THROWS_AS(DiscPoint(1.0, 0.0), DomainError);
    CHECK_THROWS_AS(DiscPoint(0.8, 0.8), DomainError);
    CHECK_NOTHROW(DiscPoint(0.999999, 0.0));
    CHECK(DiscPoint::from_image(Complex(1.0 + 1e-15, 0.0)).abs() < 1.0);
}

TEST_CASE("circle point canonical range") {
    CHECK(CirclePoint(kPi).theta() == doctest::Approx(-kPi));
    CHECK(CirclePoint(3.0 * kPi / 2.0).theta() == doctest::Approx(-kPi / 2.0));
    CHECK(canonical_angle(-kPi) == -kPi);
}

TEST_CASE("mobius apply anchors") {
    const MobiusAut m(DiscPoint(0.5, 0.0));
    CHECK(std::abs(m.apply(Complex(0.0)) - 0.5) < 1e-15);
    CHECK(std::abs(m.apply(Complex(-0.5))) < 1e-15);
    CHECK(std::abs(m.apply(Complex(0.5)) - 0.8) < 1e-15);
    CHECK(std::abs(m.inverse_apply(Complex(0.5))) < 1e-15);
    CHECK(std::abs(m.inverse_apply(Complex(0.0)) + 0.5) < 1e-15);
}

TEST_CASE("mobius inverse of 0.3i at 0.6 round trips") {
    const MobiusAut m(DiscPoint(0.0, 0.3));
    const Complex w = m.inverse_apply(Complex(0.6, 0.0));
    CHECK(std::abs(w - oracle::mobius_inverse(Complex(0.0, 0.3), 0.6)) < 1e-15);
    CHECK(std::abs(m.apply(w) - 0.6) < 1e-15);
}

TEST_CASE("mobius round trip on random points") {
    std::mt19937_64 rng(11);
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const MobiusAut m(DiscPoint(oracle::random_disc(rng, 0.99)), 0.3 * i);
        const Complex z = oracle::random_disc(rng, 0.999);
        worst = std::max(worst, std::abs(m.inverse_apply(m.apply(z)) - z));
    }
    CHECK(worst < 1e-12);
}

TEST_CASE("mobius maps circle to circle and rejects outside points") {
    const MobiusAut m(DiscPoint(0.3, -0.6), 1.1);
    for (int k = 0; k < 64; ++k) {
        const CirclePoint p(kTwoPi * k / 64.0);
        CHECK(std::abs(std::abs(m.apply(p).value()) - 1.0) < 1e-12);
        CHECK(std::abs(m.apply(p.value()) - oracle::mobius(Complex(0.3, -0.6), p.value()) * std::polar(1.0, 1.1)) <
              1e-12);
    }
    CHECK_THROWS_AS(m.apply(Complex(1.1, 0.0)), DomainError);
}

TEST_CASE("mobius derivative matches finite differences") {
    const MobiusAut m(DiscPoint(0.4, 0.2), 0.7);
    const Complex z(0.1, -0.3);
    const double h = 1e-6;
    const Complex fd = (m.apply(z + h) - m.apply(z - h)) / (2.0 * h);
    CHECK(std::abs(fd - m.derivative(z)) < 1e-8);
}

TEST_CASE("pseudo distance anchors and axioms") {
    const DiscPoint w(0.3, 0.4);
    CHECK(pseudo_distance(DiscPoint(0.0, 0.0), w) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(pseudo_distance(w, w) == 0.0);
    CHECK(std::abs(pseudo_distance(DiscPoint(0.5, 0.0), DiscPoint(-0.5, 0.0)) - 0.8) < 1e-15);

    std::mt19937_64 rng(3);
    double worst = 0.0;
    for (int i = 0; i < 200; ++i) {
        const DiscPoint z(oracle::random_disc(rng, 0.95)), v(oracle::random_disc(rng, 0.95));
        const MobiusAut m(DiscPoint(oracle::random_disc(rng, 0.9)), 0.1 * i);
        worst = std::max(worst, std::abs(pseudo_distance(z, v) - pseudo_distance(v, z)));
        worst = std::max(worst, std::abs(pseudo_distance(m.apply(z), m.apply(v)) - pseudo_distance(z, v)));
        worst = std::max(worst, std::abs(pseudo_distance(z, v) - oracle::rho_via_defect(z.value(), v.value())));
    }
    CHECK(worst < 1e-12);
}

TEST_CASE("pseudo disc as a euclidean disc") {
    const EuclideanDisc d0 = pseudo_disc_euclidean(DiscPoint(0.0, 0.0), 0.5);
    CHECK(std::abs(d0.center) == 0.0);
    CHECK(d0.radius == doctest::Approx(0.5));

    const EuclideanDisc d = pseudo_disc_euclidean(DiscPoint(0.5, 0.0), 0.5);
    CHECK(std::abs(d.center - 0.4) < 1e-15);
    CHECK(std::abs(d.radius - 0.4) < 1e-15);
    CHECK(std::abs(pseudo_distance(DiscPoint(0.0, 0.0), DiscPoint(0.5, 0.0)) - 0.5) < 1e-15);
    CHECK(std::abs(pseudo_distance(DiscPoint(0.8, 0.0), DiscPoint(0.5, 0.0)) - 0.5) < 1e-15);

    const DiscPoint c(0.9, 0.0);
    const EuclideanDisc e = pseudo_disc_euclidean(c, 0.3);
    double worst = 0.0;
    for (int k = 0; k < 100; ++k) {
        const DiscPoint p(e.center + std::polar(e.radius, kTwoPi * k / 100.0));
        worst = std::max(worst, std::abs(oracle::rho_via_defect(p.value(), c.value()) - 0.3));
    }
    CHECK(worst < 1e-10);
    CHECK_THROWS_AS(pseudo_disc_euclidean(c, 1.0), DomainError);
}

TEST_CASE("orthogonal arc midpoint against bisection") {
    const double g = kPi / 3.0;
    const Complex sym = orthogonal_arc_midpoint(-g, g).value();
    CHECK(std::abs(sym.imag()) < 1e-15);
    CHECK(std::abs(sym.real() - (2.0 - std::sqrt(3.0))) < 1e-12);
    CHECK(std::abs(sym - oracle::arc_midpoint_bisection(-g, g)) < 1e-12);

    const Complex rotated = orthogonal_arc_midpoint(0.1, 0.3).value();
    const Complex base = orthogonal_arc_midpoint(-0.1, 0.1).value();
    CHECK(std::abs(rotated - base * std::polar(1.0, 0.2)) < 1e-12);
    CHECK(std::abs(rotated - oracle::arc_midpoint_bisection(0.1, 0.3)) < 1e-12);

    CHECK_THROWS_AS(orthogonal_arc_midpoint(0.0, kPi), DomainError);
    CHECK_THROWS_AS(orthogonal_arc_midpoint(0.2, 0.1), DomainError);
}

TEST_CASE("orthogonal arc midpoint lies on its arc") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 100; ++i) {
        const double width = 0.01 + (kPi - 0.02) * u(rng);
        const double a = -kPi + (kTwoPi - width) * u(rng);
        const OrthogonalArc arc = OrthogonalArc::make(a, a + width);
        CHECK(arc.midpoint.abs() < 1.0);
        CHECK(arc.distance_to_circle(arc.midpoint.value()) < 1e-10);
        CHECK(std::abs(canonical_angle(std::arg(arc.midpoint.value()) - (a + 0.5 * width))) < 1e-12);
    }
}

TEST_CASE("arc partner returns the other endpoint through the midpoint") {
    const OrthogonalArc arc = OrthogonalArc::make(-0.4, 0.9);
    CHECK(std::abs(orthogonal_arc_partner(arc.midpoint, -0.4) - 0.9) < 1e-12);
    CHECK(std::abs(orthogonal_arc_partner(arc.midpoint, 0.9) + 0.4) < 1e-12);
}
