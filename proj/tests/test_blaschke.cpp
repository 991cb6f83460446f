#include <doctest.h>

#include "corona_lab/blaschke.hpp"
#include "corona_lab/errors.hpp"
#include "oracles.hpp"

using namespace corona_lab;

namespace {

std::vector<DiscPoint> random_zeros(std::mt19937_64& rng, int n, double max_radius) {
    std::vector<DiscPoint> out;
    for (int k = 0; k < n; ++k) out.emplace_back(oracle::random_disc(rng, max_radius));
    return out;
}

std::vector<Complex> values(const std::vector<DiscPoint>& pts) {
    std::vector<Complex> out;
    for (const DiscPoint& p : pts) out.push_back(p.value());
    return out;
}

}  // namespace

TEST_CASE("zero at the origin gives the identity") {
    const BlaschkeProduct b({DiscPoint(0.0, 0.0)});
    for (Complex z : {Complex(0.3, 0.0), Complex(-0.2, 0.7), Complex(0.0, -1.0)}) {
        CHECK(std::abs(b.evaluate(z) - z) < 1e-15);
    }
}

TEST_CASE("single zero 0.5 at the origin") {
    CHECK(std::abs(BlaschkeProduct({DiscPoint(0.5, 0.0)}).evaluate(Complex(0.0)) - 0.5) < 1e-15);
}

TEST_CASE("products vanish at their zeros and match the direct formula") {
    std::mt19937_64 rng(21);
    const auto zeros = random_zeros(rng, 12, 0.99);
    const BlaschkeProduct b(zeros, 0.4);
    for (const DiscPoint& a : zeros) CHECK(std::abs(b.evaluate(a)) < 1e-10);
    for (int i = 0; i < 100; ++i) {
        const Complex z = oracle::random_disc(rng, 1.0);
        CHECK(std::abs(b.evaluate(z) - std::polar(1.0, 0.4) * oracle::blaschke(values(zeros), z)) < 1e-12);
    }
    CHECK_THROWS_AS(b.evaluate(Complex(1.01, 0.0)), DomainError);
}

TEST_CASE("boundary unimodularity") {
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> angle(-kPi, kPi);
    double worst = 0.0;
    for (int i = 0; i < 30; ++i) {
        const BlaschkeProduct b(random_zeros(rng, 1 + i % 20, 0.999), angle(rng));
        for (int k = 0; k < 1000; ++k) worst = std::max(worst, std::abs(std::abs(b.evaluate(CirclePoint(angle(rng)))) - 1.0));
    }
    CHECK(worst < 1e-10);
}

TEST_CASE("derivative agrees with finite differences including at zeros") {
    std::mt19937_64 rng(2);
    const auto zeros = random_zeros(rng, 6, 0.9);
    const BlaschkeProduct b(zeros);
    const double h = 1e-6;
    for (Complex z : {Complex(0.1, 0.2), zeros[0].value(), zeros[3].value()}) {
        const Complex fd = (b.evaluate(z + h) - b.evaluate(z - h)) / (2.0 * h);
        CHECK(std::abs(fd - b.derivative(z)) < 1e-6 * std::max(1.0, std::abs(fd)));
    }
}

TEST_CASE("modulus lower bound anchors") {
    CHECK(modulus_lower_bound(BlaschkeProduct(), 0.5) == 1.0);
    const BlaschkeProduct b({DiscPoint(0.9, 0.0), DiscPoint(0.95, 0.0)});
    const double bound = modulus_lower_bound(b, 0.5);
    CHECK(bound == doctest::Approx(0.55).epsilon(1e-12));
    double grid_min = 1.0;
    for (int i = 0; i <= 200; ++i) {
        for (int k = 0; k < 400; ++k) grid_min = std::min(grid_min, std::abs(oracle::blaschke({0.9, 0.95}, std::polar(0.5 * i / 200.0, kTwoPi * k / 400.0))));
    }
    CHECK(grid_min >= bound);
    CHECK(modulus_lower_bound(BlaschkeProduct({DiscPoint(0.5, 0.0)}), 0.5) == 0.0);
    CHECK(std::abs(BlaschkeProduct({DiscPoint(0.5, 0.0)}).evaluate(Complex(0.5))) == 0.0);
}

TEST_CASE("truncation tail radius covers the omitted factors") {
    std::vector<DiscPoint> head, tail;
    for (int j = 1; j <= 6; ++j) head.emplace_back(1.0 - std::ldexp(1.0, -j), 0.0);
    double tail_mass = 0.0;
    for (int j = 7; j <= 30; ++j) {
        tail.emplace_back(1.0 - std::ldexp(1.0, -j), 0.0);
        tail_mass += std::ldexp(1.0, -j);
    }
    const BlaschkeProduct full = BlaschkeProduct(head) * BlaschkeProduct(tail);
    for (Complex z : {Complex(0.0), Complex(0.3, 0.4), Complex(-0.7, 0.1)}) {
        const TruncatedValue tv = evaluate_with_tail(BlaschkeProduct(head), tail_mass, z);
        CHECK(std::abs(tv.value - full.evaluate(z)) <= tv.tail_radius);
    }
}

TEST_CASE("composition with a mobius map") {
    const BlaschkeProduct b({DiscPoint(0.2, 0.3)}, 0.6);
    const BlaschkeProduct same = compose_with_mobius(b, DiscPoint(0.0, 0.0));
    CHECK(same.zeros() == b.zeros());
    CHECK(same.rotation() == b.rotation());

    const BlaschkeProduct z = compose_with_mobius(BlaschkeProduct({DiscPoint(0.0, 0.0)}), DiscPoint(0.5, 0.0));
    REQUIRE(z.degree() == 1);
    CHECK(std::abs(z.zeros()[0].value() + 0.5) < 1e-15);
    for (int k = 0; k < 20; ++k) {
        const Complex zeta = std::polar(0.9, 0.3 * k);
        CHECK(std::abs(z.evaluate(zeta) - oracle::mobius(0.5, zeta)) < 1e-12);
    }

    std::mt19937_64 rng(4);
    double worst = 0.0;
    for (int i = 0; i < 50; ++i) {
        const auto zeros = random_zeros(rng, 5, 0.98);
        const Complex c = oracle::random_disc(rng, 0.95);
        const BlaschkeProduct bt = compose_with_mobius(BlaschkeProduct(zeros), DiscPoint(c));
        for (int k = 0; k < 200; ++k) {
            const Complex zeta = std::polar(std::sqrt((k % 20) / 19.0), kTwoPi * (k / 20) / 10.0);
            worst = std::max(worst, std::abs(oracle::blaschke(values(zeros), oracle::mobius(c, zeta)) - bt.evaluate(zeta)));
        }
    }
    CHECK(worst < 1e-10);
}

TEST_CASE("transport bound holds and the defect formula is stable") {
    std::mt19937_64 rng(9);
    const auto zeros = random_zeros(rng, 10, 0.99);
    const DiscPoint c(oracle::random_disc(rng, 0.9));
    for (const TransportTerm& t : transport_diagnostics(BlaschkeProduct(zeros), c)) {
        CHECK(t.transported <= t.bound * (1.0 + 1e-12));
    }
    const DiscPoint near1(1.0 - 1e-12, 0.0), near2(1.0 - 4e-12, 0.0);
    // 1 - |w| with w = (z - c)/(1 - c z): exact rational for real inputs
    const double a = 1.0 - near1.re(), b = 1.0 - near2.re();
    const double w = (b - a) / (a + b - a * b);
    CHECK(std::abs(transported_defect(near1, near2) - (1.0 - w)) < 1e-9);
}

TEST_CASE("carleson diagnostics against the double loop") {
    CHECK(carleson_diagnostics(DiscSequence({DiscPoint(0.3, 0.0)})).constant == 1.0);
    std::mt19937_64 rng(12);
    const auto scattered = random_zeros(rng, 15, 0.9);
    const std::vector<double> generic = oracle::separation_products(values(scattered));
    for (std::size_t k = 0; k < generic.size(); ++k) {
        CHECK(DiscSequence(scattered).diagnostics().tail[k] == doctest::Approx(generic[k]).epsilon(1e-12));
    }
    const CarlesonDiagnostics two = carleson_diagnostics(DiscSequence({DiscPoint(0.0, 0.0), DiscPoint(0.5, 0.0)}));
    CHECK(two.constant == doctest::Approx(0.5).epsilon(1e-15));

    std::vector<DiscPoint> pts;
    std::vector<double> defects;
    for (int j = 1; j <= 10; ++j) {
        pts.emplace_back(1.0 - std::pow(4.0, -j), 0.0);
        defects.push_back(1.0 - pts.back().re());
    }
    const DiscSequence seq(pts);
    const std::vector<double> brute = oracle::separation_products_axis(defects);
    double min_brute = 1.0;
    for (std::size_t k = 0; k < brute.size(); ++k) {
        CHECK(seq.diagnostics().tail[k] == doctest::Approx(brute[k]).epsilon(1e-12));
        min_brute = std::min(min_brute, brute[k]);
    }
    CHECK(seq.diagnostics().constant == doctest::Approx(min_brute).epsilon(1e-12));
    // adjacent points sit at a fixed pseudo-distance, so the products stay well below 1
    CHECK(brute.back() == doctest::Approx(0.507810385734297).epsilon(1e-9));
    CHECK(brute[5] < brute[2]);

    const DiscSequence dup({DiscPoint(0.2, 0.1), DiscPoint(0.2, 0.1)});
    CHECK(dup.diagnostics().constant == 0.0);
}

TEST_CASE("thin sequence products increase toward 1") {
    std::vector<double> defects;
    std::vector<DiscPoint> pts;
    for (int j = 1; j <= 10; ++j) {
        pts.emplace_back(1.0 - std::exp2(-0.25 * j * (j + 1)), 0.0);
        defects.push_back(1.0 - pts.back().re());
    }
    const std::vector<double> tail = DiscSequence(pts).diagnostics().tail;
    const std::vector<double> brute = oracle::separation_products_axis(defects);
    for (std::size_t k = 4; k < tail.size(); ++k) {
        CHECK(tail[k] == doctest::Approx(brute[k]).epsilon(1e-12));
        CHECK(tail[k] > tail[k - 1]);
    }
    CHECK(tail.back() > 0.9);
}

TEST_CASE("sector filter") {
    const Sector sec = Sector::make(0.5, 0.75, 0.85);
    CHECK(sector_filter(std::vector<DiscPoint>{}, sec).empty());
    const std::vector<DiscPoint> zeros{DiscPoint(0.7, 0.0), DiscPoint(std::polar(0.8, 0.01)), DiscPoint(std::polar(0.9, 0.4))};
    const auto kept = sector_filter(zeros, sec);
    REQUIRE(kept.size() == 1);
    CHECK(kept[0] == zeros[1]);
    CHECK(sec.contains(Complex(0.75, 0.0)));
    CHECK_FALSE(sec.contains(Complex(0.85, 0.0)));
    CHECK(sec.contains(std::polar(0.8, 0.2499)));
    CHECK_FALSE(sec.contains(std::polar(0.8, 0.2501)));
    CHECK_THROWS_AS(Sector::make(0.5, 0.4, 0.9), DomainError);
}
