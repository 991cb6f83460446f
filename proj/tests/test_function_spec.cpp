#include <doctest.h>

#include <algorithm>

#include "corona_lab/errors.hpp"
#include "corona_lab/function_spec.hpp"
#include "oracles.hpp"

using namespace corona_lab;

TEST_CASE("polynomial arithmetic and trimming") {
    const Polynomial p({1.0, 2.0, 0.0, 0.0});
    CHECK(p.degree() == 1);
    CHECK(Polynomial({0.0, 0.0}).is_zero());
    const Polynomial q({Complex(0.0, 1.0), 1.0});
    const Polynomial prod = p * q;
    REQUIRE(prod.degree() == 2);
    CHECK(prod.coefficients()[0] == Complex(0.0, 1.0));
    CHECK(prod.coefficients()[1] == Complex(1.0, 2.0));
    CHECK(prod.coefficients()[2] == Complex(2.0, 0.0));
    CHECK((p - p).is_zero());
    CHECK((p + q).coefficients()[1] == Complex(3.0, 0.0));
    CHECK(p.evaluate(Complex(0.5, 0.5)) == Complex(2.0, 1.0));
    CHECK(p.coefficient_l1() == 3.0);
}

TEST_CASE("polynomial roots reproduce the factors") {
    const std::vector<Complex> expected{Complex(0.5, 0.0), Complex(-0.2, 0.7), Complex(2.0, -1.0)};
    Polynomial p({1.0});
    for (Complex r : expected) p = p * Polynomial({-r, 1.0});
    const auto roots = p.roots();
    REQUIRE(roots.size() == 3);
    for (Complex r : expected) {
        const double gap = std::abs(*std::min_element(roots.begin(), roots.end(), [r](Complex a, Complex b) {
            return std::abs(a - r) < std::abs(b - r);
        }) - r);
        CHECK(gap < 1e-12);
    }
    CHECK(std::is_sorted(roots.begin(), roots.end(), [](Complex a, Complex b) { return std::abs(a) < std::abs(b); }));
}

TEST_CASE("function kinds and evaluation") {
    CHECK(to_string(FunctionKind::finite_blaschke) == "finite_blaschke");
    CHECK(function_kind_from_string("rational") == FunctionKind::rational);
    CHECK_THROWS_AS(function_kind_from_string("spline"), DomainError);

    const FunctionSpec id = FunctionSpec::identity();
    CHECK(id.kind() == FunctionKind::polynomial);
    CHECK(id(Complex(0.3, 0.1)) == Complex(0.3, 0.1));
    CHECK(FunctionSpec::constant(2.0).sup_norm_estimate() == 2.0);

    const FunctionSpec b = FunctionSpec::blaschke(BlaschkeProduct({DiscPoint(0.4, 0.0)}));
    CHECK(b.kind() == FunctionKind::finite_blaschke);
    CHECK(b.sup_norm_estimate() == 1.0);
    REQUIRE(b.as_blaschke() != nullptr);
    CHECK(b.as_polynomial() == nullptr);
    CHECK(std::abs(b(Complex(0.0)) - oracle::blaschke({0.4}, 0.0)) < 1e-15);
}

TEST_CASE("rational functions need poles outside the closed disc") {
    CHECK_THROWS_AS(FunctionSpec::rational(Polynomial({1.0}), Polynomial({-0.5, 1.0})), DomainError);
    CHECK_THROWS_AS(FunctionSpec::rational(Polynomial({1.0}), Polynomial({-1.0, 1.0})), DomainError);
    CHECK_THROWS_AS(FunctionSpec::rational(Polynomial({1.0}), Polynomial()), DomainError);

    // 1 / (z - 2) has sup norm 1 on the circle, attained at z = 1
    const FunctionSpec r = FunctionSpec::rational(Polynomial({1.0}), Polynomial({-2.0, 1.0}));
    CHECK(r.kind() == FunctionKind::rational);
    CHECK(std::abs(r(Complex(0.0)) + 0.5) < 1e-15);
    CHECK(r.sup_norm_estimate() >= 1.0);
    CHECK(r.sup_norm_estimate() < 1.0 + 1e-5);
}

TEST_CASE("boundary maximum") {
    const FunctionSpec p = FunctionSpec::polynomial(Polynomial({1.0, 0.0, 1.0}));
    CHECK(boundary_max(p, 64) == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(boundary_max(FunctionSpec::identity(), 16) == doctest::Approx(1.0).epsilon(1e-15));
}
