#include <doctest.h>

#include <functional>

#include "corona_lab/errors.hpp"
#include "corona_lab/serialization.hpp"

using namespace corona_lab;

namespace {

std::string pointer_of(const std::function<void()>& body) {
    try {
        body();
    } catch (const ConfigError& e) {
        return e.pointer();
    }
    return "<no error>";
}

}  // namespace

TEST_CASE("complex values") {
    CHECK(complex_from_json(Json::parse("[0.5, -1]"), "/z") == Complex(0.5, -1.0));
    CHECK(complex_from_json(Json(2.0), "/z") == Complex(2.0, 0.0));
    CHECK(pointer_of([] { complex_from_json(Json::parse("[1, 2, 3]"), "/z"); }) == "/z");
    CHECK(complex_to_json(Complex(1.0, 2.0)) == Json::parse("[1.0, 2.0]"));
}

TEST_CASE("function specs round trip") {
    const std::vector<FunctionSpec> fs{
        FunctionSpec::polynomial(Polynomial({Complex(1.0, 2.0), 0.0, -3.0})),
        FunctionSpec::blaschke(BlaschkeProduct({DiscPoint(0.3, 0.1), DiscPoint(-0.5, 0.0)}, 0.25)),
        FunctionSpec::rational(Polynomial({1.0, 1.0}), Polynomial({-3.0, 1.0})),
    };
    for (const FunctionSpec& f : fs) {
        const Json j = to_json(f);
        const FunctionSpec back = function_from_json(Json::parse(j.dump()), "/f");
        CHECK(back.kind() == f.kind());
        for (Complex z : {Complex(0.0), Complex(0.2, -0.7), Complex(0.0, 1.0)}) CHECK(back(z) == f(z));
    }
    CHECK(pointer_of([] { function_from_json(Json::parse(R"({"kind": "spline", "data": []})"), "/f"); }) == "/f/kind");
    CHECK(pointer_of([] {
              function_from_json(Json::parse(R"({"kind": "finite_blaschke", "data": {"zeros": [[1.5, 0]]}})"), "/f");
          }) == "/f/data/zeros/0");
    CHECK_THROWS_AS(
        function_from_json(Json::parse(R"({"kind": "rational", "data": {"num": [1], "den": [-0.5, 1]}})"), "/f"),
        DomainError);
}

TEST_CASE("instances and certificates") {
    const Json in = Json::parse(R"({
        "functions": [{"kind": "polynomial", "data": [0, 0, 1]},
                      {"kind": "polynomial", "data": [-0.5, 1]}],
        "grid": {"radial": 8, "angular": 16, "boundary": 32, "ratio": 0.8}
    })");
    const CoronaInstance inst = instance_from_json(in);
    CHECK(inst.functions.size() == 2);
    CHECK(inst.grid.radial == 8);
    CHECK(inst.delta_hat > 0.0);
    const Json out = to_json(inst);
    CHECK(out["delta_hat"].get<double>() == inst.delta_hat);
    CHECK(instance_from_json(out).grid.ratio == 0.8);

    const BezoutCertificate cert = bezout_exact(inst.functions);
    const BezoutCertificate back = certificate_from_json(Json::parse(to_json(cert).dump()));
    CHECK(back.method == cert.method);
    CHECK(back.passed == cert.passed);
    CHECK(back.solutions.size() == 2);
    CHECK(back.solutions[1](Complex(0.5)) == cert.solutions[1](Complex(0.5)));

    CHECK(pointer_of([] { instance_from_json(Json::parse(R"({"functions": [], "x": 1})")); }) == "/x");
    CHECK(pointer_of([] { instance_from_json(Json::parse(R"({"grid": {}})")); }) == "/functions");
    CHECK(pointer_of([] {
              instance_from_json(Json::parse(R"({"functions": [{"kind": "polynomial", "data": [1]}],
                                                 "grid": {"radial": 0}})"));
          }) == "/grid");
}

TEST_CASE("densities") {
    const SimpleDensity s = density_from_json(Json::parse(R"({"uniform": [[-0.2, 0.2]]})"), "/density");
    CHECK(s.total_mass() == doctest::Approx(1.0));
    const SimpleDensity p = density_from_json(to_json(s), "/density");
    CHECK(p.pieces().size() == 1);
    CHECK(p.value(0.0) == s.value(0.0));
    CHECK(pointer_of([] { density_from_json(Json::parse(R"({"pieces": [[0, 1]]})"), "/d"); }) == "/d/pieces/0");
    CHECK(pointer_of([] { density_from_json(Json::parse(R"({"pieces": [[1, 0, 1]]})"), "/d"); }) == "/d");
    CHECK(pointer_of([] { density_from_json(Json::parse(R"({})"), "/d"); }) == "/d");
}

TEST_CASE("report writers") {
    const QuartilePair q{-0.1, 0.1, QuartileCase::straddle, 0.5};
    const Json jq = to_json(q);
    CHECK(jq["case"] == "straddle");
    CHECK(jq["alpha"].get<double>() == -0.1);

    const L2Identity l2 = l2_distance_to_identity(BlaschkeProduct({DiscPoint(0.0, 0.0)}), DiscPoint(0.0, 0.0), 256);
    CHECK_FALSE(to_json(l2, false).contains("coeffs"));
    CHECK(to_json(l2, true)["coeffs"].size() == 256);
}
