#include "corona_lab/serialization.hpp"

#include <algorithm>
#include <cmath>

#include "corona_lab/errors.hpp"

namespace corona_lab {

namespace {

std::string child(const std::string& where, const std::string& key) { return where + "/" + key; }
std::string child(const std::string& where, std::size_t i) { return where + "/" + std::to_string(i); }

const Json& member(const Json& j, const std::string& where, const char* key) {
    if (!j.contains(key)) throw ConfigError(child(where, key), std::string("missing key \"") + key + "\"");
    return j.at(key);
}

const Json& array_at(const Json& j, const std::string& where) {
    if (!j.is_array()) throw ConfigError(where, "expected an array");
    return j;
}

std::vector<Complex> complex_list(const Json& j, const std::string& where) {
    std::vector<Complex> out;
    const Json& arr = array_at(j, where);
    for (std::size_t i = 0; i < arr.size(); ++i) out.push_back(complex_from_json(arr[i], child(where, i)));
    return out;
}

Json complex_list_json(const std::vector<Complex>& zs) {
    Json out = Json::array();
    for (Complex z : zs) out.push_back(complex_to_json(z));
    return out;
}

Json number_list(const std::vector<double>& xs) {
    Json out = Json::array();
    for (double x : xs) out.push_back(x);
    return out;
}

}  // namespace

void check_keys(const Json& j, const std::string& where, std::initializer_list<const char*> allowed,
                std::initializer_list<const char*> required) {
    if (!j.is_object()) throw ConfigError(where.empty() ? "/" : where, "expected an object");
    for (const auto& [key, value] : j.items()) {
        const bool known = std::any_of(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; });
        if (!known) throw ConfigError(child(where, key), "unknown key \"" + key + "\"");
    }
    for (const char* key : required) member(j, where, key);
}

Json complex_to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Complex complex_from_json(const Json& j, const std::string& where) {
    if (j.is_number()) return {j.get<double>(), 0.0};
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
        throw ConfigError(where, "expected a complex number [re, im]");
    }
    return {j[0].get<double>(), j[1].get<double>()};
}

double number_from_json(const Json& j, const std::string& where) {
    if (!j.is_number()) throw ConfigError(where, "expected a number");
    return j.get<double>();
}

int integer_from_json(const Json& j, const std::string& where) {
    if (!j.is_number_integer()) throw ConfigError(where, "expected an integer");
    return j.get<int>();
}

Json to_json(const BlaschkeProduct& b) {
    return Json{{"zeros", to_json(std::span<const DiscPoint>(b.zeros()))}, {"rotation", b.rotation()}};
}

BlaschkeProduct blaschke_from_json(const Json& j, const std::string& where) {
    check_keys(j, where, {"zeros", "rotation"}, {"zeros"});
    const double rotation = j.contains("rotation") ? number_from_json(j["rotation"], child(where, "rotation")) : 0.0;
    return BlaschkeProduct(points_from_json(j["zeros"], child(where, "zeros")), rotation);
}

std::vector<DiscPoint> points_from_json(const Json& j, const std::string& where) {
    std::vector<DiscPoint> out;
    const std::vector<Complex> zs = complex_list(j, where);
    for (std::size_t i = 0; i < zs.size(); ++i) {
        if (!(std::abs(zs[i]) < 1.0)) throw ConfigError(child(where, i), "point must lie in the open disc");
        out.emplace_back(zs[i]);
    }
    return out;
}

Json to_json(std::span<const DiscPoint> points) {
    Json out = Json::array();
    for (const DiscPoint& p : points) out.push_back(complex_to_json(p.value()));
    return out;
}

Json to_json(const FunctionSpec& f) {
    Json out{{"kind", to_string(f.kind())}};
    if (const auto* p = f.as_polynomial()) {
        out["data"] = complex_list_json(p->coefficients());
    } else if (const auto* b = f.as_blaschke()) {
        out["data"] = to_json(*b);
    } else {
        const auto* r = f.as_rational();
        out["data"] = Json{{"num", complex_list_json(r->numerator.coefficients())},
                           {"den", complex_list_json(r->denominator.coefficients())}};
    }
    return out;
}

FunctionSpec function_from_json(const Json& j, const std::string& where) {
    check_keys(j, where, {"kind", "data"}, {"kind", "data"});
    if (!j["kind"].is_string()) throw ConfigError(child(where, "kind"), "expected a string");
    const std::string data_at = child(where, "data");
    FunctionKind kind;
    try {
        kind = function_kind_from_string(j["kind"].get<std::string>());
    } catch (const Error& e) {
        throw ConfigError(child(where, "kind"), e.what());
    }
    switch (kind) {
        case FunctionKind::polynomial:
            return FunctionSpec::polynomial(Polynomial(complex_list(j["data"], data_at)));
        case FunctionKind::finite_blaschke:
            return FunctionSpec::blaschke(blaschke_from_json(j["data"], data_at));
        case FunctionKind::rational: {
            const Json& d = j["data"];
            check_keys(d, data_at, {"num", "den"}, {"num", "den"});
            return FunctionSpec::rational(Polynomial(complex_list(d["num"], child(data_at, "num"))),
                                          Polynomial(complex_list(d["den"], child(data_at, "den"))));
        }
    }
    throw ConfigError(where, "unreachable function kind");
}

Json to_json(const GridSpec& g) {
    return Json{{"radial", g.radial}, {"angular", g.angular}, {"boundary", g.boundary}, {"ratio", g.ratio}};
}

GridSpec grid_from_json(const Json& j, const std::string& where) {
    check_keys(j, where, {"radial", "angular", "boundary", "ratio"});
    GridSpec g;
    if (j.contains("radial")) g.radial = integer_from_json(j["radial"], child(where, "radial"));
    if (j.contains("angular")) g.angular = integer_from_json(j["angular"], child(where, "angular"));
    if (j.contains("boundary")) g.boundary = integer_from_json(j["boundary"], child(where, "boundary"));
    if (j.contains("ratio")) g.ratio = number_from_json(j["ratio"], child(where, "ratio"));
    try {
        g.validate();
    } catch (const Error& e) {
        throw ConfigError(where, e.what());
    }
    return g;
}

Json to_json(const CoronaInstance& inst) {
    Json fs = Json::array();
    for (const FunctionSpec& f : inst.functions) fs.push_back(to_json(f));
    return Json{{"functions", fs}, {"grid", to_json(inst.grid)}, {"delta_hat", inst.delta_hat}};
}

CoronaInstance instance_from_json(const Json& j) {
    check_keys(j, "", {"functions", "grid", "delta_hat"}, {"functions"});
    std::vector<FunctionSpec> fs;
    const Json& arr = array_at(j["functions"], "/functions");
    for (std::size_t i = 0; i < arr.size(); ++i) fs.push_back(function_from_json(arr[i], child("/functions", i)));
    if (fs.empty()) throw ConfigError("/functions", "need at least one function");
    const GridSpec grid = j.contains("grid") ? grid_from_json(j["grid"], "/grid") : GridSpec{};
    return CoronaInstance::make(std::move(fs), grid);
}

Json to_json(const BezoutCertificate& cert) {
    Json sols = Json::array();
    for (const FunctionSpec& g : cert.solutions) sols.push_back(to_json(g));
    return Json{{"solutions", sols},
                {"residual_sup", cert.residual_sup},
                {"norm_report", number_list(cert.norm_report)},
                {"method", cert.method},
                {"degree", cert.degree},
                {"tolerance", cert.tolerance},
                {"passed", cert.passed}};
}

BezoutCertificate certificate_from_json(const Json& j) {
    check_keys(j, "", {"solutions", "residual_sup", "norm_report", "method", "degree", "tolerance", "passed"},
               {"solutions"});
    BezoutCertificate cert;
    const Json& arr = array_at(j["solutions"], "/solutions");
    for (std::size_t i = 0; i < arr.size(); ++i) {
        cert.solutions.push_back(function_from_json(arr[i], child("/solutions", i)));
    }
    if (j.contains("residual_sup")) cert.residual_sup = number_from_json(j["residual_sup"], "/residual_sup");
    if (j.contains("norm_report")) {
        const Json& nr = array_at(j["norm_report"], "/norm_report");
        for (std::size_t i = 0; i < nr.size(); ++i) {
            cert.norm_report.push_back(number_from_json(nr[i], child("/norm_report", i)));
        }
    }
    if (j.contains("method")) {
        if (!j["method"].is_string()) throw ConfigError("/method", "expected a string");
        cert.method = j["method"].get<std::string>();
    }
    if (j.contains("degree")) cert.degree = integer_from_json(j["degree"], "/degree");
    if (j.contains("tolerance")) cert.tolerance = number_from_json(j["tolerance"], "/tolerance");
    if (j.contains("passed")) {
        if (!j["passed"].is_boolean()) throw ConfigError("/passed", "expected a boolean");
        cert.passed = j["passed"].get<bool>();
    }
    return cert;
}

Json to_json(const CheckReport& r) {
    return Json{{"pass", r.pass},
                {"residual_sup", r.residual_sup},
                {"worst_point", complex_to_json(r.worst_point)},
                {"norm_report", number_list(r.norm_report)},
                {"points_checked", r.points_checked},
                {"count_mismatch", r.count_mismatch}};
}

Json to_json(const ClusterReport& r) {
    Json limit = Json::array();
    for (Complex v : r.limit) limit.push_back(complex_to_json(v));
    return Json{{"extracted", r.extracted},
                {"message", r.message},
                {"indices", r.indices},
                {"limit", limit},
                {"neighborhood_ok", r.neighborhood_ok},
                {"max_deviation", r.max_deviation}};
}

Json to_json(const SimpleDensity& s) {
    Json pieces = Json::array();
    for (const DensityPiece& p : s.pieces()) pieces.push_back(Json::array({p.a, p.b, p.coeff}));
    return Json{{"pieces", pieces}};
}

SimpleDensity density_from_json(const Json& j, const std::string& where) {
    check_keys(j, where, {"pieces", "uniform"});
    if (j.contains("pieces") == j.contains("uniform")) {
        throw ConfigError(where, "density needs exactly one of \"pieces\" or \"uniform\"");
    }
    try {
        if (j.contains("pieces")) {
            const std::string at = child(where, "pieces");
            const Json& arr = array_at(j["pieces"], at);
            std::vector<DensityPiece> pieces;
            for (std::size_t i = 0; i < arr.size(); ++i) {
                const std::string pi = child(at, i);
                if (!arr[i].is_array() || arr[i].size() != 3) throw ConfigError(pi, "expected [a, b, coeff]");
                pieces.push_back({number_from_json(arr[i][0], child(pi, 0)), number_from_json(arr[i][1], child(pi, 1)),
                                  number_from_json(arr[i][2], child(pi, 2))});
            }
            return SimpleDensity(std::move(pieces));
        }
        const std::string at = child(where, "uniform");
        const Json& arr = array_at(j["uniform"], at);
        std::vector<Interval> intervals;
        for (std::size_t i = 0; i < arr.size(); ++i) {
            const std::string pi = child(at, i);
            if (!arr[i].is_array() || arr[i].size() != 2) throw ConfigError(pi, "expected [a, b]");
            intervals.push_back({number_from_json(arr[i][0], child(pi, 0)), number_from_json(arr[i][1], child(pi, 1))});
        }
        return SimpleDensity::uniform(intervals);
    } catch (const DomainError& e) {
        throw ConfigError(where, e.what());
    }
}

Json to_json(const QuartilePair& q) {
    return Json{{"alpha", q.alpha}, {"beta", q.beta}, {"case", to_string(q.case_tag)}, {"mass_on_right", q.mass_on_right}};
}

Json to_json(const DensityFit& fit) {
    Json out = to_json(fit.density);
    out["residuals"] = number_list(fit.residuals);
    return out;
}

Json to_json(const LadderConstruction& lc) {
    Json checks = Json::array();
    for (const RungCheck& r : lc.verification) {
        checks.push_back(Json{{"rung", r.rung},
                              {"eta", r.eta},
                              {"eps", r.eps},
                              {"delta", r.delta},
                              {"candidate_index", r.candidate_index},
                              {"head_sum", r.head_sum},
                              {"tail_sum", r.tail_sum},
                              {"rigorous_bound", r.rigorous_bound},
                              {"measured_min", r.measured_min},
                              {"branch_min", r.branch_min},
                              {"passed", r.passed}});
    }
    Json out{{"ell", lc.ell},
             {"s", number_list(lc.s_values)},
             {"r", number_list(lc.r_values)},
             {"chosen_indices", lc.chosen_indices},
             {"b1_zeros", to_json(std::span<const DiscPoint>(lc.b1_zeros))},
             {"b2_zeros", to_json(std::span<const DiscPoint>(lc.b2_zeros))},
             {"b3_zeros", to_json(std::span<const DiscPoint>(lc.b3_zeros))},
             {"uncovered_zeros", to_json(std::span<const DiscPoint>(lc.uncovered_zeros))},
             {"verification", checks},
             {"thinness", lc.thinness},
             {"all_passed", lc.all_passed()}};
    out["thin_product"] = lc.thin_product ? to_json(*lc.thin_product) : Json(nullptr);
    return out;
}

Json to_json(const L2Identity& l2, bool with_coeffs) {
    Json out{{"distance", l2.distance},
             {"normalized_distance", l2.normalized_distance},
             {"rotation", l2.rotation},
             {"parseval_sum", l2.parseval_sum},
             {"tail_energy", l2.tail_energy}};
    if (with_coeffs) out["coeffs"] = complex_list_json(l2.coeffs);
    return out;
}

}  // namespace corona_lab
