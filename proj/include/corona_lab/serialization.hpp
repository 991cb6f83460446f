#pragma once

#include <initializer_list>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "corona_lab/blaschke.hpp"
#include "corona_lab/corona.hpp"
#include "corona_lab/function_spec.hpp"
#include "corona_lab/hoffman.hpp"
#include "corona_lab/ladder.hpp"
#include "corona_lab/measures.hpp"

namespace corona_lab {

using Json = nlohmann::ordered_json;

/// Malformed configuration; `pointer` is a JSON pointer to the offending key.
class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string pointer, const std::string& message)
        : std::runtime_error(message), pointer_(std::move(pointer)) {}
    const std::string& pointer() const noexcept { return pointer_; }

private:
    std::string pointer_;
};

/// Rejects keys outside `allowed` and missing `required` keys.
void check_keys(const Json& j, const std::string& where, std::initializer_list<const char*> allowed,
                std::initializer_list<const char*> required = {});

Json complex_to_json(Complex z);
Complex complex_from_json(const Json& j, const std::string& where);
double number_from_json(const Json& j, const std::string& where);
int integer_from_json(const Json& j, const std::string& where);

// Functions: {"kind": "polynomial", "data": [[re, im], ...]} (lowest degree first),
// {"kind": "finite_blaschke", "data": {"zeros": [...], "rotation": r}},
// {"kind": "rational", "data": {"num": [...], "den": [...]}}.
Json to_json(const FunctionSpec& f);
FunctionSpec function_from_json(const Json& j, const std::string& where);

Json to_json(const BlaschkeProduct& b);
BlaschkeProduct blaschke_from_json(const Json& j, const std::string& where);

std::vector<DiscPoint> points_from_json(const Json& j, const std::string& where);
Json to_json(std::span<const DiscPoint> points);

Json to_json(const GridSpec& g);
GridSpec grid_from_json(const Json& j, const std::string& where);

// Instance: {"functions": [...], "grid": {...}}; an optional "delta_hat" is ignored
// on input and recomputed.
Json to_json(const CoronaInstance& inst);
CoronaInstance instance_from_json(const Json& j);

Json to_json(const BezoutCertificate& cert);
BezoutCertificate certificate_from_json(const Json& j);

Json to_json(const CheckReport& r);
Json to_json(const ClusterReport& r);

// Densities: {"pieces": [[a, b, coeff], ...]} or {"uniform": [[a, b], ...]}.
Json to_json(const SimpleDensity& s);
SimpleDensity density_from_json(const Json& j, const std::string& where);

Json to_json(const QuartilePair& q);
Json to_json(const DensityFit& fit);
Json to_json(const LadderConstruction& lc);
Json to_json(const L2Identity& l2, bool with_coeffs);

}  // namespace corona_lab
