#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>

#include "corona_lab/corona.hpp"
#include "corona_lab/errors.hpp"
#include "corona_lab/hoffman.hpp"
#include "corona_lab/ladder.hpp"
#include "corona_lab/measures.hpp"
#include "corona_lab/selftest.hpp"
#include "corona_lab/serialization.hpp"

using namespace corona_lab;

namespace {

constexpr int kExitDomain = 1;
constexpr int kExitUsage = 2;

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Common {
    std::uint64_t seed = 0;
    std::optional<int> nodes;
    bool selftest = false;
    std::string out;
};

int default_nodes() {
    const char* env = std::getenv("CORONA_LAB_NODES");
    if (env == nullptr || *env == '\0') return 4096;
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (*end != '\0' || v < 16 || v > (1 << 24)) throw UsageError("CORONA_LAB_NODES must be an integer in [16, 2^24]");
    return static_cast<int>(v);
}

int node_count(const Common& c) { return c.nodes ? *c.nodes : default_nodes(); }

Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open " + path);
    try {
        return Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw ConfigError("", path + ": " + e.what());
    }
}

Json parse_inline(const std::string& text, const std::string& flag) {
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw ConfigError(flag, std::string("invalid JSON: ") + e.what());
    }
}

void require(const std::string& value, const std::string& flag) {
    if (value.empty()) throw UsageError(flag + " is required");
}

void emit(const Common& c, const Json& j) {
    const std::string text = j.dump(2) + "\n";
    if (c.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(c.out);
    if (!f) throw UsageError("cannot write " + c.out);
    f << text;
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream f(path);
    if (!f) throw UsageError("cannot write " + path);
    f << text;
}

std::vector<FunctionSpec> functions_from(const Json& j, const std::string& where) {
    if (!j.is_array()) throw ConfigError(where, "expected an array of functions");
    std::vector<FunctionSpec> out;
    for (std::size_t i = 0; i < j.size(); ++i) out.push_back(function_from_json(j[i], where + "/" + std::to_string(i)));
    return out;
}

std::vector<double> numbers_from(const Json& j, const std::string& where) {
    if (!j.is_array()) throw ConfigError(where, "expected an array of numbers");
    std::vector<double> out;
    for (std::size_t i = 0; i < j.size(); ++i) out.push_back(number_from_json(j[i], where + "/" + std::to_string(i)));
    return out;
}

DiscPoint disc_point_from(const Json& j, const std::string& where) {
    const Complex z = complex_from_json(j, where);
    if (!(std::abs(z) < 1.0)) throw ConfigError(where, "point must lie in the open disc");
    return DiscPoint(z);
}

struct Command {
    CLI::App* app = nullptr;
    Common common;
    std::vector<std::string> suites;
    std::function<void(const Common&)> run;
};

void add_common(Command& cmd) {
    cmd.app->add_option("--seed", cmd.common.seed, "seed for randomized verification grids");
    cmd.app->add_option("--nodes", cmd.common.nodes, "quadrature node count (default 4096 or CORONA_LAB_NODES)")
        ->check(CLI::Range(16, 1 << 24));
    cmd.app->add_flag("--selftest", cmd.common.selftest, "run the module invariant suite");
    cmd.app->add_option("--out", cmd.common.out, "output path (default: standard output)");
}

int run_selftests(const Command& cmd) {
    Json reports = Json::array();
    int failed = 0;
    for (const std::string& suite : cmd.suites) {
        const SelftestReport r = run_selftest(suite, cmd.common.seed);
        failed += r.failed;
        reports.push_back(Json{{"suite", r.suite}, {"passed", r.passed}, {"failed", r.failed}, {"failures", r.failures}});
    }
    emit(cmd.common, Json{{"selftest", reports}, {"ok", failed == 0}});
    return failed == 0 ? 0 : kExitDomain;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"corona_lab: desk-scale experiments on bounded analytic functions in the unit disc"};
    app.require_subcommand(1);
    std::map<std::string, Command> commands;

    auto make = [&](const std::string& name, const std::string& help, std::vector<std::string> suites) -> Command& {
        Command& cmd = commands[name];
        cmd.app = app.add_subcommand(name, help);
        cmd.suites = std::move(suites);
        add_common(cmd);
        return cmd;
    };

    // corona-solve
    std::string solve_in, solve_method = "auto";
    int degree_cap = 16;
    double solve_tol = 1e-8;
    {
        Command& c = make("corona-solve", "solve sum f_k g_k = 1 for an instance file", {"corona"});
        c.app->add_option("--in", solve_in, "instance JSON");
        c.app->add_option("--method", solve_method, "exact, numeric or auto")
            ->check(CLI::IsMember({"exact", "numeric", "auto"}));
        c.app->add_option("--degree-cap", degree_cap, "numeric solver degree cap")->check(CLI::Range(0, 512));
        c.app->add_option("--tol", solve_tol, "numeric solver tolerance");
        c.run = [&](const Common& cm) {
            require(solve_in, "--in");
            const CoronaInstance inst = instance_from_json(read_json_file(solve_in));
            bool exact = solve_method == "exact";
            if (solve_method == "auto") {
                exact = std::all_of(inst.functions.begin(), inst.functions.end(),
                                    [](const FunctionSpec& f) { return f.kind() == FunctionKind::polynomial; });
            }
            NumericOptions opts;
            opts.tolerance = solve_tol;
            emit(cm, to_json(exact ? bezout_exact(inst.functions) : bezout_numeric(inst, degree_cap, opts)));
        };
    }

    // corona-check
    std::string check_in, check_cert;
    double check_tol = 1e-8;
    int check_points = 10000;
    {
        Command& c = make("corona-check", "recheck a certificate on independent random points", {"corona"});
        c.app->add_option("--in", check_in, "instance JSON");
        c.app->add_option("--cert", check_cert, "certificate JSON");
        c.app->add_option("--tol", check_tol, "pass threshold for the residual");
        c.app->add_option("--points", check_points, "random interior points")->check(CLI::Range(0, 10000000));
        c.run = [&](const Common& cm) {
            require(check_in, "--in");
            require(check_cert, "--cert");
            const CoronaInstance inst = instance_from_json(read_json_file(check_in));
            const BezoutCertificate cert = certificate_from_json(read_json_file(check_cert));
            emit(cm, to_json(check_certificate(inst, cert, check_tol, cm.seed, check_points)));
        };
    }

    // delta
    std::string delta_in;
    {
        Command& c = make("delta", "grid minimum of sum |f_k| over the closed disc", {"corona"});
        c.app->add_option("--in", delta_in, "instance JSON");
        c.run = [&](const Common& cm) {
            require(delta_in, "--in");
            const CoronaInstance inst = instance_from_json(read_json_file(delta_in));
            const DeltaReport d = measure_delta(inst.functions, inst.grid);
            emit(cm, Json{{"delta", d.delta}, {"argmin", complex_to_json(d.argmin)}, {"grid", to_json(inst.grid)}});
        };
    }

    // interp-check
    std::string interp_points;
    {
        Command& c = make("interp-check", "separation products of a disc sequence", {"disc_geometry", "blaschke"});
        c.app->add_option("--points", interp_points, "JSON array of [re, im] points");
        c.run = [&](const Common& cm) {
            require(interp_points, "--points");
            const DiscSequence seq(points_from_json(parse_inline(interp_points, "--points"), "--points"));
            const CarlesonDiagnostics& d = seq.diagnostics();
            emit(cm, Json{{"constant", d.constant}, {"tail", d.tail}, {"blaschke_sum", seq.blaschke_sum()}});
        };
    }

    // blaschke-eval
    std::string be_zeros, be_at;
    double be_rotation = 0.0;
    {
        Command& c = make("blaschke-eval", "evaluate a finite Blaschke product", {"disc_geometry", "blaschke"});
        c.app->add_option("--zeros", be_zeros, "JSON array of [re, im] zeros");
        c.app->add_option("--at", be_at, "JSON point [re, im] or array of points");
        c.app->add_option("--rotation", be_rotation, "unimodular constant angle");
        c.run = [&](const Common& cm) {
            require(be_zeros, "--zeros");
            require(be_at, "--at");
            const BlaschkeProduct b(points_from_json(parse_inline(be_zeros, "--zeros"), "--zeros"), be_rotation);
            const Json at = parse_inline(be_at, "--at");
            auto one = [&](const Json& p, const std::string& where) {
                const Complex z = complex_from_json(p, where);
                const Complex v = b.evaluate(z);
                return Json{{"z", complex_to_json(z)}, {"value", complex_to_json(v)}, {"modulus", std::abs(v)}};
            };
            const bool many = at.is_array() && !at.empty() && at[0].is_array();
            if (!many) {
                emit(cm, one(at, "--at"));
                return;
            }
            Json out = Json::array();
            for (std::size_t i = 0; i < at.size(); ++i) out.push_back(one(at[i], "--at/" + std::to_string(i)));
            emit(cm, out);
        };
    }

    // ladder
    std::string ladder_in;
    {
        Command& c = make("ladder", "sector ladder construction with per-rung checks", {"blaschke"});
        c.app->add_option("--in", ladder_in, "ladder config JSON");
        c.run = [&](const Common& cm) {
            require(ladder_in, "--in");
            const Json j = read_json_file(ladder_in);
            check_keys(j, "", {"zeros", "candidates", "eps", "eta", "ell", "radial_nodes", "angular_nodes", "thin_threshold"},
                       {"zeros", "candidates", "eps", "eta", "ell"});
            LadderOptions opts;
            if (j.contains("radial_nodes")) opts.radial_nodes = integer_from_json(j["radial_nodes"], "/radial_nodes");
            if (j.contains("angular_nodes")) opts.angular_nodes = integer_from_json(j["angular_nodes"], "/angular_nodes");
            if (j.contains("thin_threshold")) opts.thin_threshold = number_from_json(j["thin_threshold"], "/thin_threshold");
            const std::vector<DiscPoint> zeros = points_from_json(j["zeros"], "/zeros");
            const DiscSequence candidates(points_from_json(j["candidates"], "/candidates"));
            const std::vector<double> eps = numbers_from(j["eps"], "/eps");
            const std::vector<double> eta = numbers_from(j["eta"], "/eta");
            emit(cm, to_json(ladder_construct(zeros, candidates, eps, eta, number_from_json(j["ell"], "/ell"), opts)));
        };
    }

    // hoffman-trace
    std::string ht_function, ht_points, ht_csv;
    double ht_radius = 0.5, ht_threshold = 1e-6;
    int ht_grid = 16;
    {
        Command& c = make("hoffman-trace", "samples of f o L_{c_j} on a disc grid", {"hoffman"});
        c.app->add_option("--function", ht_function, "function JSON {kind, data}");
        c.app->add_option("--points", ht_points, "JSON array of sequence points c_j");
        c.app->add_option("--radius", ht_radius, "outer grid radius")->check(CLI::Range(0.0, 1.0));
        c.app->add_option("--grid-size", ht_grid, "rings and angles of the grid")->check(CLI::Range(1, 4096));
        c.app->add_option("--threshold", ht_threshold, "Cauchy threshold for the extracted subsequence");
        c.app->add_option("--csv", ht_csv, "write the samples as CSV");
        c.run = [&](const Common& cm) {
            require(ht_function, "--function");
            require(ht_points, "--points");
            const FunctionSpec f = function_from_json(parse_inline(ht_function, "--function"), "--function");
            const DiscSequence seq(points_from_json(parse_inline(ht_points, "--points"), "--points"));
            const CompositionTrace tr = compose_trace(f, seq, ht_radius, ht_grid, ht_threshold);
            if (!ht_csv.empty()) {
                std::ostringstream os;
                write_trace_csv(tr, os);
                write_text(ht_csv, os.str());
            }
            Json rotations = Json::array();
            for (std::size_t j = 0; j < tr.samples.size(); ++j) {
                const RotationFit r = fit_rotation(tr, j);
                rotations.push_back(Json{{"gamma", r.gamma}, {"residual", r.residual}});
            }
            emit(cm, Json{{"cauchy_profile", tr.cauchy_profile},
                          {"subsequence", tr.subsequence.indices},
                          {"gaps", tr.subsequence.gaps},
                          {"converged", tr.subsequence.converged},
                          {"rotation_fits", rotations}});
        };
    }

    // l2-identity
    std::string l2_zeros, l2_c;
    int l2_fft = 4096;
    bool l2_coeffs = false;
    {
        Command& c = make("l2-identity", "L2 distance of B o L_c to the identity", {"hoffman"});
        c.app->add_option("--zeros", l2_zeros, "JSON array of zeros");
        c.app->add_option("--c", l2_c, "JSON point [re, im]");
        c.app->add_option("--n-fft", l2_fft, "FFT length (power of two >= 256)");
        c.app->add_flag("--coeffs", l2_coeffs, "include all Fourier coefficients");
        c.run = [&](const Common& cm) {
            require(l2_zeros, "--zeros");
            require(l2_c, "--c");
            const BlaschkeProduct b(points_from_json(parse_inline(l2_zeros, "--zeros"), "--zeros"));
            emit(cm, to_json(l2_distance_to_identity(b, disc_point_from(parse_inline(l2_c, "--c"), "--c"), l2_fft),
                             l2_coeffs));
        };
    }

    // measure-fit
    std::string mf_in;
    {
        Command& c = make("measure-fit", "nonnegative step density matching target values", {"measures"});
        c.app->add_option("--in", mf_in, "fit config JSON");
        c.run = [&](const Common& cm) {
            require(mf_in, "--in");
            const Json j = read_json_file(mf_in);
            check_keys(j, "", {"targets", "partition", "per_side", "window", "eps", "regularization"}, {"targets", "eps"});
            FitOptions opts;
            opts.nodes = node_count(cm);
            if (j.contains("window")) opts.window = number_from_json(j["window"], "/window");
            if (j.contains("regularization")) opts.regularization = number_from_json(j["regularization"], "/regularization");
            TargetFunctional targets;
            if (!j["targets"].is_array()) throw ConfigError("/targets", "expected an array");
            for (std::size_t i = 0; i < j["targets"].size(); ++i) {
                const std::string at = "/targets/" + std::to_string(i);
                const Json& t = j["targets"][i];
                check_keys(t, at, {"f", "value"}, {"f", "value"});
                targets.entries.push_back({function_from_json(t["f"], at + "/f"), complex_from_json(t["value"], at + "/value")});
            }
            std::vector<Interval> partition;
            if (j.contains("partition") == j.contains("per_side")) {
                throw ConfigError("", "need exactly one of \"partition\" or \"per_side\"");
            }
            if (j.contains("partition")) {
                const Json& p = j["partition"];
                if (!p.is_array()) throw ConfigError("/partition", "expected an array");
                for (std::size_t i = 0; i < p.size(); ++i) {
                    const std::string at = "/partition/" + std::to_string(i);
                    if (!p[i].is_array() || p[i].size() != 2) throw ConfigError(at, "expected [a, b]");
                    partition.push_back({number_from_json(p[i][0], at + "/0"), number_from_json(p[i][1], at + "/1")});
                }
            } else {
                partition = make_partition(opts.window, integer_from_json(j["per_side"], "/per_side"));
            }
            emit(cm, to_json(fit_simple_density(targets, partition, number_from_json(j["eps"], "/eps"), opts)));
        };
    }

    // quartiles
    std::string q_density;
    double q_window = kPi;
    {
        Command& c = make("quartiles", "quartile points and case of a step density", {"measures"});
        c.app->add_option("--density", q_density, "density JSON file");
        c.app->add_option("--window", q_window, "half-width of the classification window");
        c.run = [&](const Common& cm) {
            require(q_density, "--density");
            emit(cm, to_json(quartiles(density_from_json(read_json_file(q_density), ""), q_window)));
        };
    }

    // pushforward
    std::string pf_density, pf_c, pf_csv;
    int pf_samples = 512;
    {
        Command& c = make("pushforward", "density of a step density pulled back through L_c", {"measures"});
        c.app->add_option("--density", pf_density, "density JSON file");
        c.app->add_option("--c", pf_c, "JSON point [re, im]");
        c.app->add_option("--samples", pf_samples, "CSV sample count")->check(CLI::Range(1, 1 << 24));
        c.app->add_option("--csv", pf_csv, "write theta,u samples as CSV");
        c.run = [&](const Common& cm) {
            require(pf_density, "--density");
            require(pf_c, "--c");
            const PushforwardDensity u(density_from_json(read_json_file(pf_density), ""),
                                       disc_point_from(parse_inline(pf_c, "--c"), "--c"));
            const int nodes = node_count(cm);
            if (!pf_csv.empty()) {
                std::ostringstream os;
                os.precision(17);
                os << "theta,u\n";
                for (int k = 0; k < pf_samples; ++k) {
                    const double theta = -kPi + kTwoPi * (k + 0.5) / pf_samples;
                    os << theta << ',' << u(theta) << '\n';
                }
                write_text(pf_csv, os.str());
            }
            Json pieces = Json::array();
            for (const DensityPiece& p : u.preimage_pieces()) pieces.push_back(Json::array({p.a, p.b, p.coeff}));
            emit(cm, Json{{"total_mass", u.total_mass(nodes)}, {"preimage_pieces", pieces}, {"piece_masses", u.piece_masses(nodes)}});
        };
    }

    // align-arcs
    std::string aa_density, aa_case = "a";
    double aa_alpha = 0.0, aa_beta = 0.0;
    {
        Command& c = make("align-arcs", "reweight a density so its quartile arc meets a target midpoint", {"measures"});
        c.app->add_option("--density", aa_density, "density JSON file");
        c.app->add_option("--alpha", aa_alpha, "target arc start (radians)");
        c.app->add_option("--beta", aa_beta, "target arc end (radians)");
        c.app->add_option("--case", aa_case, "a, b or c")->check(CLI::IsMember({"a", "b", "c"}));
        c.run = [&](const Common& cm) {
            require(aa_density, "--density");
            const AlignedDensity a = align_arcs(density_from_json(read_json_file(aa_density), ""),
                                                OrthogonalArc::make(aa_alpha, aa_beta), align_case_from_string(aa_case));
            Json out = to_json(a.density);
            out["quartiles"] = to_json(a.quartiles);
            out["arc"] = Json{{"alpha", a.arc.alpha}, {"beta", a.arc.beta}, {"midpoint", complex_to_json(a.arc.midpoint.value())}};
            out["midpoint_error"] = a.midpoint_error;
            emit(cm, out);
        };
    }

    // cluster-scenario
    std::string cs_in;
    {
        Command& c = make("cluster-scenario", "limit values of functions along a sequence tending to 1", {"corona"});
        c.app->add_option("--in", cs_in, "scenario JSON {functions, points, eps, min_points}");
        c.run = [&](const Common& cm) {
            require(cs_in, "--in");
            const Json j = read_json_file(cs_in);
            check_keys(j, "", {"functions", "points", "eps", "min_points"}, {"functions", "points", "eps"});
            const std::vector<FunctionSpec> fs = functions_from(j["functions"], "/functions");
            const DiscSequence seq(points_from_json(j["points"], "/points"));
            std::size_t min_points = 3;
            if (j.contains("min_points")) min_points = static_cast<std::size_t>(integer_from_json(j["min_points"], "/min_points"));
            const ClusterReport r = cluster_scenario(fs, seq, number_from_json(j["eps"], "/eps"), min_points);
            emit(cm, to_json(r));
            if (!r.extracted) throw InfeasibleError(r.message);
        };
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    for (auto& [name, cmd] : commands) {
        if (!cmd.app->parsed()) continue;
        try {
            if (cmd.common.selftest) return run_selftests(cmd);
            cmd.run(cmd.common);
            return 0;
        } catch (const UsageError& e) {
            std::cerr << Json{{"error", "usage"}, {"message", e.what()}}.dump() << "\n";
            return kExitUsage;
        } catch (const ConfigError& e) {
            std::cerr << Json{{"error", "config"}, {"pointer", e.pointer()}, {"message", e.what()}}.dump() << "\n";
            return kExitUsage;
        } catch (const Error& e) {
            Json err{{"error", e.kind()}, {"message", e.what()}};
            if (const auto* inf = dynamic_cast<const InfeasibleError*>(&e)) err["residuals"] = inf->residuals();
            if (const auto* con = dynamic_cast<const ConstructionError*>(&e)) err["step"] = con->step();
            std::cerr << err.dump() << "\n";
            return kExitDomain;
        }
    }
    return kExitUsage;
}
