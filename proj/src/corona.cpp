#include "corona_lab/corona.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include <Eigen/Dense>
#include <boost/multiprecision/cpp_int.hpp>

#include "corona_lab/errors.hpp"

namespace corona_lab {

namespace {

constexpr int kNormNodes = 2048;

using Rational = boost::multiprecision::cpp_rational;

struct GaussianRational {
    Rational re;
    Rational im;

    bool is_zero() const { return re == 0 && im == 0; }
};

GaussianRational operator+(const GaussianRational& a, const GaussianRational& b) { return {a.re + b.re, a.im + b.im}; }
GaussianRational operator-(const GaussianRational& a, const GaussianRational& b) { return {a.re - b.re, a.im - b.im}; }
GaussianRational operator*(const GaussianRational& a, const GaussianRational& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
GaussianRational inverse(const GaussianRational& a) {
    const Rational n = a.re * a.re + a.im * a.im;
    return {a.re / n, -a.im / n};
}

// Coefficients lowest degree first; the zero polynomial is empty.
using ExactPoly = std::vector<GaussianRational>;

void trim(ExactPoly& p) {
    while (!p.empty() && p.back().is_zero()) p.pop_back();
}

ExactPoly to_exact(const Polynomial& p) {
    ExactPoly out;
    for (Complex c : p.coefficients()) out.push_back({Rational(c.real()), Rational(c.imag())});
    trim(out);
    return out;
}

Polynomial to_double(const ExactPoly& p) {
    std::vector<Complex> out;
    for (const auto& c : p) out.emplace_back(c.re.convert_to<double>(), c.im.convert_to<double>());
    return Polynomial(std::move(out));
}

ExactPoly sub(const ExactPoly& a, const ExactPoly& b) {
    ExactPoly out(std::max(a.size(), b.size()));
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = out[i] + a[i];
    for (std::size_t i = 0; i < b.size(); ++i) out[i] = out[i] - b[i];
    trim(out);
    return out;
}

ExactPoly mul(const ExactPoly& a, const ExactPoly& b) {
    if (a.empty() || b.empty()) return {};
    ExactPoly out(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; j < b.size(); ++j) out[i + j] = out[i + j] + a[i] * b[j];
    }
    trim(out);
    return out;
}

ExactPoly scale(const ExactPoly& a, const GaussianRational& s) {
    ExactPoly out;
    for (const auto& c : a) out.push_back(c * s);
    trim(out);
    return out;
}

// Quotient and remainder, b nonzero.
std::pair<ExactPoly, ExactPoly> divmod(ExactPoly a, const ExactPoly& b) {
    const GaussianRational lead_inv = inverse(b.back());
    if (a.size() < b.size()) return {{}, a};
    ExactPoly q(a.size() - b.size() + 1);
    while (!a.empty() && a.size() >= b.size()) {
        const std::size_t shift = a.size() - b.size();
        const GaussianRational t = a.back() * lead_inv;
        q[shift] = t;
        for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] = a[shift + i] - t * b[i];
        a.pop_back();
        trim(a);
    }
    trim(q);
    return {q, a};
}

struct Euclid {
    ExactPoly gcd;
    ExactPoly u;
    ExactPoly v;
};

// u a + v b = gcd
Euclid extended_euclid(const ExactPoly& a, const ExactPoly& b) {
    ExactPoly r0 = a, r1 = b;
    ExactPoly s0{{Rational(1), Rational(0)}}, s1;
    ExactPoly t0, t1{{Rational(1), Rational(0)}};
    while (!r1.empty()) {
        auto [q, r] = divmod(r0, r1);
        ExactPoly s2 = sub(s0, mul(q, s1));
        ExactPoly t2 = sub(t0, mul(q, t1));
        r0 = std::move(r1);
        r1 = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(s2);
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    return {r0, s0, t0};
}

std::vector<double> norm_report_of(std::span<const FunctionSpec> solutions) {
    std::vector<double> out;
    for (const FunctionSpec& g : solutions) out.push_back(boundary_max(g, kNormNodes));
    return out;
}

int solution_degree(const FunctionSpec& g) {
    if (const auto* p = g.as_polynomial()) return std::max(0, p->degree());
    if (const auto* r = g.as_rational()) return std::max(0, r->numerator.degree());
    return static_cast<int>(g.as_blaschke()->degree());
}

std::vector<Complex> boundary_nodes(int count, double offset) {
    std::vector<Complex> out;
    out.reserve(static_cast<std::size_t>(count));
    for (int m = 0; m < count; ++m) out.push_back(std::polar(1.0, kTwoPi * (m + offset) / count));
    return out;
}

}  // namespace

void GridSpec::validate() const {
    if (radial < 8 || angular < 8 || boundary < 8) {
        throw DomainError("grid: radial, angular and boundary counts must be at least 8");
    }
    if (!(ratio > 0.0 && ratio < 1.0)) {
        throw DomainError("grid: ratio must lie in (0, 1)");
    }
}

std::vector<Complex> GridSpec::nodes() const {
    validate();
    std::vector<Complex> out;
    out.reserve(1 + static_cast<std::size_t>(radial) * angular + boundary);
    out.emplace_back(0.0, 0.0);
    for (int i = 1; i <= radial; ++i) {
        const double r = -std::expm1(i * std::log(ratio));
        for (int a = 0; a < angular; ++a) out.push_back(std::polar(r, kTwoPi * a / angular));
    }
    for (int b = 0; b < boundary; ++b) out.push_back(std::polar(1.0, kTwoPi * b / boundary));
    return out;
}

GridSpec GridSpec::refined() const {
    validate();
    return {2 * radial, 2 * angular, 2 * boundary, std::sqrt(ratio)};
}

DeltaReport measure_delta(std::span<const FunctionSpec> functions, const GridSpec& grid) {
    if (functions.empty()) throw DomainError("delta: need at least one function");
    DeltaReport best{std::numeric_limits<double>::infinity(), Complex(0.0, 0.0)};
    for (Complex z : grid.nodes()) {
        double s = 0.0;
        for (const FunctionSpec& f : functions) s += std::abs(f.evaluate(z));
        if (s < best.delta) best = {s, z};
    }
    return best;
}

CoronaInstance CoronaInstance::make(std::vector<FunctionSpec> functions, GridSpec grid) {
    CoronaInstance inst{std::move(functions), grid, 0.0};
    inst.delta_hat = measure_delta(inst.functions, grid).delta;
    return inst;
}

double certificate_residual(std::span<const FunctionSpec> functions, std::span<const FunctionSpec> solutions,
                            std::span<const Complex> nodes) {
    double worst = 0.0;
    const std::size_t n = std::min(functions.size(), solutions.size());
    for (Complex z : nodes) {
        Complex s(0.0, 0.0);
        for (std::size_t k = 0; k < n; ++k) s += functions[k].evaluate(z) * solutions[k].evaluate(z);
        worst = std::max(worst, std::abs(s - 1.0));
    }
    return worst;
}

BezoutCertificate bezout_exact(std::span<const FunctionSpec> polynomials) {
    if (polynomials.empty()) throw DomainError("bezout_exact: need at least one function");
    std::vector<ExactPoly> data;
    for (const FunctionSpec& f : polynomials) {
        const Polynomial* p = f.as_polynomial();
        if (p == nullptr) throw DomainError("bezout_exact: exact method requires polynomial data");
        data.push_back(to_exact(*p));
    }

    ExactPoly d = data[0];
    std::vector<ExactPoly> cofactors{ExactPoly{{Rational(1), Rational(0)}}};
    for (std::size_t k = 1; k < data.size(); ++k) {
        Euclid e = extended_euclid(d, data[k]);
        for (auto& c : cofactors) c = mul(c, e.u);
        cofactors.push_back(std::move(e.v));
        d = std::move(e.gcd);
    }
    if (d.empty()) throw UnsolvableError("bezout_exact: all functions vanish identically");

    BezoutCertificate cert;
    if (d.size() == 1) {
        const GaussianRational inv = inverse(d[0]);
        for (const auto& c : cofactors) cert.solutions.push_back(FunctionSpec::polynomial(to_double(scale(c, inv))));
        cert.method = "exact";
    } else {
        const Polynomial g = to_double(d);
        for (Complex r : g.roots()) {
            if (std::abs(r) <= 1.0 + kAlgebraicTol) {
                std::ostringstream os;
                os << "bezout_exact: common zero at (" << r.real() << ", " << r.imag() << ") in the closed disc";
                throw UnsolvableError(os.str());
            }
        }
        for (const auto& c : cofactors) cert.solutions.push_back(FunctionSpec::rational(to_double(c), g));
        cert.method = "exact_rational";
    }

    for (const FunctionSpec& g : cert.solutions) cert.degree = std::max(cert.degree, solution_degree(g));
    const std::vector<Complex> verify = GridSpec{}.refined().nodes();
    cert.residual_sup = certificate_residual(polynomials, cert.solutions, verify);
    cert.norm_report = norm_report_of(cert.solutions);
    // The identity is exact; what remains is round-off in evaluating sum f_k g_k.
    double scale = 0.0;
    for (std::size_t k = 0; k < cert.solutions.size(); ++k) {
        scale += polynomials[k].sup_norm_estimate() * cert.norm_report[k];
    }
    cert.tolerance = std::max(1e-10, 64.0 * std::numeric_limits<double>::epsilon() * scale);
    cert.passed = cert.residual_sup <= cert.tolerance;
    return cert;
}

BezoutCertificate bezout_numeric(const CoronaInstance& instance, int degree_cap, const NumericOptions& options) {
    if (instance.functions.empty()) throw DomainError("bezout_numeric: need at least one function");
    if (degree_cap < 0) throw DomainError("bezout_numeric: degree cap must be nonnegative");
    if (!(instance.delta_hat > options.delta_floor)) {
        std::ostringstream os;
        os << "bezout_numeric: corona condition violated, delta_hat = " << instance.delta_hat;
        throw DomainError(os.str());
    }
    const std::size_t n = instance.functions.size();
    const std::vector<Complex> verify = instance.grid.refined().nodes();

    std::vector<int> degrees;
    for (int d = 0; d < degree_cap; d = d == 0 ? 1 : 2 * d) degrees.push_back(d);
    degrees.push_back(degree_cap);

    BezoutCertificate best;
    best.residual_sup = std::numeric_limits<double>::infinity();
    for (int degree : degrees) {
        const auto cols = static_cast<Eigen::Index>(n * (degree + 1));
        const int m = std::max(options.fit_nodes, static_cast<int>(4 * cols)) | 1;
        const std::vector<Complex> fit = boundary_nodes(m, 1.0 / 3.0);

        Eigen::MatrixXcd a(m, cols);
        for (int row = 0; row < m; ++row) {
            const Complex z = fit[static_cast<std::size_t>(row)];
            for (std::size_t k = 0; k < n; ++k) {
                Complex term = instance.functions[k].evaluate(z);
                for (int j = 0; j <= degree; ++j) {
                    a(row, static_cast<Eigen::Index>(k * (degree + 1) + j)) = term;
                    term *= z;
                }
            }
        }
        const Eigen::VectorXcd rhs = Eigen::VectorXcd::Ones(m);
        const Eigen::VectorXcd x = a.completeOrthogonalDecomposition().solve(rhs);

        BezoutCertificate cert;
        for (std::size_t k = 0; k < n; ++k) {
            std::vector<Complex> coeffs(static_cast<std::size_t>(degree + 1));
            for (int j = 0; j <= degree; ++j) coeffs[j] = x(static_cast<Eigen::Index>(k * (degree + 1) + j));
            cert.solutions.push_back(FunctionSpec::polynomial(Polynomial(std::move(coeffs))));
        }
        cert.residual_sup = certificate_residual(instance.functions, cert.solutions, verify);
        cert.degree = degree;
        if (cert.residual_sup < best.residual_sup) best = std::move(cert);
        if (best.residual_sup <= options.tolerance) break;
    }
    best.method = "numeric";
    best.norm_report = norm_report_of(best.solutions);
    best.tolerance = options.tolerance;
    best.passed = best.residual_sup <= options.tolerance;
    return best;
}

CheckReport check_certificate(const CoronaInstance& instance, const BezoutCertificate& cert, double tol,
                              std::uint64_t seed, int random_points) {
    if (!(tol > 0.0)) throw DomainError("check_certificate: tolerance must be positive");
    if (random_points < 0) throw DomainError("check_certificate: random point count must be nonnegative");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    std::vector<Complex> points;
    points.reserve(static_cast<std::size_t>(random_points) + 3 * instance.grid.boundary + 7);
    for (int i = 0; i < random_points; ++i) {
        const double r = std::sqrt(unit(rng));
        points.push_back(std::polar(r, kTwoPi * unit(rng)));
    }
    const int ring = 3 * instance.grid.boundary + 7;
    const double offset = unit(rng);
    for (Complex z : boundary_nodes(ring, offset)) points.push_back(z);

    CheckReport report;
    report.count_mismatch = cert.solutions.size() != instance.functions.size();
    report.points_checked = points.size();
    const std::size_t n = std::min(instance.functions.size(), cert.solutions.size());
    for (Complex z : points) {
        Complex s(0.0, 0.0);
        for (std::size_t k = 0; k < n; ++k) s += instance.functions[k].evaluate(z) * cert.solutions[k].evaluate(z);
        const double e = std::abs(s - 1.0);
        if (e > report.residual_sup) {
            report.residual_sup = e;
            report.worst_point = z;
        }
    }
    report.norm_report = norm_report_of(cert.solutions);
    report.pass = !report.count_mismatch && report.residual_sup <= tol;
    return report;
}

ClusterReport cluster_scenario(std::span<const FunctionSpec> functions, const DiscSequence& seq, double eps,
                               std::size_t min_points) {
    if (functions.empty()) throw DomainError("cluster_scenario: need at least one function");
    if (!(eps > 0.0)) throw DomainError("cluster_scenario: eps must be positive");
    for (std::size_t j = 1; j < seq.size(); ++j) {
        if (!(std::abs(1.0 - seq[j].value()) < std::abs(1.0 - seq[j - 1].value()))) {
            throw DomainError("cluster_scenario: |1 - c_j| must be strictly decreasing");
        }
    }

    const std::size_t n = functions.size();
    const std::size_t dims = 2 * n;
    std::vector<std::vector<double>> coords(seq.size(), std::vector<double>(dims));
    std::vector<std::vector<Complex>> values(seq.size());
    for (std::size_t j = 0; j < seq.size(); ++j) {
        for (std::size_t k = 0; k < n; ++k) {
            const Complex v = functions[k].evaluate(seq[j].value());
            values[j].push_back(v);
            coords[j][2 * k] = v.real();
            coords[j][2 * k + 1] = v.imag();
        }
    }

    ClusterReport report;
    std::vector<std::size_t> kept(seq.size());
    for (std::size_t j = 0; j < kept.size(); ++j) kept[j] = j;

    while (kept.size() >= min_points) {
        std::size_t widest = 0;
        double width = -1.0, lo_w = 0.0;
        for (std::size_t d = 0; d < dims; ++d) {
            double lo = std::numeric_limits<double>::infinity(), hi = -lo;
            for (std::size_t j : kept) {
                lo = std::min(lo, coords[j][d]);
                hi = std::max(hi, coords[j][d]);
            }
            if (hi - lo > width) {
                width = hi - lo;
                widest = d;
                lo_w = lo;
            }
        }
        if (width < eps / 2.0) break;
        const double mid = lo_w + width / 2.0;
        std::vector<std::size_t> lower, upper;
        for (std::size_t j : kept) (coords[j][widest] < mid ? lower : upper).push_back(j);
        if (lower.size() > upper.size()) {
            kept = std::move(lower);
        } else if (upper.size() > lower.size()) {
            kept = std::move(upper);
        } else {
            kept = coords[kept.back()][widest] < mid ? std::move(lower) : std::move(upper);
        }
    }

    if (kept.size() < min_points) {
        std::ostringstream os;
        os << "cluster_scenario: fewer than " << min_points
           << " points share an eps-box; lengthen the sequence or enlarge eps";
        report.message = os.str();
        return report;
    }

    report.extracted = true;
    report.indices = kept;
    report.limit = values[kept.back()];
    report.neighborhood_ok = true;
    for (std::size_t j : kept) {
        for (std::size_t k = 0; k < n; ++k) {
            const double dev = std::abs(values[j][k] - report.limit[k]);
            report.max_deviation = std::max(report.max_deviation, dev);
            if (!(dev < eps)) report.neighborhood_ok = false;
        }
    }
    report.message = "ok";
    return report;
}

}  // namespace corona_lab
