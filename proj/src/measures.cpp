#include "corona_lab/measures.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <boost/math/quadrature/gauss.hpp>
#include <cmath>
#include <sstream>

#include "corona_lab/errors.hpp"

namespace corona_lab {

namespace {

constexpr int kPanelOrder = 16;
using Gauss = boost::math::quadrature::gauss<double, kPanelOrder>;

Complex integrate_panels(const std::function<Complex(double)>& g, double a, double b, int panels) {
    const double h = (b - a) / panels;
    Complex total(0.0, 0.0);
    for (int p = 0; p < panels; ++p) {
        const double lo = a + p * h;
        const double hi = (p + 1 == panels) ? b : lo + h;
        total += Gauss::integrate(g, lo, hi);
    }
    return total;
}

int panel_count(double width, int nodes) {
    const double share = static_cast<double>(nodes) * width / kTwoPi / kPanelOrder;
    return std::max(1, static_cast<int>(std::ceil(share)));
}

// Lawson-Hanson active-set NNLS: min ||A x - b|| subject to x >= 0.
Eigen::VectorXd nnls(const Eigen::MatrixXd& a, const Eigen::VectorXd& b) {
    const Eigen::Index n = a.cols();
    Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
    std::vector<bool> passive(static_cast<std::size_t>(n), false);
    const double tol = 1e-15 * std::max(1.0, a.cwiseAbs().maxCoeff()) * std::max<Eigen::Index>(n, 1);

    auto solve_passive = [&](Eigen::VectorXd& z) {
        std::vector<Eigen::Index> idx;
        for (Eigen::Index j = 0; j < n; ++j) {
            if (passive[static_cast<std::size_t>(j)]) idx.push_back(j);
        }
        Eigen::MatrixXd sub(a.rows(), static_cast<Eigen::Index>(idx.size()));
        for (std::size_t k = 0; k < idx.size(); ++k) {
            sub.col(static_cast<Eigen::Index>(k)) = a.col(idx[k]);
        }
        const Eigen::VectorXd zs = sub.colPivHouseholderQr().solve(b);
        z.setZero();
        for (std::size_t k = 0; k < idx.size(); ++k) {
            z(idx[k]) = zs(static_cast<Eigen::Index>(k));
        }
    };

    const int max_outer = static_cast<int>(3 * n + 10);
    for (int outer = 0; outer < max_outer; ++outer) {
        const Eigen::VectorXd w = a.transpose() * (b - a * x);
        Eigen::Index best = -1;
        double best_w = tol;
        for (Eigen::Index j = 0; j < n; ++j) {
            if (!passive[static_cast<std::size_t>(j)] && w(j) > best_w) {
                best_w = w(j);
                best = j;
            }
        }
        if (best < 0) {
            break;
        }
        passive[static_cast<std::size_t>(best)] = true;

        Eigen::VectorXd z(n);
        for (int inner = 0; inner < max_outer; ++inner) {
            solve_passive(z);
            bool feasible = true;
            for (Eigen::Index j = 0; j < n; ++j) {
                if (passive[static_cast<std::size_t>(j)] && z(j) <= 0.0) {
                    feasible = false;
                }
            }
            if (feasible) {
                x = z;
                break;
            }
            double step = 1.0;
            for (Eigen::Index j = 0; j < n; ++j) {
                if (passive[static_cast<std::size_t>(j)] && z(j) <= 0.0) {
                    step = std::min(step, x(j) / (x(j) - z(j)));
                }
            }
            x += step * (z - x);
            for (Eigen::Index j = 0; j < n; ++j) {
                if (passive[static_cast<std::size_t>(j)] && x(j) <= tol) {
                    passive[static_cast<std::size_t>(j)] = false;
                    x(j) = 0.0;
                }
            }
        }
    }
    return x;
}

void validate_partition(std::span<const Interval> partition, double window) {
    if (partition.empty()) {
        throw DomainError("fit_simple_density: empty partition");
    }
    std::vector<Interval> sorted(partition.begin(), partition.end());
    std::sort(sorted.begin(), sorted.end(), [](const Interval& x, const Interval& y) { return x.a < y.a; });
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        const Interval& e = sorted[i];
        if (!(e.a < e.b) || e.a < -window || e.b > window || e.a < -kPi || e.b > kPi) {
            std::ostringstream os;
            os << "fit_simple_density: interval [" << e.a << ", " << e.b << ") is empty or leaves [-"
               << window << ", " << window << "]";
            throw DomainError(os.str());
        }
        if (e.a < 0.0 && e.b > 0.0) {
            throw DomainError("fit_simple_density: partition intervals may not straddle 0");
        }
        if (i > 0 && sorted[i - 1].b > e.a) {
            throw DomainError("fit_simple_density: partition intervals overlap");
        }
    }
}

}  // namespace

SimpleDensity::SimpleDensity(std::vector<DensityPiece> pieces) : pieces_(std::move(pieces)) {
    std::sort(pieces_.begin(), pieces_.end(), [](const DensityPiece& x, const DensityPiece& y) { return x.a < y.a; });
    double total = 0.0;
    for (std::size_t i = 0; i < pieces_.size(); ++i) {
        const DensityPiece& p = pieces_[i];
        if (!(p.a >= -kPi && p.a < p.b && p.b <= kPi)) {
            throw DomainError("SimpleDensity: piece must satisfy -pi <= a < b <= pi");
        }
        if (!(p.coeff >= 0.0) || !std::isfinite(p.coeff)) {
            throw DomainError("SimpleDensity: coefficients must be finite and nonnegative");
        }
        if (i > 0 && pieces_[i - 1].b > p.a) {
            throw DomainError("SimpleDensity: pieces overlap");
        }
        total += p.coeff * (p.b - p.a) / kTwoPi;
    }
    if (std::abs(total - 1.0) > 1e-12) {
        std::ostringstream os;
        os << "SimpleDensity: total mass " << total << " differs from 1";
        throw DomainError(os.str());
    }
}

SimpleDensity SimpleDensity::normalized(std::vector<DensityPiece> pieces) {
    double total = 0.0;
    for (const DensityPiece& p : pieces) {
        total += p.coeff * (p.b - p.a) / kTwoPi;
    }
    if (!(total > 0.0)) {
        throw DomainError("SimpleDensity: cannot normalize a density with zero mass");
    }
    for (DensityPiece& p : pieces) {
        p.coeff /= total;
    }
    return SimpleDensity(std::move(pieces));
}

SimpleDensity SimpleDensity::uniform(std::span<const Interval> intervals) {
    double length = 0.0;
    for (const Interval& e : intervals) {
        length += e.length();
    }
    if (!(length > 0.0)) {
        throw DomainError("SimpleDensity::uniform: intervals have no length");
    }
    const double coeff = kTwoPi / length;
    std::vector<DensityPiece> pieces;
    for (const Interval& e : intervals) {
        pieces.push_back({e.a, e.b, coeff});
    }
    return normalized(std::move(pieces));
}

double SimpleDensity::value(double theta) const {
    const double t = canonical_angle(theta);
    for (const DensityPiece& p : pieces_) {
        if (t >= p.a && t < p.b) {
            return p.coeff;
        }
    }
    return 0.0;
}

double SimpleDensity::mass(double lo, double hi) const {
    double total = 0.0;
    for (const DensityPiece& p : pieces_) {
        const double a = std::max(lo, p.a);
        const double b = std::min(hi, p.b);
        if (b > a) {
            total += p.coeff * (b - a) / kTwoPi;
        }
    }
    return total;
}

double poisson_kernel(DiscPoint z, double theta) {
    return one_minus_abs_sq(z.value()) / std::norm(std::polar(1.0, theta) - z.value());
}

QuadratureResult poisson_integral(const FunctionSpec& f, DiscPoint z, const QuadratureConfig& config) {
    if (config.nodes < 16) {
        throw DomainError("poisson_integral: at least 16 nodes required");
    }
    auto trapezoid = [&](int n) {
        Complex total(0.0, 0.0);
        for (int k = 0; k < n; ++k) {
            const double theta = kTwoPi * k / n;
            total += f.evaluate(std::polar(1.0, theta)) * poisson_kernel(z, theta);
        }
        return total / static_cast<double>(n);
    };
    const Complex fine = trapezoid(config.nodes);
    const Complex coarse = trapezoid(config.nodes / 2);
    const double estimate = std::abs(fine - coarse);
    if (estimate > config.tolerance) {
        std::ostringstream os;
        os << "poisson_integral: estimated error " << estimate << " exceeds " << config.tolerance
           << " at " << config.nodes << " nodes";
        throw QuadratureError(os.str(), estimate);
    }
    return {fine, estimate};
}

double poisson_average(const std::function<double(double)>& g, DiscPoint z, int nodes) {
    double total = 0.0;
    for (int k = 0; k < nodes; ++k) {
        const double theta = kTwoPi * k / nodes;
        total += g(theta) * poisson_kernel(z, theta);
    }
    return total / nodes;
}

QuadratureResult integrate_arc(const std::function<Complex(double)>& g, double a, double b, int nodes) {
    if (!(b > a)) {
        return {Complex(0.0, 0.0), 0.0};
    }
    const int panels = panel_count(b - a, nodes);
    const Complex fine = integrate_panels(g, a, b, panels) / kTwoPi;
    const Complex coarse = integrate_panels(g, a, b, std::max(1, panels / 2)) / kTwoPi;
    return {fine, std::abs(fine - coarse)};
}

QuadratureResult integrate_against(const FunctionSpec& f, const SimpleDensity& s, int nodes) {
    QuadratureResult out{Complex(0.0, 0.0), 0.0};
    for (const DensityPiece& p : s.pieces()) {
        if (p.coeff == 0.0) {
            continue;
        }
        const QuadratureResult piece =
            integrate_arc([&f](double t) { return f.evaluate(std::polar(1.0, t)); }, p.a, p.b, nodes);
        out.value += p.coeff * piece.value;
        out.error_estimate += p.coeff * piece.error_estimate;
    }
    return out;
}

bool TargetFunctional::is_consistent() const {
    return std::all_of(entries.begin(), entries.end(), [](const TargetEntry& e) {
        return std::abs(e.value) <= e.f.sup_norm_estimate() + kAlgebraicTol;
    });
}

std::vector<Interval> make_partition(double window, int per_side) {
    if (!(window > 0.0 && window <= kPi) || per_side < 1) {
        throw DomainError("make_partition: need 0 < window <= pi and at least one interval per side");
    }
    std::vector<Interval> out;
    const double h = window / per_side;
    for (int i = per_side; i > 0; --i) {
        out.push_back({-i * h, i == 1 ? 0.0 : -(i - 1) * h});
    }
    for (int i = 0; i < per_side; ++i) {
        out.push_back({i * h, i + 1 == per_side ? window : (i + 1) * h});
    }
    return out;
}

DensityFit fit_simple_density(const TargetFunctional& targets, std::span<const Interval> partition,
                              double eps, const FitOptions& options) {
    if (!(eps > 0.0)) {
        throw DomainError("fit_simple_density: eps must be positive");
    }
    validate_partition(partition, options.window);

    const auto n = static_cast<Eigen::Index>(partition.size());
    const auto k = static_cast<Eigen::Index>(targets.entries.size());

    Eigen::VectorXd weight(n);
    double total_length = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
        weight(i) = partition[static_cast<std::size_t>(i)].length() / kTwoPi;
        total_length += partition[static_cast<std::size_t>(i)].length();
    }
    const double uniform_value = kTwoPi / total_length;

    // moments(k, i) = integral of f_k over E_i against dm
    Eigen::MatrixXcd moments(k, n);
    for (Eigen::Index r = 0; r < k; ++r) {
        const FunctionSpec& f = targets.entries[static_cast<std::size_t>(r)].f;
        for (Eigen::Index i = 0; i < n; ++i) {
            const Interval& e = partition[static_cast<std::size_t>(i)];
            moments(r, i) =
                integrate_arc([&f](double t) { return f.evaluate(std::polar(1.0, t)); }, e.a, e.b, options.nodes)
                    .value;
        }
    }

    // Rows: real and imaginary parts of each target, a heavily weighted mass
    // row, then the regularization toward the uniform density.
    const double mass_weight = 1e2;
    const double reg = std::sqrt(options.regularization);
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(2 * k + 1 + n, n);
    Eigen::VectorXd b = Eigen::VectorXd::Zero(2 * k + 1 + n);
    for (Eigen::Index r = 0; r < k; ++r) {
        const Complex v = targets.entries[static_cast<std::size_t>(r)].value;
        a.row(2 * r) = moments.row(r).real();
        a.row(2 * r + 1) = moments.row(r).imag();
        b(2 * r) = v.real();
        b(2 * r + 1) = v.imag();
    }
    a.row(2 * k) = mass_weight * weight.transpose();
    b(2 * k) = mass_weight;
    for (Eigen::Index i = 0; i < n; ++i) {
        const double w = reg * std::sqrt(weight(i));
        a(2 * k + 1 + i, i) = w;
        b(2 * k + 1 + i) = w * uniform_value;
    }

    Eigen::VectorXd x = nnls(a, b);
    const double mass = weight.dot(x);
    if (!(mass > 0.0)) {
        throw InfeasibleError("fit_simple_density: solver returned a zero density");
    }
    x /= mass;

    std::vector<DensityPiece> pieces;
    for (Eigen::Index i = 0; i < n; ++i) {
        const Interval& e = partition[static_cast<std::size_t>(i)];
        pieces.push_back({e.a, e.b, std::max(0.0, x(i))});
    }
    SimpleDensity density = SimpleDensity::normalized(std::move(pieces));

    // density.pieces() is sorted by angle, so look coefficients up by position.
    std::vector<double> residuals(static_cast<std::size_t>(k), 0.0);
    double worst = 0.0;
    for (Eigen::Index r = 0; r < k; ++r) {
        Complex fitted(0.0, 0.0);
        for (Eigen::Index i = 0; i < n; ++i) {
            const Interval& e = partition[static_cast<std::size_t>(i)];
            fitted += moments(r, i) * density.value(0.5 * (e.a + e.b));
        }
        residuals[static_cast<std::size_t>(r)] = std::abs(targets.entries[static_cast<std::size_t>(r)].value - fitted);
        worst = std::max(worst, residuals[static_cast<std::size_t>(r)]);
    }
    if (worst >= eps) {
        std::ostringstream os;
        os << "fit_simple_density: best residual " << worst << " does not meet eps = " << eps;
        if (!targets.is_consistent()) {
            os << " (a target exceeds its function's sup norm)";
        }
        throw InfeasibleError(os.str(), residuals);
    }
    return {std::move(density), std::move(residuals)};
}

std::string to_string(QuartileCase c) {
    switch (c) {
        case QuartileCase::left:
            return "left";
        case QuartileCase::straddle:
            return "straddle";
        case QuartileCase::right:
            return "right";
    }
    return "unknown";
}

QuartilePair quartiles(const SimpleDensity& s, double window) {
    const auto& pieces = s.pieces();
    QuartilePair q;

    double cum = 0.0;
    for (const DensityPiece& p : pieces) {
        const double m = p.coeff * (p.b - p.a) / kTwoPi;
        if (m > 0.0 && cum + m >= 0.25) {
            const double frac = (0.25 - cum) / m;
            q.alpha = frac >= 1.0 ? p.b : p.a + frac * (p.b - p.a);
            break;
        }
        cum += m;
    }
    double tail = 0.0;
    for (auto it = pieces.rbegin(); it != pieces.rend(); ++it) {
        const DensityPiece& p = *it;
        const double m = p.coeff * (p.b - p.a) / kTwoPi;
        if (m > 0.0 && tail + m >= 0.25) {
            const double frac = (0.25 - tail) / m;
            q.beta = frac >= 1.0 ? p.a : p.b - frac * (p.b - p.a);
            break;
        }
        tail += m;
    }

    q.mass_on_right = s.mass(0.0, window);
    if (q.mass_on_right <= 0.25) {
        q.case_tag = QuartileCase::left;
    } else if (q.mass_on_right <= 0.75) {
        q.case_tag = QuartileCase::straddle;
    } else {
        q.case_tag = QuartileCase::right;
    }
    return q;
}

PushforwardDensity::PushforwardDensity(SimpleDensity s, DiscPoint c) : s_(std::move(s)), c_(c) {
    const MobiusAut lc(c_);
    for (const DensityPiece& p : s_.pieces()) {
        // L_c is orientation preserving on the circle, so the preimage of the
        // arc a -> b runs counterclockwise from L_c^{-1}(a) to L_c^{-1}(b).
        const double a = std::arg(lc.inverse_apply(std::polar(1.0, p.a)));
        double b = std::arg(lc.inverse_apply(std::polar(1.0, p.b)));
        if (p.b - p.a >= kTwoPi) {
            preimages_.push_back({-kPi, kPi, p.coeff});
            continue;
        }
        const double a_c = canonical_angle(a);
        b = canonical_angle(b);
        if (a_c < b) {
            preimages_.push_back({a_c, b, p.coeff});
        } else {
            if (a_c < kPi) preimages_.push_back({a_c, kPi, p.coeff});
            if (b > -kPi) preimages_.push_back({-kPi, b, p.coeff});
        }
    }
    std::sort(preimages_.begin(), preimages_.end(),
              [](const DensityPiece& x, const DensityPiece& y) { return x.a < y.a; });
}

double PushforwardDensity::operator()(double theta) const {
    const MobiusAut lc(c_);
    const Complex zeta = std::polar(1.0, theta);
    const double jac = std::abs(lc.derivative(zeta));
    return s_.value(std::arg(lc.apply(zeta))) * jac;
}

QuadratureResult PushforwardDensity::integrate(const std::function<Complex(Complex)>& f, int nodes) const {
    const MobiusAut lc(c_);
    QuadratureResult out{Complex(0.0, 0.0), 0.0};
    for (const DensityPiece& p : preimages_) {
        if (p.coeff == 0.0) {
            continue;
        }
        const QuadratureResult piece = integrate_arc(
            [&](double t) {
                const Complex zeta = std::polar(1.0, t);
                return f(lc.apply(zeta)) * std::abs(lc.derivative(zeta));
            },
            p.a, p.b, nodes);
        out.value += p.coeff * piece.value;
        out.error_estimate += p.coeff * piece.error_estimate;
    }
    return out;
}

QuadratureResult PushforwardDensity::integrate(const FunctionSpec& f, int nodes) const {
    return integrate([&f](Complex w) { return f.evaluate(w); }, nodes);
}

std::vector<double> PushforwardDensity::piece_masses(int nodes) const {
    const MobiusAut lc(c_);
    std::vector<double> out;
    for (const DensityPiece& p : preimages_) {
        out.push_back(p.coeff *
                      integrate_arc([&](double t) { return Complex(std::abs(lc.derivative(std::polar(1.0, t))), 0.0); },
                                    p.a, p.b, nodes)
                          .value.real());
    }
    return out;
}

double PushforwardDensity::total_mass(int nodes) const {
    double total = 0.0;
    for (double m : piece_masses(nodes)) {
        total += m;
    }
    return total;
}

PushforwardDensity pushforward_density(const SimpleDensity& s, DiscPoint c) {
    return PushforwardDensity(s, c);
}

}  // namespace corona_lab
