#pragma once

// Reference formulas written directly from their definitions, kept apart from
// the library's evaluation paths.

#include <cmath>
#include <complex>
#include <random>
#include <vector>

namespace oracle {

using C = std::complex<double>;
constexpr double pi = 3.14159265358979323846;

inline C mobius(C c, C z) { return (z + c) / (1.0 + std::conj(c) * z); }
inline C mobius_inverse(C c, C z) { return (z - c) / (1.0 - std::conj(c) * z); }

// rho^2 = 1 - (1 - |z|^2)(1 - |w|^2) / |1 - conj(w) z|^2
inline double rho_via_defect(C z, C w) {
    const double q = (1.0 - std::norm(z)) * (1.0 - std::norm(w)) / std::norm(1.0 - std::conj(w) * z);
    return std::sqrt(std::max(0.0, 1.0 - q));
}

inline C blaschke(const std::vector<C>& zeros, C z) {
    C p(1.0, 0.0);
    for (C a : zeros) {
        if (a == C(0.0, 0.0)) {
            p *= z;
        } else {
            p *= (std::conj(a) / std::abs(a)) * (a - z) / (1.0 - std::conj(a) * z);
        }
    }
    return p;
}

// prod_{j != k} |z_k - z_j| / |1 - conj(z_j) z_k|
inline std::vector<double> separation_products(const std::vector<C>& pts) {
    std::vector<double> out;
    for (std::size_t k = 0; k < pts.size(); ++k) {
        double p = 1.0;
        for (std::size_t j = 0; j < pts.size(); ++j) {
            if (j != k) p *= std::abs(pts[k] - pts[j]) / std::abs(1.0 - std::conj(pts[j]) * pts[k]);
        }
        out.push_back(p);
    }
    return out;
}

// Same products for points 1 - d_k on the positive axis, written in the defects d_k:
// rho = |d_k - d_j| / (d_k + d_j - d_k d_j).
inline std::vector<double> separation_products_axis(const std::vector<double>& defects) {
    std::vector<double> out;
    for (std::size_t k = 0; k < defects.size(); ++k) {
        double p = 1.0;
        for (std::size_t j = 0; j < defects.size(); ++j) {
            if (j != k) {
                const double a = defects[k], b = defects[j];
                p *= std::abs(a - b) / (a + b - a * b);
            }
        }
        out.push_back(p);
    }
    return out;
}

// Midpoint of the circle through e^{i a}, e^{i b} orthogonal to the unit circle,
// found by bisection on the ray of angle (a + b) / 2.
inline C arc_midpoint_bisection(double a, double b) {
    const double half = 0.5 * (b - a);
    const C center = std::polar(1.0 / std::cos(half), 0.5 * (a + b));
    const double radius = std::tan(half);
    const C dir = std::polar(1.0, 0.5 * (a + b));
    double lo = 0.0, hi = 1.0;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        (std::abs(mid * dir - center) > radius ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi) * dir;
}

// Composite midpoint rule for a periodic integrand over [-pi, pi) against dtheta / 2pi.
template <class F>
auto circle_mean(F f, int n) {
    decltype(f(0.0)) s{};
    for (int k = 0; k < n; ++k) s += f(-pi + 2.0 * pi * (k + 0.5) / n);
    return s / static_cast<double>(n);
}

inline C random_disc(std::mt19937_64& rng, double max_radius) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    return std::polar(max_radius * std::sqrt(u(rng)), 2.0 * pi * u(rng) - pi);
}

}  // namespace oracle
