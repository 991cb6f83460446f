#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "corona_lab/function_spec.hpp"

namespace corona_lab {

Polynomial::Polynomial(std::vector<Complex> coefficients) : coeffs_(std::move(coefficients)) {
    trim();
}

void Polynomial::trim() {
    while (!coeffs_.empty() && coeffs_.back() == Complex(0.0, 0.0)) {
        coeffs_.pop_back();
    }
}

Complex Polynomial::evaluate(Complex z) const {
    Complex acc(0.0, 0.0);
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
        acc = acc * z + *it;
    }
    return acc;
}

std::vector<Complex> Polynomial::roots() const {
    const int n = degree();
    if (n <= 0) {
        return {};
    }
    Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(n, n);
    const Complex lead = coeffs_.back();
    for (int i = 1; i < n; ++i) {
        companion(i, i - 1) = 1.0;
    }
    for (int i = 0; i < n; ++i) {
        companion(i, n - 1) = -coeffs_[static_cast<std::size_t>(i)] / lead;
    }
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, false);
    std::vector<Complex> out(solver.eigenvalues().data(), solver.eigenvalues().data() + n);
    std::sort(out.begin(), out.end(), [](Complex a, Complex b) {
        return std::abs(a) != std::abs(b) ? std::abs(a) < std::abs(b) : std::arg(a) < std::arg(b);
    });
    return out;
}

double Polynomial::coefficient_l1() const {
    double total = 0.0;
    for (Complex c : coeffs_) {
        total += std::abs(c);
    }
    return total;
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    std::vector<Complex> out(std::max(a.coeffs_.size(), b.coeffs_.size()), Complex(0.0, 0.0));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
        out[i] += a.coeffs_[i];
    }
    for (std::size_t i = 0; i < b.coeffs_.size(); ++i) {
        out[i] += b.coeffs_[i];
    }
    return Polynomial(std::move(out));
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) {
    return a + Complex(-1.0, 0.0) * b;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) {
        return {};
    }
    std::vector<Complex> out(a.coeffs_.size() + b.coeffs_.size() - 1, Complex(0.0, 0.0));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
        for (std::size_t j = 0; j < b.coeffs_.size(); ++j) {
            out[i + j] += a.coeffs_[i] * b.coeffs_[j];
        }
    }
    return Polynomial(std::move(out));
}

Polynomial operator*(Complex s, const Polynomial& p) {
    std::vector<Complex> out = p.coeffs_;
    for (Complex& c : out) {
        c *= s;
    }
    return Polynomial(std::move(out));
}

}  // namespace corona_lab
