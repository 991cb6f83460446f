#pragma once

#include <string>
#include <variant>
#include <vector>

#include "corona_lab/blaschke.hpp"
#include "corona_lab/disc_geometry.hpp"

namespace corona_lab {

/// Polynomial with complex coefficients, lowest degree first. Trailing zero
/// coefficients are trimmed, so the zero polynomial has no coefficients.
class Polynomial {
public:
    Polynomial() = default;
    explicit Polynomial(std::vector<Complex> coefficients);

    static Polynomial constant(Complex c) { return Polynomial({c}); }
    static Polynomial identity() { return Polynomial({Complex(0.0), Complex(1.0)}); }

    const std::vector<Complex>& coefficients() const noexcept { return coeffs_; }
    int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const noexcept { return coeffs_.empty(); }

    Complex evaluate(Complex z) const;
    /// Roots from the eigenvalues of the companion matrix.
    std::vector<Complex> roots() const;
    /// sum |a_k|, an upper bound for the sup norm on the closed disc.
    double coefficient_l1() const;

    friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator*(Complex s, const Polynomial& p);

private:
    void trim();
    std::vector<Complex> coeffs_;
};

/// numerator / denominator, denominator zero-free on the closed disc.
struct RationalFunction {
    Polynomial numerator;
    Polynomial denominator;
};

enum class FunctionKind { polynomial, finite_blaschke, rational };

std::string to_string(FunctionKind kind);
FunctionKind function_kind_from_string(const std::string& name);

/// Desk-scale stand-in for a bounded analytic function on the disc.
class FunctionSpec {
public:
    static FunctionSpec polynomial(Polynomial p);
    static FunctionSpec blaschke(BlaschkeProduct b);
    /// Throws DomainError if the denominator vanishes on the closed disc.
    static FunctionSpec rational(Polynomial numerator, Polynomial denominator);

    static FunctionSpec constant(Complex c) { return polynomial(Polynomial::constant(c)); }
    static FunctionSpec identity() { return polynomial(Polynomial::identity()); }

    FunctionKind kind() const noexcept;
    Complex evaluate(Complex z) const;
    Complex operator()(Complex z) const { return evaluate(z); }

    /// Upper estimate of sup |f| over the closed disc: sum |a_k| for
    /// polynomials, 1 for Blaschke products, a padded boundary maximum for
    /// rational functions.
    double sup_norm_estimate() const noexcept { return sup_norm_; }

    const Polynomial* as_polynomial() const { return std::get_if<Polynomial>(&repr_); }
    const BlaschkeProduct* as_blaschke() const { return std::get_if<BlaschkeProduct>(&repr_); }
    const RationalFunction* as_rational() const { return std::get_if<RationalFunction>(&repr_); }

private:
    using Repr = std::variant<Polynomial, BlaschkeProduct, RationalFunction>;
    FunctionSpec(Repr repr, double sup_norm) : repr_(std::move(repr)), sup_norm_(sup_norm) {}

    Repr repr_;
    double sup_norm_ = 0.0;
};

/// Maximum of |f| over `nodes` equispaced boundary points.
double boundary_max(const FunctionSpec& f, int nodes);

}  // namespace corona_lab
