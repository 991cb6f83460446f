#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace corona_lab {

// Every failure raised by the library derives from Error and carries a short
// machine-readable kind ("domain", "infeasible", ...) used by the CLI's
// error JSON.
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& message)
        : std::runtime_error(message), kind_(std::move(kind)) {}

    const std::string& kind() const noexcept { return kind_; }

private:
    std::string kind_;
};

// Input outside an operation's domain (|z| >= 1, bad angle order, ...).
class DomainError : public Error {
public:
    explicit DomainError(const std::string& message) : Error("domain", message) {}
};

// The requested tolerance cannot be met; `residuals` holds the best achieved values.
class InfeasibleError : public Error {
public:
    InfeasibleError(const std::string& message, std::vector<double> residuals = {})
        : Error("infeasible", message), residuals_(std::move(residuals)) {}

    const std::vector<double>& residuals() const noexcept { return residuals_; }

private:
    std::vector<double> residuals_;
};

// A multi-step construction ran out of input (e.g. candidate points).
class ConstructionError : public Error {
public:
    ConstructionError(const std::string& message, int step)
        : Error("construction", message), step_(step) {}

    int step() const noexcept { return step_; }

private:
    int step_;
};

class QuadratureError : public Error {
public:
    QuadratureError(const std::string& message, double achieved)
        : Error("quadrature", message), achieved_(achieved) {}

    double achieved_error() const noexcept { return achieved_; }

private:
    double achieved_;
};

class AliasingError : public Error {
public:
    AliasingError(const std::string& message, double tail_energy)
        : Error("aliasing", message), tail_energy_(tail_energy) {}

    double tail_energy() const noexcept { return tail_energy_; }

private:
    double tail_energy_;
};

// The corona condition fails: the functions share a zero in the closed disc.
class UnsolvableError : public Error {
public:
    explicit UnsolvableError(const std::string& message) : Error("unsolvable", message) {}
};

}  // namespace corona_lab
