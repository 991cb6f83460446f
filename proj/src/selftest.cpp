#include "corona_lab/selftest.hpp"

#include <cmath>
#include <functional>
#include <random>
#include <sstream>

#include "corona_lab/blaschke.hpp"
#include "corona_lab/corona.hpp"
#include "corona_lab/errors.hpp"
#include "corona_lab/hoffman.hpp"
#include "corona_lab/measures.hpp"

namespace corona_lab {

namespace {

class Suite {
public:
    Suite(std::string name, std::uint64_t seed) : rng_(seed) { report_.suite = std::move(name); }

    void check(bool ok, const std::string& what) {
        if (ok) {
            ++report_.passed;
        } else {
            ++report_.failed;
            report_.failures.push_back(what);
        }
    }

    // Runs `body`, counting an escaped exception as a failure.
    void guarded(const std::string& what, const std::function<void()>& body) {
        try {
            body();
        } catch (const std::exception& e) {
            check(false, what + ": " + e.what());
        }
    }

    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
    DiscPoint disc_point(double max_radius) {
        return DiscPoint(std::polar(max_radius * std::sqrt(uniform(0.0, 1.0)), uniform(-kPi, kPi)));
    }

    SelftestReport take() { return std::move(report_); }

private:
    std::mt19937_64 rng_;
    SelftestReport report_;
};

void geometry_suite(Suite& t) {
    t.guarded("mobius round trip", [&] {
        double worst = 0.0;
        for (int i = 0; i < 100; ++i) {
            const MobiusAut m(t.disc_point(0.95), t.uniform(-kPi, kPi));
            const Complex z = t.disc_point(0.99).value();
            worst = std::max(worst, std::abs(m.inverse_apply(m.apply(z)) - z));
        }
        t.check(worst < 1e-12, "mobius round trip");
    });
    t.guarded("pseudo distance invariance", [&] {
        double worst = 0.0;
        for (int i = 0; i < 100; ++i) {
            const MobiusAut m(t.disc_point(0.9));
            const DiscPoint z = t.disc_point(0.9), w = t.disc_point(0.9);
            worst = std::max(worst, std::abs(pseudo_distance(m.apply(z), m.apply(w)) - pseudo_distance(z, w)));
        }
        t.check(worst < 1e-10, "pseudo distance invariance");
    });
    t.guarded("pseudo disc boundary", [&] {
        double worst = 0.0;
        for (int i = 0; i < 50; ++i) {
            const DiscPoint c = t.disc_point(0.95);
            const double eta = t.uniform(0.05, 0.95);
            const EuclideanDisc d = pseudo_disc_euclidean(c, eta);
            for (int k = 0; k < 16; ++k) {
                const DiscPoint p(d.center + std::polar(d.radius, kTwoPi * k / 16));
                worst = std::max(worst, std::abs(pseudo_distance(p, c) - eta));
            }
        }
        t.check(worst < 1e-10, "pseudo disc boundary");
    });
    t.guarded("orthogonal arc midpoint", [&] {
        double worst = 0.0;
        for (int i = 0; i < 50; ++i) {
            const double width = t.uniform(0.01, kPi - 0.01);
            const double a = t.uniform(-kPi, kPi - width);
            const OrthogonalArc arc = OrthogonalArc::make(a, a + width);
            worst = std::max(worst, arc.distance_to_circle(arc.midpoint.value()));
        }
        t.check(worst < 1e-10, "orthogonal arc midpoint");
    });
}

void blaschke_suite(Suite& t) {
    auto random_product = [&](int n) {
        std::vector<DiscPoint> zeros;
        for (int k = 0; k < n; ++k) zeros.push_back(t.disc_point(0.99));
        return BlaschkeProduct(std::move(zeros), t.uniform(-kPi, kPi));
    };
    t.guarded("unimodular boundary", [&] {
        double worst = 0.0;
        for (int i = 0; i < 20; ++i) {
            const BlaschkeProduct b = random_product(1 + i % 12);
            for (int k = 0; k < 200; ++k) {
                worst = std::max(worst, std::abs(std::abs(b.evaluate(std::polar(1.0, kTwoPi * k / 200))) - 1.0));
            }
        }
        t.check(worst < 1e-10, "unimodular boundary");
    });
    t.guarded("transport", [&] {
        double worst = 0.0;
        for (int i = 0; i < 20; ++i) {
            const BlaschkeProduct b = random_product(1 + i % 8);
            const DiscPoint c = t.disc_point(0.9);
            const BlaschkeProduct bt = compose_with_mobius(b, c);
            const MobiusAut lc(c);
            for (int k = 0; k < 50; ++k) {
                const Complex z = t.disc_point(1.0 - 1e-9).value();
                worst = std::max(worst, std::abs(b.evaluate(lc.apply(z)) - bt.evaluate(z)));
            }
        }
        t.check(worst < 1e-10, "transport");
    });
    t.guarded("modulus lower bound", [&] {
        bool ok = true;
        for (int i = 0; i < 10; ++i) {
            std::vector<DiscPoint> zeros;
            for (int k = 0; k < 5; ++k) zeros.push_back(DiscPoint(std::polar(1.0 - t.uniform(0.0, 0.03), t.uniform(-kPi, kPi))));
            const BlaschkeProduct b(std::move(zeros));
            const double eta = 0.5;
            const double bound = modulus_lower_bound(b, eta);
            for (int k = 0; k < 200; ++k) {
                const Complex z = std::polar(eta * std::sqrt(t.uniform(0.0, 1.0)), t.uniform(-kPi, kPi));
                if (std::abs(b.evaluate(z)) < bound) ok = false;
            }
        }
        t.check(ok, "modulus lower bound");
    });
    t.guarded("derivative", [&] {
        double worst = 0.0;
        for (int i = 0; i < 10; ++i) {
            const BlaschkeProduct b = random_product(4);
            const Complex z = t.disc_point(0.5).value();
            const double h = 1e-6;
            const Complex fd = (b.evaluate(z + h) - b.evaluate(z - h)) / (2.0 * h);
            worst = std::max(worst, std::abs(fd - b.derivative(z)) / std::max(1.0, std::abs(fd)));
        }
        t.check(worst < 1e-6, "derivative");
    });
    t.guarded("carleson constant", [&] {
        std::vector<DiscPoint> pts;
        for (int j = 1; j <= 8; ++j) pts.emplace_back(Complex(1.0 - std::ldexp(1.0, -j), 0.0));
        const CarlesonDiagnostics d = carleson_diagnostics(pts);
        bool ok = d.tail.size() == pts.size();
        for (double v : d.tail) ok = ok && v >= d.constant && v <= 1.0;
        t.check(ok, "carleson constant");
    });
}

void measures_suite(Suite& t) {
    t.guarded("poisson reproduces polynomials", [&] {
        double worst = 0.0;
        for (int i = 0; i < 20; ++i) {
            std::vector<Complex> coeffs;
            for (int k = 0; k < 5; ++k) coeffs.emplace_back(t.uniform(-1, 1), t.uniform(-1, 1));
            const FunctionSpec f = FunctionSpec::polynomial(Polynomial(coeffs));
            const DiscPoint z = t.disc_point(0.8);
            worst = std::max(worst, std::abs(poisson_integral(f, z).value - f(z.value())));
        }
        t.check(worst < 1e-10, "poisson reproduces polynomials");
    });
    t.guarded("quartile masses", [&] {
        double worst = 0.0;
        for (int i = 0; i < 20; ++i) {
            std::vector<DensityPiece> pieces;
            double x = -kPi;
            for (int k = 0; k < 6; ++k) {
                const double y = x + t.uniform(0.1, 0.9);
                pieces.push_back({x, y, t.uniform(0.1, 2.0)});
                x = y + t.uniform(0.0, 0.1);
            }
            const SimpleDensity s = SimpleDensity::normalized(std::move(pieces));
            const QuartilePair q = quartiles(s);
            worst = std::max({worst, std::abs(s.cdf(q.alpha) - 0.25), std::abs(s.mass(q.beta, kPi) - 0.25)});
        }
        t.check(worst < 1e-10, "quartile masses");
    });
    t.guarded("pushforward mass", [&] {
        double worst = 0.0;
        for (int i = 0; i < 10; ++i) {
            const double a = t.uniform(-3.0, 2.0);
            const Interval iv{a, a + t.uniform(0.1, 1.0)};
            const SimpleDensity s = SimpleDensity::uniform(std::span<const Interval>(&iv, 1));
            worst = std::max(worst, std::abs(pushforward_density(s, t.disc_point(0.8)).total_mass() - 1.0));
        }
        t.check(worst < 1e-8, "pushforward mass");
    });
}

void hoffman_suite(Suite& t) {
    t.guarded("single zero derivative invariant", [&] {
        double worst = 0.0;
        for (int i = 0; i < 20; ++i) {
            const DiscPoint c = t.disc_point(0.999);
            const auto e = schwarz_check(DiscSequence({c}), BlaschkeProduct({c}));
            worst = std::max(worst, std::abs(e[0].derivative_invariant - 1.0));
        }
        t.check(worst < 1e-12, "single zero derivative invariant");
    });
    t.guarded("parseval", [&] {
        double worst = 0.0;
        for (int i = 0; i < 10; ++i) {
            std::vector<DiscPoint> zeros;
            for (int k = 0; k < 4; ++k) zeros.push_back(t.disc_point(0.7));
            const L2Identity l2 = l2_distance_to_identity(BlaschkeProduct(zeros), t.disc_point(0.5), 1024);
            worst = std::max(worst, std::abs(l2.parseval_sum - 1.0));
        }
        t.check(worst < 1e-6, "parseval");
    });
    t.guarded("identity trace", [&] {
        std::vector<DiscPoint> pts{DiscPoint(Complex(0.0, 0.0))};
        const CompositionTrace tr = compose_trace(FunctionSpec::identity(), DiscSequence(pts), 0.5, 8);
        double worst = 0.0;
        for (std::size_t p = 0; p < tr.grid.size(); ++p) worst = std::max(worst, std::abs(tr.samples[0][p] - tr.grid[p]));
        t.check(worst == 0.0, "identity trace");
    });
}

void corona_suite(Suite& t) {
    const std::vector<FunctionSpec> fs{FunctionSpec::polynomial(Polynomial({0.0, 0.0, 1.0})),
                                       FunctionSpec::polynomial(Polynomial({-0.5, 1.0}))};
    t.guarded("exact anchor", [&] {
        const BezoutCertificate cert = bezout_exact(fs);
        t.check(cert.residual_sup < 1e-12, "exact anchor");
    });
    t.guarded("certificate soundness", [&] {
        const CoronaInstance inst = CoronaInstance::make(fs, GridSpec{16, 32, 64, 0.8});
        const BezoutCertificate cert = bezout_numeric(inst, 8);
        const CheckReport r = check_certificate(inst, cert, 1e-8, 7, 2000);
        t.check(cert.passed && r.pass, "certificate soundness");
    });
    t.guarded("delta refinement", [&] {
        const GridSpec g{8, 16, 32, 0.7};
        t.check(measure_delta(fs, g.refined()).delta <= measure_delta(fs, g).delta, "delta refinement");
    });
    t.guarded("unsolvable common zero", [&] {
        bool thrown = false;
        try {
            bezout_exact(std::vector<FunctionSpec>{FunctionSpec::identity(),
                                                   FunctionSpec::polynomial(Polynomial({0.0, 0.0, 1.0}))});
        } catch (const UnsolvableError&) {
            thrown = true;
        }
        t.check(thrown, "unsolvable common zero");
    });
}

}  // namespace

std::vector<std::string> selftest_suites() { return {"disc_geometry", "blaschke", "measures", "hoffman", "corona"}; }

SelftestReport run_selftest(const std::string& suite, std::uint64_t seed) {
    Suite t(suite, seed);
    if (suite == "disc_geometry") {
        geometry_suite(t);
    } else if (suite == "blaschke") {
        blaschke_suite(t);
    } else if (suite == "measures") {
        measures_suite(t);
    } else if (suite == "hoffman") {
        hoffman_suite(t);
    } else if (suite == "corona") {
        corona_suite(t);
    } else {
        throw DomainError("selftest: unknown suite " + suite);
    }
    return t.take();
}

}  // namespace corona_lab
