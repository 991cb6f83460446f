#include <cmath>
#include <sstream>

#include "corona_lab/errors.hpp"
#include "corona_lab/measures.hpp"

namespace corona_lab {

namespace {

constexpr double kSameEndpoint = 1e-14;

bool case_holds(AlignCase which, double alpha_s, double beta_s, double alpha, double beta) {
    switch (which) {
        case AlignCase::a:
            return alpha_s <= alpha && alpha <= 0.0 && 0.0 <= beta && beta <= beta_s;
        case AlignCase::b:
            return 0.0 <= alpha && 0.0 <= alpha_s && beta <= beta_s;
        case AlignCase::c:
            return beta <= 0.0 && beta_s <= 0.0 && alpha >= alpha_s;
    }
    return false;
}

// Positive density on (x - h, x] for every small h.
bool supported_left_of(const SimpleDensity& s, double x) {
    for (const DensityPiece& p : s.pieces()) {
        if (p.coeff > 0.0 && p.a < x && x <= p.b) return true;
    }
    return false;
}

// Positive density on [x, x + h) for every small h.
bool supported_right_of(const SimpleDensity& s, double x) {
    for (const DensityPiece& p : s.pieces()) {
        if (p.coeff > 0.0 && p.a <= x && x < p.b) return true;
    }
    return false;
}

// Split pieces at alpha and beta, then scale the three regions to masses 1/4, 1/2, 1/4.
SimpleDensity reweight(const SimpleDensity& s, double alpha, double beta) {
    const double left = s.mass(-kPi, alpha);
    const double middle = s.mass(alpha, beta);
    const double right = s.mass(beta, kPi);
    if (!(left > 0.0 && middle > 0.0 && right > 0.0)) {
        throw InfeasibleError("align_arcs: trimming would empty one of the quartile regions",
                              {left, middle, right});
    }
    std::vector<DensityPiece> out;
    auto emit = [&](double a, double b, double coeff, double scale) {
        if (b > a) out.push_back({a, b, coeff * scale});
    };
    for (const DensityPiece& p : s.pieces()) {
        emit(p.a, std::min(p.b, alpha), p.coeff, 0.25 / left);
        emit(std::max(p.a, alpha), std::min(p.b, beta), p.coeff, 0.5 / middle);
        emit(std::max(p.a, beta), p.b, p.coeff, 0.25 / right);
    }
    return SimpleDensity::normalized(std::move(out));
}

}  // namespace

AlignCase align_case_from_string(const std::string& name) {
    if (name == "a") return AlignCase::a;
    if (name == "b") return AlignCase::b;
    if (name == "c") return AlignCase::c;
    throw DomainError("align_arcs: case must be one of a, b, c");
}

AlignedDensity align_arcs(const SimpleDensity& s_sharp, const OrthogonalArc& target, AlignCase which) {
    const QuartilePair qs = quartiles(s_sharp);
    const double alpha = target.alpha;
    const double beta = target.beta;
    const DiscPoint c = target.midpoint;

    if (!case_holds(which, qs.alpha, qs.beta, alpha, beta)) {
        std::ostringstream os;
        os << "align_arcs: quartiles (" << qs.alpha << ", " << qs.beta << ") and target (" << alpha << ", "
           << beta << ") violate the case ordering";
        throw DomainError(os.str());
    }

    if (std::abs(qs.alpha - alpha) <= kSameEndpoint && std::abs(qs.beta - beta) <= kSameEndpoint) {
        return {s_sharp, qs, target, target.distance_to_circle(c.value())};
    }

    double new_alpha = alpha;
    double new_beta = beta;
    switch (which) {
        case AlignCase::a:
            break;
        case AlignCase::b:
            if (qs.alpha < alpha) {
                // keep alpha#, rotate the arc about c
                new_alpha = qs.alpha;
                new_beta = orthogonal_arc_partner(c, qs.alpha);
            }
            break;
        case AlignCase::c:
            if (qs.beta > beta) {
                new_beta = qs.beta;
                new_alpha = orthogonal_arc_partner(c, qs.beta);
            }
            break;
    }
    if (!(new_alpha < new_beta && new_beta - new_alpha < kPi)) {
        throw InfeasibleError("align_arcs: the arc through the midpoint has no admissible endpoints",
                              {new_alpha, new_beta});
    }
    if (!supported_left_of(s_sharp, new_alpha) || !supported_right_of(s_sharp, new_beta)) {
        std::ostringstream os;
        os << "align_arcs: density has no mass adjacent to the new quartile points (" << new_alpha << ", "
           << new_beta << ")";
        throw InfeasibleError(os.str(), {new_alpha, new_beta});
    }

    SimpleDensity aligned = reweight(s_sharp, new_alpha, new_beta);
    const QuartilePair q = quartiles(aligned);
    const OrthogonalArc arc = OrthogonalArc::make(q.alpha, q.beta);
    return {std::move(aligned), q, arc, arc.distance_to_circle(c.value())};
}

}  // namespace corona_lab
