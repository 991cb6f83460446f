#include "corona_lab/ladder.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <sstream>

#include "corona_lab/errors.hpp"

namespace corona_lab {

namespace {

void validate_inputs(std::span<const DiscPoint> zeros, std::span<const double> eps,
                     std::span<const double> eta, double ell) {
    if (!(ell > 0.0 && ell < 1.0)) {
        throw DomainError("ladder: ell must lie in (0, 1)");
    }
    if (eps.empty() || eps.size() != eta.size()) {
        throw DomainError("ladder: eps and eta sequences must be nonempty and of equal length");
    }
    for (std::size_t j = 0; j < eps.size(); ++j) {
        if (!(eps[j] > 0.0 && eps[j] < 1.0) || !(eta[j] > 0.0 && eta[j] < 1.0)) {
            throw DomainError("ladder: eps_j and eta_j must lie in (0, 1)");
        }
        if (j > 0 && (eps[j] > eps[j - 1] || eta[j] < eta[j - 1])) {
            throw DomainError("ladder: eps must be nonincreasing and eta nondecreasing");
        }
    }
    const Sector whole = Sector::make(ell, ell, 1.0);
    for (const DiscPoint& z : zeros) {
        if (!whole.contains(z.value())) {
            std::ostringstream os;
            os << "ladder: zero (" << z.re() << ", " << z.im() << ") lies outside S[ell, 1)";
            throw DomainError(os.str());
        }
    }
}

double defect_sum(std::span<const DiscPoint> zeros, DiscPoint c) {
    double total = 0.0;
    for (const DiscPoint& z : zeros) {
        total += transported_defect(c, z);
    }
    return total;
}

}  // namespace

bool LadderConstruction::all_passed() const {
    return std::all_of(verification.begin(), verification.end(), [](const RungCheck& r) { return r.passed; });
}

double grid_min_modulus(const BlaschkeProduct& b, double eta, int radial_nodes, int angular_nodes) {
    double best = std::abs(b.evaluate(Complex(0.0, 0.0)));
    for (int k = 1; k <= radial_nodes; ++k) {
        const double radius = eta * static_cast<double>(k) / radial_nodes;
        for (int a = 0; a < angular_nodes; ++a) {
            const double theta = kTwoPi * a / angular_nodes;
            const double m = std::abs(b.evaluate(std::polar(radius, theta)));
            if (m < best) {
                best = m;
            }
        }
    }
    return best;
}

LadderConstruction ladder_construct(std::span<const DiscPoint> b0_zeros,
                                    const DiscSequence& candidates,
                                    std::span<const double> eps_seq,
                                    std::span<const double> eta_seq,
                                    double ell,
                                    const LadderOptions& options) {
    validate_inputs(b0_zeros, eps_seq, eta_seq, ell);

    LadderConstruction out;
    out.ell = ell;

    std::vector<double> moduli;
    for (const DiscPoint& z : b0_zeros) {
        moduli.push_back(z.abs());
    }
    std::vector<double> sorted_moduli = moduli;
    std::sort(sorted_moduli.begin(), sorted_moduli.end());
    sorted_moduli.erase(std::unique(sorted_moduli.begin(), sorted_moduli.end()), sorted_moduli.end());

    double s = ell;
    std::size_t next_candidate = 0;
    out.s_values.push_back(s);

    for (std::size_t j = 0; j < eps_seq.size(); ++j) {
        const int rung = static_cast<int>(j) + 1;
        const double eps = eps_seq[j];
        const double eta = eta_seq[j];
        const double r = (2.0 * s + 1.0) / 3.0;
        const double delta = eps * (1.0 - eta) / (1.0 + eta);

        std::vector<DiscPoint> head;
        for (std::size_t k = 0; k < b0_zeros.size(); ++k) {
            if (moduli[k] < r) {
                head.push_back(b0_zeros[k]);
            }
        }

        if (next_candidate >= candidates.size()) {
            std::ostringstream os;
            os << "ladder: candidate centers exhausted at rung " << rung;
            throw ConstructionError(os.str(), rung);
        }
        std::optional<std::size_t> chosen;
        double best_head = std::numeric_limits<double>::infinity();
        for (std::size_t n = next_candidate; n < candidates.size(); ++n) {
            const double sum = defect_sum(head, candidates[n]);
            best_head = std::min(best_head, sum);
            if (sum < 0.5 * delta) {
                chosen = n;
                break;
            }
        }
        if (!chosen) {
            std::ostringstream os;
            os << "ladder: rung " << rung << " needs head sum < " << 0.5 * delta
               << " but the best remaining candidate reaches " << best_head;
            throw InfeasibleError(os.str(), {best_head});
        }
        const DiscPoint c = candidates[*chosen];
        const double head_sum = defect_sum(head, c);

        // Smallest admissible s_{j+1} > r_j with tail sum below delta / 2.
        double s_next = 0.0;
        double tail_sum = 0.0;
        bool found = false;
        for (double m : sorted_moduli) {
            if (m <= r) {
                continue;
            }
            double sum = 0.0;
            for (std::size_t k = 0; k < b0_zeros.size(); ++k) {
                if (moduli[k] >= m) {
                    sum += transported_defect(c, b0_zeros[k]);
                }
            }
            if (sum < 0.5 * delta) {
                s_next = m;
                tail_sum = sum;
                found = true;
                break;
            }
        }
        if (!found) {
            const double outer = std::max(r, sorted_moduli.empty() ? r : sorted_moduli.back());
            s_next = outer + 0.5 * (1.0 - outer);
            tail_sum = 0.0;
        }

        std::vector<DiscPoint> rung_zeros;
        for (std::size_t k = 0; k < b0_zeros.size(); ++k) {
            if (moduli[k] < r || moduli[k] >= s_next) {
                rung_zeros.push_back(b0_zeros[k]);
            }
        }
        const BlaschkeProduct composed = compose_with_mobius(BlaschkeProduct(rung_zeros), c);

        RungCheck check;
        check.rung = rung;
        check.eta = eta;
        check.eps = eps;
        check.delta = delta;
        check.candidate_index = *chosen;
        check.head_sum = head_sum;
        check.tail_sum = tail_sum;
        check.rigorous_bound = modulus_lower_bound(composed, eta);
        check.measured_min = grid_min_modulus(composed, eta, options.radial_nodes, options.angular_nodes);
        check.passed = check.measured_min > 1.0 - eps;
        out.verification.push_back(check);

        out.r_values.push_back(r);
        out.s_values.push_back(s_next);
        out.chosen_indices.push_back(*chosen);
        next_candidate = *chosen + 1;
        s = s_next;
    }

    const std::size_t rungs = out.r_values.size();
    for (std::size_t k = 0; k < b0_zeros.size(); ++k) {
        const double m = moduli[k];
        if (m >= out.s_values[rungs]) {
            out.uncovered_zeros.push_back(b0_zeros[k]);
            continue;
        }
        for (std::size_t j = 0; j < rungs; ++j) {
            if (m >= out.s_values[j] && m < out.r_values[j]) {
                out.b1_zeros.push_back(b0_zeros[k]);
                break;
            }
            if (m >= out.r_values[j] && m < out.s_values[j + 1]) {
                // rung j+1 odd -> B2, even -> B3
                (j % 2 == 0 ? out.b2_zeros : out.b3_zeros).push_back(b0_zeros[k]);
                break;
            }
        }
    }

    const BlaschkeProduct b1(out.b1_zeros);
    out.b1b2 = b1 * BlaschkeProduct(out.b2_zeros);
    out.b1b3 = b1 * BlaschkeProduct(out.b3_zeros);

    for (std::size_t j = 0; j < rungs; ++j) {
        RungCheck& check = out.verification[j];
        const BlaschkeProduct& branch = (check.rung % 2 == 0) ? out.b1b2 : out.b1b3;
        const BlaschkeProduct composed = compose_with_mobius(branch, candidates[check.candidate_index]);
        check.branch_min = grid_min_modulus(composed, check.eta, options.radial_nodes, options.angular_nodes);
    }

    std::vector<DiscPoint> centers;
    for (std::size_t idx : out.chosen_indices) {
        centers.push_back(candidates[idx]);
    }
    const CarlesonDiagnostics thin = carleson_diagnostics(centers);
    out.thinness = thin.tail.empty() ? 1.0 : thin.tail.back();
    if (out.thinness > options.thin_threshold) {
        out.thin_product = BlaschkeProduct(centers);
    }
    return out;
}

}  // namespace corona_lab
