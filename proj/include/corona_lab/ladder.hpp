#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "corona_lab/blaschke.hpp"

namespace corona_lab {

struct LadderOptions {
    // Polar grid used to measure min |B^(j) o L| on |zeta| <= eta_j.
    int radial_nodes = 24;
    int angular_nodes = 512;
    // The chosen centers become the zero set of the thin factor only when the
    // separation product at the last chosen center exceeds this.
    double thin_threshold = 0.9;
};

struct RungCheck {
    int rung = 0;                  // 1-based
    double eta = 0.0;
    double eps = 0.0;
    double delta = 0.0;            // eps (1 - eta) / (1 + eta)
    std::size_t candidate_index = 0;
    double head_sum = 0.0;         // over S[ell, r_j), must be < delta / 2
    double tail_sum = 0.0;         // over S[s_{j+1}, 1), must be < delta / 2
    double rigorous_bound = 0.0;   // modulus_lower_bound of B^(j) o L at eta
    double measured_min = 0.0;     // grid minimum of |B^(j) o L| on |zeta| <= eta
    double branch_min = 0.0;       // same for B1B3 (odd rungs) or B1B2 (even rungs)
    bool passed = false;           // measured_min > 1 - eps
};

struct LadderConstruction {
    double ell = 0.0;
    std::vector<double> s_values;              // s_1 .. s_{J+1}
    std::vector<double> r_values;              // r_1 .. r_J, r_j = (2 s_j + 1) / 3
    std::vector<std::size_t> chosen_indices;   // 0-based indices into the candidates
    std::vector<DiscPoint> b1_zeros;           // union of S[s_j, r_j)
    std::vector<DiscPoint> b2_zeros;           // union of S[r_{2j-1}, s_{2j})
    std::vector<DiscPoint> b3_zeros;           // union of S[r_{2j}, s_{2j+1})
    std::vector<DiscPoint> uncovered_zeros;    // S[s_{J+1}, 1)
    std::vector<RungCheck> verification;
    // Which of these two vanishes at the limiting functional is not decidable
    // here, so both are returned.
    BlaschkeProduct b1b2;
    BlaschkeProduct b1b3;
    double thinness = 1.0;                     // separation product at the last chosen center
    std::optional<BlaschkeProduct> thin_product;

    bool all_passed() const;
};

/// Builds the sector ladder for a zero set contained in S[ell, 1).
/// Throws InfeasibleError when no remaining candidate makes the head sum small
/// enough, ConstructionError when the candidates run out.
LadderConstruction ladder_construct(std::span<const DiscPoint> b0_zeros,
                                    const DiscSequence& candidates,
                                    std::span<const double> eps_seq,
                                    std::span<const double> eta_seq,
                                    double ell,
                                    const LadderOptions& options = {});

/// Grid minimum of |b| over |zeta| <= eta (center, rings and the boundary circle);
/// ties resolve to the lowest grid index.
double grid_min_modulus(const BlaschkeProduct& b, double eta, int radial_nodes, int angular_nodes);

}  // namespace corona_lab
