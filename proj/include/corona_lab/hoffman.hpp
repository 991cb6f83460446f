#pragma once

#include <cstddef>
#include <iosfwd>
#include <vector>

#include "corona_lab/blaschke.hpp"
#include "corona_lab/function_spec.hpp"

namespace corona_lab {

// Greedy Cauchy filtering: starting from index 0, keep the first later index
// whose sup-distance to the last kept row is strictly below the previous gap.
struct SubsequenceReport {
    std::vector<std::size_t> indices;
    std::vector<double> gaps;  // gaps[i] = sup-distance between rows indices[i] and indices[i+1]
    double threshold = 1e-6;
    bool converged = false;    // last gap below threshold
};

struct CompositionTrace {
    std::vector<DiscPoint> c_values;
    std::vector<Complex> grid;
    std::vector<std::vector<Complex>> samples;  // samples[j][p] = f(L_{c_j}(grid[p]))
    std::vector<double> cauchy_profile;         // max_p |samples[j+1][p] - samples[j][p]|
    SubsequenceReport subsequence;
};

/// Polar grid: the origin plus `grid_size` rings of `grid_size` points, outer ring at `radius`.
std::vector<Complex> disc_grid(double radius, int grid_size);

CompositionTrace compose_trace(const FunctionSpec& f, const DiscSequence& seq, double grid_radius,
                               int grid_size, double threshold = 1e-6);

struct RotationFit {
    double gamma = 0.0;
    double residual = 0.0;  // max_p |e^{-i gamma} samples[row][p] - grid[p]|
};

/// Least-squares rotation e^{i gamma} zeta matching one row of the trace.
RotationFit fit_rotation(const CompositionTrace& trace, std::size_t row);

/// CSV with header "grid_re,grid_im,j,re,im".
void write_trace_csv(const CompositionTrace& trace, std::ostream& out);

struct SchwarzEntry {
    std::size_t j = 0;
    Complex value_at_c;
    double derivative_invariant = 0.0;  // (1 - |c_j|^2) |B'(c_j)|
};

std::vector<SchwarzEntry> schwarz_check(const DiscSequence& seq, const BlaschkeProduct& b);

struct L2Identity {
    double distance = 0.0;             // against zeta itself
    double normalized_distance = 0.0;  // against e^{i rotation} zeta, rotation = arg a_1
    double rotation = 0.0;
    std::vector<Complex> coeffs;       // a_0 .. a_{n-1} of the boundary samples
    double parseval_sum = 0.0;
    double tail_energy = 0.0;          // energy in the top quarter of the spectrum
};

/// Fourier coefficients of (B o L_c)(e^{i theta}) from n_fft samples and the
/// L2 distance to the identity. n_fft must be a power of two >= 256; throws
/// AliasingError when the top quarter of the spectrum carries more than
/// `aliasing_limit` energy.
L2Identity l2_distance_to_identity(const BlaschkeProduct& b, DiscPoint c, int n_fft,
                                   double aliasing_limit = 1e-3);

}  // namespace corona_lab
