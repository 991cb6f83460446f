#include "corona_lab/hoffman.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <ostream>
#include <sstream>

#include "corona_lab/errors.hpp"

namespace corona_lab {

namespace {

SubsequenceReport extract_cauchy(const std::vector<std::vector<Complex>>& rows, double threshold) {
    SubsequenceReport report;
    report.threshold = threshold;
    if (rows.empty()) {
        return report;
    }
    auto sup_gap = [&](std::size_t i, std::size_t j) {
        double best = 0.0;
        for (std::size_t p = 0; p < rows[i].size(); ++p) {
            best = std::max(best, std::abs(rows[i][p] - rows[j][p]));
        }
        return best;
    };
    report.indices.push_back(0);
    double previous = std::numeric_limits<double>::infinity();
    for (std::size_t j = 1; j < rows.size(); ++j) {
        const double gap = sup_gap(report.indices.back(), j);
        if (gap < previous) {
            report.indices.push_back(j);
            report.gaps.push_back(gap);
            previous = gap;
        }
    }
    report.converged = !report.gaps.empty() && report.gaps.back() < threshold;
    return report;
}

struct FftwPlanDeleter {
    void operator()(fftw_plan_s* p) const { fftw_destroy_plan(p); }
};
struct FftwFree {
    void operator()(fftw_complex* p) const { fftw_free(p); }
};

}  // namespace

std::vector<Complex> disc_grid(double radius, int grid_size) {
    if (!(radius > 0.0 && radius < 1.0) || grid_size < 1) {
        throw DomainError("disc_grid: need 0 < radius < 1 and grid_size >= 1");
    }
    std::vector<Complex> grid{Complex(0.0, 0.0)};
    for (int k = 1; k <= grid_size; ++k) {
        const double r = radius * k / grid_size;
        for (int a = 0; a < grid_size; ++a) {
            grid.push_back(std::polar(r, kTwoPi * a / grid_size));
        }
    }
    return grid;
}

CompositionTrace compose_trace(const FunctionSpec& f, const DiscSequence& seq, double grid_radius, int grid_size,
                               double threshold) {
    CompositionTrace trace;
    trace.c_values = seq.points();
    trace.grid = disc_grid(grid_radius, grid_size);
    trace.samples.reserve(seq.size());
    for (const DiscPoint& c : seq.points()) {
        const MobiusAut lc(c);
        std::vector<Complex> row;
        row.reserve(trace.grid.size());
        for (Complex zeta : trace.grid) {
            row.push_back(f.evaluate(lc.apply(zeta)));
        }
        trace.samples.push_back(std::move(row));
    }
    for (std::size_t j = 0; j + 1 < trace.samples.size(); ++j) {
        double best = 0.0;
        for (std::size_t p = 0; p < trace.grid.size(); ++p) {
            best = std::max(best, std::abs(trace.samples[j + 1][p] - trace.samples[j][p]));
        }
        trace.cauchy_profile.push_back(best);
    }
    trace.subsequence = extract_cauchy(trace.samples, threshold);
    return trace;
}

RotationFit fit_rotation(const CompositionTrace& trace, std::size_t row) {
    const auto& samples = trace.samples.at(row);
    Complex inner(0.0, 0.0);
    for (std::size_t p = 0; p < trace.grid.size(); ++p) {
        inner += std::conj(trace.grid[p]) * samples[p];
    }
    RotationFit fit;
    fit.gamma = inner == Complex(0.0, 0.0) ? 0.0 : std::arg(inner);
    const Complex undo = std::polar(1.0, -fit.gamma);
    for (std::size_t p = 0; p < trace.grid.size(); ++p) {
        fit.residual = std::max(fit.residual, std::abs(undo * samples[p] - trace.grid[p]));
    }
    return fit;
}

void write_trace_csv(const CompositionTrace& trace, std::ostream& out) {
    out << "grid_re,grid_im,j,re,im\n";
    out.precision(17);
    for (std::size_t j = 0; j < trace.samples.size(); ++j) {
        for (std::size_t p = 0; p < trace.grid.size(); ++p) {
            out << trace.grid[p].real() << ',' << trace.grid[p].imag() << ',' << j << ','
                << trace.samples[j][p].real() << ',' << trace.samples[j][p].imag() << '\n';
        }
    }
}

std::vector<SchwarzEntry> schwarz_check(const DiscSequence& seq, const BlaschkeProduct& b) {
    std::vector<SchwarzEntry> out;
    out.reserve(seq.size());
    for (std::size_t j = 0; j < seq.size(); ++j) {
        const Complex c = seq[j].value();
        out.push_back({j, b.evaluate(c), one_minus_abs_sq(c) * std::abs(b.derivative(c))});
    }
    return out;
}

L2Identity l2_distance_to_identity(const BlaschkeProduct& b, DiscPoint c, int n_fft, double aliasing_limit) {
    if (n_fft < 256 || (n_fft & (n_fft - 1)) != 0) {
        throw DomainError("l2_distance_to_identity: n_fft must be a power of two >= 256");
    }
    const BlaschkeProduct composed = compose_with_mobius(b, c);
    const auto n = static_cast<std::size_t>(n_fft);

    std::unique_ptr<fftw_complex, FftwFree> buffer(fftw_alloc_complex(n));
    std::unique_ptr<fftw_plan_s, FftwPlanDeleter> plan(
        fftw_plan_dft_1d(n_fft, buffer.get(), buffer.get(), FFTW_FORWARD, FFTW_ESTIMATE));
    for (std::size_t k = 0; k < n; ++k) {
        const Complex v = composed.evaluate(std::polar(1.0, kTwoPi * static_cast<double>(k) / n_fft));
        buffer.get()[k][0] = v.real();
        buffer.get()[k][1] = v.imag();
    }
    fftw_execute(plan.get());

    L2Identity out;
    out.coeffs.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
        out.coeffs[k] = Complex(buffer.get()[k][0], buffer.get()[k][1]) / static_cast<double>(n_fft);
    }

    double higher = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const double e = std::norm(out.coeffs[k]);
        out.parseval_sum += e;
        if (k >= 2) higher += e;
        if (k >= 3 * n / 4) out.tail_energy += e;
    }
    if (out.tail_energy > aliasing_limit) {
        std::ostringstream os;
        os << "l2_distance_to_identity: top-quarter spectral energy " << out.tail_energy
           << " suggests aliasing; increase n_fft beyond " << n_fft;
        throw AliasingError(os.str(), out.tail_energy);
    }
    const Complex a0 = out.coeffs[0];
    const Complex a1 = out.coeffs[1];
    out.rotation = a1 == Complex(0.0, 0.0) ? 0.0 : std::arg(a1);
    out.distance = std::sqrt(std::norm(a0) + std::norm(a1 - 1.0) + higher);
    const double gap = std::abs(a1) - 1.0;
    out.normalized_distance = std::sqrt(std::norm(a0) + gap * gap + higher);
    return out;
}

}  // namespace corona_lab
