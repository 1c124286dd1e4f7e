#ifndef PPSBM_HISTOGRAM_HPP
#define PPSBM_HISTOGRAM_HPP

#include <vector>

#include "ppsbm/intensity.hpp"

namespace ppsbm {

/// Adaptive piecewise-constant intensity estimate for one group pair.
struct HistogramEstimate {
    int depth = 0;                  // selected d in {0..d_max}
    std::vector<double> values;     // 2^depth nonnegative cell heights
    double T = 1.0;

    PiecewiseConstantIntensity as_intensity() const { return {values, T}; }

    /// Integral over [0, T]; equals total weighted count / Y when Y > 0.
    double integral() const;
};

/// Coarsens counts from the finest grid (length 2^d_max) to 2^d cells by
/// summing adjacent blocks.
std::vector<double> cell_counts_at_depth(const std::vector<double>& finest_counts, int d);

/// Depth minimizing the penalized least-squares criterion
///   2^d { -sum_{E in grid_d} N(E)^2 + 2^{d_max+1} max_{E'} N(E') },
/// where N at depth d comes from coarsening the finest counts. Ties break
/// toward the smallest depth.
int select_depth(const std::vector<double>& finest_counts);

/// Piecewise-constant estimate at the given depth: cell height =
/// coarsened count / (Y * cell width). Y == 0 yields the zero estimate.
HistogramEstimate histogram_estimate(const std::vector<double>& finest_counts, double Y,
                                     int depth, double T);

/// Depth selection followed by estimation; the Y == 0 convention forces
/// depth 0 and the zero function.
HistogramEstimate adaptive_histogram(const std::vector<double>& finest_counts, double Y,
                                     double T);

} // namespace ppsbm

#endif
