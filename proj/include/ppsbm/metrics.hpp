#ifndef PPSBM_METRICS_HPP
#define PPSBM_METRICS_HPP

#include <vector>

#include "ppsbm/intensity.hpp"
#include "ppsbm/rng.hpp"
#include "ppsbm/vem.hpp"

namespace ppsbm {

/// Adjusted Rand index (Hubert-Arabie) between two labelings of the same
/// items. 1 for identical partitions up to relabeling; can be negative.
double adjusted_rand_index(const std::vector<int>& a, const std::vector<int>& b);

/// L2 distance sqrt(integral (f - g)^2) by the trapezoid rule on a regular
/// grid of G points over [0, T].
double l2_risk(const IntensityFn& estimate, const IntensityFn& truth, double T, int grid_points);

/// Permutation sigma (estimated group -> reference group) minimizing the
/// summed L2 risk between estimate^{(q,l)} and reference^{(sigma q, sigma l)}.
/// Exhaustive for Q <= 8, greedy on diagonal risks beyond.
std::vector<int> align_groups(const std::vector<IntensityFn>& estimate,
                              const std::vector<IntensityFn>& reference, const PairSet& pairs,
                              double T, int grid_points);

struct RiskReport {
    PairSet pairs;
    std::vector<int> permutation;  // estimated group -> true group
    std::vector<double> risk;      // indexed by true pair, after alignment
    double total = 0.0;
};

/// Risks of a fitted intensity grid against a reference grid after
/// label alignment.
RiskReport intensity_risks(const std::vector<IntensityFn>& estimate,
                           const std::vector<IntensityFn>& reference, const PairSet& pairs,
                           double T, int grid_points = 2048);

struct BootstrapBands {
    double T = 0.0;
    double level = 0.0;
    std::vector<double> grid;                   // evaluation times
    std::vector<std::vector<double>> lower;     // per pair, per grid point
    std::vector<std::vector<double>> median;
    std::vector<std::vector<double>> upper;
    int replicates = 0;
    int empty_group_replicates = 0; // bootstrap label draws missing a group
};

/// Parametric bootstrap by the percentile method: draw labels from the
/// fitted proportions, simulate each dyad from the fitted intensities,
/// refit, align each refit to the original by minimal total risk, and take
/// pointwise empirical quantiles ((1-level)/2 and 1-(1-level)/2, linearly
/// interpolated) across replicates. Replicates whose label draw leaves a
/// group empty are kept and counted, since they are exactly the failure
/// mode worth surfacing.
BootstrapBands bootstrap_ci(const FitResult& fit, int B, double level, const FitConfig& cfg,
                            Rng& rng, int grid_points = 201, unsigned jobs = 1);

/// Linearly interpolated empirical quantile of the given sample (type-7).
double empirical_quantile(std::vector<double> values, double p);

} // namespace ppsbm

#endif
