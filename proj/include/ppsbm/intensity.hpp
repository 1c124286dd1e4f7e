#ifndef PPSBM_INTENSITY_HPP
#define PPSBM_INTENSITY_HPP

#include <cmath>
#include <variant>
#include <vector>

#include "ppsbm/common.hpp"

namespace ppsbm {

/// Constant rate `level` on [0, T].
struct ConstantIntensity {
    double level = 0.0;
};

/// amplitude * (1 + sin(2*pi*(t + shift) / period)). Nonnegative for any
/// phase; integrates to amplitude * period over one full period.
struct SinusoidIntensity {
    double amplitude = 0.0;
    double shift = 0.0;
    double period = 1.0;
};

/// peak * max(0, 1 - |t - center| / halfwidth): a tent with apex `peak` at
/// `center` and support [center - halfwidth, center + halfwidth].
struct TriangleIntensity {
    double peak = 0.0;
    double center = 0.0;
    double halfwidth = 1.0;
};

/// Piecewise-constant over the regular partition of [0, T) into
/// values.size() half-open cells.
struct PiecewiseConstantIntensity {
    std::vector<double> values;
    double T = 1.0;
};

/// Kernel-smoothed estimate: (1 / (bandwidth * normalizer)) *
/// sum_m weight[m] * K((t - time[m]) / bandwidth) with the Epanechnikov
/// kernel. Identically zero when normalizer == 0. Times must be sorted.
struct KernelIntensity {
    double bandwidth = 1.0;
    double normalizer = 0.0;
    std::vector<double> times;
    std::vector<double> weights;
};

using IntensityFn = std::variant<ConstantIntensity, SinusoidIntensity, TriangleIntensity,
                                 PiecewiseConstantIntensity, KernelIntensity>;

/// Pointwise evaluation at t.
double intensity_at(const IntensityFn& fn, double t);

/// Exact cumulative intensity: integral of the function over [0, upto].
double intensity_integral(const IntensityFn& fn, double upto);

/// Finite upper bound of the intensity on [0, T], computed analytically per
/// descriptor (constant: level; sinusoid: 2*amplitude; tent: peak;
/// piecewise: max cell; kernel: bounded by the max of windowed sums).
double intensity_max(const IntensityFn& fn, double T);

/// Evaluates at each of the given times, which must be sorted ascending.
/// Kernel estimates use prefix sums over the event window, so the batch
/// call is O(times + events) instead of O(times * events); other
/// descriptors fall back to pointwise evaluation.
std::vector<double> intensity_at_sorted(const IntensityFn& fn, const std::vector<double>& times);

/// Throws std::invalid_argument if the descriptor can be negative somewhere.
void check_nonnegative(const IntensityFn& fn);

/// Parameters of a Poisson process stochastic block model: group
/// proportions plus one intensity per group pair. Undirected models store
/// the q <= l triangle (PairSet order) and mirror on lookup.
struct IntensityModel {
    int Q = 0;
    std::vector<double> pi;
    double T = 1.0;
    bool directed = false;
    std::vector<IntensityFn> alpha; // indexed by PairSet(Q, directed)

    PairSet pairs() const { return PairSet(Q, directed); }

    const IntensityFn& alpha_at(int q, int l) const {
        return alpha[static_cast<std::size_t>(pairs().index(q, l))];
    }

    /// Validates proportions (sum 1 within 1e-12, all > 0), grid size and
    /// nonnegativity of every intensity.
    void validate() const;
};

} // namespace ppsbm

#endif
