#include "ppsbm/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ppsbm {

double epanechnikov(double u) {
    return std::abs(u) <= 1.0 ? 0.75 * (1.0 - u * u) : 0.0;
}

double default_bandwidth(double T, const std::vector<double>& times,
                         const std::vector<double>& weights) {
    double total = 0.0;
    for (double w : weights) total += w;
    if (total <= 1.0) return T;

    double mean = 0.0;
    for (std::size_t m = 0; m < times.size(); ++m) mean += weights[m] * times[m];
    mean /= total;
    double var = 0.0;
    for (std::size_t m = 0; m < times.size(); ++m) {
        double d = times[m] - mean;
        var += weights[m] * d * d;
    }
    var /= total;

    // Weighted quartiles by cumulative weight.
    auto quantile = [&](double p) {
        double target = p * total;
        double acc = 0.0;
        for (std::size_t m = 0; m < times.size(); ++m) {
            acc += weights[m];
            if (acc >= target) return times[m];
        }
        return times.back();
    };
    double iqr = quantile(0.75) - quantile(0.25);

    double spread = std::sqrt(var);
    if (iqr > 0.0) spread = std::min(spread, iqr / 1.34);
    if (spread <= 0.0) return T;
    return std::min(T, 0.9 * spread * std::pow(total, -0.2));
}

KernelIntensity kernel_estimate(const std::vector<double>& times,
                                const std::vector<double>& weights, double Y, double bandwidth) {
    if (times.size() != weights.size())
        throw std::invalid_argument("kernel_estimate: times/weights size mismatch");
    if (bandwidth <= 0.0) throw std::invalid_argument("kernel_estimate: bandwidth must be > 0");
    if (!std::is_sorted(times.begin(), times.end()))
        throw std::invalid_argument("kernel_estimate: times must be sorted");
    KernelIntensity k;
    k.bandwidth = bandwidth;
    k.normalizer = Y > 0.0 ? Y : 0.0;
    if (k.normalizer > 0.0) {
        k.times = times;
        k.weights = weights;
    }
    return k;
}

std::vector<double> evaluate_on_grid(const IntensityFn& fn, double T, int G) {
    if (G < 2) throw std::invalid_argument("evaluate_on_grid: need at least 2 points");
    std::vector<double> ts(static_cast<std::size_t>(G));
    for (int g = 0; g < G; ++g)
        ts[static_cast<std::size_t>(g)] = T * static_cast<double>(g) / static_cast<double>(G - 1);
    return intensity_at_sorted(fn, ts);
}

} // namespace ppsbm
