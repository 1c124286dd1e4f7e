#include "ppsbm/histogram.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ppsbm {

namespace {

int depth_of(std::size_t size) {
    int d = 0;
    while ((std::size_t{1} << d) < size) ++d;
    if ((std::size_t{1} << d) != size)
        throw std::invalid_argument("finest counts length must be a power of two");
    return d;
}

} // namespace

double HistogramEstimate::integral() const {
    double total = 0.0;
    for (double v : values) total += v;
    return total * (T / static_cast<double>(values.size()));
}

std::vector<double> cell_counts_at_depth(const std::vector<double>& finest_counts, int d) {
    int d_max = depth_of(finest_counts.size());
    if (d < 0 || d > d_max) throw std::invalid_argument("cell_counts_at_depth: bad depth");
    std::size_t block = std::size_t{1} << (d_max - d);
    std::vector<double> out(std::size_t{1} << d, 0.0);
    for (std::size_t k = 0; k < finest_counts.size(); ++k) out[k / block] += finest_counts[k];
    return out;
}

int select_depth(const std::vector<double>& finest_counts) {
    int d_max = depth_of(finest_counts.size());
    double sup_finest = 0.0;
    for (double c : finest_counts) sup_finest = std::max(sup_finest, c);
    double penalty_base = std::ldexp(sup_finest, d_max + 1); // 2^{d_max+1} * sup

    int best_d = 0;
    double best_crit = 0.0;
    for (int d = 0; d <= d_max; ++d) {
        auto counts = cell_counts_at_depth(finest_counts, d);
        double sum_sq = 0.0;
        for (double c : counts) sum_sq += c * c;
        double crit = std::ldexp(-sum_sq + penalty_base, d);
        if (d == 0 || crit < best_crit) {
            best_crit = crit;
            best_d = d;
        }
    }
    return best_d;
}

HistogramEstimate histogram_estimate(const std::vector<double>& finest_counts, double Y,
                                     int depth, double T) {
    if (Y < 0.0) throw std::invalid_argument("histogram_estimate: negative Y");
    HistogramEstimate est;
    est.T = T;
    if (Y == 0.0) {
        est.depth = 0;
        est.values = {0.0};
        return est;
    }
    est.depth = depth;
    est.values = cell_counts_at_depth(finest_counts, depth);
    double cell_width = T / static_cast<double>(est.values.size());
    for (double& v : est.values) v /= Y * cell_width;
    return est;
}

HistogramEstimate adaptive_histogram(const std::vector<double>& finest_counts, double Y,
                                     double T) {
    if (Y == 0.0) return histogram_estimate(finest_counts, 0.0, 0, T);
    return histogram_estimate(finest_counts, Y, select_depth(finest_counts), T);
}

} // namespace ppsbm
