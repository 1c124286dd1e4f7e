#include "ppsbm/intensity.hpp"

#include <algorithm>
#include <stdexcept>

namespace ppsbm {

namespace {

constexpr double kTwoPi = 6.283185307179586476925287;

double epanechnikov_raw(double u) {
    double a = std::abs(u);
    return a <= 1.0 ? 0.75 * (1.0 - u * u) : 0.0;
}

/// Integral of the Epanechnikov kernel over (-inf, u].
double epanechnikov_cdf(double u) {
    if (u <= -1.0) return 0.0;
    if (u >= 1.0) return 1.0;
    return 0.25 * (2.0 + 3.0 * u - u * u * u);
}

double kernel_eval(const KernelIntensity& k, double t) {
    if (k.normalizer <= 0.0) return 0.0;
    // Events are sorted; only those within one bandwidth contribute.
    auto lo = std::lower_bound(k.times.begin(), k.times.end(), t - k.bandwidth);
    auto hi = std::upper_bound(lo, k.times.end(), t + k.bandwidth);
    double sum = 0.0;
    for (auto it = lo; it != hi; ++it) {
        std::size_t m = static_cast<std::size_t>(it - k.times.begin());
        sum += k.weights[m] * epanechnikov_raw((t - *it) / k.bandwidth);
    }
    return sum / (k.bandwidth * k.normalizer);
}

double kernel_integral(const KernelIntensity& k, double upto) {
    if (k.normalizer <= 0.0) return 0.0;
    double sum = 0.0;
    for (std::size_t m = 0; m < k.times.size(); ++m) {
        double lo = epanechnikov_cdf((0.0 - k.times[m]) / k.bandwidth);
        double hi = epanechnikov_cdf((upto - k.times[m]) / k.bandwidth);
        sum += k.weights[m] * (hi - lo);
    }
    return sum / k.normalizer;
}

} // namespace

double intensity_at(const IntensityFn& fn, double t) {
    return std::visit(
        [t](const auto& f) -> double {
            using T = std::decay_t<decltype(f)>;
            if constexpr (std::is_same_v<T, ConstantIntensity>) {
                return f.level;
            } else if constexpr (std::is_same_v<T, SinusoidIntensity>) {
                return f.amplitude * (1.0 + std::sin(kTwoPi * (t + f.shift) / f.period));
            } else if constexpr (std::is_same_v<T, TriangleIntensity>) {
                return f.peak * std::max(0.0, 1.0 - std::abs(t - f.center) / f.halfwidth);
            } else if constexpr (std::is_same_v<T, PiecewiseConstantIntensity>) {
                if (f.values.empty()) return 0.0;
                int cells = static_cast<int>(f.values.size());
                int cell = std::clamp(static_cast<int>(t / f.T * cells), 0, cells - 1);
                return f.values[static_cast<std::size_t>(cell)];
            } else {
                return kernel_eval(f, t);
            }
        },
        fn);
}

double intensity_integral(const IntensityFn& fn, double upto) {
    return std::visit(
        [upto](const auto& f) -> double {
            using T = std::decay_t<decltype(f)>;
            if constexpr (std::is_same_v<T, ConstantIntensity>) {
                return f.level * upto;
            } else if constexpr (std::is_same_v<T, SinusoidIntensity>) {
                // Antiderivative of a(1 + sin(2pi (t+s)/P)) is
                // a t - a P/(2pi) cos(2pi (t+s)/P).
                double w = kTwoPi / f.period;
                double osc = (std::cos(w * f.shift) - std::cos(w * (upto + f.shift))) / w;
                return f.amplitude * (upto + osc);
            } else if constexpr (std::is_same_v<T, TriangleIntensity>) {
                // Integrate the tent piecewise on [0, upto].
                auto tent_antider = [&](double t) {
                    // integral from center of peak*(1-|x-center|/halfwidth), clipped
                    double x = std::clamp(t - f.center, -f.halfwidth, f.halfwidth);
                    double core = x - x * std::abs(x) / (2.0 * f.halfwidth);
                    return f.peak * core;
                };
                return tent_antider(upto) - tent_antider(0.0);
            } else if constexpr (std::is_same_v<T, PiecewiseConstantIntensity>) {
                if (f.values.empty()) return 0.0;
                int cells = static_cast<int>(f.values.size());
                double width = f.T / cells;
                double total = 0.0;
                for (int c = 0; c < cells; ++c) {
                    double a = c * width;
                    double b = (c + 1) * width;
                    if (upto <= a) break;
                    total += f.values[static_cast<std::size_t>(c)] * (std::min(upto, b) - a);
                }
                return total;
            } else {
                return kernel_integral(f, upto);
            }
        },
        fn);
}

double intensity_max(const IntensityFn& fn, double T) {
    return std::visit(
        [T](const auto& f) -> double {
            using V = std::decay_t<decltype(f)>;
            if constexpr (std::is_same_v<V, ConstantIntensity>) {
                return f.level;
            } else if constexpr (std::is_same_v<V, SinusoidIntensity>) {
                return 2.0 * f.amplitude;
            } else if constexpr (std::is_same_v<V, TriangleIntensity>) {
                return f.peak;
            } else if constexpr (std::is_same_v<V, PiecewiseConstantIntensity>) {
                double m = 0.0;
                for (double v : f.values) m = std::max(m, v);
                return m;
            } else {
                if (f.normalizer <= 0.0 || f.weights.empty()) return 0.0;
                // K <= 0.75, so the total weight bounds any window sum.
                // Coarse but safe; only the bootstrap ever simulates from a
                // kernel estimate.
                double total = 0.0;
                for (double w : f.weights) total += w;
                return 0.75 * total / (f.bandwidth * f.normalizer);
            }
        },
        fn);
}

std::vector<double> intensity_at_sorted(const IntensityFn& fn, const std::vector<double>& times) {
    std::vector<double> out(times.size());
    if (const auto* k = std::get_if<KernelIntensity>(&fn)) {
        if (k->normalizer <= 0.0 || k->times.empty()) {
            std::fill(out.begin(), out.end(), 0.0);
            return out;
        }
        // Expand K((t-s)/b) = 0.75 (1 - (t-s)^2/b^2) on the support window
        // and use prefix sums of w, w*s, w*s^2: each evaluation is O(1)
        // after locating the window, and the result is exact.
        std::size_t ne = k->times.size();
        std::vector<double> p0(ne + 1, 0.0), p1(ne + 1, 0.0), p2(ne + 1, 0.0);
        for (std::size_t m = 0; m < ne; ++m) {
            double w = k->weights[m];
            double s = k->times[m];
            p0[m + 1] = p0[m] + w;
            p1[m + 1] = p1[m] + w * s;
            p2[m + 1] = p2[m] + w * s * s;
        }
        double b = k->bandwidth;
        double b2 = b * b;
        std::size_t lo = 0, hi = 0;
        for (std::size_t i = 0; i < times.size(); ++i) {
            double t = times[i];
            while (lo < ne && k->times[lo] < t - b) ++lo;
            if (hi < lo) hi = lo;
            while (hi < ne && k->times[hi] <= t + b) ++hi;
            double s0 = p0[hi] - p0[lo];
            double s1 = p1[hi] - p1[lo];
            double s2 = p2[hi] - p2[lo];
            double sum = 0.75 * (s0 - (t * t * s0 - 2.0 * t * s1 + s2) / b2);
            out[i] = std::max(0.0, sum) / (b * k->normalizer);
        }
        return out;
    }
    for (std::size_t i = 0; i < times.size(); ++i) out[i] = intensity_at(fn, times[i]);
    return out;
}

void check_nonnegative(const IntensityFn& fn) {
    std::visit(
        [](const auto& f) {
            using V = std::decay_t<decltype(f)>;
            if constexpr (std::is_same_v<V, ConstantIntensity>) {
                if (f.level < 0.0) throw std::invalid_argument("negative constant intensity");
            } else if constexpr (std::is_same_v<V, SinusoidIntensity>) {
                if (f.amplitude < 0.0) throw std::invalid_argument("negative sinusoid amplitude");
            } else if constexpr (std::is_same_v<V, TriangleIntensity>) {
                if (f.peak < 0.0 || f.halfwidth <= 0.0)
                    throw std::invalid_argument("invalid triangle intensity");
            } else if constexpr (std::is_same_v<V, PiecewiseConstantIntensity>) {
                for (double v : f.values)
                    if (v < 0.0) throw std::invalid_argument("negative piecewise cell");
            } else {
                if (f.bandwidth <= 0.0) throw std::invalid_argument("nonpositive bandwidth");
                for (double w : f.weights)
                    if (w < 0.0) throw std::invalid_argument("negative kernel weight");
            }
        },
        fn);
}

void IntensityModel::validate() const {
    if (Q < 1) throw std::invalid_argument("IntensityModel: Q must be >= 1");
    if (static_cast<int>(pi.size()) != Q)
        throw std::invalid_argument("IntensityModel: pi size mismatch");
    double sum = 0.0;
    for (double p : pi) {
        if (!(p > 0.0)) throw std::invalid_argument("IntensityModel: proportions must be > 0");
        sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-12)
        throw std::invalid_argument("IntensityModel: proportions must sum to 1");
    if (static_cast<int>(alpha.size()) != pairs().count())
        throw std::invalid_argument("IntensityModel: intensity grid size mismatch");
    if (!(T > 0.0)) throw std::invalid_argument("IntensityModel: T must be > 0");
    for (const auto& fn : alpha) check_nonnegative(fn);
}

} // namespace ppsbm
