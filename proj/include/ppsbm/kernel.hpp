#ifndef PPSBM_KERNEL_HPP
#define PPSBM_KERNEL_HPP

#include <vector>

#include "ppsbm/intensity.hpp"

namespace ppsbm {

/// Epanechnikov kernel: 0.75 (1 - u^2) on [-1, 1], zero outside.
double epanechnikov(double u);

/// Rule-of-thumb default bandwidth (Silverman): 0.9 min(sd, IQR/1.34) *
/// M_eff^{-1/5} computed on the weighted event times, with M_eff the total
/// event weight. Falls back to T when the pair carries too little weight to
/// estimate a spread. Times must be sorted.
double default_bandwidth(double T, const std::vector<double>& times,
                         const std::vector<double>& weights);

/// Kernel intensity estimate (1/(b Y)) sum_m w_m K((t - t_m)/b) as an
/// evaluable descriptor; Y == 0 gives the zero function. Event times must
/// be sorted ascending.
KernelIntensity kernel_estimate(const std::vector<double>& times,
                                const std::vector<double>& weights, double Y, double bandwidth);

/// Evaluation on a regular grid of G points spanning [0, T] (inclusive
/// endpoints), used for serialization and risk computation.
std::vector<double> evaluate_on_grid(const IntensityFn& fn, double T, int G);

} // namespace ppsbm

#endif
