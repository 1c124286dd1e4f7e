#ifndef PPSBM_SIMULATE_HPP
#define PPSBM_SIMULATE_HPP

#include <vector>

#include "ppsbm/events.hpp"
#include "ppsbm/intensity.hpp"
#include "ppsbm/rng.hpp"

namespace ppsbm {

/// i.i.d. multinomial group labels (0-based) from the given proportions.
std::vector<int> sample_memberships(const std::vector<double>& pi, int n, Rng& rng);

/// Realization of an inhomogeneous Poisson process on [0, T) by
/// Lewis-Shedler thinning against the analytic bound intensity_max(fn, T).
/// Returned times are sorted.
std::vector<double> sample_inhomogeneous_poisson(const IntensityFn& fn, double T, Rng& rng);

struct Simulation {
    EventStream stream;
    std::vector<int> labels;               // 0-based groups, length n
    std::vector<unsigned char> dyad_active; // sparse runs only; indexed by dyad_index
};

/// Draws labels, then an independent Poisson realization per dyad with
/// intensity alpha^(Z_i, Z_j); merged events are sorted by time.
Simulation simulate_ppsbm(const IntensityModel& model, int n, Rng& rng);

/// Sparse variant: each dyad is first activated with probability
/// beta_{Z_i,Z_j}; inactive dyads emit no events. With beta identically 1
/// the output equals simulate_ppsbm for the same seed (activation draws use
/// a separate child stream).
Simulation simulate_sparse(const IntensityModel& model, const std::vector<double>& beta_pairs,
                           int n, Rng& rng);

struct ScenarioData {
    EventStream stream;
    std::vector<int> labels;
    IntensityModel model;
};

/// Undirected affiliation model, Q=2, pi=(1/2,1/2), T=1, sinusoid
/// intensities 10(1+sin 2 pi t) within groups and 10(1+sin 2 pi (t+phi))
/// between. Small phi makes the groups nearly indistinguishable.
ScenarioData scenario1(double phi, int n, Rng& rng);

/// Undirected model, Q=3, pi=(1/3,1/3,1/3), T=1, six intensities of
/// distinct shape and amplitude mixing piecewise-constant and smooth
/// curves (see scenario2_model for the exact grid).
ScenarioData scenario2(int n, Rng& rng);

IntensityModel scenario1_model(double phi);
IntensityModel scenario2_model();

} // namespace ppsbm

#endif
