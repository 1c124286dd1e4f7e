#ifndef PPSBM_VEM_HPP
#define PPSBM_VEM_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "ppsbm/events.hpp"
#include "ppsbm/histogram.hpp"
#include "ppsbm/intensity.hpp"
#include "ppsbm/kernel.hpp"
#include "ppsbm/rng.hpp"
#include "ppsbm/variational.hpp"

namespace ppsbm {

enum class Estimator { histogram, kernel };

struct FitConfig {
    int d_max = 3;               // histogram resolution cap
    double bandwidth = 0.0;      // kernel bandwidth; <= 0 selects the rate rule
    int grid_points = 512;       // kernel evaluation grid for reports
    double epsilon = 1e-6;       // relative-J stopping tolerance
    int nb_iter = 50;            // max VEM iterations
    int fix_iter = 10;           // max fixed-point sweeps per E-step
    double fix_eps = 1e-6;       // fixed-point tolerance on max |delta tau|
    int n_perturb = 1;           // perturbed copies per k-means classification
    double perc_perturb = 0.1;   // fraction of nodes reshuffled per copy
    int l_part = 2;              // aggregation depths 0..l_part for k-means
    double intensity_floor = 1e-10; // clamp inside logarithms

    void validate() const;
};

/// One fitted intensity with its cumulative mass, pair-indexed in FitResult.
struct PairEstimate {
    IntensityFn fn;
    int depth = 0;    // selected histogram depth; unused for kernel fits
    double A_T = 0.0; // integral over [0, T]
};

/// Sparse-variant parameters carried alongside a fit.
struct SparseInfo {
    std::vector<double> beta;   // pair-indexed activation probabilities
    std::vector<double> rho;    // pair-indexed rho(q,l) at the final estimate
};

struct FitResult {
    int Q = 0;
    bool directed = true;
    double T = 0.0;
    Estimator estimator = Estimator::histogram;
    VariationalState state;
    std::vector<double> pi;
    std::vector<PairEstimate> alpha;
    std::vector<double> J_trace;     // winning run, one value per iteration
    double J = 0.0;                  // criterion at the returned iterate
    bool converged = false;
    bool fixed_point_converged = true;
    int best_init = -1;
    int iterations = 0;
    std::uint64_t seed = 0;
    double max_mass_error = 0.0;     // worst |Y * integral - count| over all M-steps
    std::optional<SparseInfo> sparse;

    PairSet pairs() const { return PairSet(Q, directed); }
    std::vector<int> map_labels() const { return state.map_labels(); }
};

/// D_iq of the dense fixed point: minus the tau-weighted cumulative masses
/// plus log-intensity sums over events where node i participates.
/// Reference implementation used by tests and small instances; e_step uses
/// an algebraically identical batched path.
double compute_D(const EventStream& stream, int i, int q, const Matrix& tau,
                 const std::vector<PairEstimate>& alpha, double intensity_floor);

/// Fixed-point iteration tau^{i,q} proportional to pi_q exp(D_iq),
/// normalized row-wise in the log domain. Sweeps nodes in index order,
/// warm-starting from tau0; stops when the largest entry change over a
/// sweep drops below cfg.fix_eps or after cfg.fix_iter sweeps. Hitting the
/// cap is not an error; *converged reports it.
VariationalState e_step(const EventStream& stream, const VariationalState& tau0,
                        const std::vector<double>& pi, const std::vector<PairEstimate>& alpha,
                        const FitConfig& cfg, bool* converged = nullptr);

/// The lower bound J(theta, tau): -sum Y A(T) + weighted log-intensity sum
/// over events + sum tau log(pi/tau), with 0 log 0 = 0 and intensities
/// floored inside logs.
double evaluate_J(const std::vector<double>& pi, const std::vector<PairEstimate>& alpha,
                  const SufficientStats& stats, const VariationalState& state,
                  double intensity_floor);

/// Complete-data log-likelihood for hard labels; the independent route that
/// evaluate_J must match on one-hot tau.
double complete_log_likelihood(const EventStream& stream, const std::vector<int>& labels,
                               const std::vector<double>& pi,
                               const std::vector<PairEstimate>& alpha, double intensity_floor);

/// Histogram M-step across the pair grid. When mass_error is given it
/// accumulates the worst |Y * integral(alpha) - total count| seen.
std::vector<PairEstimate> m_step_histogram(const SufficientStats& stats,
                                           double* mass_error = nullptr);

/// Kernel M-step across the pair grid.
std::vector<PairEstimate> m_step_kernel(const SufficientStats& stats, const FitConfig& cfg);

/// Initial classifications: for each aggregation depth 0..l_part, k-means
/// (k = Q) on per-node count features (directed mode concatenates outgoing
/// and incoming rows), turned into one-hot tau, plus n_perturb copies per
/// base with round(perc_perturb * n) random nodes reassigned uniformly.
std::vector<VariationalState> init_classifications(const EventStream& stream, int Q,
                                                   const FitConfig& cfg, Rng& rng);

/// Algorithm driver: runs the VEM loop (pi update, nonparametric alpha
/// update, fixed-point tau update, J evaluation) from every initialization
/// and returns the run with the largest J. J may decrease because the
/// nonparametric alpha step is not a J-maximizer; besides the relative-J
/// stopping rule, a run halts after three consecutive decreases and the
/// best-J iterate is kept.
FitResult run_vem(const EventStream& stream, int Q, const FitConfig& cfg, Estimator estimator,
                  Rng& rng);

} // namespace ppsbm

#endif
