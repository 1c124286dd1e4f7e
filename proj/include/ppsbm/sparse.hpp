#ifndef PPSBM_SPARSE_HPP
#define PPSBM_SPARSE_HPP

#include <vector>

#include "ppsbm/vem.hpp"

namespace ppsbm {

/// Conditional probability that a zero-event dyad with groups (q,l) is
/// active: beta e^{-A(T)} / (1 - beta + beta e^{-A(T)}). Dyads with events
/// are active with probability 1; that case is handled structurally by the
/// callers, not here.
double compute_rho(double beta, double A_T);

/// Bernoulli entropy rho log rho + (1-rho) log(1-rho) with the convention
/// psi(0) = psi(1) = 0.
double bernoulli_entropy(double rho);

/// Pair-indexed tau-mass restricted to dyads with at least one event;
/// Y - this gives the mass on zero-count dyads. Same symmetrization as
/// SufficientStats::Y in undirected mode.
std::vector<double> eventful_pair_mass(const EventStream& stream, const VariationalState& state);

/// beta update: (mass on eventful dyads + rho * mass on zero dyads) / Y per
/// pair. Pairs with Y == 0 get beta = 1 (flag reported via empty_pairs).
std::vector<double> update_beta(const std::vector<double>& Y,
                                const std::vector<double>& eventful_mass,
                                const std::vector<double>& rho, int* empty_pairs = nullptr);

/// Sparse fixed point tau^{i,q} proportional to pi_q exp(Dtilde_iq):
/// rho-weighted cumulative terms, Bernoulli-entropy terms on zero-count
/// dyads, the dense log-intensity event terms, and beta log-odds terms.
/// Same sweeping/stopping contract as the dense e_step.
VariationalState e_step_sparse(const EventStream& stream, const VariationalState& tau0,
                               const std::vector<double>& pi,
                               const std::vector<PairEstimate>& alpha,
                               const std::vector<double>& beta, const std::vector<double>& rho,
                               const FitConfig& cfg, bool* converged = nullptr);

/// The sparse criterion evaluated with both parameter slots at the current
/// estimate, using the zero-count simplification for the entropy of the
/// activation variables.
double evaluate_J_sparse(const std::vector<double>& pi, const std::vector<PairEstimate>& alpha,
                         const std::vector<double>& beta, const std::vector<double>& rho,
                         const SufficientStats& stats, const std::vector<double>& eventful_mass,
                         const VariationalState& state, double intensity_floor);

struct SparseInit {
    std::vector<double> beta;
    std::vector<double> rho;
    std::vector<double> A_T;
    int empty_pairs = 0; // pairs with no tau mass (beta forced to 1)
};

/// Moment initialization: beta = eventful fraction of the pair's tau mass,
/// A(T) = mean event count among eventful dyads, rho via compute_rho.
SparseInit init_sparse(const EventStream& stream, const VariationalState& state);

/// Sparse VEM driver. M-step order per iteration: pi, beta, alpha (counts
/// normalized by the rho-weighted dyad mass), then rho from the new
/// (beta, A), then the sparse fixed point for tau.
FitResult run_vem_sparse(const EventStream& stream, int Q, const FitConfig& cfg,
                         Estimator estimator, Rng& rng);

/// ICL for a sparse histogram fit: variational expected complete-data
/// log-likelihood (the sparse criterion minus its tau-entropy term)
/// penalized by (Q-1)/2 log n and by log(r)/2 times the parameter count
/// (one activation probability per stored pair plus the histogram cells).
double icl_sparse(const FitResult& fit, const EventStream& stream,
                  double intensity_floor = 1e-10);

} // namespace ppsbm

#endif
