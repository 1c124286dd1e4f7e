#include "ppsbm/sparse.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace ppsbm {

namespace {

constexpr double kBetaClamp = 1e-12;

double log_clamped(double x) { return std::log(std::clamp(x, kBetaClamp, 1.0 - kBetaClamp)); }
double log1m_clamped(double x) { return std::log1p(-std::clamp(x, kBetaClamp, 1.0 - kBetaClamp)); }

/// Partners of each node over dyads carrying at least one event.
struct EventfulAdjacency {
    // Directed: out_partners[i] = {j : N_ij > 0}, in_partners[i] = {j : N_ji > 0}.
    // Undirected: out_partners[i] = {j : the dyad {i,j} has events}.
    std::vector<std::vector<int>> out_partners;
    std::vector<std::vector<int>> in_partners;

    explicit EventfulAdjacency(const EventStream& stream)
        : out_partners(static_cast<std::size_t>(stream.n)),
          in_partners(static_cast<std::size_t>(stream.n)) {
        std::vector<long long> counts = stream.counts_per_dyad();
        for (int i = 0; i < stream.n; ++i) {
            for (int j = stream.directed ? 0 : i + 1; j < stream.n; ++j) {
                if (i == j) continue;
                if (counts[static_cast<std::size_t>(stream.dyad_index(i, j))] == 0) continue;
                if (stream.directed) {
                    out_partners[static_cast<std::size_t>(i)].push_back(j);
                    in_partners[static_cast<std::size_t>(j)].push_back(i);
                } else {
                    out_partners[static_cast<std::size_t>(i)].push_back(j);
                    out_partners[static_cast<std::size_t>(j)].push_back(i);
                }
            }
        }
    }
};

} // namespace

double compute_rho(double beta, double A_T) {
    if (beta < 0.0 || beta > 1.0) throw std::invalid_argument("compute_rho: beta outside [0,1]");
    if (A_T < 0.0) throw std::invalid_argument("compute_rho: negative cumulative mass");
    if (beta >= 1.0) return 1.0;
    double decayed = beta * std::exp(-A_T);
    return decayed / (1.0 - beta + decayed);
}

double bernoulli_entropy(double rho) {
    double out = 0.0;
    if (rho > 0.0) out += rho * std::log(rho);
    if (rho < 1.0) out += (1.0 - rho) * std::log1p(-rho);
    return out;
}

std::vector<double> eventful_pair_mass(const EventStream& stream, const VariationalState& state) {
    int Q = state.Q();
    PairSet pairs(Q, stream.directed);
    std::vector<double> mass(static_cast<std::size_t>(pairs.count()), 0.0);
    std::vector<long long> counts = stream.counts_per_dyad();
    const Matrix& tau = state.tau;
    for (int i = 0; i < stream.n; ++i) {
        for (int j = stream.directed ? 0 : i + 1; j < stream.n; ++j) {
            if (i == j) continue;
            if (counts[static_cast<std::size_t>(stream.dyad_index(i, j))] == 0) continue;
            const double* ti = tau.row(static_cast<std::size_t>(i));
            const double* tj = tau.row(static_cast<std::size_t>(j));
            for (int q = 0; q < Q; ++q)
                for (int l = stream.directed ? 0 : q; l < Q; ++l) {
                    double w = ti[q] * tj[l];
                    if (!stream.directed && q < l) w += ti[l] * tj[q];
                    mass[static_cast<std::size_t>(pairs.index(q, l))] += w;
                }
        }
    }
    return mass;
}

std::vector<double> update_beta(const std::vector<double>& Y,
                                const std::vector<double>& eventful_mass,
                                const std::vector<double>& rho, int* empty_pairs) {
    std::vector<double> beta(Y.size());
    int empties = 0;
    for (std::size_t p = 0; p < Y.size(); ++p) {
        if (Y[p] <= 0.0) {
            beta[p] = 1.0;
            ++empties;
            continue;
        }
        double zero_mass = std::max(0.0, Y[p] - eventful_mass[p]);
        beta[p] = std::clamp((eventful_mass[p] + rho[p] * zero_mass) / Y[p], 0.0, 1.0);
    }
    if (empty_pairs) *empty_pairs = empties;
    return beta;
}

VariationalState e_step_sparse(const EventStream& stream, const VariationalState& tau0,
                               const std::vector<double>& pi,
                               const std::vector<PairEstimate>& alpha,
                               const std::vector<double>& beta, const std::vector<double>& rho,
                               const FitConfig& cfg, bool* converged) {
    int n = stream.n;
    int Q = tau0.Q();
    PairSet pairs(Q, stream.directed);
    EventfulAdjacency adjacency(stream);

    // Per-node incident events, as in the dense E-step.
    std::vector<std::vector<int>> out_events(static_cast<std::size_t>(n));
    std::vector<std::vector<int>> in_events(static_cast<std::size_t>(n));
    for (int m = 0; m < stream.event_count(); ++m) {
        const Event& e = stream.events[static_cast<std::size_t>(m)];
        out_events[static_cast<std::size_t>(e.i)].push_back(m);
        if (stream.directed)
            in_events[static_cast<std::size_t>(e.j)].push_back(m);
        else
            out_events[static_cast<std::size_t>(e.j)].push_back(m);
    }

    std::vector<double> times;
    times.reserve(stream.events.size());
    for (const Event& e : stream.events) times.push_back(e.t);
    Matrix log_alpha(times.size(), alpha.size());
    for (std::size_t p = 0; p < alpha.size(); ++p) {
        std::vector<double> vals = intensity_at_sorted(alpha[p].fn, times);
        for (std::size_t m = 0; m < times.size(); ++m)
            log_alpha(m, p) = std::log(std::max(vals[m], cfg.intensity_floor));
    }

    std::vector<double> log_pi(static_cast<std::size_t>(Q));
    for (int q = 0; q < Q; ++q) log_pi[static_cast<std::size_t>(q)] = std::log(pi[static_cast<std::size_t>(q)]);
    std::size_t npairs = static_cast<std::size_t>(pairs.count());
    std::vector<double> log_beta(npairs), log_1m_beta(npairs), psi(npairs);
    for (std::size_t p = 0; p < npairs; ++p) {
        log_beta[p] = log_clamped(beta[p]);
        log_1m_beta[p] = log1m_clamped(beta[p]);
        psi[p] = bernoulli_entropy(rho[p]);
    }

    Matrix tau = tau0.tau;
    std::vector<double> colsum(static_cast<std::size_t>(Q), 0.0);
    for (int i = 0; i < n; ++i)
        for (int q = 0; q < Q; ++q) colsum[static_cast<std::size_t>(q)] += tau(static_cast<std::size_t>(i), static_cast<std::size_t>(q));

    std::vector<double> scores(static_cast<std::size_t>(Q));
    std::vector<double> ev_out(static_cast<std::size_t>(Q));
    std::vector<double> ev_in(static_cast<std::size_t>(Q));
    bool reached = false;
    for (int sweep = 0; sweep < cfg.fix_iter; ++sweep) {
        double max_change = 0.0;
        for (int i = 0; i < n; ++i) {
            // tau-mass over eventful partners, per group.
            std::fill(ev_out.begin(), ev_out.end(), 0.0);
            for (int j : adjacency.out_partners[static_cast<std::size_t>(i)])
                for (int l = 0; l < Q; ++l)
                    ev_out[static_cast<std::size_t>(l)] += tau(static_cast<std::size_t>(j), static_cast<std::size_t>(l));
            if (stream.directed) {
                std::fill(ev_in.begin(), ev_in.end(), 0.0);
                for (int j : adjacency.in_partners[static_cast<std::size_t>(i)])
                    for (int l = 0; l < Q; ++l)
                        ev_in[static_cast<std::size_t>(l)] += tau(static_cast<std::size_t>(j), static_cast<std::size_t>(l));
            }

            for (int q = 0; q < Q; ++q) {
                double D = 0.0;
                for (int l = 0; l < Q; ++l) {
                    double total = colsum[static_cast<std::size_t>(l)] -
                                   tau(static_cast<std::size_t>(i), static_cast<std::size_t>(l));
                    double e_out = ev_out[static_cast<std::size_t>(l)];
                    double z_out = std::max(0.0, total - e_out);
                    std::size_t p_ql = static_cast<std::size_t>(pairs.index(q, l));
                    D -= (e_out + rho[p_ql] * z_out) * alpha[p_ql].A_T;
                    D -= psi[p_ql] * z_out;
                    D += log_beta[p_ql] * (e_out + rho[p_ql] * z_out) +
                         log_1m_beta[p_ql] * (1.0 - rho[p_ql]) * z_out;
                    if (stream.directed) {
                        double e_in = ev_in[static_cast<std::size_t>(l)];
                        double z_in = std::max(0.0, total - e_in);
                        std::size_t p_lq = static_cast<std::size_t>(pairs.index(l, q));
                        D -= (e_in + rho[p_lq] * z_in) * alpha[p_lq].A_T;
                        D -= psi[p_lq] * z_in;
                        D += log_beta[p_lq] * (e_in + rho[p_lq] * z_in) +
                             log_1m_beta[p_lq] * (1.0 - rho[p_lq]) * z_in;
                    }
                }
                scores[static_cast<std::size_t>(q)] = log_pi[static_cast<std::size_t>(q)] + D;
            }
            for (int m : out_events[static_cast<std::size_t>(i)]) {
                const Event& e = stream.events[static_cast<std::size_t>(m)];
                int partner = e.i == i ? e.j : e.i;
                const double* tp = tau.row(static_cast<std::size_t>(partner));
                const double* la = log_alpha.row(static_cast<std::size_t>(m));
                for (int q = 0; q < Q; ++q) {
                    double acc = 0.0;
                    for (int l = 0; l < Q; ++l) acc += tp[l] * la[pairs.index(q, l)];
                    scores[static_cast<std::size_t>(q)] += acc;
                }
            }
            if (stream.directed) {
                for (int m : in_events[static_cast<std::size_t>(i)]) {
                    const Event& e = stream.events[static_cast<std::size_t>(m)];
                    const double* tp = tau.row(static_cast<std::size_t>(e.i));
                    const double* la = log_alpha.row(static_cast<std::size_t>(m));
                    for (int q = 0; q < Q; ++q) {
                        double acc = 0.0;
                        for (int l = 0; l < Q; ++l) acc += tp[l] * la[pairs.index(l, q)];
                        scores[static_cast<std::size_t>(q)] += acc;
                    }
                }
            }
            double top = scores[0];
            for (int q = 1; q < Q; ++q) top = std::max(top, scores[static_cast<std::size_t>(q)]);
            double total = 0.0;
            for (int q = 0; q < Q; ++q) {
                scores[static_cast<std::size_t>(q)] = std::exp(scores[static_cast<std::size_t>(q)] - top);
                total += scores[static_cast<std::size_t>(q)];
            }
            for (int q = 0; q < Q; ++q) {
                double updated = scores[static_cast<std::size_t>(q)] / total;
                double& cell = tau(static_cast<std::size_t>(i), static_cast<std::size_t>(q));
                max_change = std::max(max_change, std::abs(updated - cell));
                colsum[static_cast<std::size_t>(q)] += updated - cell;
                cell = updated;
            }
        }
        if (max_change < cfg.fix_eps) {
            reached = true;
            break;
        }
    }
    if (converged) *converged = reached || Q == 1;

    VariationalState out;
    out.tau = std::move(tau);
    return out;
}

double evaluate_J_sparse(const std::vector<double>& pi, const std::vector<PairEstimate>& alpha,
                         const std::vector<double>& beta, const std::vector<double>& rho,
                         const SufficientStats& stats, const std::vector<double>& eventful_mass,
                         const VariationalState& state, double intensity_floor) {
    double J = 0.0;
    for (std::size_t p = 0; p < alpha.size(); ++p) {
        double zero_mass = std::max(0.0, stats.Y[p] - eventful_mass[p]);
        double weighted = eventful_mass[p] + rho[p] * zero_mass;
        J -= weighted * alpha[p].A_T;
        J += log_clamped(beta[p]) * weighted + log1m_clamped(beta[p]) * (1.0 - rho[p]) * zero_mass;
        J -= bernoulli_entropy(rho[p]) * zero_mass;
    }
    for (std::size_t p = 0; p < alpha.size(); ++p) {
        std::vector<double> vals = intensity_at_sorted(alpha[p].fn, stats.event_times);
        for (std::size_t m = 0; m < stats.event_times.size(); ++m) {
            double w = stats.event_weights(m, p);
            if (w != 0.0) J += w * std::log(std::max(vals[m], intensity_floor));
        }
    }
    for (std::size_t i = 0; i < state.tau.rows(); ++i)
        for (std::size_t q = 0; q < state.tau.cols(); ++q) {
            double t = state.tau(i, q);
            if (t > 0.0) J += t * (std::log(pi[q]) - std::log(t));
        }
    return J;
}

SparseInit init_sparse(const EventStream& stream, const VariationalState& state) {
    SparseInit init;
    SufficientStats stats = compute_stats(stream, state, 0);
    std::vector<double> eventful = eventful_pair_mass(stream, state);

    // Count-weighted mass per pair: sum over dyads of tau tau N_ij(T),
    // which equals the pair's total event weight.
    std::size_t npairs = stats.Y.size();
    std::vector<double> weighted_counts(npairs, 0.0);
    for (std::size_t p = 0; p < npairs; ++p)
        weighted_counts[p] = stats.cell_counts(p, 0);

    init.beta.resize(npairs);
    init.A_T.resize(npairs);
    init.rho.resize(npairs);
    for (std::size_t p = 0; p < npairs; ++p) {
        if (stats.Y[p] <= 0.0) {
            init.beta[p] = 1.0;
            init.A_T[p] = 0.0;
            ++init.empty_pairs;
        } else {
            init.beta[p] = std::clamp(eventful[p] / stats.Y[p], 0.0, 1.0);
            init.A_T[p] = eventful[p] > 0.0 ? weighted_counts[p] / eventful[p] : 0.0;
        }
        init.rho[p] = compute_rho(init.beta[p], init.A_T[p]);
    }
    return init;
}

FitResult run_vem_sparse(const EventStream& stream, int Q, const FitConfig& cfg,
                         Estimator estimator, Rng& rng) {
    cfg.validate();
    stream.validate();
    if (Q < 1) throw std::invalid_argument("run_vem_sparse: Q must be >= 1");
    if (Q > stream.n) throw std::invalid_argument("run_vem_sparse: Q exceeds node count");

    Rng init_rng = rng.child(0);
    std::vector<VariationalState> inits = init_classifications(stream, Q, cfg, init_rng);

    FitResult result;
    result.Q = Q;
    result.directed = stream.directed;
    result.T = stream.T;
    result.estimator = estimator;
    result.seed = rng.seed();
    result.J = -std::numeric_limits<double>::infinity();

    for (std::size_t k = 0; k < inits.size(); ++k) {
        VariationalState tau = inits[k];
        SparseInit sparse_init = init_sparse(stream, tau);
        std::vector<double> rho = sparse_init.rho;

        double best_J = -std::numeric_limits<double>::infinity();
        VariationalState best_tau;
        std::vector<double> best_pi;
        std::vector<PairEstimate> best_alpha;
        std::vector<double> best_beta, best_rho;
        std::vector<double> trace;
        bool converged = false;
        bool fp_all = true;
        double mass_error = 0.0;
        double J_prev = 0.0;
        bool have_prev = false;
        int decrease_streak = 0;
        int iterations = 0;

        for (int s = 0; s < cfg.nb_iter; ++s) {
            std::vector<double> pi = update_pi(tau);
            SufficientStats stats = compute_stats(stream, tau, cfg.d_max);
            std::vector<double> eventful = eventful_pair_mass(stream, tau);
            std::vector<double> beta = update_beta(stats.Y, eventful, rho);

            // The intensity step normalizes the counts by the rho-weighted
            // dyad mass (the expected number of active dyads per pair).
            std::size_t npairs = stats.Y.size();
            std::vector<double> active_mass(npairs);
            for (std::size_t p = 0; p < npairs; ++p) {
                double zero_mass = std::max(0.0, stats.Y[p] - eventful[p]);
                active_mass[p] = eventful[p] + rho[p] * zero_mass;
            }
            SufficientStats active_stats = stats;
            active_stats.Y = active_mass;
            std::vector<PairEstimate> alpha =
                estimator == Estimator::histogram ? m_step_histogram(active_stats, &mass_error)
                                                  : m_step_kernel(active_stats, cfg);

            for (std::size_t p = 0; p < npairs; ++p)
                rho[p] = compute_rho(beta[p], alpha[p].A_T);

            bool fp_ok = true;
            tau = e_step_sparse(stream, tau, pi, alpha, beta, rho, cfg, &fp_ok);
            if (!fp_ok) fp_all = false;

            SufficientStats stats_new = compute_stats(stream, tau, cfg.d_max);
            std::vector<double> eventful_new = eventful_pair_mass(stream, tau);
            double J = evaluate_J_sparse(pi, alpha, beta, rho, stats_new, eventful_new, tau,
                                         cfg.intensity_floor);
            trace.push_back(J);
            iterations = s + 1;

            if (std::isfinite(J) && J > best_J) {
                best_J = J;
                best_tau = tau;
                best_pi = std::move(pi);
                best_alpha = std::move(alpha);
                best_beta = beta;
                best_rho = rho;
            }
            if (have_prev) {
                double denom = std::abs(J_prev);
                double rel = denom > 0.0 ? std::abs(J - J_prev) / denom : std::abs(J - J_prev);
                if (rel < cfg.epsilon) {
                    converged = true;
                    break;
                }
                decrease_streak = J < J_prev ? decrease_streak + 1 : 0;
                if (decrease_streak >= 3) break;
            }
            J_prev = J;
            have_prev = true;
        }

        if (best_J > result.J) {
            result.J = best_J;
            result.state = std::move(best_tau);
            result.pi = std::move(best_pi);
            result.alpha = std::move(best_alpha);
            result.J_trace = std::move(trace);
            result.converged = converged;
            result.fixed_point_converged = fp_all;
            result.iterations = iterations;
            result.best_init = static_cast<int>(k);
            result.sparse = SparseInfo{std::move(best_beta), std::move(best_rho)};
        }
        result.max_mass_error = std::max(result.max_mass_error, mass_error);
    }
    if (result.best_init < 0) throw std::runtime_error("run_vem_sparse: all initializations failed");
    return result;
}

double icl_sparse(const FitResult& fit, const EventStream& stream, double intensity_floor) {
    if (fit.estimator != Estimator::histogram)
        throw std::invalid_argument("icl_sparse: only histogram fits are supported");
    if (!fit.sparse) throw std::invalid_argument("icl_sparse: fit carries no sparse state");

    SufficientStats stats = compute_stats(stream, fit.state, 0);
    std::vector<double> eventful = eventful_pair_mass(stream, fit.state);

    // Expected complete-data log-likelihood: the sparse criterion with the
    // tau-entropy removed, i.e. the pi term becomes sum tau log pi.
    double lp = 0.0;
    const auto& beta = fit.sparse->beta;
    const auto& rho = fit.sparse->rho;
    for (std::size_t p = 0; p < fit.alpha.size(); ++p) {
        double zero_mass = std::max(0.0, stats.Y[p] - eventful[p]);
        double weighted = eventful[p] + rho[p] * zero_mass;
        lp -= weighted * fit.alpha[p].A_T;
        lp += log_clamped(beta[p]) * weighted +
              log1m_clamped(beta[p]) * (1.0 - rho[p]) * zero_mass;
        lp -= bernoulli_entropy(rho[p]) * zero_mass;
    }
    std::vector<double> times;
    times.reserve(stream.events.size());
    for (const Event& e : stream.events) times.push_back(e.t);
    for (std::size_t p = 0; p < fit.alpha.size(); ++p) {
        std::vector<double> vals = intensity_at_sorted(fit.alpha[p].fn, times);
        for (std::size_t m = 0; m < times.size(); ++m) {
            double w = stats.event_weights(m, p);
            if (w != 0.0) lp += w * std::log(std::max(vals[m], intensity_floor));
        }
    }
    for (std::size_t i = 0; i < fit.state.tau.rows(); ++i)
        for (std::size_t q = 0; q < fit.state.tau.cols(); ++q) {
            double t = fit.state.tau(i, q);
            if (t > 0.0) lp += t * std::log(fit.pi[q]);
        }

    double cells = 0.0;
    for (const PairEstimate& pe : fit.alpha) cells += std::ldexp(1.0, pe.depth);
    double r = static_cast<double>(stream.dyad_count());
    double penalty = 0.5 * (fit.Q - 1) * std::log(static_cast<double>(stream.n)) +
                     0.5 * std::log(r) * (static_cast<double>(fit.pairs().count()) + cells);
    return lp - penalty;
}

} // namespace ppsbm
