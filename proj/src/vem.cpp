#include "ppsbm/vem.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "ppsbm/kmeans.hpp"

namespace ppsbm {

namespace {

struct StreamIndex {
    // Events where node i is the sender (directed) or either endpoint
    // (undirected); `in_events` stays empty in undirected mode.
    std::vector<std::vector<int>> out_events;
    std::vector<std::vector<int>> in_events;

    explicit StreamIndex(const EventStream& stream)
        : out_events(static_cast<std::size_t>(stream.n)),
          in_events(static_cast<std::size_t>(stream.n)) {
        for (int m = 0; m < stream.event_count(); ++m) {
            const Event& e = stream.events[static_cast<std::size_t>(m)];
            out_events[static_cast<std::size_t>(e.i)].push_back(m);
            if (stream.directed)
                in_events[static_cast<std::size_t>(e.j)].push_back(m);
            else
                out_events[static_cast<std::size_t>(e.j)].push_back(m);
        }
    }
};

/// log of the floored intensity of every pair at every event time (M x P).
Matrix log_alpha_table(const EventStream& stream, const std::vector<PairEstimate>& alpha,
                       double floor) {
    std::vector<double> times;
    times.reserve(stream.events.size());
    for (const Event& e : stream.events) times.push_back(e.t);
    Matrix table(times.size(), alpha.size());
    for (std::size_t p = 0; p < alpha.size(); ++p) {
        std::vector<double> vals = intensity_at_sorted(alpha[p].fn, times);
        for (std::size_t m = 0; m < times.size(); ++m)
            table(m, p) = std::log(std::max(vals[m], floor));
    }
    return table;
}

} // namespace

void FitConfig::validate() const {
    if (d_max < 0 || d_max > 30) throw std::invalid_argument("FitConfig: d_max out of range");
    if (epsilon <= 0.0 || fix_eps <= 0.0 || intensity_floor <= 0.0)
        throw std::invalid_argument("FitConfig: tolerances must be > 0");
    if (nb_iter < 1 || fix_iter < 1) throw std::invalid_argument("FitConfig: iteration caps must be >= 1");
    if (perc_perturb < 0.0 || perc_perturb > 1.0)
        throw std::invalid_argument("FitConfig: perc_perturb must lie in [0,1]");
    if (n_perturb < 0 || l_part < 0) throw std::invalid_argument("FitConfig: negative init control");
    if (grid_points < 2) throw std::invalid_argument("FitConfig: grid_points must be >= 2");
}

double compute_D(const EventStream& stream, int i, int q, const Matrix& tau,
                 const std::vector<PairEstimate>& alpha, double intensity_floor) {
    int Q = static_cast<int>(tau.cols());
    PairSet pairs(Q, stream.directed);
    double D = 0.0;
    for (int l = 0; l < Q; ++l) {
        double mass = 0.0;
        for (int j = 0; j < stream.n; ++j)
            if (j != i) mass += tau(static_cast<std::size_t>(j), static_cast<std::size_t>(l));
        double a = alpha[static_cast<std::size_t>(pairs.index(q, l))].A_T;
        if (stream.directed) a += alpha[static_cast<std::size_t>(pairs.index(l, q))].A_T;
        D -= mass * a;
    }
    for (const Event& e : stream.events) {
        int partner;
        bool as_sender;
        if (stream.directed) {
            if (e.i == i) {
                partner = e.j;
                as_sender = true;
            } else if (e.j == i) {
                partner = e.i;
                as_sender = false;
            } else {
                continue;
            }
        } else {
            if (e.i == i) partner = e.j;
            else if (e.j == i) partner = e.i;
            else continue;
            as_sender = true; // orientation is immaterial with a symmetric grid
        }
        for (int l = 0; l < Q; ++l) {
            int p = as_sender ? pairs.index(q, l) : pairs.index(l, q);
            double value = intensity_at(alpha[static_cast<std::size_t>(p)].fn, e.t);
            D += tau(static_cast<std::size_t>(partner), static_cast<std::size_t>(l)) *
                 std::log(std::max(value, intensity_floor));
        }
    }
    return D;
}

VariationalState e_step(const EventStream& stream, const VariationalState& tau0,
                        const std::vector<double>& pi, const std::vector<PairEstimate>& alpha,
                        const FitConfig& cfg, bool* converged) {
    int n = stream.n;
    int Q = tau0.Q();
    PairSet pairs(Q, stream.directed);
    StreamIndex index(stream);
    Matrix log_alpha = log_alpha_table(stream, alpha, cfg.intensity_floor);

    std::vector<double> log_pi(static_cast<std::size_t>(Q));
    for (int q = 0; q < Q; ++q) log_pi[static_cast<std::size_t>(q)] = std::log(pi[static_cast<std::size_t>(q)]);

    Matrix tau = tau0.tau;
    std::vector<double> colsum(static_cast<std::size_t>(Q), 0.0);
    for (int i = 0; i < n; ++i)
        for (int q = 0; q < Q; ++q) colsum[static_cast<std::size_t>(q)] += tau(static_cast<std::size_t>(i), static_cast<std::size_t>(q));

    std::vector<double> scores(static_cast<std::size_t>(Q));
    bool reached = false;
    for (int sweep = 0; sweep < cfg.fix_iter; ++sweep) {
        double max_change = 0.0;
        for (int i = 0; i < n; ++i) {
            for (int q = 0; q < Q; ++q) {
                double D = 0.0;
                for (int l = 0; l < Q; ++l) {
                    double mass = colsum[static_cast<std::size_t>(l)] -
                                  tau(static_cast<std::size_t>(i), static_cast<std::size_t>(l));
                    double a = alpha[static_cast<std::size_t>(pairs.index(q, l))].A_T;
                    if (stream.directed) a += alpha[static_cast<std::size_t>(pairs.index(l, q))].A_T;
                    D -= mass * a;
                }
                scores[static_cast<std::size_t>(q)] = log_pi[static_cast<std::size_t>(q)] + D;
            }
            for (int m : index.out_events[static_cast<std::size_t>(i)]) {
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
                for (int m : index.in_events[static_cast<std::size_t>(i)]) {
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
            // Row normalization in the log domain.
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

double evaluate_J(const std::vector<double>& pi, const std::vector<PairEstimate>& alpha,
                  const SufficientStats& stats, const VariationalState& state,
                  double intensity_floor) {
    double J = 0.0;
    for (std::size_t p = 0; p < alpha.size(); ++p) J -= stats.Y[p] * alpha[p].A_T;

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
            // log(pi) - log(t) instead of log(pi/t): the ratio overflows
            // when t is denormal.
            if (t > 0.0) J += t * (std::log(pi[q]) - std::log(t));
        }
    return J;
}

double complete_log_likelihood(const EventStream& stream, const std::vector<int>& labels,
                               const std::vector<double>& pi,
                               const std::vector<PairEstimate>& alpha, double intensity_floor) {
    PairSet pairs(static_cast<int>(pi.size()), stream.directed);
    double ll = 0.0;
    for (int i = 0; i < stream.n; ++i) {
        for (int j = stream.directed ? 0 : i + 1; j < stream.n; ++j) {
            if (i == j) continue;
            int p = pairs.index(labels[static_cast<std::size_t>(i)], labels[static_cast<std::size_t>(j)]);
            ll -= alpha[static_cast<std::size_t>(p)].A_T;
        }
    }
    for (const Event& e : stream.events) {
        int p = pairs.index(labels[static_cast<std::size_t>(e.i)], labels[static_cast<std::size_t>(e.j)]);
        double value = intensity_at(alpha[static_cast<std::size_t>(p)].fn, e.t);
        ll += std::log(std::max(value, intensity_floor));
    }
    for (int label : labels) ll += std::log(pi[static_cast<std::size_t>(label)]);
    return ll;
}

std::vector<PairEstimate> m_step_histogram(const SufficientStats& stats,
                                           double* mass_error) {
    int npairs = stats.pairs.count();
    std::vector<PairEstimate> out(static_cast<std::size_t>(npairs));
    int cells = 1 << stats.d_max;
    for (int p = 0; p < npairs; ++p) {
        std::vector<double> counts(stats.cell_counts.row(static_cast<std::size_t>(p)),
                                   stats.cell_counts.row(static_cast<std::size_t>(p)) + cells);
        HistogramEstimate est = adaptive_histogram(counts, stats.Y[static_cast<std::size_t>(p)], stats.T);
        PairEstimate& pe = out[static_cast<std::size_t>(p)];
        pe.depth = est.depth;
        pe.A_T = est.integral();
        if (mass_error) {
            double total = 0.0;
            for (double c : counts) total += c;
            *mass_error = std::max(*mass_error,
                                   std::abs(stats.Y[static_cast<std::size_t>(p)] * pe.A_T - total));
        }
        pe.fn = est.as_intensity();
    }
    return out;
}

std::vector<PairEstimate> m_step_kernel(const SufficientStats& stats, const FitConfig& cfg) {
    int npairs = stats.pairs.count();
    std::vector<PairEstimate> out(static_cast<std::size_t>(npairs));
    std::size_t M = stats.event_times.size();
    for (int p = 0; p < npairs; ++p) {
        std::vector<double> weights(M);
        for (std::size_t m = 0; m < M; ++m)
            weights[m] = stats.event_weights(m, static_cast<std::size_t>(p));
        double b = cfg.bandwidth > 0.0 ? cfg.bandwidth
                                       : default_bandwidth(stats.T, stats.event_times, weights);
        PairEstimate& pe = out[static_cast<std::size_t>(p)];
        pe.fn = kernel_estimate(stats.event_times, weights, stats.Y[static_cast<std::size_t>(p)], b);
        pe.A_T = intensity_integral(pe.fn, stats.T);
    }
    return out;
}

std::vector<VariationalState> init_classifications(const EventStream& stream, int Q,
                                                   const FitConfig& cfg, Rng& rng) {
    if (Q > stream.n) throw std::invalid_argument("init_classifications: Q exceeds node count");
    if (Q < 1) throw std::invalid_argument("init_classifications: Q must be >= 1");

    std::vector<VariationalState> inits;
    if (Q == 1) {
        inits.push_back(VariationalState::from_labels(std::vector<int>(static_cast<std::size_t>(stream.n), 0), 1));
        return inits;
    }

    int n = stream.n;
    int perturbed_nodes = static_cast<int>(std::llround(cfg.perc_perturb * n));
    for (int d = 0; d <= cfg.l_part; ++d) {
        Rng depth_rng = rng.child(static_cast<std::uint64_t>(d));
        Matrix counts = aggregate_counts(stream, d);
        int cells = 1 << d;
        std::size_t width = static_cast<std::size_t>(n) * static_cast<std::size_t>(cells);
        Matrix features(static_cast<std::size_t>(n), stream.directed ? 2 * width : width);
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                if (i == j) continue;
                if (stream.directed) {
                    std::size_t out_row = static_cast<std::size_t>(stream.dyad_index(i, j));
                    std::size_t in_row = static_cast<std::size_t>(stream.dyad_index(j, i));
                    for (int c = 0; c < cells; ++c) {
                        features(static_cast<std::size_t>(i),
                                 static_cast<std::size_t>(j) * cells + static_cast<std::size_t>(c)) =
                            counts(out_row, static_cast<std::size_t>(c));
                        features(static_cast<std::size_t>(i),
                                 width + static_cast<std::size_t>(j) * cells + static_cast<std::size_t>(c)) =
                            counts(in_row, static_cast<std::size_t>(c));
                    }
                } else {
                    std::size_t row = static_cast<std::size_t>(
                        stream.dyad_index(std::min(i, j), std::max(i, j)));
                    for (int c = 0; c < cells; ++c)
                        features(static_cast<std::size_t>(i),
                                 static_cast<std::size_t>(j) * cells + static_cast<std::size_t>(c)) =
                            counts(row, static_cast<std::size_t>(c));
                }
            }
        }
        Rng km_rng = depth_rng.child(0);
        std::vector<int> base = kmeans(features, Q, km_rng);
        inits.push_back(VariationalState::from_labels(base, Q));

        for (int p = 1; p <= cfg.n_perturb; ++p) {
            Rng perturb_rng = depth_rng.child(static_cast<std::uint64_t>(p));
            std::vector<int> labels = base;
            std::vector<int> order(static_cast<std::size_t>(n));
            for (int i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = i;
            for (int t = 0; t < perturbed_nodes; ++t) {
                std::size_t pick = static_cast<std::size_t>(t) +
                                   static_cast<std::size_t>(perturb_rng.uniform_index(
                                       static_cast<std::uint64_t>(n - t)));
                std::swap(order[static_cast<std::size_t>(t)], order[pick]);
                labels[static_cast<std::size_t>(order[static_cast<std::size_t>(t)])] =
                    static_cast<int>(perturb_rng.uniform_index(static_cast<std::uint64_t>(Q)));
            }
            inits.push_back(VariationalState::from_labels(labels, Q));
        }
    }
    return inits;
}

namespace {

struct SingleRun {
    VariationalState tau;
    std::vector<double> pi;
    std::vector<PairEstimate> alpha;
    double J = -std::numeric_limits<double>::infinity();
    std::vector<double> trace;
    bool converged = false;
    bool fixed_point_converged = true;
    int iterations = 0;
    double mass_error = 0.0;
};

SingleRun run_single(const EventStream& stream, const VariationalState& init,
                     const FitConfig& cfg, Estimator estimator) {
    SingleRun run;
    VariationalState tau = init;
    double J_prev = 0.0;
    bool have_prev = false;
    int decrease_streak = 0;

    for (int s = 0; s < cfg.nb_iter; ++s) {
        std::vector<double> pi = update_pi(tau);
        SufficientStats stats = compute_stats(stream, tau, cfg.d_max);
        std::vector<PairEstimate> alpha =
            estimator == Estimator::histogram ? m_step_histogram(stats, &run.mass_error)
                                              : m_step_kernel(stats, cfg);
        bool fp_ok = true;
        tau = e_step(stream, tau, pi, alpha, cfg, &fp_ok);
        if (!fp_ok) run.fixed_point_converged = false;

        SufficientStats stats_new = compute_stats(stream, tau, cfg.d_max);
        double J = evaluate_J(pi, alpha, stats_new, tau, cfg.intensity_floor);
        run.trace.push_back(J);
        run.iterations = s + 1;

        if (std::isfinite(J) && J > run.J) {
            run.J = J;
            run.tau = tau;
            run.pi = std::move(pi);
            run.alpha = std::move(alpha);
        }

        if (have_prev) {
            double denom = std::abs(J_prev);
            double rel = denom > 0.0 ? std::abs(J - J_prev) / denom : std::abs(J - J_prev);
            if (rel < cfg.epsilon) {
                run.converged = true;
                break;
            }
            decrease_streak = J < J_prev ? decrease_streak + 1 : 0;
            if (decrease_streak >= 3) break;
        }
        J_prev = J;
        have_prev = true;
    }
    return run;
}

} // namespace

FitResult run_vem(const EventStream& stream, int Q, const FitConfig& cfg, Estimator estimator,
                  Rng& rng) {
    cfg.validate();
    stream.validate();
    if (Q < 1) throw std::invalid_argument("run_vem: Q must be >= 1");
    if (Q > stream.n) throw std::invalid_argument("run_vem: Q exceeds node count");

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
        SingleRun run = run_single(stream, inits[k], cfg, estimator);
        if (run.J > result.J) {
            result.J = run.J;
            result.state = std::move(run.tau);
            result.pi = std::move(run.pi);
            result.alpha = std::move(run.alpha);
            result.J_trace = std::move(run.trace);
            result.converged = run.converged;
            result.fixed_point_converged = run.fixed_point_converged;
            result.iterations = run.iterations;
            result.best_init = static_cast<int>(k);
        }
        result.max_mass_error = std::max(result.max_mass_error, run.mass_error);
    }
    if (result.best_init < 0) throw std::runtime_error("run_vem: all initializations failed");
    return result;
}

} // namespace ppsbm
