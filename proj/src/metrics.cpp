#include "ppsbm/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "ppsbm/simulate.hpp"

namespace ppsbm {

double adjusted_rand_index(const std::vector<int>& a, const std::vector<int>& b) {
    if (a.size() != b.size()) throw std::invalid_argument("adjusted_rand_index: length mismatch");
    std::size_t n = a.size();
    if (n == 0) throw std::invalid_argument("adjusted_rand_index: empty labelings");

    auto relabel = [](const std::vector<int>& labels) {
        std::vector<int> sorted(labels.begin(), labels.end());
        std::sort(sorted.begin(), sorted.end());
        sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
        std::vector<int> out(labels.size());
        for (std::size_t i = 0; i < labels.size(); ++i)
            out[i] = static_cast<int>(std::lower_bound(sorted.begin(), sorted.end(), labels[i]) -
                                      sorted.begin());
        return std::pair<std::vector<int>, int>{out, static_cast<int>(sorted.size())};
    };
    auto [la, ka] = relabel(a);
    auto [lb, kb] = relabel(b);

    Matrix table(static_cast<std::size_t>(ka), static_cast<std::size_t>(kb));
    for (std::size_t i = 0; i < n; ++i)
        table(static_cast<std::size_t>(la[i]), static_cast<std::size_t>(lb[i])) += 1.0;

    auto choose2 = [](double x) { return x * (x - 1.0) / 2.0; };
    double sum_cells = 0.0;
    std::vector<double> row_sums(static_cast<std::size_t>(ka), 0.0);
    std::vector<double> col_sums(static_cast<std::size_t>(kb), 0.0);
    for (int i = 0; i < ka; ++i)
        for (int j = 0; j < kb; ++j) {
            double c = table(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
            sum_cells += choose2(c);
            row_sums[static_cast<std::size_t>(i)] += c;
            col_sums[static_cast<std::size_t>(j)] += c;
        }
    double sum_rows = 0.0, sum_cols = 0.0;
    for (double s : row_sums) sum_rows += choose2(s);
    for (double s : col_sums) sum_cols += choose2(s);
    double total_pairs = choose2(static_cast<double>(n));
    double expected = sum_rows * sum_cols / total_pairs;
    double maximum = 0.5 * (sum_rows + sum_cols);
    if (maximum == expected) return 1.0; // both partitions trivial
    return (sum_cells - expected) / (maximum - expected);
}

double l2_risk(const IntensityFn& estimate, const IntensityFn& truth, double T, int grid_points) {
    if (grid_points < 2) throw std::invalid_argument("l2_risk: need at least 2 grid points");
    std::vector<double> ts(static_cast<std::size_t>(grid_points));
    for (int g = 0; g < grid_points; ++g)
        ts[static_cast<std::size_t>(g)] = T * static_cast<double>(g) / (grid_points - 1);
    std::vector<double> fe = intensity_at_sorted(estimate, ts);
    std::vector<double> ft = intensity_at_sorted(truth, ts);
    double h = T / (grid_points - 1);
    double acc = 0.0;
    for (int g = 0; g < grid_points; ++g) {
        double d = fe[static_cast<std::size_t>(g)] - ft[static_cast<std::size_t>(g)];
        double w = (g == 0 || g == grid_points - 1) ? 0.5 : 1.0;
        acc += w * d * d;
    }
    return std::sqrt(acc * h);
}

namespace {

double total_aligned_risk(const std::vector<IntensityFn>& estimate,
                          const std::vector<IntensityFn>& reference, const PairSet& pairs,
                          const std::vector<int>& perm, double T, int grid_points) {
    int Q = pairs.group_count();
    double total = 0.0;
    for (int q = 0; q < Q; ++q) {
        for (int l = pairs.directed() ? 0 : q; l < Q; ++l) {
            const IntensityFn& est = estimate[static_cast<std::size_t>(pairs.index(q, l))];
            const IntensityFn& ref = reference[static_cast<std::size_t>(
                pairs.index(perm[static_cast<std::size_t>(q)], perm[static_cast<std::size_t>(l)]))];
            total += l2_risk(est, ref, T, grid_points);
        }
    }
    return total;
}

} // namespace

std::vector<int> align_groups(const std::vector<IntensityFn>& estimate,
                              const std::vector<IntensityFn>& reference, const PairSet& pairs,
                              double T, int grid_points) {
    int Q = pairs.group_count();
    std::vector<int> best(static_cast<std::size_t>(Q));
    std::iota(best.begin(), best.end(), 0);
    if (Q == 1) return best;

    if (Q <= 8) {
        std::vector<int> perm = best;
        double best_total = std::numeric_limits<double>::infinity();
        std::vector<int> current = perm;
        std::sort(current.begin(), current.end());
        do {
            double total = total_aligned_risk(estimate, reference, pairs, current, T, grid_points);
            if (total < best_total) {
                best_total = total;
                best = current;
            }
        } while (std::next_permutation(current.begin(), current.end()));
        return best;
    }

    // Greedy matching on within-group risks for large Q.
    std::vector<bool> taken(static_cast<std::size_t>(Q), false);
    for (int q = 0; q < Q; ++q) {
        int chosen = -1;
        double chosen_risk = std::numeric_limits<double>::infinity();
        for (int t = 0; t < Q; ++t) {
            if (taken[static_cast<std::size_t>(t)]) continue;
            double risk = l2_risk(estimate[static_cast<std::size_t>(pairs.index(q, q))],
                                  reference[static_cast<std::size_t>(pairs.index(t, t))], T,
                                  grid_points);
            if (risk < chosen_risk) {
                chosen_risk = risk;
                chosen = t;
            }
        }
        best[static_cast<std::size_t>(q)] = chosen;
        taken[static_cast<std::size_t>(chosen)] = true;
    }
    return best;
}

RiskReport intensity_risks(const std::vector<IntensityFn>& estimate,
                           const std::vector<IntensityFn>& reference, const PairSet& pairs,
                           double T, int grid_points) {
    RiskReport report;
    report.pairs = pairs;
    report.permutation = align_groups(estimate, reference, pairs, T, grid_points);
    report.risk.assign(static_cast<std::size_t>(pairs.count()), 0.0);
    int Q = pairs.group_count();
    for (int q = 0; q < Q; ++q) {
        for (int l = pairs.directed() ? 0 : q; l < Q; ++l) {
            int true_pair = pairs.index(report.permutation[static_cast<std::size_t>(q)],
                                        report.permutation[static_cast<std::size_t>(l)]);
            double risk = l2_risk(estimate[static_cast<std::size_t>(pairs.index(q, l))],
                                  reference[static_cast<std::size_t>(true_pair)], T, grid_points);
            report.risk[static_cast<std::size_t>(true_pair)] = risk;
            report.total += risk;
        }
    }
    return report;
}

double empirical_quantile(std::vector<double> values, double p) {
    if (values.empty()) throw std::invalid_argument("empirical_quantile: empty sample");
    if (p < 0.0 || p > 1.0) throw std::invalid_argument("empirical_quantile: p outside [0,1]");
    std::sort(values.begin(), values.end());
    double h = (static_cast<double>(values.size()) - 1.0) * p;
    std::size_t lo = static_cast<std::size_t>(h);
    if (lo + 1 >= values.size()) return values.back();
    double frac = h - static_cast<double>(lo);
    return values[lo] + frac * (values[lo + 1] - values[lo]);
}

BootstrapBands bootstrap_ci(const FitResult& fit, int B, double level, const FitConfig& cfg,
                            Rng& rng, int grid_points, unsigned jobs) {
    if (B < 10) throw std::invalid_argument("bootstrap_ci: need at least 10 replicates");
    if (level <= 0.0 || level >= 1.0) throw std::invalid_argument("bootstrap_ci: level outside (0,1)");

    int n = fit.state.n();
    int Q = fit.Q;
    PairSet pairs = fit.pairs();
    std::size_t npairs = static_cast<std::size_t>(pairs.count());

    BootstrapBands bands;
    bands.T = fit.T;
    bands.level = level;
    bands.grid.resize(static_cast<std::size_t>(grid_points));
    for (int g = 0; g < grid_points; ++g)
        bands.grid[static_cast<std::size_t>(g)] = fit.T * static_cast<double>(g) / (grid_points - 1);

    // Original estimates on the band grid serve as the alignment reference.
    std::vector<IntensityFn> original(npairs);
    for (std::size_t p = 0; p < npairs; ++p) original[p] = fit.alpha[p].fn;

    // values[b][p][g]
    std::vector<std::vector<std::vector<double>>> values(
        static_cast<std::size_t>(B),
        std::vector<std::vector<double>>(npairs));
    std::vector<unsigned char> empty_flag(static_cast<std::size_t>(B), 0);
    std::vector<unsigned char> failed(static_cast<std::size_t>(B), 0);

    parallel_for(static_cast<std::size_t>(B), jobs, [&](std::size_t b) {
        Rng rep_rng = rng.child(b);
        try {
            // Draw labels from the fitted proportions and simulate each
            // dyad from the matching fitted intensity.
            Rng label_rng = rep_rng.child(0);
            std::vector<int> labels = sample_memberships(fit.pi, n, label_rng);
            std::vector<int> present(static_cast<std::size_t>(Q), 0);
            for (int lab : labels) present[static_cast<std::size_t>(lab)] = 1;
            for (int q = 0; q < Q; ++q)
                if (!present[static_cast<std::size_t>(q)]) empty_flag[b] = 1;

            EventStream stream;
            stream.n = n;
            stream.T = fit.T;
            stream.directed = fit.directed;
            Rng event_root = rep_rng.child(1);
            for (int i = 0; i < n; ++i) {
                for (int j = fit.directed ? 0 : i + 1; j < n; ++j) {
                    if (i == j) continue;
                    Rng dyad_rng = event_root.child(static_cast<std::uint64_t>(stream.dyad_index(i, j)));
                    const IntensityFn& fn =
                        fit.alpha[static_cast<std::size_t>(pairs.index(
                                      labels[static_cast<std::size_t>(i)],
                                      labels[static_cast<std::size_t>(j)]))].fn;
                    for (double t : sample_inhomogeneous_poisson(fn, fit.T, dyad_rng))
                        stream.events.push_back({t, i, j});
                }
            }
            std::sort(stream.events.begin(), stream.events.end(), [](const Event& x, const Event& y) {
                if (x.t != y.t) return x.t < y.t;
                if (x.i != y.i) return x.i < y.i;
                return x.j < y.j;
            });

            Rng fit_rng = rep_rng.child(2);
            FitResult refit = run_vem(stream, Q, cfg, fit.estimator, fit_rng);

            std::vector<IntensityFn> estimates(npairs);
            for (std::size_t p = 0; p < npairs; ++p) estimates[p] = refit.alpha[p].fn;
            std::vector<int> perm = align_groups(estimates, original, pairs, fit.T, grid_points);

            for (int q = 0; q < Q; ++q) {
                for (int l = pairs.directed() ? 0 : q; l < Q; ++l) {
                    std::size_t target = static_cast<std::size_t>(
                        pairs.index(perm[static_cast<std::size_t>(q)], perm[static_cast<std::size_t>(l)]));
                    values[b][target] = intensity_at_sorted(
                        estimates[static_cast<std::size_t>(pairs.index(q, l))], bands.grid);
                }
            }
        } catch (const std::exception&) {
            failed[b] = 1;
        }
    });

    std::vector<std::size_t> kept;
    for (std::size_t b = 0; b < static_cast<std::size_t>(B); ++b)
        if (!failed[b]) kept.push_back(b);
    if (kept.empty()) throw std::runtime_error("bootstrap_ci: every replicate failed");

    bands.replicates = static_cast<int>(kept.size());
    for (std::size_t b : kept) bands.empty_group_replicates += empty_flag[b];

    double lo_p = (1.0 - level) / 2.0;
    double hi_p = 1.0 - lo_p;
    bands.lower.assign(npairs, std::vector<double>(static_cast<std::size_t>(grid_points)));
    bands.median = bands.lower;
    bands.upper = bands.lower;
    std::vector<double> sample(kept.size());
    for (std::size_t p = 0; p < npairs; ++p) {
        for (int g = 0; g < grid_points; ++g) {
            for (std::size_t k = 0; k < kept.size(); ++k)
                sample[k] = values[kept[k]][p][static_cast<std::size_t>(g)];
            bands.lower[p][static_cast<std::size_t>(g)] = empirical_quantile(sample, lo_p);
            bands.median[p][static_cast<std::size_t>(g)] = empirical_quantile(sample, 0.5);
            bands.upper[p][static_cast<std::size_t>(g)] = empirical_quantile(sample, hi_p);
        }
    }
    return bands;
}

} // namespace ppsbm
