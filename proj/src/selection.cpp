#include "ppsbm/selection.hpp"

#include <cmath>
#include <stdexcept>

#include "ppsbm/sparse.hpp"

namespace ppsbm {

const FitResult& SelectionReport::chosen_fit() const {
    for (std::size_t k = 0; k < Q_values.size(); ++k)
        if (Q_values[k] == chosen_Q) return fits[k];
    throw std::logic_error("SelectionReport: chosen Q not present");
}

double icl(const FitResult& fit, const EventStream& stream, double intensity_floor) {
    if (fit.estimator != Estimator::histogram)
        throw std::invalid_argument("icl: only histogram fits are supported");

    SufficientStats stats = compute_stats(stream, fit.state, 0);

    double lp = 0.0;
    for (std::size_t p = 0; p < fit.alpha.size(); ++p) lp -= stats.Y[p] * fit.alpha[p].A_T;
    for (std::size_t p = 0; p < fit.alpha.size(); ++p) {
        std::vector<double> vals = intensity_at_sorted(fit.alpha[p].fn, stats.event_times);
        for (std::size_t m = 0; m < stats.event_times.size(); ++m) {
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
                     0.5 * std::log(r) * cells;
    return lp - penalty;
}

SelectionReport select_Q(const EventStream& stream, int Q_max, const FitConfig& cfg, Rng& rng,
                         bool sparse, unsigned jobs) {
    if (Q_max < 1) throw std::invalid_argument("select_Q: Q_max must be >= 1");
    Q_max = std::min(Q_max, stream.n);

    SelectionReport report;
    report.Q_values.resize(static_cast<std::size_t>(Q_max));
    report.icl_values.resize(static_cast<std::size_t>(Q_max));
    report.fits.resize(static_cast<std::size_t>(Q_max));

    parallel_for(static_cast<std::size_t>(Q_max), jobs, [&](std::size_t k) {
        int Q = static_cast<int>(k) + 1;
        Rng fit_rng = rng.child(static_cast<std::uint64_t>(Q));
        FitResult fit = sparse ? run_vem_sparse(stream, Q, cfg, Estimator::histogram, fit_rng)
                               : run_vem(stream, Q, cfg, Estimator::histogram, fit_rng);
        report.Q_values[k] = Q;
        report.icl_values[k] = sparse ? icl_sparse(fit, stream, cfg.intensity_floor)
                                      : icl(fit, stream, cfg.intensity_floor);
        report.fits[k] = std::move(fit);
    });

    report.chosen_Q = report.Q_values[0];
    double best = report.icl_values[0];
    for (std::size_t k = 1; k < report.icl_values.size(); ++k) {
        if (report.icl_values[k] > best) {
            best = report.icl_values[k];
            report.chosen_Q = report.Q_values[k];
        }
    }
    return report;
}

} // namespace ppsbm
