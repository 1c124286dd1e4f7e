#include "ppsbm/variational.hpp"

#include <cmath>
#include <stdexcept>

namespace ppsbm {

void VariationalState::validate() const {
    for (std::size_t i = 0; i < tau.rows(); ++i) {
        double sum = 0.0;
        for (std::size_t q = 0; q < tau.cols(); ++q) {
            double v = tau(i, q);
            if (v < 0.0) throw std::invalid_argument("VariationalState: negative weight");
            sum += v;
        }
        if (std::abs(sum - 1.0) > 1e-9)
            throw std::invalid_argument("VariationalState: row does not sum to 1");
    }
}

std::vector<int> VariationalState::map_labels() const {
    std::vector<int> labels(tau.rows());
    for (std::size_t i = 0; i < tau.rows(); ++i) {
        int best = 0;
        for (std::size_t q = 1; q < tau.cols(); ++q)
            if (tau(i, q) > tau(i, static_cast<std::size_t>(best))) best = static_cast<int>(q);
        labels[i] = best;
    }
    return labels;
}

VariationalState VariationalState::from_labels(const std::vector<int>& labels, int Q) {
    VariationalState state;
    state.tau = Matrix(labels.size(), static_cast<std::size_t>(Q));
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (labels[i] < 0 || labels[i] >= Q)
            throw std::invalid_argument("from_labels: label out of range");
        state.tau(i, static_cast<std::size_t>(labels[i])) = 1.0;
    }
    return state;
}

std::vector<double> update_pi(const VariationalState& state) {
    std::vector<double> pi(static_cast<std::size_t>(state.Q()), 0.0);
    for (std::size_t i = 0; i < state.tau.rows(); ++i)
        for (std::size_t q = 0; q < state.tau.cols(); ++q) pi[q] += state.tau(i, q);
    double inv_n = 1.0 / static_cast<double>(state.n());
    for (double& p : pi) p *= inv_n;
    return pi;
}

double SufficientStats::total_mass() const {
    double total = 0.0;
    for (double y : Y) total += y;
    return total;
}

SufficientStats compute_stats(const EventStream& stream, const VariationalState& state,
                              int d_max) {
    if (state.n() != stream.n)
        throw std::invalid_argument("compute_stats: tau row count != node count");
    if (d_max < 0 || d_max > 30)
        throw std::invalid_argument("compute_stats: d_max out of range");

    int Q = state.Q();
    const Matrix& tau = state.tau;
    SufficientStats stats;
    stats.pairs = PairSet(Q, stream.directed);
    stats.d_max = d_max;
    stats.T = stream.T;
    int npairs = stats.pairs.count();
    int cells = 1 << d_max;
    stats.Y.assign(static_cast<std::size_t>(npairs), 0.0);
    stats.cell_counts = Matrix(static_cast<std::size_t>(npairs), static_cast<std::size_t>(cells));
    stats.event_weights =
        Matrix(stream.events.size(), static_cast<std::size_t>(npairs));
    stats.event_times.reserve(stream.events.size());

    // Y from column sums: sum_{i != j} tau^{i,q} tau^{j,l}
    //   = S_q S_l - sum_i tau^{i,q} tau^{i,l}.
    std::vector<double> colsum(static_cast<std::size_t>(Q), 0.0);
    Matrix diag(static_cast<std::size_t>(Q), static_cast<std::size_t>(Q));
    for (int i = 0; i < stream.n; ++i)
        for (int q = 0; q < Q; ++q) {
            colsum[static_cast<std::size_t>(q)] += tau(static_cast<std::size_t>(i), static_cast<std::size_t>(q));
            for (int l = 0; l < Q; ++l)
                diag(static_cast<std::size_t>(q), static_cast<std::size_t>(l)) +=
                    tau(static_cast<std::size_t>(i), static_cast<std::size_t>(q)) *
                    tau(static_cast<std::size_t>(i), static_cast<std::size_t>(l));
        }
    for (int q = 0; q < Q; ++q) {
        for (int l = 0; l < Q; ++l) {
            double ordered = colsum[static_cast<std::size_t>(q)] * colsum[static_cast<std::size_t>(l)] -
                             diag(static_cast<std::size_t>(q), static_cast<std::size_t>(l));
            if (stream.directed) {
                stats.Y[static_cast<std::size_t>(stats.pairs.index(q, l))] = ordered;
            } else if (q < l) {
                // Both ordered orientations fold into the stored pair.
                stats.Y[static_cast<std::size_t>(stats.pairs.index(q, l))] = ordered;
            } else if (q == l) {
                stats.Y[static_cast<std::size_t>(stats.pairs.index(q, q))] = 0.5 * ordered;
            }
        }
    }

    double cell_scale = cells / stream.T;
    for (std::size_t m = 0; m < stream.events.size(); ++m) {
        const Event& e = stream.events[m];
        stats.event_times.push_back(e.t);
        int cell = std::min(static_cast<int>(e.t * cell_scale), cells - 1);
        const double* ti = tau.row(static_cast<std::size_t>(e.i));
        const double* tj = tau.row(static_cast<std::size_t>(e.j));
        for (int q = 0; q < Q; ++q) {
            for (int l = stream.directed ? 0 : q; l < Q; ++l) {
                double w = ti[q] * tj[l];
                if (!stream.directed && q < l) w += ti[l] * tj[q];
                std::size_t p = static_cast<std::size_t>(stats.pairs.index(q, l));
                stats.event_weights(m, p) = w;
                stats.cell_counts(p, static_cast<std::size_t>(cell)) += w;
            }
        }
    }
    return stats;
}

} // namespace ppsbm
