#ifndef PPSBM_VARIATIONAL_HPP
#define PPSBM_VARIATIONAL_HPP

#include <vector>

#include "ppsbm/common.hpp"
#include "ppsbm/events.hpp"

namespace ppsbm {

/// Soft group memberships: an n x Q matrix with nonnegative rows summing
/// to 1.
struct VariationalState {
    Matrix tau;

    int n() const { return static_cast<int>(tau.rows()); }
    int Q() const { return static_cast<int>(tau.cols()); }

    /// Checks row sums (tolerance 1e-9) and nonnegativity.
    void validate() const;

    /// Hard labels: argmax per row, ties broken toward the lowest group.
    std::vector<int> map_labels() const;

    static VariationalState from_labels(const std::vector<int>& labels, int Q);
};

/// Maximizer of J in pi: column means of tau.
std::vector<double> update_pi(const VariationalState& state);

/// Variational sufficient statistics for one (stream, tau) pair on the
/// finest dyadic grid. In undirected mode the (q,l) entries with q < l
/// carry the symmetrized mass tau^{i,q}tau^{j,l} + tau^{i,l}tau^{j,q}
/// summed over i < j, so that sum_pairs Y = r and each event's weights sum
/// to 1.
struct SufficientStats {
    PairSet pairs;
    int d_max = 0;
    double T = 0.0;
    std::vector<double> Y;        // variational dyad mass per pair
    Matrix cell_counts;           // pairs x 2^d_max weighted event counts
    Matrix event_weights;         // M x pairs, tau_m^{(q,l)}
    std::vector<double> event_times;

    double total_mass() const; // sum of Y over pairs (= r up to rounding)
};

SufficientStats compute_stats(const EventStream& stream, const VariationalState& state,
                              int d_max);

} // namespace ppsbm

#endif
