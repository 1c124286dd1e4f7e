#ifndef PPSBM_SELECTION_HPP
#define PPSBM_SELECTION_HPP

#include <vector>

#include "ppsbm/vem.hpp"

namespace ppsbm {

struct SelectionReport {
    std::vector<int> Q_values;
    std::vector<double> icl_values;
    std::vector<FitResult> fits;
    int chosen_Q = 0; // argmax ICL, ties toward the smallest Q

    const FitResult& chosen_fit() const;
};

/// Integrated classification likelihood of a histogram fit: the
/// variational expected complete-data log-likelihood penalized by
/// (Q-1)/2 log n for the proportions and log(r)/2 per estimated histogram
/// cell. Kernel fits have no finite parameter count and are rejected.
double icl(const FitResult& fit, const EventStream& stream, double intensity_floor = 1e-10);

/// Fits Q = 1..Q_max, each with the full multi-initialization protocol,
/// and keeps the ICL argmax. Per-Q runs use independent child generators,
/// so the report is deterministic given the seed; `jobs` > 1 fans the fits
/// out across threads without changing results.
SelectionReport select_Q(const EventStream& stream, int Q_max, const FitConfig& cfg, Rng& rng,
                         bool sparse = false, unsigned jobs = 1);

} // namespace ppsbm

#endif
