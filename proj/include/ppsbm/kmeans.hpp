#ifndef PPSBM_KMEANS_HPP
#define PPSBM_KMEANS_HPP

#include <vector>

#include "ppsbm/common.hpp"
#include "ppsbm/rng.hpp"

namespace ppsbm {

/// Seeded k-means on the rows of `points`: k-means++ initialization,
/// Lloyd iterations with a fixed cap, Euclidean distance. An emptied
/// cluster is reseeded to the point farthest from its center. Deterministic
/// given the generator state.
std::vector<int> kmeans(const Matrix& points, int k, Rng& rng, int max_iter = 50);

} // namespace ppsbm

#endif
