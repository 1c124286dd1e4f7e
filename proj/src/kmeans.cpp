#include "ppsbm/kmeans.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace ppsbm {

namespace {

double sq_dist(const double* a, const double* b, std::size_t dim) {
    double s = 0.0;
    for (std::size_t d = 0; d < dim; ++d) {
        double diff = a[d] - b[d];
        s += diff * diff;
    }
    return s;
}

} // namespace

std::vector<int> kmeans(const Matrix& points, int k, Rng& rng, int max_iter) {
    std::size_t n = points.rows();
    std::size_t dim = points.cols();
    if (k < 1 || static_cast<std::size_t>(k) > n)
        throw std::invalid_argument("kmeans: k out of range");

    // k-means++ seeding.
    Matrix centers(static_cast<std::size_t>(k), dim);
    std::vector<double> min_dist(n, std::numeric_limits<double>::infinity());
    std::size_t first = static_cast<std::size_t>(rng.uniform_index(n));
    for (std::size_t d = 0; d < dim; ++d) centers(0, d) = points(first, d);
    for (int c = 1; c < k; ++c) {
        double total = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            double dist = sq_dist(points.row(i), centers.row(static_cast<std::size_t>(c - 1)), dim);
            min_dist[i] = std::min(min_dist[i], dist);
            total += min_dist[i];
        }
        std::size_t chosen = 0;
        if (total > 0.0) {
            double u = rng.uniform() * total;
            double acc = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                acc += min_dist[i];
                if (u < acc) {
                    chosen = i;
                    break;
                }
                chosen = i;
            }
        } else {
            chosen = static_cast<std::size_t>(rng.uniform_index(n));
        }
        for (std::size_t d = 0; d < dim; ++d)
            centers(static_cast<std::size_t>(c), d) = points(chosen, d);
    }

    std::vector<int> assign(n, 0);
    std::vector<std::size_t> sizes(static_cast<std::size_t>(k), 0);
    for (int iter = 0; iter < max_iter; ++iter) {
        bool changed = false;
        for (std::size_t i = 0; i < n; ++i) {
            int best = 0;
            double best_d = sq_dist(points.row(i), centers.row(0), dim);
            for (int c = 1; c < k; ++c) {
                double dist = sq_dist(points.row(i), centers.row(static_cast<std::size_t>(c)), dim);
                if (dist < best_d) {
                    best_d = dist;
                    best = c;
                }
            }
            if (assign[i] != best) {
                assign[i] = best;
                changed = true;
            }
        }
        if (!changed && iter > 0) break;

        centers = Matrix(static_cast<std::size_t>(k), dim);
        std::fill(sizes.begin(), sizes.end(), 0);
        for (std::size_t i = 0; i < n; ++i) {
            ++sizes[static_cast<std::size_t>(assign[i])];
            for (std::size_t d = 0; d < dim; ++d)
                centers(static_cast<std::size_t>(assign[i]), d) += points(i, d);
        }
        for (int c = 0; c < k; ++c) {
            if (sizes[static_cast<std::size_t>(c)] == 0) continue;
            double inv = 1.0 / static_cast<double>(sizes[static_cast<std::size_t>(c)]);
            for (std::size_t d = 0; d < dim; ++d)
                centers(static_cast<std::size_t>(c), d) *= inv;
        }
        // Reseed empty clusters to the point farthest from its assigned
        // center (after all means are in place).
        for (int c = 0; c < k; ++c) {
            if (sizes[static_cast<std::size_t>(c)] != 0) continue;
            std::size_t far_i = 0;
            double far_d = -1.0;
            for (std::size_t i = 0; i < n; ++i) {
                double dist = sq_dist(points.row(i),
                                      centers.row(static_cast<std::size_t>(assign[i])), dim);
                if (dist > far_d) {
                    far_d = dist;
                    far_i = i;
                }
            }
            for (std::size_t d = 0; d < dim; ++d)
                centers(static_cast<std::size_t>(c), d) = points(far_i, d);
        }
    }
    return assign;
}

} // namespace ppsbm
