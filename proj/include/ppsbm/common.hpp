#ifndef PPSBM_COMMON_HPP
#define PPSBM_COMMON_HPP

#include <cstddef>
#include <cstdint>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

namespace ppsbm {

/// Dense row-major matrix of doubles. Minimal on purpose: the fitting code
/// only needs indexed access, fills and row views.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    double* row(std::size_t i) { return data_.data() + i * cols_; }
    const double* row(std::size_t i) const { return data_.data() + i * cols_; }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    std::vector<double>& data() { return data_; }
    const std::vector<double>& data() const { return data_; }

    bool operator==(const Matrix& other) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

/// Enumeration of group pairs (q,l). Directed mode stores all Q*Q ordered
/// pairs; undirected mode stores the Q*(Q+1)/2 unordered pairs with q <= l.
/// Grids indexed by this (intensities, Y, counts) use the same fixed order
/// everywhere, which keeps parallel reductions reproducible.
class PairSet {
public:
    PairSet() = default;
    PairSet(int Q, bool directed) : Q_(Q), directed_(directed) {}

    int group_count() const { return Q_; }
    bool directed() const { return directed_; }

    int count() const { return directed_ ? Q_ * Q_ : Q_ * (Q_ + 1) / 2; }

    /// Index of pair (q,l); in undirected mode (q,l) and (l,q) map to the
    /// same slot.
    int index(int q, int l) const {
        if (directed_) return q * Q_ + l;
        if (q > l) std::swap(q, l);
        return q * Q_ - q * (q - 1) / 2 + (l - q);
    }

    std::pair<int, int> pair(int idx) const {
        if (directed_) return {idx / Q_, idx % Q_};
        int q = 0;
        while (idx >= Q_ - q) {
            idx -= Q_ - q;
            ++q;
        }
        return {q, q + idx};
    }

private:
    int Q_ = 0;
    bool directed_ = true;
};

/// Runs fn(i) for i in [0, count) on up to `jobs` threads. Results must be
/// written into pre-sized slots indexed by i so the aggregation order is
/// deterministic regardless of scheduling.
template <typename Fn>
void parallel_for(std::size_t count, unsigned jobs, Fn&& fn) {
    if (jobs <= 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    unsigned workers = static_cast<unsigned>(std::min<std::size_t>(jobs, count));
    std::vector<std::thread> threads;
    threads.reserve(workers);
    std::exception_ptr error;
    std::mutex mtx;
    for (unsigned w = 0; w < workers; ++w) {
        threads.emplace_back([&, w]() {
            try {
                for (std::size_t i = w; i < count; i += workers) fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(mtx);
                if (!error) error = std::current_exception();
            }
        });
    }
    for (auto& t : threads) t.join();
    if (error) std::rethrow_exception(error);
}

inline unsigned default_jobs() {
    unsigned hc = std::thread::hardware_concurrency();
    return hc == 0 ? 1 : hc;
}

} // namespace ppsbm

#endif
