#ifndef PPSBM_RNG_HPP
#define PPSBM_RNG_HPP

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace ppsbm {

/// Splittable pseudo-random generator built on the splitmix64 sequence.
/// Two properties matter here: identical seed gives an identical stream on
/// every platform (no reliance on std distribution internals), and child
/// streams derived from (seed, key) are independent of how much the parent
/// has been consumed, so replicates can run in any order or in parallel.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : seed_(seed), state_(mix(seed ^ kInit)) {}

    std::uint64_t seed() const { return seed_; }

    std::uint64_t next_u64() {
        state_ += kGamma;
        return mix(state_);
    }

    /// Child stream keyed by an index; derived from the construction seed
    /// only.
    Rng child(std::uint64_t key) const {
        return Rng(mix(seed_ + kGamma * (key + 1)));
    }

    /// Uniform double in [0, 1).
    double uniform() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    /// Uniform double in [a, b).
    double uniform(double a, double b) { return a + (b - a) * uniform(); }

    /// Uniform integer in [0, n).
    std::uint64_t uniform_index(std::uint64_t n) {
        // Rejection-free modulo would be biased; use Lemire-style rejection.
        if (n == 0) throw std::invalid_argument("uniform_index: n must be > 0");
        std::uint64_t threshold = (~n + 1) % n; // == 2^64 mod n
        for (;;) {
            std::uint64_t x = next_u64();
            if (x >= threshold) return x % n;
        }
    }

    /// Exponential variate with the given rate.
    double exponential(double rate) {
        return -std::log1p(-uniform()) / rate;
    }

    /// Draw from a categorical distribution by inverse CDF. Probabilities
    /// must be nonnegative; they are normalized by their sum.
    int categorical(const std::vector<double>& probs) {
        double total = 0.0;
        for (double p : probs) total += p;
        double u = uniform() * total;
        double acc = 0.0;
        for (std::size_t k = 0; k + 1 < probs.size(); ++k) {
            acc += probs[k];
            if (u < acc) return static_cast<int>(k);
        }
        return static_cast<int>(probs.size()) - 1;
    }

private:
    static constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;
    static constexpr std::uint64_t kInit = 0x243F6A8885A308D3ULL;

    static std::uint64_t mix(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    std::uint64_t seed_;
    std::uint64_t state_;
};

} // namespace ppsbm

#endif
