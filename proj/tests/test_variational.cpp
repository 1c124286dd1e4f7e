#include <doctest.h>

#include <cmath>

#include "ppsbm/rng.hpp"
#include "ppsbm/variational.hpp"

using namespace ppsbm;

namespace {

Matrix random_tau(int n, int Q, Rng& rng) {
    Matrix tau((size_t)n, (size_t)Q);
    for (int i = 0; i < n; ++i) {
        double sum = 0.0;
        for (int q = 0; q < Q; ++q) {
            tau((size_t)i, (size_t)q) = rng.uniform() + 0.05;
            sum += tau((size_t)i, (size_t)q);
        }
        for (int q = 0; q < Q; ++q) tau((size_t)i, (size_t)q) /= sum;
    }
    return tau;
}

// Brute-force oracle: triple loop straight from the definitions, with the
// same undirected symmetrization convention.
struct BruteStats {
    std::vector<double> Y;
    Matrix cell_counts;
};

BruteStats brute_stats(const EventStream& stream, const Matrix& tau, int d_max) {
    int Q = (int)tau.cols();
    PairSet pairs(Q, stream.directed);
    BruteStats out;
    out.Y.assign((size_t)pairs.count(), 0.0);
    out.cell_counts = Matrix((size_t)pairs.count(), (size_t)(1 << d_max));
    for (int i = 0; i < stream.n; ++i) {
        for (int j = 0; j < stream.n; ++j) {
            if (i == j) continue;
            if (!stream.directed && j < i) continue;
            for (int q = 0; q < Q; ++q)
                for (int l = 0; l < Q; ++l) {
                    double w = tau((size_t)i, (size_t)q) * tau((size_t)j, (size_t)l);
                    out.Y[(size_t)pairs.index(q, l)] += stream.directed || q <= l ? w : 0.0;
                    if (!stream.directed && q > l) out.Y[(size_t)pairs.index(l, q)] += w;
                }
        }
    }
    int cells = 1 << d_max;
    for (const Event& e : stream.events) {
        int cell = std::min((int)(e.t / stream.T * cells), cells - 1);
        for (int q = 0; q < Q; ++q)
            for (int l = 0; l < Q; ++l) {
                double w = tau((size_t)e.i, (size_t)q) * tau((size_t)e.j, (size_t)l);
                int p = pairs.index(q, l);
                if (stream.directed || q <= l)
                    out.cell_counts((size_t)p, (size_t)cell) += w;
                else
                    out.cell_counts((size_t)pairs.index(l, q), (size_t)cell) += w;
            }
    }
    return out;
}

EventStream toy_stream(bool directed) {
    EventStream s;
    s.n = 4;
    s.T = 1.0;
    s.directed = directed;
    s.events = {{0.1, 0, 1}, {0.3, 1, 2}, {0.55, 0, 3}, {0.7, 2, 3}, {0.9, 1, 3}};
    if (directed) s.events[1] = {0.3, 2, 1};
    return s;
}

} // namespace

TEST_CASE("update_pi examples") {
    VariationalState s = VariationalState::from_labels({0, 0, 1}, 2);
    std::vector<double> pi = update_pi(s);
    CHECK(pi[0] == doctest::Approx(2.0 / 3.0));
    CHECK(pi[1] == doctest::Approx(1.0 / 3.0));

    // Uniform tau gives uniform pi.
    VariationalState u;
    u.tau = Matrix(5, 4, 0.25);
    for (double p : update_pi(u)) CHECK(p == doctest::Approx(0.25));

    // Random tau: column means.
    Rng rng(12);
    VariationalState r;
    r.tau = random_tau(7, 3, rng);
    std::vector<double> got = update_pi(r);
    for (int q = 0; q < 3; ++q) {
        double mean = 0.0;
        for (int i = 0; i < 7; ++i) mean += r.tau((size_t)i, (size_t)q);
        CHECK(got[(size_t)q] == doctest::Approx(mean / 7.0).epsilon(1e-12));
    }
}

TEST_CASE("compute_stats with one-hot tau reproduces hard counts") {
    EventStream s = toy_stream(true);
    std::vector<int> labels = {0, 1, 0, 1};
    VariationalState state = VariationalState::from_labels(labels, 2);
    SufficientStats stats = compute_stats(s, state, 2);

    // Hard-label oracle.
    PairSet pairs(2, true);
    std::vector<double> Y((size_t)pairs.count(), 0.0);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            if (i != j) Y[(size_t)pairs.index(labels[(size_t)i], labels[(size_t)j])] += 1.0;
    for (size_t p = 0; p < Y.size(); ++p) CHECK(stats.Y[p] == doctest::Approx(Y[p]).epsilon(1e-12));

    for (const Event& e : s.events) {
        // Each event's weight is 1 on its label pair and 0 elsewhere.
        int p = pairs.index(labels[(size_t)e.i], labels[(size_t)e.j]);
        double total = 0.0;
        for (int cell = 0; cell < 4; ++cell) total += stats.cell_counts((size_t)p, (size_t)cell);
        CHECK(total >= 1.0);
    }
}

TEST_CASE("compute_stats Q=1 totals") {
    EventStream s = toy_stream(false);
    VariationalState state = VariationalState::from_labels({0, 0, 0, 0}, 1);
    SufficientStats stats = compute_stats(s, state, 3);
    CHECK(stats.Y[0] == doctest::Approx(6.0)); // 4*3/2 dyads
    double total = 0.0;
    for (int cell = 0; cell < 8; ++cell) total += stats.cell_counts(0, (size_t)cell);
    CHECK(total == doctest::Approx(5.0));
}

TEST_CASE("compute_stats matches the brute-force loop") {
    for (bool directed : {true, false}) {
        EventStream s = toy_stream(directed);
        Rng rng(directed ? 5 : 6);
        VariationalState state;
        state.tau = random_tau(4, 3, rng);
        SufficientStats stats = compute_stats(s, state, 2);
        BruteStats oracle = brute_stats(s, state.tau, 2);
        for (size_t p = 0; p < oracle.Y.size(); ++p) {
            CHECK(stats.Y[p] == doctest::Approx(oracle.Y[p]).epsilon(1e-10));
            for (int cell = 0; cell < 4; ++cell)
                CHECK(stats.cell_counts(p, (size_t)cell) ==
                      doctest::Approx(oracle.cell_counts(p, (size_t)cell)).epsilon(1e-10));
        }
        // Mass invariants.
        CHECK(stats.total_mass() == doctest::Approx((double)s.dyad_count()).epsilon(1e-6));
        double weight_total = 0.0;
        for (size_t m = 0; m < (size_t)s.event_count(); ++m)
            for (size_t p = 0; p < oracle.Y.size(); ++p) weight_total += stats.event_weights(m, p);
        CHECK(weight_total == doctest::Approx((double)s.event_count()).epsilon(1e-6));
    }
}

TEST_CASE("VariationalState validation and MAP labels") {
    VariationalState bad;
    bad.tau = Matrix(2, 2, 0.4);
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

    VariationalState s;
    s.tau = Matrix(3, 2);
    s.tau(0, 0) = 0.7; s.tau(0, 1) = 0.3;
    s.tau(1, 0) = 0.5; s.tau(1, 1) = 0.5; // tie -> lowest index
    s.tau(2, 0) = 0.1; s.tau(2, 1) = 0.9;
    CHECK(s.map_labels() == std::vector<int>{0, 0, 1});
}
