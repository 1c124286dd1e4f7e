#include "ppsbm/simulate.hpp"

#include <algorithm>
#include <stdexcept>

namespace ppsbm {

namespace {

// Child-stream keys. Labels, per-dyad event processes and per-dyad
// activations draw from disjoint streams so the sparse simulator with
// beta == 1 reproduces the dense one exactly.
constexpr std::uint64_t kLabelStream = 0;
constexpr std::uint64_t kEventStream = 1;
constexpr std::uint64_t kActivationStream = 2;

void append_dyad_events(std::vector<Event>& events, const IntensityFn& fn, double T,
                        int i, int j, Rng& rng) {
    for (double t : sample_inhomogeneous_poisson(fn, T, rng)) events.push_back({t, i, j});
}

void sort_events(std::vector<Event>& events) {
    std::sort(events.begin(), events.end(), [](const Event& a, const Event& b) {
        if (a.t != b.t) return a.t < b.t;
        if (a.i != b.i) return a.i < b.i;
        return a.j < b.j;
    });
}

} // namespace

std::vector<int> sample_memberships(const std::vector<double>& pi, int n, Rng& rng) {
    if (pi.empty()) throw std::invalid_argument("sample_memberships: empty proportions");
    std::vector<int> labels(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) labels[static_cast<std::size_t>(i)] = rng.categorical(pi);
    return labels;
}

std::vector<double> sample_inhomogeneous_poisson(const IntensityFn& fn, double T, Rng& rng) {
    check_nonnegative(fn);
    double lambda_max = intensity_max(fn, T);
    std::vector<double> times;
    if (lambda_max <= 0.0) return times;
    double t = 0.0;
    for (;;) {
        t += rng.exponential(lambda_max);
        if (t >= T) break;
        if (rng.uniform() * lambda_max <= intensity_at(fn, t)) times.push_back(t);
    }
    return times;
}

Simulation simulate_ppsbm(const IntensityModel& model, int n, Rng& rng) {
    model.validate();
    if (n < 2) throw std::invalid_argument("simulate_ppsbm: n must be >= 2");

    Simulation sim;
    sim.stream.n = n;
    sim.stream.T = model.T;
    sim.stream.directed = model.directed;

    Rng label_rng = rng.child(kLabelStream);
    sim.labels = sample_memberships(model.pi, n, label_rng);

    Rng event_root = rng.child(kEventStream);
    for (int i = 0; i < n; ++i) {
        for (int j = model.directed ? 0 : i + 1; j < n; ++j) {
            if (i == j) continue;
            long long k = sim.stream.dyad_index(i, j);
            Rng dyad_rng = event_root.child(static_cast<std::uint64_t>(k));
            const IntensityFn& fn = model.alpha_at(sim.labels[static_cast<std::size_t>(i)],
                                                   sim.labels[static_cast<std::size_t>(j)]);
            append_dyad_events(sim.stream.events, fn, model.T, i, j, dyad_rng);
        }
    }
    sort_events(sim.stream.events);
    sim.stream.validate();
    return sim;
}

Simulation simulate_sparse(const IntensityModel& model, const std::vector<double>& beta_pairs,
                           int n, Rng& rng) {
    model.validate();
    if (n < 2) throw std::invalid_argument("simulate_sparse: n must be >= 2");
    if (static_cast<int>(beta_pairs.size()) != model.pairs().count())
        throw std::invalid_argument("simulate_sparse: beta grid size mismatch");
    for (double b : beta_pairs)
        if (b < 0.0 || b > 1.0) throw std::invalid_argument("simulate_sparse: beta outside [0,1]");

    Simulation sim;
    sim.stream.n = n;
    sim.stream.T = model.T;
    sim.stream.directed = model.directed;

    Rng label_rng = rng.child(kLabelStream);
    sim.labels = sample_memberships(model.pi, n, label_rng);

    Rng event_root = rng.child(kEventStream);
    Rng activation_root = rng.child(kActivationStream);
    sim.dyad_active.assign(static_cast<std::size_t>(sim.stream.dyad_count()), 0);

    PairSet pairs = model.pairs();
    for (int i = 0; i < n; ++i) {
        for (int j = model.directed ? 0 : i + 1; j < n; ++j) {
            if (i == j) continue;
            long long k = sim.stream.dyad_index(i, j);
            int q = sim.labels[static_cast<std::size_t>(i)];
            int l = sim.labels[static_cast<std::size_t>(j)];
            double beta = beta_pairs[static_cast<std::size_t>(pairs.index(q, l))];
            Rng act_rng = activation_root.child(static_cast<std::uint64_t>(k));
            bool active = beta >= 1.0 || act_rng.uniform() < beta;
            if (!active) continue;
            sim.dyad_active[static_cast<std::size_t>(k)] = 1;
            Rng dyad_rng = event_root.child(static_cast<std::uint64_t>(k));
            append_dyad_events(sim.stream.events, model.alpha_at(q, l), model.T, i, j, dyad_rng);
        }
    }
    sort_events(sim.stream.events);
    sim.stream.validate();
    return sim;
}

IntensityModel scenario1_model(double phi) {
    IntensityModel model;
    model.Q = 2;
    model.pi = {0.5, 0.5};
    model.T = 1.0;
    model.directed = false;
    model.alpha.resize(3);
    PairSet pairs = model.pairs();
    IntensityFn in = SinusoidIntensity{10.0, 0.0, 1.0};
    IntensityFn out = SinusoidIntensity{10.0, phi, 1.0};
    model.alpha[static_cast<std::size_t>(pairs.index(0, 0))] = in;
    model.alpha[static_cast<std::size_t>(pairs.index(1, 1))] = in;
    model.alpha[static_cast<std::size_t>(pairs.index(0, 1))] = out;
    return model;
}

IntensityModel scenario2_model() {
    IntensityModel model;
    model.Q = 3;
    model.pi = {1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0};
    model.T = 1.0;
    model.directed = false;
    model.alpha.resize(6);
    PairSet pairs = model.pairs();
    auto set = [&](int q, int l, IntensityFn fn) {
        model.alpha[static_cast<std::size_t>(pairs.index(q, l))] = std::move(fn);
    };
    set(0, 0, PiecewiseConstantIntensity{{4.0, 1.0}, 1.0});
    set(0, 1, SinusoidIntensity{8.0, 0.0, 1.0});
    set(0, 2, ConstantIntensity{3.0});
    set(1, 1, TriangleIntensity{12.0, 0.5, 0.5});
    set(1, 2, PiecewiseConstantIntensity{{2.0, 14.0, 6.0, 10.0}, 1.0});
    set(2, 2, SinusoidIntensity{5.0, 0.75, 1.0}); // 5(1 - cos 2 pi t)
    return model;
}

ScenarioData scenario1(double phi, int n, Rng& rng) {
    ScenarioData data;
    data.model = scenario1_model(phi);
    Simulation sim = simulate_ppsbm(data.model, n, rng);
    data.stream = std::move(sim.stream);
    data.labels = std::move(sim.labels);
    return data;
}

ScenarioData scenario2(int n, Rng& rng) {
    if (n < 3) throw std::invalid_argument("scenario2: n must be >= 3");
    ScenarioData data;
    data.model = scenario2_model();
    Simulation sim = simulate_ppsbm(data.model, n, rng);
    data.stream = std::move(sim.stream);
    data.labels = std::move(sim.labels);
    return data;
}

} // namespace ppsbm
