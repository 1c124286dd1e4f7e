#include <doctest.h>

#include <cmath>

#include "ppsbm/serialize.hpp"
#include "ppsbm/simulate.hpp"
#include "ppsbm/sparse.hpp"

using namespace ppsbm;

TEST_CASE("intensity descriptors round-trip through JSON") {
    std::vector<IntensityFn> fns = {
        ConstantIntensity{3.5},
        SinusoidIntensity{10.0, 0.25, 1.0},
        TriangleIntensity{12.0, 0.5, 0.5},
        PiecewiseConstantIntensity{{2.0, 14.0, 6.0, 10.0}, 1.0},
        KernelIntensity{0.2, 4.0, {0.1, 0.5, 0.9}, {1.0, 0.5, 0.25}},
    };
    for (const IntensityFn& fn : fns) {
        IntensityFn back = intensity_from_json(intensity_to_json(fn));
        for (double t : {0.0, 0.2, 0.5, 0.77, 0.99})
            CHECK(intensity_at(back, t) == intensity_at(fn, t));
    }
}

TEST_CASE("model JSON round-trip preserves evaluation") {
    IntensityModel model = scenario2_model();
    IntensityModel back = model_from_json(model_to_json(model));
    CHECK(back.Q == model.Q);
    CHECK(back.pi == model.pi);
    CHECK(back.directed == model.directed);
    PairSet pairs = model.pairs();
    for (int p = 0; p < pairs.count(); ++p)
        for (double t : {0.1, 0.4, 0.6, 0.9})
            CHECK(intensity_at(back.alpha[(size_t)p], t) ==
                  intensity_at(model.alpha[(size_t)p], t));
}

TEST_CASE("fit JSON round-trip is exact") {
    Rng rng(700);
    ScenarioData data = scenario1(0.5, 10, rng);
    FitConfig cfg;
    Rng fit_rng(701);
    FitResult fit = run_vem(data.stream, 2, cfg, Estimator::histogram, fit_rng);

    FitResult back = fit_from_json(fit_to_json(fit));
    CHECK(back.Q == fit.Q);
    CHECK(back.J == fit.J);
    CHECK(back.pi == fit.pi);
    CHECK(back.state.tau == fit.state.tau);
    CHECK(back.J_trace == fit.J_trace);
    CHECK(back.seed == fit.seed);
    for (size_t p = 0; p < fit.alpha.size(); ++p) {
        CHECK(back.alpha[p].depth == fit.alpha[p].depth);
        CHECK(back.alpha[p].A_T == fit.alpha[p].A_T);
        const auto& a = std::get<PiecewiseConstantIntensity>(fit.alpha[p].fn);
        const auto& b = std::get<PiecewiseConstantIntensity>(back.alpha[p].fn);
        CHECK(a.values == b.values);
    }
}

TEST_CASE("sparse fit JSON carries beta and rho") {
    Rng rng(702);
    ScenarioData data = scenario1(0.5, 8, rng);
    FitConfig cfg;
    Rng fit_rng(703);
    FitResult fit = run_vem_sparse(data.stream, 2, cfg, Estimator::histogram, fit_rng);
    json j = fit_to_json(fit);
    CHECK(j.at("sparse").contains("beta"));
    FitResult back = fit_from_json(j);
    REQUIRE(back.sparse.has_value());
    CHECK(back.sparse->beta == fit.sparse->beta);
    CHECK(back.sparse->rho == fit.sparse->rho);
}

TEST_CASE("format_double round-trips") {
    for (double v : {0.1, 1.0 / 3.0, 12345.678901234567, 1e-300, 0.0}) {
        CHECK(std::stod(format_double(v)) == v);
    }
}
