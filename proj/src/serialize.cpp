#include "ppsbm/serialize.hpp"

#include <charconv>
#include <fstream>
#include <stdexcept>

namespace ppsbm {

json intensity_to_json(const IntensityFn& fn) {
    return std::visit(
        [](const auto& f) -> json {
            using T = std::decay_t<decltype(f)>;
            if constexpr (std::is_same_v<T, ConstantIntensity>) {
                return {{"type", "constant"}, {"level", f.level}};
            } else if constexpr (std::is_same_v<T, SinusoidIntensity>) {
                return {{"type", "sinusoid"},
                        {"amplitude", f.amplitude},
                        {"shift", f.shift},
                        {"period", f.period}};
            } else if constexpr (std::is_same_v<T, TriangleIntensity>) {
                return {{"type", "triangle"},
                        {"peak", f.peak},
                        {"center", f.center},
                        {"halfwidth", f.halfwidth}};
            } else if constexpr (std::is_same_v<T, PiecewiseConstantIntensity>) {
                return {{"type", "piecewise"}, {"values", f.values}, {"T", f.T}};
            } else {
                return {{"type", "kernel"},
                        {"bandwidth", f.bandwidth},
                        {"normalizer", f.normalizer},
                        {"times", f.times},
                        {"weights", f.weights}};
            }
        },
        fn);
}

IntensityFn intensity_from_json(const json& j) {
    std::string type = j.at("type").get<std::string>();
    if (type == "constant") return ConstantIntensity{j.at("level").get<double>()};
    if (type == "sinusoid")
        return SinusoidIntensity{j.at("amplitude").get<double>(), j.at("shift").get<double>(),
                                 j.at("period").get<double>()};
    if (type == "triangle")
        return TriangleIntensity{j.at("peak").get<double>(), j.at("center").get<double>(),
                                 j.at("halfwidth").get<double>()};
    if (type == "piecewise")
        return PiecewiseConstantIntensity{j.at("values").get<std::vector<double>>(),
                                          j.at("T").get<double>()};
    if (type == "kernel") {
        KernelIntensity k;
        k.bandwidth = j.at("bandwidth").get<double>();
        k.normalizer = j.at("normalizer").get<double>();
        k.times = j.at("times").get<std::vector<double>>();
        k.weights = j.at("weights").get<std::vector<double>>();
        return k;
    }
    throw std::invalid_argument("unknown intensity type '" + type + "'");
}

json model_to_json(const IntensityModel& model) {
    json grid = json::array();
    PairSet pairs = model.pairs();
    for (int p = 0; p < pairs.count(); ++p) {
        auto [q, l] = pairs.pair(p);
        json entry = intensity_to_json(model.alpha[static_cast<std::size_t>(p)]);
        entry["q"] = q + 1;
        entry["l"] = l + 1;
        grid.push_back(std::move(entry));
    }
    return {{"Q", model.Q},
            {"pi", model.pi},
            {"T", model.T},
            {"directed", model.directed},
            {"alpha", std::move(grid)}};
}

IntensityModel model_from_json(const json& j) {
    IntensityModel model;
    model.Q = j.at("Q").get<int>();
    model.pi = j.at("pi").get<std::vector<double>>();
    model.T = j.at("T").get<double>();
    model.directed = j.at("directed").get<bool>();
    PairSet pairs = model.pairs();
    model.alpha.resize(static_cast<std::size_t>(pairs.count()));
    for (const json& entry : j.at("alpha")) {
        int q = entry.at("q").get<int>() - 1;
        int l = entry.at("l").get<int>() - 1;
        model.alpha[static_cast<std::size_t>(pairs.index(q, l))] = intensity_from_json(entry);
    }
    model.validate();
    return model;
}

json fit_to_json(const FitResult& fit, int kernel_grid_points) {
    json j;
    j["Q"] = fit.Q;
    j["directed"] = fit.directed;
    j["T"] = fit.T;
    j["estimator"] = fit.estimator == Estimator::histogram ? "histogram" : "kernel";
    j["pi"] = fit.pi;
    json tau = json::array();
    for (std::size_t i = 0; i < fit.state.tau.rows(); ++i) {
        json row = json::array();
        for (std::size_t q = 0; q < fit.state.tau.cols(); ++q) row.push_back(fit.state.tau(i, q));
        tau.push_back(std::move(row));
    }
    j["tau"] = std::move(tau);
    j["J"] = fit.J;
    j["J_trace"] = fit.J_trace;
    j["converged"] = fit.converged;
    j["fixed_point_converged"] = fit.fixed_point_converged;
    j["iterations"] = fit.iterations;
    j["best_init"] = fit.best_init;
    j["seed"] = fit.seed;
    j["max_mass_error"] = fit.max_mass_error;

    PairSet pairs = fit.pairs();
    json alpha = json::array();
    for (int p = 0; p < pairs.count(); ++p) {
        auto [q, l] = pairs.pair(p);
        const PairEstimate& pe = fit.alpha[static_cast<std::size_t>(p)];
        json entry = intensity_to_json(pe.fn);
        entry["q"] = q + 1;
        entry["l"] = l + 1;
        entry["A_T"] = pe.A_T;
        entry["T"] = fit.T;
        if (fit.estimator == Estimator::histogram) {
            entry["depth"] = pe.depth;
            entry["heights"] = std::get<PiecewiseConstantIntensity>(pe.fn).values;
        } else {
            entry["grid_values"] = evaluate_on_grid(pe.fn, fit.T, kernel_grid_points);
        }
        alpha.push_back(std::move(entry));
    }
    j["alpha"] = std::move(alpha);

    if (fit.sparse) {
        j["sparse"] = {{"beta", fit.sparse->beta}, {"rho_ql", fit.sparse->rho}};
    } else {
        j["sparse"] = nullptr;
    }
    return j;
}

FitResult fit_from_json(const json& j) {
    FitResult fit;
    fit.Q = j.at("Q").get<int>();
    fit.directed = j.at("directed").get<bool>();
    fit.T = j.at("T").get<double>();
    fit.estimator =
        j.at("estimator").get<std::string>() == "histogram" ? Estimator::histogram : Estimator::kernel;
    fit.pi = j.at("pi").get<std::vector<double>>();
    const json& tau = j.at("tau");
    std::size_t n = tau.size();
    fit.state.tau = Matrix(n, static_cast<std::size_t>(fit.Q));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t q = 0; q < static_cast<std::size_t>(fit.Q); ++q)
            fit.state.tau(i, q) = tau[i][q].get<double>();
    fit.J = j.at("J").get<double>();
    fit.J_trace = j.at("J_trace").get<std::vector<double>>();
    fit.converged = j.at("converged").get<bool>();
    fit.fixed_point_converged = j.at("fixed_point_converged").get<bool>();
    fit.iterations = j.at("iterations").get<int>();
    fit.best_init = j.at("best_init").get<int>();
    fit.seed = j.at("seed").get<std::uint64_t>();
    fit.max_mass_error = j.at("max_mass_error").get<double>();

    PairSet pairs = fit.pairs();
    fit.alpha.resize(static_cast<std::size_t>(pairs.count()));
    for (const json& entry : j.at("alpha")) {
        int q = entry.at("q").get<int>() - 1;
        int l = entry.at("l").get<int>() - 1;
        PairEstimate pe;
        pe.fn = intensity_from_json(entry);
        pe.A_T = entry.at("A_T").get<double>();
        pe.depth = entry.value("depth", 0);
        fit.alpha[static_cast<std::size_t>(pairs.index(q, l))] = std::move(pe);
    }
    if (j.contains("sparse") && !j.at("sparse").is_null()) {
        SparseInfo info;
        info.beta = j.at("sparse").at("beta").get<std::vector<double>>();
        info.rho = j.at("sparse").at("rho_ql").get<std::vector<double>>();
        fit.sparse = std::move(info);
    }
    return fit;
}

json selection_to_json(const SelectionReport& report) {
    json rows = json::array();
    for (std::size_t k = 0; k < report.Q_values.size(); ++k) {
        const FitResult& fit = report.fits[k];
        json depths = json::array();
        for (const PairEstimate& pe : fit.alpha) depths.push_back(pe.depth);
        rows.push_back({{"Q", report.Q_values[k]},
                        {"icl", report.icl_values[k]},
                        {"J", fit.J},
                        {"converged", fit.converged},
                        {"d_hat", std::move(depths)}});
    }
    return {{"chosen_Q", report.chosen_Q}, {"per_Q", std::move(rows)}};
}

json bands_to_json(const BootstrapBands& bands, const PairSet& pairs) {
    json per_pair = json::array();
    for (int p = 0; p < pairs.count(); ++p) {
        auto [q, l] = pairs.pair(p);
        per_pair.push_back({{"q", q + 1},
                            {"l", l + 1},
                            {"lower", bands.lower[static_cast<std::size_t>(p)]},
                            {"median", bands.median[static_cast<std::size_t>(p)]},
                            {"upper", bands.upper[static_cast<std::size_t>(p)]}});
    }
    return {{"T", bands.T},
            {"level", bands.level},
            {"grid", bands.grid},
            {"replicates", bands.replicates},
            {"empty_group_replicates", bands.empty_group_replicates},
            {"bands", std::move(per_pair)}};
}

std::string bands_to_csv(const BootstrapBands& bands, std::size_t pair_index) {
    std::string out = "t,lower,upper,median\n";
    for (std::size_t g = 0; g < bands.grid.size(); ++g) {
        out += format_double(bands.grid[g]);
        out += ',';
        out += format_double(bands.lower[pair_index][g]);
        out += ',';
        out += format_double(bands.upper[pair_index][g]);
        out += ',';
        out += format_double(bands.median[pair_index][g]);
        out += '\n';
    }
    return out;
}

json truth_to_json(const std::vector<int>& labels, const IntensityModel& model,
                   std::uint64_t seed) {
    std::vector<int> one_based(labels.size());
    for (std::size_t i = 0; i < labels.size(); ++i) one_based[i] = labels[i] + 1;
    return {{"seed", seed}, {"labels", std::move(one_based)}, {"model", model_to_json(model)}};
}

void write_json_file(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    out << j.dump(2) << '\n';
}

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    return json::parse(in);
}

std::string format_double(double value) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, res.ptr);
}

} // namespace ppsbm
