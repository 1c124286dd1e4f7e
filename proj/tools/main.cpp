// Command-line front end: simulate PPSBM data, fit it, select the number of
// groups, evaluate against a known truth, compute bootstrap bands, and run
// the desk-scale experiment suite. Every command writes its artifacts plus a
// manifest.json into --out; `rerun <manifest>` replays a manifest into a new
// directory, reproducing the artifacts bit for bit.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ppsbm/metrics.hpp"
#include "ppsbm/selection.hpp"
#include "ppsbm/serialize.hpp"
#include "ppsbm/simulate.hpp"
#include "ppsbm/sparse.hpp"
#include "ppsbm/vem.hpp"

namespace fs = std::filesystem;
using namespace ppsbm;

namespace {

constexpr const char* kVersion = "ppsbm-cli 1.0.0";

struct ManifestWriter {
    std::string subcommand;
    json config = json::object();
    std::vector<std::string> inputs;
    std::vector<std::string> outputs;
    std::vector<std::string> argv;
    std::chrono::steady_clock::time_point started = std::chrono::steady_clock::now();

    void write(const fs::path& out_dir) const {
        json j;
        j["subcommand"] = subcommand;
        j["config"] = config;
        j["inputs"] = inputs;
        j["outputs"] = outputs;
        j["argv"] = argv;
        j["version"] = kVersion;
        j["duration_seconds"] =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
        write_json_file((out_dir / "manifest.json").string(), j);
    }
};

fs::path ensure_out_dir(const std::string& out) {
    fs::path dir(out);
    fs::create_directories(dir);
    return dir;
}

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot write '" + path.string() + "'");
    f << text;
}

EventStream load_events(const std::string& path, bool directed_flag, bool directed_set,
                        std::optional<int> n, std::optional<double> T) {
    ParseOptions opt;
    opt.n = n;
    opt.T = T;
    opt.directed = directed_flag;

    // Optional metadata sidecar next to the CSV; explicit flags win.
    fs::path meta = fs::path(path).concat(".meta.json");
    if (fs::exists(meta)) {
        json j = read_json_file(meta.string());
        if (!directed_set && j.contains("directed")) opt.directed = j["directed"].get<bool>();
        if (!opt.n && j.contains("n")) opt.n = j["n"].get<int>();
        if (!opt.T && j.contains("T")) opt.T = j["T"].get<double>();
    }
    return read_event_csv(path, opt);
}

void write_events_with_meta(const fs::path& dir, const EventStream& stream,
                            ManifestWriter& manifest) {
    fs::path csv = dir / "events.csv";
    write_event_csv_file(csv.string(), stream);
    json meta = {{"n", stream.n}, {"T", stream.T}, {"directed", stream.directed}};
    write_json_file((dir / "events.csv.meta.json").string(), meta);
    manifest.outputs.push_back("events.csv");
    manifest.outputs.push_back("events.csv.meta.json");
}

json config_to_json(const FitConfig& cfg) {
    return {{"d_max", cfg.d_max},
            {"bandwidth", cfg.bandwidth},
            {"epsilon", cfg.epsilon},
            {"nb_iter", cfg.nb_iter},
            {"fix_iter", cfg.fix_iter},
            {"fix_eps", cfg.fix_eps},
            {"n_perturb", cfg.n_perturb},
            {"perc_perturb", cfg.perc_perturb},
            {"l_part", cfg.l_part},
            {"intensity_floor", cfg.intensity_floor}};
}

// ---------------------------------------------------------------- simulate

int cmd_simulate(const std::string& mode, double phi, int n, std::uint64_t seed,
                 const std::string& model_path, const std::string& beta_csv,
                 const std::string& out, ManifestWriter& manifest) {
    fs::path dir = ensure_out_dir(out);
    Rng rng(seed);

    IntensityModel model;
    std::vector<int> labels;
    EventStream stream;

    if (mode == "scenario1") {
        ScenarioData data = scenario1(phi, n, rng);
        model = std::move(data.model);
        labels = std::move(data.labels);
        stream = std::move(data.stream);
    } else if (mode == "scenario2") {
        ScenarioData data = scenario2(n, rng);
        model = std::move(data.model);
        labels = std::move(data.labels);
        stream = std::move(data.stream);
    } else if (mode == "model") {
        model = model_from_json(read_json_file(model_path));
        manifest.inputs.push_back(model_path);
        if (!beta_csv.empty()) {
            std::vector<double> beta;
            std::stringstream ss(beta_csv);
            std::string tok;
            while (std::getline(ss, tok, ',')) beta.push_back(std::stod(tok));
            if (beta.size() == 1) beta.assign((size_t)model.pairs().count(), beta[0]);
            Simulation sim = simulate_sparse(model, beta, n, rng);
            labels = std::move(sim.labels);
            stream = std::move(sim.stream);
        } else {
            Simulation sim = simulate_ppsbm(model, n, rng);
            labels = std::move(sim.labels);
            stream = std::move(sim.stream);
        }
    } else {
        throw std::invalid_argument("simulate mode must be scenario1, scenario2 or model");
    }

    write_events_with_meta(dir, stream, manifest);
    write_json_file((dir / "truth.json").string(), truth_to_json(labels, model, seed));
    manifest.outputs.push_back("truth.json");
    manifest.config = {{"mode", mode}, {"phi", phi}, {"n", n}, {"seed", seed}};
    std::cout << "simulate: " << stream.event_count() << " events over " << n << " nodes -> "
              << dir.string() << "\n";
    return 0;
}

// --------------------------------------------------------------------- fit

int cmd_fit(const std::string& events_path, int Q, const std::string& estimator_name,
            const FitConfig& cfg, std::uint64_t seed, bool directed, bool directed_set,
            bool sparse, std::optional<int> n, std::optional<double> T, const std::string& out,
            ManifestWriter& manifest) {
    fs::path dir = ensure_out_dir(out);
    EventStream stream = load_events(events_path, directed, directed_set, n, T);
    manifest.inputs.push_back(events_path);

    Estimator estimator = estimator_name == "kernel" ? Estimator::kernel : Estimator::histogram;
    Rng rng(seed);
    FitResult fit = sparse ? run_vem_sparse(stream, Q, cfg, estimator, rng)
                           : run_vem(stream, Q, cfg, estimator, rng);

    write_json_file((dir / "fit.json").string(), fit_to_json(fit));
    manifest.outputs.push_back("fit.json");
    manifest.config = config_to_json(cfg);
    manifest.config["Q"] = Q;
    manifest.config["estimator"] = estimator_name;
    manifest.config["sparse"] = sparse;
    manifest.config["seed"] = seed;
    std::cout << "fit: Q=" << Q << " J=" << format_double(fit.J)
              << (fit.converged ? " converged" : " iteration-capped") << " -> " << dir.string()
              << "\n";
    return 0;
}

// ---------------------------------------------------------------- select-q

int cmd_select_q(const std::string& events_path, int Q_max, const FitConfig& cfg,
                 std::uint64_t seed, bool directed, bool directed_set, bool sparse,
                 std::optional<int> n, std::optional<double> T, unsigned jobs,
                 const std::string& out, ManifestWriter& manifest) {
    fs::path dir = ensure_out_dir(out);
    EventStream stream = load_events(events_path, directed, directed_set, n, T);
    manifest.inputs.push_back(events_path);

    Rng rng(seed);
    SelectionReport report = select_Q(stream, Q_max, cfg, rng, sparse, jobs);
    write_json_file((dir / "selection.json").string(), selection_to_json(report));
    write_json_file((dir / "fit.json").string(), fit_to_json(report.chosen_fit()));
    manifest.outputs.push_back("selection.json");
    manifest.outputs.push_back("fit.json");
    manifest.config = config_to_json(cfg);
    manifest.config["Q_max"] = Q_max;
    manifest.config["sparse"] = sparse;
    manifest.config["seed"] = seed;
    std::cout << "select-q: chose Q=" << report.chosen_Q << " -> " << dir.string() << "\n";
    return 0;
}

// ----------------------------------------------------------------- metrics

int cmd_metrics(const std::string& fit_path, const std::string& truth_path, int grid_points,
                const std::string& out, ManifestWriter& manifest) {
    fs::path dir = ensure_out_dir(out);
    FitResult fit = fit_from_json(read_json_file(fit_path));
    json truth = read_json_file(truth_path);
    manifest.inputs = {fit_path, truth_path};

    IntensityModel model = model_from_json(truth.at("model"));
    std::vector<int> true_labels;
    for (int v : truth.at("labels").get<std::vector<int>>()) true_labels.push_back(v - 1);

    json result;
    result["ari"] = adjusted_rand_index(fit.map_labels(), true_labels);

    if (fit.Q == model.Q && fit.directed == model.directed) {
        std::vector<IntensityFn> estimates;
        for (const PairEstimate& pe : fit.alpha) estimates.push_back(pe.fn);
        RiskReport risks =
            intensity_risks(estimates, model.alpha, model.pairs(), model.T, grid_points);
        json rows = json::array();
        PairSet pairs = model.pairs();
        for (int p = 0; p < pairs.count(); ++p) {
            auto [q, l] = pairs.pair(p);
            rows.push_back({{"q", q + 1}, {"l", l + 1}, {"risk", risks.risk[(size_t)p]}});
        }
        json perm = json::array();
        for (int g : risks.permutation) perm.push_back(g + 1);
        result["risk"] = std::move(rows);
        result["alignment"] = std::move(perm);
        result["total_risk"] = risks.total;
    }

    write_json_file((dir / "metrics.json").string(), result);
    manifest.outputs.push_back("metrics.json");
    manifest.config = {{"grid_points", grid_points}};
    std::cout << "metrics: ARI=" << format_double(result["ari"].get<double>()) << " -> "
              << dir.string() << "\n";
    return 0;
}

// --------------------------------------------------------------- bootstrap

int cmd_bootstrap(const std::string& fit_path, int B, double level, const FitConfig& cfg,
                  std::uint64_t seed, int grid_points, unsigned jobs, const std::string& out,
                  ManifestWriter& manifest) {
    fs::path dir = ensure_out_dir(out);
    FitResult fit = fit_from_json(read_json_file(fit_path));
    manifest.inputs.push_back(fit_path);

    Rng rng(seed);
    BootstrapBands bands = bootstrap_ci(fit, B, level, cfg, rng, grid_points, jobs);
    PairSet pairs = fit.pairs();
    write_json_file((dir / "bands.json").string(), bands_to_json(bands, pairs));
    manifest.outputs.push_back("bands.json");
    for (int p = 0; p < pairs.count(); ++p) {
        auto [q, l] = pairs.pair(p);
        std::string name = "bands_" + std::to_string(q + 1) + "_" + std::to_string(l + 1) + ".csv";
        write_text(dir / name, bands_to_csv(bands, (size_t)p));
        manifest.outputs.push_back(name);
    }
    manifest.config = config_to_json(cfg);
    manifest.config["B"] = B;
    manifest.config["level"] = level;
    manifest.config["seed"] = seed;
    manifest.config["grid_points"] = grid_points;
    std::cout << "bootstrap: " << bands.replicates << " replicates, "
              << bands.empty_group_replicates << " with empty groups -> " << dir.string() << "\n";
    return 0;
}

// --------------------------------------------------------------- reproduce

int cmd_reproduce(const std::string& which, int replicates, std::uint64_t seed, unsigned jobs,
                  const std::string& out, ManifestWriter& manifest) {
    fs::path dir = ensure_out_dir(out);
    manifest.config = {{"which", which}, {"replicates", replicates}, {"seed", seed}};
    FitConfig cfg;

    if (which == "scenario1" || which == "all") {
        // Median ARI per shift for both estimators at n = 30.
        std::string csv = "phi,estimator,median_ari,replicates\n";
        for (double phi : {0.01, 0.05, 0.1, 0.2, 0.5}) {
            for (Estimator est : {Estimator::histogram, Estimator::kernel}) {
                std::vector<double> aris((size_t)replicates);
                parallel_for((size_t)replicates, jobs, [&](size_t rep) {
                    Rng rng = Rng(seed).child(rep);
                    ScenarioData data = scenario1(phi, 30, rng);
                    Rng fit_rng = rng.child(1u << 20);
                    FitResult fit = run_vem(data.stream, 2, cfg, est, fit_rng);
                    aris[rep] = adjusted_rand_index(fit.map_labels(), data.labels);
                });
                double median = empirical_quantile(aris, 0.5);
                csv += format_double(phi);
                csv += est == Estimator::histogram ? ",histogram," : ",kernel,";
                csv += format_double(median);
                csv += ',' + std::to_string(replicates) + '\n';
            }
        }
        write_text(dir / "scenario1_ari.csv", csv);
        manifest.outputs.push_back("scenario1_ari.csv");
        std::cout << "reproduce scenario1 -> " << (dir / "scenario1_ari.csv").string() << "\n";
    }

    if (which == "scenario2" || which == "all") {
        // ICL selection frequencies and mean fitted risks at n = 50.
        std::vector<int> chosen((size_t)replicates);
        IntensityModel truth = scenario2_model();
        PairSet pairs = truth.pairs();
        std::vector<std::vector<double>> risks((size_t)replicates);
        parallel_for((size_t)replicates, jobs, [&](size_t rep) {
            Rng rng = Rng(seed).child(1000000 + rep);
            ScenarioData data = scenario2(50, rng);
            Rng sel_rng = rng.child(1u << 20);
            SelectionReport report = select_Q(data.stream, 6, cfg, sel_rng);
            chosen[rep] = report.chosen_Q;

            Rng fit_rng = rng.child(1u << 21);
            FitResult fit = run_vem(data.stream, 3, cfg, Estimator::histogram, fit_rng);
            std::vector<IntensityFn> estimates;
            for (const PairEstimate& pe : fit.alpha) estimates.push_back(pe.fn);
            risks[rep] = intensity_risks(estimates, truth.alpha, pairs, 1.0, 1024).risk;
        });
        std::string csv = "Q,frequency\n";
        for (int Q = 1; Q <= 6; ++Q) {
            int count = 0;
            for (int c : chosen) count += c == Q;
            csv += std::to_string(Q) + ',' + format_double((double)count / replicates) + '\n';
        }
        write_text(dir / "scenario2_selection.csv", csv);
        std::string risk_csv = "q,l,mean_risk\n";
        for (int p = 0; p < pairs.count(); ++p) {
            auto [q, l] = pairs.pair(p);
            double mean = 0.0;
            for (const auto& r : risks) mean += r[(size_t)p];
            mean /= replicates;
            risk_csv += std::to_string(q + 1) + ',' + std::to_string(l + 1) + ',' +
                        format_double(mean) + '\n';
        }
        write_text(dir / "scenario2_risk.csv", risk_csv);
        manifest.outputs.push_back("scenario2_selection.csv");
        manifest.outputs.push_back("scenario2_risk.csv");
        std::cout << "reproduce scenario2 -> " << (dir / "scenario2_selection.csv").string()
                  << "\n";
    }
    return 0;
}

int dispatch(std::vector<std::string> args);

// ------------------------------------------------------------------- rerun

int cmd_rerun(const std::string& manifest_path, const std::string& out) {
    json manifest = read_json_file(manifest_path);
    std::vector<std::string> argv = manifest.at("argv").get<std::vector<std::string>>();
    bool replaced = false;
    for (std::size_t k = 0; k + 1 < argv.size(); ++k) {
        if (argv[k] == "--out" || argv[k] == "-o") {
            argv[k + 1] = out;
            replaced = true;
        }
    }
    if (!replaced) {
        argv.push_back("--out");
        argv.push_back(out);
    }
    return dispatch(std::move(argv));
}

int dispatch(std::vector<std::string> args) {
    CLI::App app{"Poisson process stochastic block model: simulate, fit, select, evaluate"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kVersion);

    ManifestWriter manifest;
    manifest.argv = args;

    int Q = 2, Q_max = 6;
    std::uint64_t seed = 1;
    bool sparse = false;
    std::string events_path, estimator_name = "histogram", out = "ppsbm-out";
    int n_opt = 0;
    double T_opt = 0.0;
    unsigned jobs = default_jobs();
    FitConfig cfg;

    std::string config_path;
    std::vector<std::pair<std::string, CLI::Option*>> cfg_options;
    auto add_fit_flags = [&](CLI::App* sub) {
        // Accumulated across subcommands; only the parsed one has counts.
        cfg_options.push_back({"d_max", sub->add_option("--dmax", cfg.d_max, "histogram depth cap (2^dmax finest cells)")});
        cfg_options.push_back({"bandwidth", sub->add_option("--bandwidth", cfg.bandwidth, "kernel bandwidth (0 = rule of thumb)")});
        cfg_options.push_back({"epsilon", sub->add_option("--epsilon", cfg.epsilon, "relative-J stopping tolerance")});
        cfg_options.push_back({"nb_iter", sub->add_option("--nb-iter", cfg.nb_iter, "max VEM iterations")});
        cfg_options.push_back({"fix_iter", sub->add_option("--fix-iter", cfg.fix_iter, "max fixed-point sweeps")});
        cfg_options.push_back({"n_perturb", sub->add_option("--n-perturb", cfg.n_perturb, "perturbed copies per k-means start")});
        cfg_options.push_back({"perc_perturb", sub->add_option("--perc-perturb", cfg.perc_perturb, "fraction of nodes reshuffled")});
        cfg_options.push_back({"l_part", sub->add_option("--l-part", cfg.l_part, "aggregation depths 0..l_part for k-means")});
        sub->add_option("--config", config_path, "JSON config file (flags take precedence)");
        sub->add_option("--seed", seed, "random seed");
        sub->add_option("--out,-o", out, "output directory");
    };

    // Precedence: explicit flags > config file > built-in defaults.
    auto merge_config = [&]() {
        if (config_path.empty()) return;
        json file = read_json_file(config_path);
        auto load = [&](const std::string& key, auto& target) {
            if (!file.contains(key)) return;
            for (const auto& [name, option] : cfg_options)
                if (name == key && option->count() > 0) return; // flag wins
            target = file.at(key).get<std::decay_t<decltype(target)>>();
        };
        load("d_max", cfg.d_max);
        load("bandwidth", cfg.bandwidth);
        load("epsilon", cfg.epsilon);
        load("nb_iter", cfg.nb_iter);
        load("fix_iter", cfg.fix_iter);
        load("n_perturb", cfg.n_perturb);
        load("perc_perturb", cfg.perc_perturb);
        load("l_part", cfg.l_part);
        if (file.contains("fix_eps")) cfg.fix_eps = file.at("fix_eps").get<double>();
        if (file.contains("intensity_floor"))
            cfg.intensity_floor = file.at("intensity_floor").get<double>();
    };

    auto* sim = app.add_subcommand("simulate", "draw a synthetic event stream");
    std::string sim_mode, model_path, beta_csv;
    double phi = 0.5;
    int sim_n = 30;
    sim->add_option("mode", sim_mode, "scenario1 | scenario2 | model")->required();
    sim->add_option("--phi", phi, "scenario1 shift in {0.01,0.05,0.1,0.2,0.5}");
    sim->add_option("--n", sim_n, "number of nodes");
    sim->add_option("--model", model_path, "model JSON (mode=model)");
    sim->add_option("--beta", beta_csv, "sparse activation probabilities (csv or one value)");
    sim->add_option("--seed", seed, "random seed");
    sim->add_option("--out,-o", out, "output directory");

    auto* fit = app.add_subcommand("fit", "fit the model to an event CSV");
    bool directed = false, undirected = false;
    fit->add_option("events", events_path, "event CSV")->required();
    fit->add_option("--q", Q, "number of latent groups");
    fit->add_option("--estimator", estimator_name, "histogram | kernel")
        ->check(CLI::IsMember({"histogram", "kernel"}));
    fit->add_flag("--sparse", sparse, "fit the sparse variant");
    fit->add_flag("--directed", directed, "treat events as directed (default: sidecar, else undirected)");
    fit->add_flag("--undirected", undirected, "treat events as undirected");
    fit->add_option("--n", n_opt, "override node count");
    fit->add_option("--T", T_opt, "override horizon");
    add_fit_flags(fit);

    auto* sel = app.add_subcommand("select-q", "choose Q by the ICL criterion");
    sel->add_option("events", events_path, "event CSV")->required();
    sel->add_option("--q-max", Q_max, "largest Q to try");
    sel->add_flag("--sparse", sparse, "use the sparse variant");
    sel->add_flag("--directed", directed, "treat events as directed (default: sidecar, else undirected)");
    sel->add_flag("--undirected", undirected, "treat events as undirected");
    sel->add_option("--n", n_opt, "override node count");
    sel->add_option("--T", T_opt, "override horizon");
    sel->add_option("--jobs", jobs, "worker threads");
    add_fit_flags(sel);

    auto* met = app.add_subcommand("metrics", "compare a fit against a truth file");
    std::string fit_path, truth_path;
    int grid_points = 2048;
    met->add_option("--fit", fit_path, "fit JSON")->required();
    met->add_option("--truth", truth_path, "truth JSON")->required();
    met->add_option("--grid", grid_points, "risk quadrature grid");
    met->add_option("--out,-o", out, "output directory");

    auto* boot = app.add_subcommand("bootstrap", "parametric bootstrap confidence bands");
    int B = 50;
    double level = 0.9;
    int band_grid = 201;
    boot->add_option("--fit", fit_path, "fit JSON")->required();
    boot->add_option("-B,--replicates", B, "bootstrap replicates");
    boot->add_option("--level", level, "confidence level in (0,1)");
    boot->add_option("--grid", band_grid, "band grid points");
    boot->add_option("--jobs", jobs, "worker threads");
    add_fit_flags(boot);

    auto* rep = app.add_subcommand("reproduce", "run the synthetic experiment suite");
    std::string which = "all";
    int replicates = 50;
    rep->add_option("which", which, "scenario1 | scenario2 | all")
        ->check(CLI::IsMember({"scenario1", "scenario2", "all"}));
    rep->add_option("--replicates", replicates, "replicates per setting");
    rep->add_option("--jobs", jobs, "worker threads");
    rep->add_option("--seed", seed, "random seed");
    rep->add_option("--out,-o", out, "output directory");

    auto* rer = app.add_subcommand("rerun", "replay a manifest into a new directory");
    std::string manifest_path;
    rer->add_option("manifest", manifest_path, "manifest.json from a previous run")->required();
    rer->add_option("--out,-o", out, "output directory")->required();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help / --version
        std::cerr << "{\"error\":\"usage\",\"detail\":" << json(std::string(e.what())).dump()
                  << "}\n";
        return 2;
    }

    std::optional<int> n_override = n_opt > 0 ? std::optional<int>(n_opt) : std::nullopt;
    std::optional<double> T_override = T_opt > 0.0 ? std::optional<double>(T_opt) : std::nullopt;
    bool directed_set = directed || undirected;
    bool directed_mode = directed && !undirected;

    try {
        merge_config();
        int rc = 1;
        if (sim->parsed()) {
            manifest.subcommand = "simulate";
            rc = cmd_simulate(sim_mode, phi, sim_n, seed, model_path, beta_csv, out, manifest);
        } else if (fit->parsed()) {
            manifest.subcommand = "fit";
            rc = cmd_fit(events_path, Q, estimator_name, cfg, seed, directed_mode, directed_set,
                         sparse, n_override, T_override, out, manifest);
        } else if (sel->parsed()) {
            manifest.subcommand = "select-q";
            rc = cmd_select_q(events_path, Q_max, cfg, seed, directed_mode, directed_set, sparse,
                              n_override, T_override, jobs, out, manifest);
        } else if (met->parsed()) {
            manifest.subcommand = "metrics";
            rc = cmd_metrics(fit_path, truth_path, grid_points, out, manifest);
        } else if (boot->parsed()) {
            manifest.subcommand = "bootstrap";
            rc = cmd_bootstrap(fit_path, B, level, cfg, seed, band_grid, jobs, out, manifest);
        } else if (rep->parsed()) {
            manifest.subcommand = "reproduce";
            rc = cmd_reproduce(which, replicates, seed, jobs, out, manifest);
        } else if (rer->parsed()) {
            return cmd_rerun(manifest_path, out);
        }
        if (rc == 0) manifest.write(ensure_out_dir(out));
        return rc;
    } catch (const std::exception& e) {
        std::cerr << "{\"error\":\"runtime\",\"detail\":" << json(std::string(e.what())).dump()
                  << "}\n";
        return 1;
    }
}

} // namespace

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return dispatch(std::move(args));
}
