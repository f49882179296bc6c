#include "dkm/cli.hpp"

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>

#include "CLI11.hpp"
#include "json.hpp"

#include "dkm/discriminative.hpp"
#include "dkm/eval.hpp"
#include "dkm/experiment.hpp"
#include "dkm/io.hpp"
#include "dkm/kmeans.hpp"
#include "dkm/plot.hpp"
#include "dkm/synth.hpp"

namespace dkm {

namespace fs = std::filesystem;

namespace {

struct Common {
    std::size_t k = 8;
    double tol = 1e-9;
    std::size_t max_iter = 1000;
    std::uint64_t seed = 42;
    std::string weight_mode = "datacount";
    std::string init = "random";
    std::string out;

    Config config() const {
        Config c;
        c.k_max = k;
        c.tolerance = tol;
        c.max_iterations = max_iter;
        c.seed = seed;
        c.weight_mode = weight_mode_from_string(weight_mode);
        c.init_mode = init_mode_from_string(init);
        c.validate();
        return c;
    }
};

void add_common(CLI::App* cmd, Common& c, bool with_weight, bool with_init, const std::string& out_help) {
    cmd->add_option("--k", c.k, "Number of clusters (k_max)")->capture_default_str()->check(CLI::PositiveNumber);
    cmd->add_option("--tol", c.tol, "Centre-shift convergence tolerance")->capture_default_str();
    cmd->add_option("--max-iter", c.max_iter, "Iteration cap")->capture_default_str()->check(CLI::PositiveNumber);
    cmd->add_option("--seed", c.seed, "RNG seed")->capture_default_str()->envname("DKMEANS_SEED");
    if (with_weight) {
        cmd->add_option("--weight-mode", c.weight_mode, "Split weight: datacount or fixed:W")->capture_default_str();
    }
    if (with_init) {
        cmd->add_option("--init", c.init, "Seeding: random or plusplus")
            ->capture_default_str()
            ->check(CLI::IsMember({"random", "plusplus"}));
    }
    cmd->add_option("--out", c.out, out_help)->required()->envname("DKMEANS_OUT");
}

void ensure_dir(const fs::path& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) {
        throw Error("cannot create directory '" + dir.string() + "': " + ec.message());
    }
}

std::string iteration_name(std::size_t i) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "iter_%03zu.svg", i);
    return buf;
}

int cmd_kmeans(const std::string& input, const Common& c, const std::string& plot, std::ostream& out) {
    const auto data = load_csv(input);
    const auto config = c.config();
    const auto clustering = run_kmeans(data, config);
    save_model(make_model_file(Algorithm::Classic, config, clustering), c.out);
    if (!plot.empty()) {
        emit_plot(data, clustering.centres(), plot, {"k-means"});
    }
    out << "kmeans: " << clustering.clusters.size() << " clusters, objective " << format_real(clustering.objective)
        << ", " << to_string(clustering.terminated_by) << " after " << clustering.iterations_run
        << " iterations\n";
    return 0;
}

int cmd_dkmeans(const std::string& input, const Common& c, const std::string& warm, const std::string& plot,
                std::ostream& out) {
    const auto data = load_csv(input);
    if (!data.has_labels()) {
        throw Error("dkmeans input needs a 'label' column");
    }
    const auto config = c.config();
    std::optional<std::vector<Point>> warm_centres;
    if (!warm.empty()) {
        warm_centres = load_model(warm).centres;
    }
    const auto result = run_discriminative(data, config, warm_centres);
    save_model(make_model_file(Algorithm::Discriminative, config, result.clustering, result.splits), c.out);
    if (!plot.empty()) {
        emit_plot(data, result.clustering.centres(), plot, {"discriminative k-means"});
    }
    out << "dkmeans: " << result.clustering.clusters.size() << " clusters, " << result.splits.size()
        << " splits, objective " << format_real(result.clustering.objective) << ", "
        << to_string(result.clustering.terminated_by) << " after " << result.clustering.iterations_run
        << " iterations\n";
    return 0;
}

int cmd_synth(const std::uint64_t seed, const std::string& out_dir, const std::string& spec_path, std::ostream& out) {
    const fs::path dir(out_dir);
    ensure_dir(dir);
    if (!spec_path.empty()) {
        auto spec = load_synth_spec(spec_path);
        spec.seed = seed;
        save_csv(generate(spec), dir / "data.csv");
        out << "wrote " << (dir / "data.csv").string() << "\n";
        return 0;
    }
    const auto suite = experiment_suite(seed);
    save_csv(generate(suite.e1), dir / "e1.csv");
    save_csv(generate(suite.e2), dir / "e2.csv");
    save_synth_spec(suite.e1, dir / "e1.json");
    save_synth_spec(suite.e2, dir / "e2.json");
    const auto scenario = interleaved_scenario(seed);
    save_csv(generate(scenario.training), dir / "scenario_train.csv");
    save_csv(generate(scenario.queries), dir / "scenario_queries.csv");
    const auto three = generate(three_identity_spec(seed));
    save_csv(Dataset(three.points(), std::nullopt, three.identities()), dir / "three_identities.csv");
    out << "wrote synthetic datasets to " << dir.string() << "\n";
    return 0;
}

int cmd_experiment(const std::string& which, const Common& c, std::ostream& out) {
    const auto id = experiment_from_string(which);
    const fs::path dir(c.out);
    ensure_dir(dir);
    auto config = c.config();

    std::vector<IterationSnapshot> snapshots;
    auto outcome = run_experiment(id, config, [&](const IterationSnapshot& s) { snapshots.push_back(s); });

    for (const auto& s : snapshots) {
        emit_plot(outcome.data, s.centres, dir / iteration_name(s.iteration),
                  {which + " iteration " + std::to_string(s.iteration)});
    }
    const auto& clustering = outcome.result.clustering;
    emit_plot(outcome.data, clustering.centres(), dir / "final.svg", {which + " final"});
    save_csv(outcome.data, dir / "data.csv");
    config.k_max = outcome.data.size();
    save_model(make_model_file(Algorithm::Discriminative, config, clustering, outcome.result.splits),
               dir / "model.json");
    if (outcome.warm_source) {
        Config source_config = config;
        source_config.k_max = generate(experiment_suite(config.seed).e1).size();
        save_model(make_model_file(Algorithm::Discriminative, source_config, outcome.warm_source->clustering,
                                   outcome.warm_source->splits),
                   dir / "warm_start.json");
    }
    out << which << ": " << clustering.clusters.size() << " clusters, " << outcome.result.splits.size()
        << " splits, " << to_string(clustering.terminated_by) << " after " << clustering.iterations_run
        << " iterations\n";
    return 0;
}

int cmd_loo(const std::string& input, const Common& c, unsigned threads, std::size_t timing_reps,
            std::ostream& out) {
    const auto data = load_csv(input);
    if (!data.has_identities()) {
        throw Error("loo input needs an 'identity' column");
    }
    const fs::path dir(c.out);
    ensure_dir(dir);
    const auto config = c.config();
    const auto report = compare_leave_one_out(data, config, threads);

    write_text(dir / "confusion_kmeans.csv", confusion_csv(report.classic.confusion));
    write_text(dir / "confusion_dkmeans.csv", confusion_csv(report.discriminative.confusion));
    write_text(dir / "marginalized_kmeans.csv", marginalized_csv(report.classic.confusion));
    write_text(dir / "marginalized_dkmeans.csv", marginalized_csv(report.discriminative.confusion));
    write_text(dir / "ssd.csv", ssd_csv(report.ssd_records));
    emit_ssd_plot(report.ssd_records, dir / "ssd.svg", {"SSD: dkmeans vs kmeans"});

    nlohmann::ordered_json summary{
        {"k", config.k_max},
        {"seed", config.seed},
        {"weight_mode", to_string(config.weight_mode)},
        {"queries", data.size()},
        {"identities", report.classic.confusion.identities()},
        {"error_rate_kmeans", report.classic.confusion.error_rate()},
        {"error_rate_dkmeans", report.discriminative.confusion.error_rate()},
        {"ssd_slope", ssd_slope(report.ssd_records)},
    };
    write_text(dir / "report.json", summary.dump(2) + "\n");

    out << "leave-one-out over " << data.size() << " queries, k = " << config.k_max << "\n";
    out << "kmeans error rate: " << report.classic.confusion.error_rate() << "\n";
    out << "dkmeans error rate: " << report.discriminative.confusion.error_rate() << "\n";
    if (timing_reps > 0) {
        out << time_to_model(data, config, timing_reps).summary();
    }
    return 0;
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Classic and discriminative k-means clustering", "dkmeans"};
    app.require_subcommand(1);

    Common km_opts;
    std::string km_input;
    std::string km_plot;
    auto* km = app.add_subcommand("kmeans", "Fit classic k-means to a CSV dataset");
    km->add_option("input", km_input, "Input CSV")->required()->check(CLI::ExistingFile);
    add_common(km, km_opts, false, true, "Output model JSON");
    km->add_option("--plot", km_plot, "Also write an SVG plot");

    Common dk_opts;
    std::string dk_input;
    std::string dk_warm;
    std::string dk_plot;
    auto* dk = app.add_subcommand("dkmeans", "Fit discriminative k-means to a labelled CSV dataset");
    dk->add_option("input", dk_input, "Input CSV with a label column")->required()->check(CLI::ExistingFile);
    add_common(dk, dk_opts, true, false, "Output model JSON");
    dk->add_option("--warm-start", dk_warm, "Start from the centres of a model JSON")->check(CLI::ExistingFile);
    dk->add_option("--plot", dk_plot, "Also write an SVG plot");

    std::uint64_t synth_seed = 1;
    std::string synth_out;
    std::string synth_spec;
    auto* sy = app.add_subcommand("synth", "Write the synthetic experiment datasets");
    sy->add_option("--seed", synth_seed, "RNG seed")->capture_default_str()->envname("DKMEANS_SEED");
    sy->add_option("--out", synth_out, "Output directory")->required()->envname("DKMEANS_OUT");
    sy->add_option("--spec", synth_spec, "Generate one dataset from a blob spec JSON instead")
        ->check(CLI::ExistingFile);

    Common ex_opts;
    ex_opts.seed = 1;
    std::string ex_which;
    auto* ex = app.add_subcommand("experiment", "Run a synthetic experiment to convergence with per-iteration plots");
    ex->add_option("which", ex_which, "e1, e2 or e3")->required()->check(CLI::IsMember({"e1", "e2", "e3"}));
    add_common(ex, ex_opts, true, false, "Output directory");

    Common loo_opts;
    std::string loo_input;
    unsigned loo_threads = 0;
    std::size_t loo_timing = 3;
    auto* loo = app.add_subcommand("loo", "Leave-one-out recognition with both algorithms");
    loo->add_option("input", loo_input, "Input CSV with an identity column")->required()->check(CLI::ExistingFile);
    add_common(loo, loo_opts, true, true, "Output directory");
    loo->add_option("--threads", loo_threads, "Worker threads, 0 = all cores")->capture_default_str();
    loo->add_option("--timing-reps", loo_timing, "Timing repetitions printed to stdout, 0 disables")
        ->capture_default_str();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err);
    }

    try {
        if (*km) {
            return cmd_kmeans(km_input, km_opts, km_plot, out);
        }
        if (*dk) {
            return cmd_dkmeans(dk_input, dk_opts, dk_warm, dk_plot, out);
        }
        if (*sy) {
            return cmd_synth(synth_seed, synth_out, synth_spec, out);
        }
        if (*ex) {
            return cmd_experiment(ex_which, ex_opts, out);
        }
        if (*loo) {
            return cmd_loo(loo_input, loo_opts, loo_threads, loo_timing, out);
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}

} // namespace dkm
