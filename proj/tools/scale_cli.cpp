// Command-line front end: run experiments, generate synthetic data, and
// inspect kernel localization.

#include <cstdio>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "scale/data.hpp"
#include "scale/error.hpp"
#include "scale/experiment.hpp"
#include "scale/feature_io.hpp"
#include "scale/kernels.hpp"

namespace {

const std::vector<std::string> kRunFlags = {
    "n",       "theta", "eta-start",    "eta-step",  "eta-max", "pca-dim",  "pca-var",  "decay-s",
    "seed",    "query-budget", "witness-n", "dataset", "features", "labels", "out-dir",
};

void print_echo(const scale::ExperimentConfig& cfg) {
    std::cerr << "resolved configuration:\n";
    for (const auto& [k, v] : cfg.echo()) std::cerr << "  " << k << " = " << v << '\n';
}

int run_command(const std::string& config_path, const std::map<std::string, std::string>& flags,
                const std::vector<std::string>& sets) {
    scale::ExperimentConfig cfg;
    try {
        if (!config_path.empty()) cfg = scale::ExperimentConfig::load(config_path);
        for (const auto& [k, v] : flags) cfg.set(k, v);
        for (const std::string& kv : sets) {
            const auto eq = kv.find('=');
            if (eq == std::string::npos) throw scale::ConfigError("cli", "--set expects key=value, got '" + kv + "'");
            cfg.set(kv.substr(0, eq), kv.substr(eq + 1));
        }
        const scale::ExperimentResult result = scale::run_experiment(cfg);
        scale::write_artifacts(result, cfg.out_dir);
        const auto& r = result.report;
        std::printf("accuracy %.4f  queried %zu/%zu (%.2f%%)  witness %zu  time %.2fs\n", r.accuracy,
                    r.queried_count, r.points, 100.0 * r.queried_fraction, r.witness_count, r.wall_time_seconds);
        if (!result.map) std::fprintf(stderr, "notice: no grid dimensions, map rendering skipped\n");
        std::printf("artifacts written to %s\n", cfg.out_dir.c_str());
        return 0;
    } catch (const scale::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        print_echo(cfg);
        return e.exit_code();
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        print_echo(cfg);
        return 1;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Active-learning classification with localized kernels on the sphere"};
    app.require_subcommand(1);

    auto* run = app.add_subcommand("run", "run an experiment and write report, query log and map");
    std::string config_path;
    run->add_option("-c,--config", config_path, "key = value configuration file");
    std::map<std::string, std::string> flag_values;
    for (const std::string& name : kRunFlags) {
        run->add_option_function<std::string>(
            "--" + name, [&flag_values, name](const std::string& v) { flag_values[name] = v; },
            "override '" + name + "'");
    }
    std::vector<std::string> sets;
    run->add_option("--set", sets, "override any configuration key, key=value");

    auto* gen = app.add_subcommand("generate", "write a synthetic cap dataset");
    std::size_t k = 3;
    std::size_t dim = 3;
    double spacing = 1.0;
    double radius = 0.1;
    std::size_t points = 1000;
    double overlap = 0.0;
    std::uint64_t seed = 1;
    std::string out_prefix = "synthetic";
    std::string format = "csv";
    gen->add_option("--k", k, "number of caps / classes");
    gen->add_option("--dim", dim, "ambient dimension (q + 1)");
    gen->add_option("--spacing", spacing, "angle between consecutive cap centres");
    gen->add_option("--radius", radius, "cap radius (radians)");
    gen->add_option("--points", points, "points per class");
    gen->add_option("--overlap", overlap, "fraction of each class drawn from the shared band");
    gen->add_option("--seed", seed, "random seed");
    gen->add_option("--out", out_prefix, "output prefix; writes <prefix>.features and <prefix>.labels");
    gen->add_option("--format", format, "csv or binary")->check(CLI::IsMember({"csv", "binary"}));

    auto* loc = app.add_subcommand("localization", "print the localization ratio R(n) of the kernel");
    int decay_s = 4;
    std::vector<int> degrees = {8, 16, 32, 64};
    loc->add_option("--decay-s", decay_s, "decay exponent S");
    loc->add_option("--degrees", degrees, "degrees n to evaluate");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    if (*run) return run_command(config_path, flag_values, sets);

    try {
        if (*gen) {
            scale::SyntheticSpec spec;
            spec.cap_centers = scale::great_circle_centers(k, spacing, dim);
            spec.cap_radius = radius;
            spec.points_per_class = points;
            spec.overlap_fraction = overlap;
            spec.seed = seed;
            const scale::SyntheticData data = scale::generate_synthetic(spec);
            const std::string features = out_prefix + (format == "csv" ? ".features.csv" : ".features.scl");
            if (format == "csv") scale::write_features_csv(features, data.points.coords());
            else scale::write_features_binary(features, data.points.coords());
            scale::write_labels(out_prefix + ".labels.csv", data.labels);
            std::printf("wrote %zu points to %s and %s.labels.csv\n", data.points.size(), features.c_str(),
                        out_prefix.c_str());
            return 0;
        }
        if (*loc) {
            std::printf("n\tR(n)\n");
            for (int n : degrees) std::printf("%d\t%.6g\n", n, scale::localization_ratio(n, decay_s));
            return 0;
        }
    } catch (const scale::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return e.exit_code();
    }
    return 0;
}
