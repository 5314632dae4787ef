#include <chrono>
#include <map>
#include <memory>
#include <set>

#include "scale/error.hpp"
#include "scale/experiment.hpp"
#include "scale/feature_io.hpp"
#include "scale/witness.hpp"

namespace scale {

namespace {

constexpr const char* kModule = "cli";

RawDataset load_dataset(const ExperimentConfig& config) {
    if (config.dataset == "synthetic") {
        SyntheticSpec spec;
        spec.cap_centers = great_circle_centers(config.synthetic_k, config.synthetic_spacing, config.synthetic_dim);
        spec.cap_radius = config.synthetic_radius;
        spec.points_per_class = config.synthetic_points;
        spec.overlap_fraction = config.synthetic_overlap;
        spec.seed = config.seed;
        return generate_synthetic(spec).dataset();
    }

    BenchmarkSpec spec;
    if (config.dataset == "salinas") {
        spec = salinas_spec(config.seed);
    } else if (config.dataset == "indian_pines_subset") {
        spec = indian_pines_subset_spec(*config.window, config.seed);
    } else {
        spec.name = "custom";
        spec.seed = config.seed;
        if (config.grid_height) spec.grid = GridDims{config.grid_height, config.grid_width};
        spec.window = config.window;
    }
    if (!config.classes.empty()) spec.class_filter = config.classes;
    if (config.fraction > 0.0) spec.per_class_fraction = config.fraction;
    return load_benchmark(spec, config.features, config.labels);
}

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& config) {
    config.validate();
    const auto start = std::chrono::steady_clock::now();

    ExperimentResult result;
    ExperimentReport& report = result.report;
    report.config_echo = config.echo();

    const RawDataset ds = load_dataset(config);
    ds.validate();
    result.truth = ds.labels;
    report.points = ds.size();
    report.feature_dim = ds.dim();

    const bool use_pca = config.pca == "on" || (config.pca == "auto" && config.dataset != "synthetic");
    RowMatrix reduced;
    if (use_pca) {
        PcaResult pca = config.pca_dim > 0 ? pca_reduce(ds.features, config.pca_dim)
                                           : pca_reduce_variance(ds.features, config.pca_var, config.pca_max);
        reduced = std::move(pca.reduced);
    } else {
        reduced = ds.features;
    }
    report.reduced_dim = static_cast<std::size_t>(reduced.cols());
    const SpherePoints points = project_to_sphere(reduced, config.projection);
    report.sphere_dim = points.sphere_dim();
    if (report.sphere_dim < 2) {
        throw ConfigError(kModule, "the witness kernel needs points on S^q with q >= 2; raise pca-dim");
    }

    std::optional<AngleMatrix> dense;
    if (points.size() <= dense_kernel_limit) dense = angle_matrix(points);
    const AngleSource angles = dense ? AngleSource(*dense) : AngleSource(points);

    LoopConfig loop;
    loop.eta_start = config.eta_start;
    loop.eta_step = config.eta_step;
    loop.eta_max = config.eta_max;
    loop.n = config.n;
    loop.theta = config.theta;
    loop.query_budget = config.query_budget;
    if (config.refine_n) loop.n = refine_degree(points, angles, loop, config.refine_max_doublings);
    report.degree_used = loop.n;

    const SupportEstimate support = prune_support(points, loop.n, loop.theta);
    report.kept_count = support.kept_count();

    std::unique_ptr<LabelOracle> oracle;
    if (config.oracle == "replay") {
        oracle = std::make_unique<ReplayOracle>(ReplayOracle::from_csv(config.replay_file));
    } else {
        oracle = std::make_unique<GroundTruthOracle>(ds.labels);
    }
    std::vector<LabeledIndex> prequeried;
    if (!config.prequeried.empty()) prequeried = read_labeled_indices(config.prequeried);

    LabelState state = run_scale(angles, support, *oracle, loop, prequeried);
    report.uncertain_count = state.uncertain.size();
    report.pruned_count = state.pruned.size();
    report.budget_exhausted = state.budget_exhausted;
    report.component_history = state.component_history;
    report.queried_count = state.oracle_queries;
    report.prequeried_count = state.queried.size() - state.oracle_queries;
    report.queried_fraction = static_cast<double>(report.queried_count) / static_cast<double>(report.points);

    WitnessOptions witness;
    witness.anchor_cap = config.anchor_cap;
    witness.seed = config.seed;
    const int witness_n = config.witness_n > 0 ? config.witness_n : loop.n;
    state = classify_uncertain(std::move(state), points, witness_n, static_cast<int>(report.sphere_dim), witness);
    report.witness_count = state.witness_labeled.size();

    // Queried points carry oracle truth and are never counted as errors.
    std::vector<bool> queried(ds.size(), false);
    for (const LabeledIndex& li : state.queried) queried[li.index] = true;
    std::map<int, ClassAccuracy> per_class;
    std::size_t correct = 0;
    std::size_t total = 0;
    for (std::size_t i = 0; i < ds.size(); ++i) {
        if (ds.labels[i] == 0) continue;
        const bool ok = queried[i] || state.predicted[i] == ds.labels[i];
        ClassAccuracy& c = per_class[ds.labels[i]];
        c.label = ds.labels[i];
        ++c.total;
        c.correct += ok;
        ++total;
        correct += ok;
    }
    report.accuracy = total ? static_cast<double>(correct) / static_cast<double>(total) : 0.0;
    for (const auto& [label, c] : per_class) report.per_class_accuracy.push_back(c);

    result.map = render_map(state.predicted, ds.grid, ds.pixel_index);
    report.map_status = result.map ? "map.ppm" : "skipped (no grid dimensions)";

    result.query_log = oracle->log();
    result.state = std::move(state);
    report.wall_time_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return result;
}

}  // namespace scale
