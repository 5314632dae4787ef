#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "scale/active_loop.hpp"
#include "scale/data.hpp"
#include "scale/preprocess.hpp"

namespace scale {

/// Every knob of an experiment run. Text form: one `key = value` per line,
/// `#` starts a comment. Keys match the long CLI flags without the dashes.
struct ExperimentConfig {
    // dataset
    std::string dataset = "synthetic";  // synthetic | salinas | indian_pines_subset | custom
    std::string features;
    std::string labels;
    std::size_t grid_height = 0;        // custom datasets only; 0 = no grid
    std::size_t grid_width = 0;
    std::optional<PixelWindow> window;
    std::vector<int> classes;           // empty = preset / all
    double fraction = 0.0;              // 0 = preset default
    // synthetic
    std::size_t synthetic_k = 3;
    std::size_t synthetic_dim = 3;
    double synthetic_spacing = 1.0;
    double synthetic_radius = 0.1;
    std::size_t synthetic_points = 1000;
    double synthetic_overlap = 0.0;
    // preprocessing
    std::string pca = "auto";           // auto | on | off
    std::size_t pca_dim = 0;            // 0 = choose by variance
    double pca_var = 0.999;
    std::size_t pca_max = 50;
    Projection projection = Projection::normalize;
    // kernel / loop
    int n = 32;
    double theta = 0.1;
    double eta_start = 0.1;
    double eta_step = 0.05;
    double eta_max = 0.7853981633974483;
    int decay_s = 4;
    std::optional<std::size_t> query_budget;
    bool refine_n = false;
    int refine_max_doublings = 3;
    // witness
    int witness_n = 0;                  // 0 = same as n
    std::optional<std::size_t> anchor_cap;
    // oracle
    std::string oracle = "truth";       // truth | replay
    std::string replay_file;
    std::string prequeried;
    // run
    std::uint64_t seed = 1;
    std::string out_dir = "scale_out";

    /// Sets one key; throws ConfigError for unknown keys or bad values.
    void set(const std::string& key, const std::string& value);
    /// Resolved configuration as ordered key/value pairs.
    std::vector<std::pair<std::string, std::string>> echo() const;
    void validate() const;

    static ExperimentConfig parse(const std::string& text);
    /// As parse; relative input file paths are taken relative to the config file.
    static ExperimentConfig load(const std::filesystem::path& path);
};

struct ClassAccuracy {
    int label = 0;
    std::size_t correct = 0;
    std::size_t total = 0;

    double accuracy() const noexcept { return total ? static_cast<double>(correct) / static_cast<double>(total) : 0.0; }
};

struct ExperimentReport {
    double accuracy = 0.0;
    std::vector<ClassAccuracy> per_class_accuracy;
    std::size_t points = 0;
    std::size_t queried_count = 0;
    double queried_fraction = 0.0;
    std::size_t prequeried_count = 0;
    std::size_t kept_count = 0;
    std::size_t uncertain_count = 0;
    std::size_t pruned_count = 0;
    std::size_t witness_count = 0;
    bool budget_exhausted = false;
    std::size_t feature_dim = 0;
    std::size_t reduced_dim = 0;
    std::size_t sphere_dim = 0;
    int degree_used = 0;
    std::vector<ComponentCount> component_history;
    std::string map_status;
    double wall_time_seconds = 0.0;
    std::vector<std::pair<std::string, std::string>> config_echo;
};

struct ExperimentResult {
    ExperimentReport report;
    LabelState state;
    std::vector<int> truth;
    std::vector<QueryRecord> query_log;
    std::optional<std::vector<std::uint8_t>> map;
};

/// preprocess -> support -> active loop -> witness -> metrics.
ExperimentResult run_experiment(const ExperimentConfig& config);

/// Structured text report followed by a JSON block between
/// `--- BEGIN JSON ---` and `--- END JSON ---`.
std::string format_report(const ExperimentReport& report);

/// Writes report.txt, queries.csv and, when a grid is present, map.ppm.
void write_artifacts(const ExperimentResult& result, const std::filesystem::path& out_dir);

/// Class colours; label k uses entry (k - 1) mod size, background is black.
const std::vector<std::array<std::uint8_t, 3>>& map_palette();

/// Binary PPM ("P6"), one pixel per grid cell, row-major. Cells without a row
/// in `pixel_index` or with label 0 are black. Returns nullopt without a grid.
std::optional<std::vector<std::uint8_t>> render_map(const std::vector<int>& predicted,
                                                    const std::optional<GridDims>& grid,
                                                    const std::vector<std::size_t>& pixel_index);

}  // namespace scale
