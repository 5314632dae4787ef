#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "scale/preprocess.hpp"

namespace scale {

/// Geodesic ball on the sphere.
struct Cap {
    std::vector<double> center;
    double radius = 0.0;
};

/// K spherical caps, one per class. A fraction of each class may instead be
/// drawn from a cap around the geodesic midpoint to its nearest neighbouring
/// centre, which models mass shared between classes.
struct SyntheticSpec {
    std::vector<std::vector<double>> cap_centers;
    double cap_radius = 0.1;
    std::size_t points_per_class = 100;
    double overlap_fraction = 0.0;
    std::uint64_t seed = 1;

    std::size_t class_count() const noexcept { return cap_centers.size(); }
    std::size_t ambient_dim() const noexcept { return cap_centers.empty() ? 0 : cap_centers.front().size(); }
    void validate() const;
};

struct SyntheticData {
    SpherePoints points;
    std::vector<int> labels;  // 1..K

    RawDataset dataset() const;
};

/// `count` unit vectors in R^ambient_dim on the great circle through e1 and e2,
/// consecutive ones `spacing` radians apart.
std::vector<std::vector<double>> great_circle_centers(std::size_t count, double spacing,
                                                      std::size_t ambient_dim);

SyntheticData generate_synthetic(const SyntheticSpec& spec);

/// Caps whose union is the support of the generating distribution.
std::vector<Cap> support_caps(const SyntheticSpec& spec);

/// Number of groups of support caps linked by gaps smaller than eta.
std::size_t expected_component_count(const SyntheticSpec& spec, double eta);

/// Point at geodesic distance `distance` from `center` in a uniformly random
/// tangent direction.
std::vector<double> point_at_distance(std::span<const double> center, double distance, std::mt19937_64& rng);

/// Uniform sample from a cap of S^q: the geodesic radius has density
/// proportional to sin(r)^(q-1) on [0, radius] (the area element), drawn by
/// rejection, and the direction is a normalised Gaussian tangent vector.
std::vector<double> sample_cap(std::span<const double> center, double radius, std::mt19937_64& rng);

struct PixelWindow {
    std::size_t row_begin = 0;
    std::size_t row_end = 0;  // exclusive
    std::size_t col_begin = 0;
    std::size_t col_end = 0;  // exclusive

    GridDims dims() const noexcept { return {row_end - row_begin, col_end - col_begin}; }
};

struct BenchmarkSpec {
    std::string name = "custom";
    std::vector<int> class_filter;    // empty keeps every non-background class
    double per_class_fraction = 1.0;  // ceil(fraction * count) rows per class
    std::optional<GridDims> grid;
    std::optional<PixelWindow> window;
    std::uint64_t seed = 1;

    void validate() const;
};

/// Salinas: 512 x 217 scene, classes 1..10, half of each class.
BenchmarkSpec salinas_spec(std::uint64_t seed = 1);
/// Indian Pines 145 x 145 scene restricted to `window` (57 x 41) with
/// corn-notill (2), grass-trees (6), soybean-mintill (11), woods (14) and
/// stone-steel-towers (16).
BenchmarkSpec indian_pines_subset_spec(PixelWindow window, std::uint64_t seed = 1);

/// Applies window, background removal, class filter and stratified sampling.
/// Row order of the result follows pixel order.
RawDataset load_benchmark(const BenchmarkSpec& spec, const RowMatrix& features, const std::vector<int>& labels);
RawDataset load_benchmark(const BenchmarkSpec& spec, const std::filesystem::path& feature_file,
                          const std::filesystem::path& label_file);

}  // namespace scale
