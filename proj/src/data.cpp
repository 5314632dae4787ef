#include "scale/data.hpp"

#include <algorithm>
#include <limits>
#include <cmath>
#include <map>
#include <numbers>
#include <numeric>
#include <set>
#include <sstream>

#include "scale/error.hpp"
#include "scale/feature_io.hpp"

namespace scale {

namespace {

constexpr const char* kModule = "data";

std::vector<double> normalized(std::vector<double> v) {
    double norm = 0.0;
    for (double x : v) norm += x * x;
    norm = std::sqrt(norm);
    for (double& x : v) x /= norm;
    return v;
}

double center_angle(std::span<const double> a, std::span<const double> b) { return geodesic_angle(dot(a, b)); }

// Index of the centre closest to centre k, excluding k itself.
std::size_t nearest_center(const SyntheticSpec& spec, std::size_t k) {
    std::size_t best = k;
    double best_angle = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < spec.class_count(); ++j) {
        if (j == k) continue;
        const double a = center_angle(spec.cap_centers[k], spec.cap_centers[j]);
        if (a < best_angle) {
            best_angle = a;
            best = j;
        }
    }
    return best;
}

std::vector<double> band_center(const SyntheticSpec& spec, std::size_t k) {
    const auto& a = spec.cap_centers[k];
    const auto& b = spec.cap_centers[nearest_center(spec, k)];
    std::vector<double> mid(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) mid[i] = a[i] + b[i];
    return normalized(std::move(mid));
}

std::size_t find_root(std::vector<std::size_t>& parent, std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
}

}  // namespace

void SyntheticSpec::validate() const {
    if (cap_centers.empty()) throw ParameterError(kModule, "synthetic spec needs at least one cap centre");
    const std::size_t dim = ambient_dim();
    if (dim < 2) throw ParameterError(kModule, "cap centres need at least two coordinates");
    for (const auto& c : cap_centers) {
        if (c.size() != dim) throw ParameterError(kModule, "cap centres differ in dimension");
        if (std::abs(std::sqrt(dot(c, c)) - 1.0) > 1e-9) throw ParameterError(kModule, "cap centre is not a unit vector");
    }
    if (!(cap_radius > 0.0 && cap_radius < std::numbers::pi / 2)) {
        throw ParameterError(kModule, "cap radius must lie in (0, pi/2)");
    }
    if (points_per_class < 1) throw ParameterError(kModule, "points_per_class must be positive");
    if (!(overlap_fraction >= 0.0 && overlap_fraction < 1.0)) {
        throw ParameterError(kModule, "overlap_fraction must lie in [0, 1)");
    }
    if (overlap_fraction > 0.0 && class_count() < 2) {
        throw ParameterError(kModule, "overlap needs at least two classes");
    }
    for (std::size_t i = 0; i < class_count(); ++i) {
        for (std::size_t j = i + 1; j < class_count(); ++j) {
            const double a = center_angle(cap_centers[i], cap_centers[j]);
            if (overlap_fraction == 0.0 && !(a > 2.0 * cap_radius)) {
                throw ParameterError(kModule, "caps " + std::to_string(i + 1) + " and " + std::to_string(j + 1) +
                                                  " overlap but overlap_fraction is 0");
            }
            if (a > std::numbers::pi - 1e-9) throw ParameterError(kModule, "antipodal cap centres");
        }
    }
}

RawDataset SyntheticData::dataset() const {
    RawDataset ds;
    ds.features = points.coords();
    ds.labels = labels;
    return ds;
}

std::vector<std::vector<double>> great_circle_centers(std::size_t count, double spacing, std::size_t ambient_dim) {
    if (ambient_dim < 2) throw ParameterError(kModule, "great circle needs at least two dimensions");
    std::vector<std::vector<double>> centers;
    for (std::size_t k = 0; k < count; ++k) {
        std::vector<double> c(ambient_dim, 0.0);
        c[0] = std::cos(spacing * static_cast<double>(k));
        c[1] = std::sin(spacing * static_cast<double>(k));
        centers.push_back(std::move(c));
    }
    return centers;
}

std::vector<double> point_at_distance(std::span<const double> center, double distance, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<double> u(center.size());
    double norm = 0.0;
    do {
        for (double& x : u) x = gauss(rng);
        const double along = dot(u, center);
        for (std::size_t i = 0; i < u.size(); ++i) u[i] -= along * center[i];
        norm = std::sqrt(dot(u, u));
    } while (norm < 1e-8);
    std::vector<double> x(center.size());
    const double c = std::cos(distance);
    const double s = std::sin(distance);
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = c * center[i] + s * u[i] / norm;
    return normalized(std::move(x));
}

std::vector<double> sample_cap(std::span<const double> center, double radius, std::mt19937_64& rng) {
    const int q = static_cast<int>(center.size()) - 1;
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double bound = std::sin(std::min(radius, std::numbers::pi / 2));
    double r = 0.0;
    while (true) {
        r = unit(rng) * radius;
        if (q <= 1) break;
        const double accept = std::pow(std::sin(r) / bound, q - 1);
        if (unit(rng) <= accept) break;
    }
    return point_at_distance(center, r, rng);
}

SyntheticData generate_synthetic(const SyntheticSpec& spec) {
    spec.validate();
    const std::size_t k_count = spec.class_count();
    const std::size_t dim = spec.ambient_dim();
    const auto shared = static_cast<std::size_t>(std::llround(spec.overlap_fraction * spec.points_per_class));

    std::mt19937_64 rng(spec.seed);
    RowMatrix coords(static_cast<Eigen::Index>(k_count * spec.points_per_class), static_cast<Eigen::Index>(dim));
    std::vector<int> labels;
    labels.reserve(k_count * spec.points_per_class);
    Eigen::Index row = 0;
    for (std::size_t k = 0; k < k_count; ++k) {
        const std::vector<double> band = shared > 0 ? band_center(spec, k) : std::vector<double>{};
        for (std::size_t p = 0; p < spec.points_per_class; ++p) {
            const bool in_band = p >= spec.points_per_class - shared;
            const std::vector<double> x =
                sample_cap(in_band ? std::span<const double>(band) : std::span<const double>(spec.cap_centers[k]),
                           spec.cap_radius, rng);
            for (std::size_t i = 0; i < dim; ++i) coords(row, static_cast<Eigen::Index>(i)) = x[i];
            labels.push_back(static_cast<int>(k + 1));
            ++row;
        }
    }
    return {SpherePoints(std::move(coords)), std::move(labels)};
}

std::vector<Cap> support_caps(const SyntheticSpec& spec) {
    spec.validate();
    std::vector<Cap> caps;
    for (const auto& c : spec.cap_centers) caps.push_back({c, spec.cap_radius});
    const auto shared = static_cast<std::size_t>(std::llround(spec.overlap_fraction * spec.points_per_class));
    if (shared > 0) {
        for (std::size_t k = 0; k < spec.class_count(); ++k) caps.push_back({band_center(spec, k), spec.cap_radius});
    }
    return caps;
}

std::size_t expected_component_count(const SyntheticSpec& spec, double eta) {
    const std::vector<Cap> caps = support_caps(spec);
    std::vector<std::size_t> parent(caps.size());
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    for (std::size_t i = 0; i < caps.size(); ++i) {
        for (std::size_t j = i + 1; j < caps.size(); ++j) {
            const double gap = center_angle(caps[i].center, caps[j].center) - caps[i].radius - caps[j].radius;
            if (gap < eta) parent[find_root(parent, i)] = find_root(parent, j);
        }
    }
    std::size_t roots = 0;
    for (std::size_t i = 0; i < caps.size(); ++i) roots += find_root(parent, i) == i;
    return roots;
}

void BenchmarkSpec::validate() const {
    if (!(per_class_fraction > 0.0 && per_class_fraction <= 1.0)) {
        throw ConfigError(kModule, "per-class fraction must lie in (0, 1]");
    }
    if (window) {
        if (!grid) throw ConfigError(kModule, "a pixel window needs grid dimensions");
        if (window->row_begin >= window->row_end || window->col_begin >= window->col_end ||
            window->row_end > grid->height || window->col_end > grid->width) {
            throw ConfigError(kModule, "pixel window lies outside the grid or is empty");
        }
    }
}

BenchmarkSpec salinas_spec(std::uint64_t seed) {
    BenchmarkSpec spec;
    spec.name = "salinas";
    spec.class_filter = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
    spec.per_class_fraction = 0.5;
    spec.grid = GridDims{512, 217};
    spec.seed = seed;
    return spec;
}

BenchmarkSpec indian_pines_subset_spec(PixelWindow window, std::uint64_t seed) {
    BenchmarkSpec spec;
    spec.name = "indian_pines_subset";
    spec.class_filter = {2, 6, 11, 14, 16};
    spec.per_class_fraction = 1.0;
    spec.grid = GridDims{145, 145};
    spec.window = window;
    spec.seed = seed;
    return spec;
}

RawDataset load_benchmark(const BenchmarkSpec& spec, const RowMatrix& features, const std::vector<int>& labels) {
    spec.validate();
    const auto rows = static_cast<std::size_t>(features.rows());
    if (labels.size() != rows) {
        throw DataError(kModule, "feature file has " + std::to_string(rows) + " rows but label file has " +
                                     std::to_string(labels.size()));
    }
    if (spec.grid && spec.grid->cells() != rows) {
        throw DataError(kModule, "grid " + std::to_string(spec.grid->height) + "x" + std::to_string(spec.grid->width) +
                                     " does not match " + std::to_string(rows) + " rows");
    }

    // Candidate rows with their pixel index in the (possibly windowed) grid.
    std::optional<GridDims> out_grid = spec.grid;
    std::vector<std::pair<std::size_t, std::size_t>> candidates;  // (row, pixel)
    for (std::size_t r = 0; r < rows; ++r) {
        std::size_t pixel = r;
        if (spec.window) {
            const std::size_t y = r / spec.grid->width;
            const std::size_t x = r % spec.grid->width;
            const PixelWindow& w = *spec.window;
            if (y < w.row_begin || y >= w.row_end || x < w.col_begin || x >= w.col_end) continue;
            pixel = (y - w.row_begin) * w.dims().width + (x - w.col_begin);
        }
        if (labels[r] != 0) candidates.emplace_back(r, pixel);
    }
    if (spec.window) out_grid = spec.window->dims();

    std::map<int, std::vector<std::size_t>> by_class;  // class -> candidate positions
    for (std::size_t c = 0; c < candidates.size(); ++c) by_class[labels[candidates[c].first]].push_back(c);

    std::vector<int> wanted = spec.class_filter;
    if (wanted.empty()) {
        for (const auto& [cls, members] : by_class) wanted.push_back(cls);
    }
    std::vector<int> missing;
    for (int cls : wanted) {
        if (!by_class.contains(cls)) missing.push_back(cls);
    }
    if (!missing.empty() || wanted.empty()) {
        std::ostringstream msg;
        msg << spec.name << ": requested classes not present:";
        for (int cls : missing) msg << ' ' << cls;
        msg << "; available classes:";
        for (const auto& [cls, members] : by_class) msg << ' ' << cls;
        throw DataError(kModule, msg.str());
    }
    std::sort(wanted.begin(), wanted.end());
    wanted.erase(std::unique(wanted.begin(), wanted.end()), wanted.end());

    std::mt19937_64 rng(spec.seed);
    std::vector<std::size_t> chosen;
    for (int cls : wanted) {
        std::vector<std::size_t> members = by_class[cls];
        const auto take = static_cast<std::size_t>(
            std::ceil(spec.per_class_fraction * static_cast<double>(members.size()) - 1e-9));
        if (take < members.size()) {
            std::shuffle(members.begin(), members.end(), rng);
            members.resize(take);
        }
        chosen.insert(chosen.end(), members.begin(), members.end());
    }
    std::sort(chosen.begin(), chosen.end());

    RawDataset ds;
    ds.features.resize(static_cast<Eigen::Index>(chosen.size()), features.cols());
    ds.grid = out_grid;
    for (std::size_t i = 0; i < chosen.size(); ++i) {
        const auto [row, pixel] = candidates[chosen[i]];
        ds.features.row(static_cast<Eigen::Index>(i)) = features.row(static_cast<Eigen::Index>(row));
        ds.labels.push_back(labels[row]);
        if (ds.grid) ds.pixel_index.push_back(pixel);
    }
    for (Eigen::Index r = 0; r < ds.features.rows(); ++r) {
        if (!ds.features.row(r).allFinite()) {
            throw DataError(kModule, "non-finite value in row " + std::to_string(candidates[chosen[static_cast<std::size_t>(r)]].first));
        }
    }
    ds.validate();
    return ds;
}

RawDataset load_benchmark(const BenchmarkSpec& spec, const std::filesystem::path& feature_file,
                          const std::filesystem::path& label_file) {
    return load_benchmark(spec, read_features(feature_file), read_labels(label_file));
}

}  // namespace scale
