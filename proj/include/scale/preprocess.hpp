#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace scale {

using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

struct GridDims {
    std::size_t height = 0;
    std::size_t width = 0;

    std::size_t cells() const noexcept { return height * width; }
    bool operator==(const GridDims&) const = default;
};

/// Feature rows with integer labels (0 = background / unknown). When the rows
/// come from an image, `grid` holds its shape and `pixel_index[r]` the
/// row-major pixel that produced row r.
struct RawDataset {
    RowMatrix features;
    std::vector<int> labels;
    std::optional<GridDims> grid;
    std::vector<std::size_t> pixel_index;

    std::size_t size() const noexcept { return static_cast<std::size_t>(features.rows()); }
    std::size_t dim() const noexcept { return static_cast<std::size_t>(features.cols()); }

    /// Throws DataError if any invariant is violated.
    void validate() const;
};

/// Inner product with a fixed left-to-right summation order. Every angle and
/// kernel evaluation in the library goes through this so that results do not
/// depend on which code path (dense matrix, streamed, reference) produced them.
inline double dot(std::span<const double> a, std::span<const double> b) noexcept {
    double s = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
    return s;
}

/// arccos of the inner product, clamped into [-1, 1] first.
double geodesic_angle(double inner) noexcept;

/// Unit vectors on S^q, stored row-wise in R^(q+1).
class SpherePoints {
public:
    static constexpr double norm_tolerance = 1e-12;

    SpherePoints() = default;
    /// Takes ownership of `coords`; every row must have unit norm.
    explicit SpherePoints(RowMatrix coords);

    std::size_t size() const noexcept { return static_cast<std::size_t>(coords_.rows()); }
    std::size_t ambient_dim() const noexcept { return static_cast<std::size_t>(coords_.cols()); }
    /// q, for points on S^q.
    std::size_t sphere_dim() const noexcept { return ambient_dim() == 0 ? 0 : ambient_dim() - 1; }

    std::span<const double> operator[](std::size_t i) const noexcept {
        return {coords_.data() + i * ambient_dim(), ambient_dim()};
    }
    double dot(std::size_t i, std::size_t j) const noexcept { return scale::dot((*this)[i], (*this)[j]); }
    double angle(std::size_t i, std::size_t j) const noexcept { return geodesic_angle(dot(i, j)); }

    const RowMatrix& coords() const noexcept { return coords_; }
    SpherePoints subset(std::span<const std::size_t> rows) const;

private:
    RowMatrix coords_;
};

/// Dense symmetric matrix of pairwise geodesic angles with an exact zero diagonal.
class AngleMatrix {
public:
    AngleMatrix() = default;
    explicit AngleMatrix(RowMatrix angles) : angles_(std::move(angles)) {}

    std::size_t size() const noexcept { return static_cast<std::size_t>(angles_.rows()); }
    double operator()(std::size_t i, std::size_t j) const noexcept { return angles_(i, j); }
    const RowMatrix& data() const noexcept { return angles_; }

private:
    RowMatrix angles_;
};

struct PcaResult {
    RowMatrix reduced;                   // M x d'
    Eigen::VectorXd explained_variance;  // all d component variances, non-increasing
    RowMatrix components;                // d' x d, principal directions as rows
    Eigen::RowVectorXd mean;

    double total_variance() const { return explained_variance.sum(); }
    /// Fraction of total variance captured by component k (0 if the data has none).
    double explained_fraction(std::size_t k) const;
};

/// PCA onto the leading `target_dim` directions of the column-centred data.
/// Each direction is signed so that its largest-magnitude entry is positive.
PcaResult pca_reduce(const RowMatrix& features, std::size_t target_dim);

/// PCA keeping the smallest d' whose cumulative variance fraction reaches
/// `variance_fraction`, but never more than `max_dim`.
PcaResult pca_reduce_variance(const RowMatrix& features, double variance_fraction,
                              std::size_t max_dim = 50);

enum class Projection {
    normalize,     // x / |x|, lands on S^(d'-1)
    stereographic  // inverse stereographic lift R^d' -> S^d'
};

SpherePoints project_to_sphere(const RowMatrix& reduced, Projection method = Projection::normalize);

/// Pairwise geodesic angles. Rows are split across OpenMP threads.
AngleMatrix angle_matrix(const SpherePoints& points);

/// Geodesic angles either read from a dense matrix or computed on demand from
/// the points. Both routes produce identical values for the same pair.
class AngleSource {
public:
    explicit AngleSource(const AngleMatrix& dense) : dense_(&dense), size_(dense.size()) {}
    explicit AngleSource(const SpherePoints& points) : points_(&points), size_(points.size()) {}

    std::size_t size() const noexcept { return size_; }
    double operator()(std::size_t i, std::size_t j) const noexcept {
        if (i == j) return 0.0;
        return dense_ ? (*dense_)(i, j) : points_->angle(i, j);
    }

private:
    const AngleMatrix* dense_ = nullptr;
    const SpherePoints* points_ = nullptr;
    std::size_t size_ = 0;
};

}  // namespace scale
