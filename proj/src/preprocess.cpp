#include "scale/preprocess.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "scale/error.hpp"

namespace scale {

namespace {

constexpr const char* kModule = "preprocess";

void require_finite(const RowMatrix& features) {
    for (Eigen::Index r = 0; r < features.rows(); ++r) {
        for (Eigen::Index c = 0; c < features.cols(); ++c) {
            if (!std::isfinite(features(r, c))) {
                throw DataError(kModule, "non-finite value in row " + std::to_string(r) +
                                             ", column " + std::to_string(c));
            }
        }
    }
}

struct Spectrum {
    Eigen::VectorXd variances;  // descending, clamped at 0
    Eigen::MatrixXd vectors;    // columns match variances
    Eigen::RowVectorXd mean;
    RowMatrix centered;
};

Spectrum covariance_spectrum(const RowMatrix& features) {
    if (features.rows() < 1 || features.cols() < 1) {
        throw ParameterError(kModule, "PCA needs at least one row and one column");
    }
    require_finite(features);

    Spectrum s;
    s.mean = features.colwise().mean();
    s.centered = features.rowwise() - s.mean;
    const double denom = static_cast<double>(std::max<Eigen::Index>(features.rows() - 1, 1));
    const Eigen::MatrixXd cov = (s.centered.transpose() * s.centered) / denom;

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(cov);
    if (solver.info() != Eigen::Success) {
        throw NumericError(kModule, "covariance eigendecomposition failed");
    }
    const Eigen::Index d = cov.rows();
    s.variances.resize(d);
    s.vectors.resize(d, d);
    for (Eigen::Index k = 0; k < d; ++k) {
        // Eigen returns ascending eigenvalues.
        s.variances(k) = std::max(0.0, solver.eigenvalues()(d - 1 - k));
        Eigen::VectorXd v = solver.eigenvectors().col(d - 1 - k);
        Eigen::Index lead = 0;
        for (Eigen::Index i = 1; i < d; ++i) {
            if (std::abs(v(i)) > std::abs(v(lead))) lead = i;
        }
        if (v(lead) < 0) v = -v;
        s.vectors.col(k) = v;
    }
    return s;
}

PcaResult finish(Spectrum s, std::size_t target_dim) {
    const auto k = static_cast<Eigen::Index>(target_dim);
    PcaResult out;
    out.components = s.vectors.leftCols(k).transpose();
    out.reduced = s.centered * s.vectors.leftCols(k);
    out.explained_variance = std::move(s.variances);
    out.mean = std::move(s.mean);
    return out;
}

}  // namespace

void RawDataset::validate() const {
    if (features.rows() < 1 || features.cols() < 1) {
        throw DataError("data", "dataset needs at least one row and one column");
    }
    if (labels.size() != size()) {
        throw DataError("data", "label count " + std::to_string(labels.size()) +
                                    " does not match row count " + std::to_string(size()));
    }
    if (grid) {
        if (pixel_index.size() != size()) {
            throw DataError("data", "pixel index map must have one entry per row");
        }
        for (std::size_t p : pixel_index) {
            if (p >= grid->cells()) {
                throw DataError("data", "pixel index " + std::to_string(p) + " outside the grid");
            }
        }
    }
}

double geodesic_angle(double inner) noexcept {
    return std::acos(std::clamp(inner, -1.0, 1.0));
}

SpherePoints::SpherePoints(RowMatrix coords) : coords_(std::move(coords)) {
    for (std::size_t i = 0; i < size(); ++i) {
        const double norm = std::sqrt(scale::dot((*this)[i], (*this)[i]));
        if (!(std::abs(norm - 1.0) <= norm_tolerance)) {
            throw ParameterError(kModule, "row " + std::to_string(i) + " is not a unit vector (norm " +
                                              std::to_string(norm) + ")");
        }
    }
}

SpherePoints SpherePoints::subset(std::span<const std::size_t> rows) const {
    RowMatrix out(static_cast<Eigen::Index>(rows.size()), coords_.cols());
    for (std::size_t r = 0; r < rows.size(); ++r) out.row(r) = coords_.row(rows[r]);
    SpherePoints p;
    p.coords_ = std::move(out);
    return p;
}

double PcaResult::explained_fraction(std::size_t k) const {
    const double total = total_variance();
    if (total <= 0.0 || k >= static_cast<std::size_t>(explained_variance.size())) return 0.0;
    return explained_variance(static_cast<Eigen::Index>(k)) / total;
}

PcaResult pca_reduce(const RowMatrix& features, std::size_t target_dim) {
    const auto limit = static_cast<std::size_t>(std::min(features.rows(), features.cols()));
    if (target_dim < 1 || target_dim > limit) {
        throw ParameterError(kModule, "target_dim " + std::to_string(target_dim) +
                                          " must lie in [1, min(M, d)] = [1, " + std::to_string(limit) + "]");
    }
    return finish(covariance_spectrum(features), target_dim);
}

PcaResult pca_reduce_variance(const RowMatrix& features, double variance_fraction, std::size_t max_dim) {
    if (!(variance_fraction > 0.0 && variance_fraction <= 1.0)) {
        throw ParameterError(kModule, "variance_fraction must lie in (0, 1]");
    }
    if (max_dim < 1) throw ParameterError(kModule, "max_dim must be positive");
    Spectrum s = covariance_spectrum(features);

    const auto limit = static_cast<std::size_t>(std::min(features.rows(), features.cols()));
    const std::size_t cap = std::min(limit, max_dim);
    const double total = s.variances.sum();
    std::size_t dim = 1;
    if (total > 0.0) {
        double cumulative = 0.0;
        for (dim = 1; dim <= cap; ++dim) {
            cumulative += s.variances(static_cast<Eigen::Index>(dim - 1));
            // Rounding in the eigensolver leaves tiny residual variances.
            if (cumulative / total >= variance_fraction - 1e-12) break;
        }
        dim = std::min(dim, cap);
    }
    return finish(std::move(s), dim);
}

SpherePoints project_to_sphere(const RowMatrix& reduced, Projection method) {
    const Eigen::Index rows = reduced.rows();
    const Eigen::Index cols = reduced.cols();
    if (cols < 1) throw ParameterError(kModule, "cannot project zero-dimensional rows");

    RowMatrix out;
    if (method == Projection::normalize) {
        out.resize(rows, cols);
        for (Eigen::Index r = 0; r < rows; ++r) {
            const double norm = reduced.row(r).norm();
            if (!(norm >= 1e-12)) {
                throw DataError(kModule, "degenerate point: row " + std::to_string(r) +
                                             " has norm below 1e-12 and has no direction");
            }
            out.row(r) = reduced.row(r) / norm;
        }
    } else {
        out.resize(rows, cols + 1);
        for (Eigen::Index r = 0; r < rows; ++r) {
            const double sq = reduced.row(r).squaredNorm();
            out.row(r).head(cols) = 2.0 * reduced.row(r) / (sq + 1.0);
            out(r, cols) = (sq - 1.0) / (sq + 1.0);
            out.row(r) /= out.row(r).norm();
        }
    }
    // Renormalisation can leave |x| off by an ulp or two; that is within tolerance.
    return SpherePoints(std::move(out));
}

AngleMatrix angle_matrix(const SpherePoints& points) {
    const auto m = static_cast<std::ptrdiff_t>(points.size());
    RowMatrix angles(m, m);
    // Row i writes (i, j) and (j, i) for j > i only, so writes never overlap.
#pragma omp parallel for schedule(dynamic, 16)
    for (std::ptrdiff_t i = 0; i < m; ++i) {
        angles(i, i) = 0.0;
        for (std::ptrdiff_t j = i + 1; j < m; ++j) {
            const double a = points.angle(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
            angles(i, j) = a;
            angles(j, i) = a;
        }
    }
    return AngleMatrix(std::move(angles));
}

}  // namespace scale
