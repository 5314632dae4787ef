#include <doctest.h>

#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <random>

#include "scale/error.hpp"
#include "scale/feature_io.hpp"
#include "scale/preprocess.hpp"
#include "scale_reference.hpp"

using namespace scale;

namespace {

RowMatrix random_matrix(std::size_t rows, std::size_t cols, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g(0.0, 1.0);
    RowMatrix m(rows, cols);
    for (Eigen::Index r = 0; r < m.rows(); ++r)
        for (Eigen::Index c = 0; c < m.cols(); ++c) m(r, c) = g(rng);
    return m;
}

SpherePoints random_sphere(std::size_t rows, std::size_t cols, std::uint64_t seed) {
    RowMatrix m = random_matrix(rows, cols, seed);
    m.rowwise().normalize();
    return SpherePoints(std::move(m));
}

std::filesystem::path temp_path(const std::string& name) {
    return std::filesystem::temp_directory_path() / ("scale_test_" + name);
}

}  // namespace

TEST_CASE("PCA of collinear data has one component") {
    RowMatrix x(3, 2);
    x << 1, 1, 2, 2, 3, 3;
    const PcaResult p = pca_reduce(x, 1);
    CHECK(p.explained_fraction(0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(p.reduced.cols() == 1);
    const PcaResult v = pca_reduce_variance(x, 1.0);
    CHECK(v.reduced.cols() == 1);
}

TEST_CASE("PCA recovers an axis-aligned covariance") {
    // Covariance (divisor M - 1 = 3) is diag(2*6/3, 2*1.5/3) = diag(4, 1).
    const double s = std::sqrt(6.0);
    const double t = std::sqrt(1.5);
    RowMatrix x(4, 2);
    x << s, 0, -s, 0, 0, t, 0, -t;
    const PcaResult p = pca_reduce(x, 2);
    CHECK(p.explained_variance(0) == doctest::Approx(4.0).epsilon(1e-12));
    CHECK(p.explained_variance(1) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(p.components(0, 0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(p.components(0, 1)) < 1e-12);
}

TEST_CASE("PCA of a single sample centres it to the origin") {
    RowMatrix x(1, 1);
    x << 5.0;
    const PcaResult p = pca_reduce(x, 1);
    REQUIRE(p.reduced.rows() == 1);
    CHECK(p.reduced(0, 0) == 0.0);
}

TEST_CASE("PCA rejects bad input") {
    RowMatrix x = random_matrix(4, 3, 1);
    CHECK_THROWS_AS(pca_reduce(x, 4), ParameterError);
    CHECK_THROWS_AS(pca_reduce(x, 0), ParameterError);
    x(2, 1) = std::nan("");
    CHECK_THROWS_AS(pca_reduce(x, 2), DataError);
    CHECK_THROWS_AS(pca_reduce_variance(random_matrix(4, 3, 1), 0.0), ParameterError);
}

TEST_CASE("PCA variance selection and cap") {
    RowMatrix x = random_matrix(200, 6, 3);
    x.col(0) *= 10.0;
    x.col(1) *= 5.0;
    const PcaResult p = pca_reduce_variance(x, 0.9);
    double cum = 0.0;
    std::size_t need = 0;
    while (cum / p.total_variance() < 0.9) cum += p.explained_variance(static_cast<Eigen::Index>(need++));
    CHECK(static_cast<std::size_t>(p.reduced.cols()) == need);
    CHECK(pca_reduce_variance(x, 1.0, 3).reduced.cols() == 3);
    for (Eigen::Index k = 1; k < p.explained_variance.size(); ++k) {
        CHECK(p.explained_variance(k) <= p.explained_variance(k - 1));
    }
}

TEST_CASE("PCA preserves distances of data in an affine subspace") {
    // 40 points on a random 2-plane through a random offset in R^5.
    const RowMatrix coeffs = random_matrix(40, 2, 11);
    const RowMatrix basis = random_matrix(2, 5, 12);
    const RowMatrix offset = random_matrix(1, 5, 13);
    RowMatrix x = coeffs * basis;
    x.rowwise() += offset.row(0);
    const PcaResult p = pca_reduce(x, 2);
    for (Eigen::Index i = 0; i < x.rows(); ++i) {
        for (Eigen::Index j = i + 1; j < x.rows(); ++j) {
            const double before = (x.row(i) - x.row(j)).norm();
            const double after = (p.reduced.row(i) - p.reduced.row(j)).norm();
            CHECK(std::abs(before - after) <= 1e-9 * before);
        }
    }
}

TEST_CASE("PCA output is bit-stable") {
    const RowMatrix x = random_matrix(60, 8, 21);
    const PcaResult a = pca_reduce(x, 4);
    const PcaResult b = pca_reduce(x, 4);
    CHECK(a.reduced == b.reduced);
    for (Eigen::Index k = 0; k < a.components.rows(); ++k) {
        Eigen::Index lead = 0;
        a.components.row(k).cwiseAbs().maxCoeff(&lead);
        CHECK(a.components(k, lead) > 0.0);
    }
}

TEST_CASE("projection onto the sphere") {
    RowMatrix x(4, 2);
    x << 3, 4, 0, 1, 1, 0, 2, 0;
    const SpherePoints p = project_to_sphere(x);
    CHECK(p[0][0] == doctest::Approx(0.6).epsilon(1e-15));
    CHECK(p[0][1] == doctest::Approx(0.8).epsilon(1e-15));
    CHECK(p[1][1] == 1.0);
    CHECK(p[2][0] == p[3][0]);
    CHECK(p[2][1] == p[3][1]);

    RowMatrix unit(1, 3);
    unit << 0, 1, 0;
    const SpherePoints u = project_to_sphere(unit);
    CHECK(u[0][0] == 0.0);
    CHECK(u[0][1] == 1.0);
    CHECK(u[0][2] == 0.0);

    RowMatrix zero(3, 2);
    zero << 1, 0, 0, 0, 0, 1;
    try {
        (void)project_to_sphere(zero);
        FAIL("expected a degenerate-point error");
    } catch (const DataError& e) {
        CHECK(std::string(e.what()).find("row 1") != std::string::npos);
    }
}

TEST_CASE("stereographic lift adds a coordinate and lands on the sphere") {
    const RowMatrix x = random_matrix(30, 3, 5);
    const SpherePoints p = project_to_sphere(x, Projection::stereographic);
    CHECK(p.ambient_dim() == 4);
    for (std::size_t i = 0; i < p.size(); ++i) CHECK(std::abs(std::sqrt(dot(p[i], p[i])) - 1.0) <= 1e-12);
    RowMatrix origin = RowMatrix::Zero(1, 2);
    const SpherePoints south = project_to_sphere(origin, Projection::stereographic);
    CHECK(south[0][2] == -1.0);
}

TEST_CASE("SpherePoints rejects non-unit rows") {
    RowMatrix x(1, 2);
    x << 1.0, 1.0;
    CHECK_THROWS_AS(SpherePoints{x}, ParameterError);
}

TEST_CASE("angle matrix elementary values") {
    RowMatrix x(4, 2);
    x << 1, 0, 0, 1, -1, 0, 1, 0;
    const AngleMatrix a = angle_matrix(SpherePoints(x));
    CHECK(a(0, 3) == 0.0);
    CHECK(a(0, 1) == doctest::Approx(std::numbers::pi / 2).epsilon(1e-15));
    CHECK(a(0, 2) == doctest::Approx(std::numbers::pi).epsilon(1e-15));
    for (std::size_t i = 0; i < 4; ++i) CHECK(a(i, i) == 0.0);
}

TEST_CASE("angle matrix properties on random points") {
    const SpherePoints p = random_sphere(150, 5, 99);
    const AngleMatrix a = angle_matrix(p);
    const AngleMatrix ref = reference::angle_matrix_serial(p);
    CHECK(a.data() == ref.data());
    for (std::size_t i = 0; i < p.size(); ++i) {
        CHECK(a(i, i) == 0.0);
        for (std::size_t j = 0; j < p.size(); ++j) {
            CHECK(a(i, j) == a(j, i));
            CHECK(!std::isnan(a(i, j)));
            CHECK(a(i, j) >= 0.0);
            CHECK(a(i, j) <= std::numbers::pi);
        }
    }
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<std::size_t> pick(0, p.size() - 1);
    for (int t = 0; t < 5000; ++t) {
        const std::size_t i = pick(rng), j = pick(rng), k = pick(rng);
        CHECK(a(i, k) <= a(i, j) + a(j, k) + 1e-9);
    }
}

TEST_CASE("clamping keeps arccos finite for nearly parallel vectors") {
    std::mt19937_64 rng(17);
    std::normal_distribution<double> g(0.0, 1e-9);
    for (int t = 0; t < 1000; ++t) {
        RowMatrix x(2, 4);
        x.row(0) << 0.5, 0.5, 0.5, 0.5;
        x.row(1) = x.row(0);
        for (Eigen::Index c = 0; c < 4; ++c) x(1, c) += g(rng);
        x.rowwise().normalize();
        const SpherePoints p(x);
        CHECK(!std::isnan(p.angle(0, 1)));
        CHECK(!std::isnan(p.angle(0, 0)));
    }
    CHECK(geodesic_angle(1.0 + 1e-15) == 0.0);
    CHECK(geodesic_angle(-1.0 - 1e-15) == doctest::Approx(std::numbers::pi));
}

TEST_CASE("feature files round-trip exactly in both layouts") {
    for (std::uint64_t seed : {1u, 2u, 3u}) {
        const RowMatrix x = random_matrix(7 + seed, 3 + seed, seed);
        const auto csv = temp_path("rt.csv");
        const auto bin = temp_path("rt.scl");
        write_features_csv(csv, x);
        write_features_binary(bin, x);
        CHECK(read_features(csv) == x);
        CHECK(read_features(bin) == x);
    }
}

TEST_CASE("binary feature layout is bit-exact") {
    RowMatrix x(2, 1);
    x << 1.0, -2.5;
    const auto bin = temp_path("layout.scl");
    write_features_binary(bin, x);
    std::ifstream in(bin, std::ios::binary);
    std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)), {});
    REQUIRE(bytes.size() == 4 + 4 + 4 + 16);
    CHECK(std::string(bytes.begin(), bytes.begin() + 4) == "SCL1");
    CHECK(bytes[4] == 2);
    CHECK(bytes[5] == 0);
    CHECK(bytes[8] == 1);
    double v = 0;
    std::memcpy(&v, bytes.data() + 20, 8);
    CHECK(v == -2.5);
}

TEST_CASE("feature and label readers reject malformed input") {
    const auto bad = temp_path("bad.csv");
    {
        std::ofstream out(bad);
        out << "1,2\n3,nan\n";
    }
    try {
        (void)read_features(bad);
        FAIL("expected a data error");
    } catch (const DataError& e) {
        CHECK(std::string(e.what()).find("row 1") != std::string::npos);
    }
    {
        std::ofstream out(bad);
        out << "1,2\n3\n";
    }
    CHECK_THROWS_AS(read_features(bad), DataError);
    {
        std::ofstream out(bad);
        out << "0\n1\n2\n\n";
    }
    CHECK(read_labels(bad) == std::vector<int>{0, 1, 2});
    {
        std::ofstream out(bad);
        out << "1\nx\n";
    }
    CHECK_THROWS_AS(read_labels(bad), DataError);
    CHECK_THROWS_AS(read_features(temp_path("does_not_exist")), DataError);
}
