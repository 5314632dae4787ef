#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include "scale/error.hpp"
#include "scale/kernels.hpp"
#include "scale/witness.hpp"
#include "scale_reference.hpp"

using namespace scale;

namespace {

SpherePoints rows(std::initializer_list<std::vector<double>> list, std::size_t dim) {
    RowMatrix m(static_cast<Eigen::Index>(list.size()), static_cast<Eigen::Index>(dim));
    Eigen::Index r = 0;
    for (const auto& v : list) {
        for (std::size_t c = 0; c < dim; ++c) m(r, static_cast<Eigen::Index>(c)) = v[c];
        ++r;
    }
    return SpherePoints(m);
}

std::vector<double> random_unit(std::mt19937_64& rng, std::size_t dim) {
    std::normal_distribution<double> g;
    std::vector<double> v(dim);
    for (double& x : v) x = g(rng);
    const double len = std::sqrt(dot(v, v));
    for (double& x : v) x /= len;
    return v;
}

SpherePoints random_points(std::mt19937_64& rng, std::size_t count, std::size_t dim) {
    RowMatrix m(static_cast<Eigen::Index>(count), static_cast<Eigen::Index>(dim));
    for (std::size_t r = 0; r < count; ++r) {
        const std::vector<double> v = random_unit(rng, dim);
        for (std::size_t c = 0; c < dim; ++c) m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = v[c];
    }
    return SpherePoints(m);
}

// Per-anchor scalar kernel sums, one class after another.
std::vector<double> direct_sums(std::span<const double> x, const std::vector<SpherePoints>& anchors, int n, int q) {
    std::vector<double> out;
    for (const SpherePoints& a : anchors) {
        if (a.size() == 0) {
            out.push_back(-std::numeric_limits<double>::infinity());
            continue;
        }
        double s = 0.0;
        for (std::size_t i = 0; i < a.size(); ++i) s += jacobi_kernel(dot(x, a[i]), n, q);
        out.push_back(s);
    }
    return out;
}

int first_max(const std::vector<double>& s) {
    return static_cast<int>(std::max_element(s.begin(), s.end()) - s.begin()) + 1;
}

// Random instance in R^5 (q = 4): up to 4 classes of clustered anchors.
std::vector<SpherePoints> random_anchors(std::mt19937_64& rng, std::size_t classes) {
    std::vector<SpherePoints> out;
    std::uniform_int_distribution<std::size_t> count(1, 12);
    for (std::size_t k = 0; k < classes; ++k) {
        const std::vector<double> centre = random_unit(rng, 5);
        const std::size_t c = count(rng);
        RowMatrix m(static_cast<Eigen::Index>(c), 5);
        for (std::size_t r = 0; r < c; ++r) {
            const std::vector<double> v = sample_cap(centre, 0.4, rng);
            for (int d = 0; d < 5; ++d) m(static_cast<Eigen::Index>(r), d) = v[static_cast<std::size_t>(d)];
        }
        out.emplace_back(m);
    }
    return out;
}

}  // namespace

TEST_CASE("an anchor of its own class wins over a distant one") {
    const double t = 1.5;
    const SpherePoints far = rows({{std::cos(t), std::sin(t), 0, 0, 0}}, 5);
    const SpherePoints near = rows({{1, 0, 0, 0, 0}}, 5);
    const WitnessModel model({far, near}, 32, 4);
    const std::vector<double> x = {1, 0, 0, 0, 0};
    const std::vector<double> expect = direct_sums(x, {far, near}, 32, 4);
    REQUIRE(expect[1] > expect[0]);
    CHECK(witness_classify(x, model) == 2);
    const std::vector<double> got = witness_scores(x, model);
    CHECK(got[0] == doctest::Approx(expect[0]).epsilon(1e-12));
    CHECK(got[1] == doctest::Approx(expect[1]).epsilon(1e-12));
}

TEST_CASE("mirror anchors tie to the lowest class") {
    const double s = std::sin(0.3), c = std::cos(0.3);
    const SpherePoints left = rows({{s, 0, c}}, 3);
    const SpherePoints right = rows({{-s, 0, c}}, 3);
    const WitnessModel model({left, right}, 16, 2);
    const std::vector<double> x = {0, 0, 1};
    const std::vector<double> scores = witness_scores(x, model);
    REQUIRE(scores[0] == scores[1]);
    CHECK(witness_classify(x, model) == 1);
    const WitnessModel swapped({right, left}, 16, 2);
    CHECK(witness_classify(x, swapped) == 1);
}

TEST_CASE("an empty class never wins") {
    std::mt19937_64 rng(9);
    const SpherePoints empty(RowMatrix(0, 3));
    const SpherePoints some = random_points(rng, 4, 3);
    const WitnessModel model({empty, some}, 12, 2);
    for (int trial = 0; trial < 50; ++trial) {
        const std::vector<double> x = random_unit(rng, 3);
        CHECK(witness_classify(x, model) == 2);
        CHECK(witness_scores(x, model)[0] == -std::numeric_limits<double>::infinity());
    }
    CHECK_THROWS_AS(WitnessModel({empty, empty}, 12, 2), ConfigError);
    CHECK_THROWS_AS(WitnessModel({some}, 12, 3), ParameterError);
    const WitnessModel only({some}, 12, 2);
    CHECK_THROWS_AS(witness_classify(std::vector<double>{1.0, 0.0, 0.0},
                                     only, [](double) { return std::nan(""); }),
                    NumericError);
}

TEST_CASE("positive rescaling leaves every label unchanged") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 40; ++trial) {
        const std::vector<SpherePoints> anchors = random_anchors(rng, 3);
        const WitnessModel model(anchors, 24, 4);
        const JacobiKernel& k = model.kernel();
        const std::vector<double> x = random_unit(rng, 5);
        const int base = witness_classify(x, model);
        for (double factor : {0.5, 3.0, 1e6}) {
            // Exact powers of two keep every sum exact; other factors are checked away from ties.
            const std::vector<double> s = witness_scores(x, model);
            std::vector<double> sorted = s;
            std::sort(sorted.rbegin(), sorted.rend());
            if (factor != 0.5 && sorted[0] - sorted[1] < 1e-9 * std::abs(sorted[0])) continue;
            CHECK(witness_classify(x, model, [&](double t) { return factor * k(t); }) == base);
        }
        CHECK(base == first_max(direct_sums(x, anchors, 24, 4)));
    }
}

TEST_CASE("duplicating a non-negative anchor never lowers its class sum") {
    std::mt19937_64 rng(12);
    int checked = 0;
    for (int trial = 0; trial < 200 && checked < 50; ++trial) {
        std::vector<SpherePoints> anchors = random_anchors(rng, 2);
        const std::vector<double> x = random_unit(rng, 5);
        const std::size_t pick = 0;
        if (jacobi_kernel(dot(x, anchors[0][pick]), 16, 4) < 0) continue;
        const double before = witness_scores(x, WitnessModel(anchors, 16, 4))[0];
        std::vector<std::size_t> idx(anchors[0].size());
        std::iota(idx.begin(), idx.end(), 0);
        idx.push_back(pick);
        anchors[0] = anchors[0].subset(idx);
        CHECK(witness_scores(x, WitnessModel(anchors, 16, 4))[0] >= before);
        ++checked;
    }
    CHECK(checked == 50);
}

TEST_CASE("permuting classes permutes predictions") {
    std::mt19937_64 rng(77);
    for (int trial = 0; trial < 40; ++trial) {
        const std::vector<SpherePoints> anchors = random_anchors(rng, 4);
        std::vector<std::size_t> perm = {0, 1, 2, 3};
        std::shuffle(perm.begin(), perm.end(), rng);
        std::vector<SpherePoints> moved(4);
        for (std::size_t k = 0; k < 4; ++k) moved[perm[k]] = anchors[k];
        const WitnessModel a(anchors, 20, 4), b(moved, 20, 4);
        const std::vector<double> x = random_unit(rng, 5);
        const int la = witness_classify(x, a);
        CHECK(witness_classify(x, b) == static_cast<int>(perm[static_cast<std::size_t>(la - 1)]) + 1);
    }
}

TEST_CASE("classify_uncertain") {
    // Two clusters on S^2 around e1 and e2; the loop left three points unlabeled.
    std::mt19937_64 rng(4);
    RowMatrix m(43, 3);
    const std::vector<double> e1 = {1, 0, 0}, e2 = {0, 1, 0};
    for (Eigen::Index r = 0; r < 40; ++r) {
        const std::vector<double> v = sample_cap(r < 20 ? e1 : e2, 0.1, rng);
        for (int c = 0; c < 3; ++c) m(r, c) = v[static_cast<std::size_t>(c)];
    }
    const double h = std::sqrt(0.5);
    m.row(40) << 1, 0, 0;  // inside the first cluster
    m.row(41) << h, h, 0;  // equidistant from both centres
    m.row(42) << 0, h, h;
    const SpherePoints pts(m);

    LabelState state;
    state.predicted.assign(43, 0);
    for (std::size_t i = 0; i < 40; ++i) state.predicted[i] = i < 20 ? 1 : 2;
    state.uncertain = {40};
    state.pruned = {41, 42};

    SUBCASE("nothing to do") {
        LabelState done = state;
        done.predicted[40] = done.predicted[41] = done.predicted[42] = 1;
        done.uncertain.clear();
        done.pruned.clear();
        CHECK(classify_uncertain(done, pts, 16, 2) == done);
    }
    SUBCASE("labels only the unlabeled points") {
        const LabelState out = classify_uncertain(state, pts, 16, 2);
        CHECK(out.witness_labeled == std::vector<std::size_t>{40, 41, 42});
        for (std::size_t i = 0; i < 40; ++i) CHECK(out.predicted[i] == state.predicted[i]);
        CHECK(out.predicted[40] == 1);
        CHECK(out.predicted[42] == 2);
        const WitnessModel model = WitnessModel::from_labels(pts, state.predicted, 16, 2);
        CHECK(reference::witness_labels_serial(pts, out.witness_labeled, model) ==
              std::vector<int>{out.predicted[40], out.predicted[41], out.predicted[42]});
    }
    SUBCASE("no anchors") {
        LabelState empty = state;
        std::fill(empty.predicted.begin(), empty.predicted.end(), 0);
        CHECK_THROWS_AS(classify_uncertain(empty, pts, 16, 2), ConfigError);
    }
    SUBCASE("anchor cap") {
        const WitnessModel capped = WitnessModel::from_labels(pts, state.predicted, 16, 2, {5, 3});
        CHECK(capped.anchors(1).size() == 5);
        CHECK(capped.anchors(2).size() == 5);
    }
}

TEST_CASE("equidistant outliers with equal anchor counts tie to class 1") {
    const SpherePoints a1 = rows({{1, 0, 0}, {0, 0, 1}}, 3);
    const SpherePoints a2 = rows({{0, 1, 0}, {0, 0, 1}}, 3);
    const double h = std::sqrt(0.5);
    CHECK(witness_classify(std::vector<double>{h, h, 0}, WitnessModel({a1, a2}, 16, 2)) == 1);
}

TEST_CASE("parallel classification matches the serial reference") {
    std::mt19937_64 rng(55);
    const SpherePoints pts = random_points(rng, 400, 5);
    std::vector<int> labels(400, 0);
    std::uniform_int_distribution<int> cls(1, 3);
    for (std::size_t i = 0; i < 400; i += 2) labels[i] = cls(rng);
    LabelState st;
    st.predicted = labels;
    for (std::size_t i = 1; i < 400; i += 2) st.uncertain.push_back(i);
    const LabelState out = classify_uncertain(st, pts, 20, 4);
    const WitnessModel model = WitnessModel::from_labels(pts, labels, 20, 4);
    const std::vector<int> serial = reference::witness_labels_serial(pts, st.uncertain, model);
    for (std::size_t t = 0; t < st.uncertain.size(); ++t) CHECK(out.predicted[st.uncertain[t]] == serial[t]);
}
