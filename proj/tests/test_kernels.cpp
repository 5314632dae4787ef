#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "scale/error.hpp"
#include "scale/kernels.hpp"
#include "scale_reference.hpp"

using namespace scale;

namespace {

// Hand-expanded P_k^(a,a)(x), k = 0..3.
double jacobi_explicit(int k, double a, double x) {
    switch (k) {
    case 0: return 1.0;
    case 1: return (a + 1.0) * x;
    case 2: return a * a * x * x / 2 + 7 * a * x * x / 4 - a / 4 + 3 * x * x / 2 - 0.5;
    case 3:
        return a * a * a * x * x * x / 6 + 5 * a * a * x * x * x / 4 - a * a * x / 4 + 37 * a * x * x * x / 12 -
               5 * a * x / 4 + 5 * x * x * x / 2 - 3 * x / 2;
    }
    return NAN;
}

}  // namespace

TEST_CASE("filter_h matches its defining pieces") {
    CHECK(filter_h(0.0) == 1.0);
    CHECK(filter_h(0.25) == 1.0);
    CHECK(filter_h(0.5) == 1.0);
    CHECK(filter_h(1.0) == 0.0);
    CHECK(filter_h(1.2) == 0.0);
    CHECK(filter_h(0.75) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK_THROWS_AS(filter_h(-0.1), ParameterError);
}

TEST_CASE("filter_h is non-increasing and bounded on a fine grid") {
    double prev = filter_h(0.0);
    for (int i = 1; i <= 10000; ++i) {
        const double h = filter_h(1.5 * i / 10000.0);
        CHECK(h <= prev);
        CHECK(h >= 0.0);
        CHECK(h <= 1.0);
        prev = h;
    }
}

TEST_CASE("Chebyshev kernel small cases") {
    CHECK(chebyshev_kernel(1.0, 2) == doctest::Approx(3.0).epsilon(1e-15));
    CHECK(chebyshev_kernel(-1.0, 2) == doctest::Approx(-1.0).epsilon(1e-15));
    // Term-by-term: 1 + 2 (H(1/4) + H(2/4) + H(3/4)) = 1 + 2 (1 + 1 + 0.5).
    CHECK(reference::chebyshev_direct(1.0, 4) == doctest::Approx(6.0).epsilon(1e-14));
    CHECK(chebyshev_kernel(1.0, 4) == doctest::Approx(6.0).epsilon(1e-14));
    // Inputs outside [-1, 1] are clamped.
    CHECK(chebyshev_kernel(1.5, 4) == chebyshev_kernel(1.0, 4));
    CHECK_THROWS_AS(ChebyshevKernel(1), ParameterError);
}

TEST_CASE("Chebyshev kernel agrees with Clenshaw summation") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::uniform_int_distribution<int> deg(2, 128);
    for (int trial = 0; trial < 1000; ++trial) {
        const double x = u(rng);
        const int n = deg(rng);
        CHECK(std::abs(chebyshev_kernel(x, n) - reference::chebyshev_clenshaw(x, n)) <= 1e-9);
    }
}

TEST_CASE("Chebyshev kernel peak grows linearly") {
    for (int n = 2; n <= 256; ++n) {
        const ChebyshevKernel k(n);
        CHECK(k.peak() >= n);
        CHECK(k.peak() <= 2 * n);
        CHECK(k(1.0) == doctest::Approx(k.peak()).epsilon(1e-13));
    }
}

TEST_CASE("localization ratio stays bounded as n doubles") {
    for (int s : {3, 4}) {
        double prev = localization_ratio(8, s);
        for (int n : {16, 32, 64}) {
            const double cur = localization_ratio(n, s);
            CHECK(cur / prev >= 0.25);
            CHECK(cur / prev <= 4.0);
            prev = cur;
        }
    }
}

TEST_CASE("Jacobi recurrence matches explicit low-degree polynomials") {
    for (double a : {-0.5, 0.0, 0.5, 1.0, 3.5}) {
        for (double x : {-1.0, -0.3, 0.0, 0.42, 1.0}) {
            for (int k = 0; k <= 3; ++k) {
                CHECK(std::abs(jacobi_eval(k, a, x) - jacobi_explicit(k, a, x)) <= 1e-12);
            }
        }
    }
    CHECK(jacobi_eval(0, 2.0, 0.3) == 1.0);
    CHECK(jacobi_eval(3, 0.0, 1.0) == doctest::Approx(1.0).epsilon(1e-15));
    // Legendre P_k(1) = 1 for every k.
    for (int k = 0; k < 40; ++k) CHECK(jacobi_eval(k, 0.0, 1.0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK_THROWS_AS(jacobi_eval(2, -1.0, 0.5), ParameterError);
}

TEST_CASE("Jacobi normalisation") {
    CHECK(jacobi_norm(0, 0.0) == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(jacobi_norm(1, 0.0) == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
    CHECK(jacobi_norm(0, 0.5) == doctest::Approx(std::numbers::pi / 2).epsilon(1e-14));
    // Legendre: 2 / (2k + 1).
    for (int k = 0; k < 20; ++k) CHECK(jacobi_norm(k, 0.0) == doctest::Approx(2.0 / (2 * k + 1)).epsilon(1e-12));
    // Chebyshev first kind: pi at k = 0 through the folded Gamma factor.
    CHECK(jacobi_norm(0, -0.5) == doctest::Approx(std::numbers::pi).epsilon(1e-13));
    CHECK(std::isfinite(jacobi_norm(500, 24.0)));
    CHECK_THROWS_AS(jacobi_norm(1, -1.0), ParameterError);
}

TEST_CASE("Jacobi kernel") {
    CHECK(jacobi_kernel(0.3, 1, 2) == doctest::Approx(1.0 / jacobi_norm(0, 0.0)).epsilon(1e-15));
    CHECK(jacobi_kernel(-0.7, 1, 5) == doctest::Approx(1.0 / jacobi_norm(0, 1.5)).epsilon(1e-15));
    CHECK(jacobi_kernel(1.0, 2, 2) == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(jacobi_kernel(std::cos(0.05), 32, 4) > jacobi_kernel(std::cos(1.5), 32, 4));
    CHECK_THROWS_AS(JacobiKernel(8, 1), ParameterError);

    // The recurrence-folded evaluation equals the literal sum.
    for (int q : {2, 3, 4, 10}) {
        const double a = q / 2.0 - 1.0;
        const JacobiKernel kernel(24, q);
        for (double x : {-0.9, -0.2, 0.0, 0.5, 0.99, 1.0}) {
            double literal = 0.0;
            for (int k = 0; k < 24; ++k) {
                literal += filter_h(k / 24.0) * jacobi_eval(k, a, 1.0) * jacobi_eval(k, a, x) / jacobi_norm(k, a);
            }
            CHECK(kernel(x) == doctest::Approx(literal).epsilon(1e-10));
        }
    }
}

TEST_CASE("kernel config validation") {
    KernelConfig ok;
    CHECK_NOTHROW(ok.validate());
    KernelConfig bad = ok;
    bad.n = 1;
    CHECK_THROWS_AS(bad.validate(), ParameterError);
    bad = ok;
    bad.theta_cap = 0.0;
    CHECK_THROWS_AS(bad.validate(), ParameterError);
    bad = ok;
    bad.decay_exponent = 1;
    CHECK_THROWS_AS(bad.validate(), ParameterError);
}
