#include "scale/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "scale/error.hpp"

namespace scale {

namespace {

constexpr const char* kModule = "kernels";

double psi(double s) { return s > 0.0 ? std::exp(-1.0 / s) : 0.0; }

}  // namespace

double filter_h(double t) {
    if (!(t >= 0.0)) throw ParameterError(kModule, "filter_h needs t >= 0");
    if (t <= 0.5) return 1.0;
    if (t >= 1.0) return 0.0;
    const double up = psi(1.0 - t);
    const double down = psi(t - 0.5);
    return up / (up + down);
}

void KernelConfig::validate() const {
    if (n < 2) throw ParameterError(kModule, "degree n must be >= 2");
    if (!(theta_cap > 0.0 && theta_cap <= 1.0)) throw ParameterError(kModule, "theta must lie in (0, 1]");
    if (decay_exponent < 2) throw ParameterError(kModule, "decay exponent S must be >= 2");
    if (jacobi_dim < 2) throw ParameterError(kModule, "Jacobi kernel needs q >= 2");
}

ChebyshevKernel::ChebyshevKernel(int n) : n_(n) {
    if (n < 2) throw ParameterError(kModule, "Chebyshev kernel degree must be >= 2");
    weights_.resize(static_cast<std::size_t>(n));
    double peak = 1.0;
    for (int l = 0; l < n; ++l) {
        weights_[static_cast<std::size_t>(l)] = filter_h(static_cast<double>(l) / n);
        if (l > 0) peak += 2.0 * weights_[static_cast<std::size_t>(l)];
    }
    peak_ = peak;
}

double ChebyshevKernel::operator()(double inner) const noexcept {
    const double cos1 = std::cos(std::acos(std::clamp(inner, -1.0, 1.0)));
    // cos((l+1)t) = 2 cos(t) cos(l t) - cos((l-1)t)
    double prev = 1.0;
    double cur = cos1;
    double sum = 1.0 + 2.0 * weights_[1] * cur;
    for (int l = 2; l < n_; ++l) {
        const double next = 2.0 * cos1 * cur - prev;
        prev = cur;
        cur = next;
        sum += 2.0 * weights_[static_cast<std::size_t>(l)] * cur;
    }
    return sum;
}

double chebyshev_kernel(double inner, int n) { return ChebyshevKernel(n)(inner); }

double jacobi_eval(int k, double alpha, double x) {
    if (!(alpha > -1.0)) throw ParameterError(kModule, "Jacobi parameter alpha must exceed -1");
    if (k < 0) throw ParameterError(kModule, "Jacobi degree must be non-negative");
    if (k == 0) return 1.0;
    double prev = 1.0;
    double cur = (alpha + 1.0) * x;
    for (int j = 2; j <= k; ++j) {
        const double s = 2.0 * j + 2.0 * alpha;  // 2j + a + b
        const double a1 = 2.0 * j * (j + 2.0 * alpha) * (s - 2.0);
        const double a2 = (s - 1.0) * s * (s - 2.0);
        const double a3 = 2.0 * (j + alpha - 1.0) * (j + alpha - 1.0) * s;
        const double next = (a2 * x * cur - a3 * prev) / a1;
        prev = cur;
        cur = next;
    }
    return cur;
}

double jacobi_norm(int k, double alpha) {
    if (!(alpha > -1.0)) throw ParameterError(kModule, "Jacobi parameter alpha must exceed -1");
    if (k < 0) throw ParameterError(kModule, "Jacobi degree must be non-negative");
    const double kd = k;
    double log_n = (2.0 * alpha + 1.0) * std::numbers::ln2 + 2.0 * std::lgamma(kd + alpha + 1.0) -
                   std::lgamma(kd + 1.0);
    if (k == 0) {
        log_n -= std::lgamma(2.0 * alpha + 2.0);
    } else {
        log_n -= std::lgamma(kd + 2.0 * alpha + 1.0) + std::log(2.0 * kd + 2.0 * alpha + 1.0);
    }
    const double value = std::exp(log_n);
    if (!std::isfinite(value) || value <= 0.0) {
        throw NumericError(kModule, "N_k overflowed for k = " + std::to_string(k));
    }
    return value;
}

JacobiKernel::JacobiKernel(int n, int q) : n_(n), q_(q), alpha_(q / 2.0 - 1.0) {
    if (q < 2) throw ParameterError(kModule, "Jacobi kernel needs sphere dimension q >= 2");
    if (n < 1) throw ParameterError(kModule, "Jacobi kernel degree must be >= 1");
    coeffs_.resize(static_cast<std::size_t>(n));
    rec_a_.assign(static_cast<std::size_t>(n), 0.0);
    rec_b_.assign(static_cast<std::size_t>(n), 0.0);
    for (int k = 0; k < n; ++k) {
        const double h = filter_h(static_cast<double>(k) / n);
        coeffs_[static_cast<std::size_t>(k)] = h * jacobi_eval(k, alpha_, 1.0) / jacobi_norm(k, alpha_);
        if (!std::isfinite(coeffs_[static_cast<std::size_t>(k)])) {
            throw NumericError(kModule, "Jacobi kernel coefficient overflowed at k = " + std::to_string(k));
        }
        if (k >= 2) {
            const double s = 2.0 * k + 2.0 * alpha_;
            const double a1 = 2.0 * k * (k + 2.0 * alpha_) * (s - 2.0);
            rec_a_[static_cast<std::size_t>(k)] = (s - 1.0) * s * (s - 2.0) / a1;
            rec_b_[static_cast<std::size_t>(k)] = 2.0 * (k + alpha_ - 1.0) * (k + alpha_ - 1.0) * s / a1;
        }
    }
}

double JacobiKernel::operator()(double inner) const noexcept {
    const double x = std::clamp(inner, -1.0, 1.0);
    double sum = coeffs_[0];
    if (n_ == 1) return sum;
    double prev = 1.0;
    double cur = (alpha_ + 1.0) * x;
    sum += coeffs_[1] * cur;
    for (int k = 2; k < n_; ++k) {
        const double next = rec_a_[static_cast<std::size_t>(k)] * x * cur - rec_b_[static_cast<std::size_t>(k)] * prev;
        prev = cur;
        cur = next;
        sum += coeffs_[static_cast<std::size_t>(k)] * cur;
    }
    return sum;
}

double jacobi_kernel(double inner, int n, int q) { return JacobiKernel(n, q)(inner); }

double localization_ratio(int n, int decay_exponent, std::size_t grid_points) {
    if (decay_exponent < 2) throw ParameterError(kModule, "decay exponent S must be >= 2");
    if (grid_points < 2) throw ParameterError(kModule, "localization grid needs at least 2 points");
    const ChebyshevKernel kernel(n);
    double ratio = 0.0;
    for (std::size_t i = 0; i < grid_points; ++i) {
        const double t = std::numbers::pi * static_cast<double>(i) / static_cast<double>(grid_points - 1);
        const double weight = std::max(1.0, std::pow(n * t, decay_exponent));
        ratio = std::max(ratio, std::abs(kernel(std::cos(t))) * weight / n);
    }
    return ratio;
}

}  // namespace scale
