#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace scale {

/// Smooth low-pass filter: 1 on [0, 1/2], 0 on [1, inf), and on (1/2, 1)
///   H(t) = psi(1 - t) / (psi(1 - t) + psi(t - 1/2)),  psi(s) = exp(-1/s) for s > 0.
/// The bridge is C-infinity, non-increasing and symmetric about t = 3/4.
double filter_h(double t);

struct KernelConfig {
    int n = 32;                // polynomial degree of the localized kernel
    double theta_cap = 0.1;    // support threshold, relative to max F
    int decay_exponent = 4;    // S, only used by the localization check
    int jacobi_dim = 2;        // q of the witness kernel on S^q

    void validate() const;
};

/// Phi_n(cos t) = 1 + 2 sum_{l=1}^{n-1} H(l/n) cos(l t).
///
/// The filter weights are computed once at construction and never mutated, so
/// one instance can be shared by any number of threads.
class ChebyshevKernel {
public:
    explicit ChebyshevKernel(int n);

    int degree() const noexcept { return n_; }
    /// `inner` is clamped into [-1, 1].
    double operator()(double inner) const noexcept;
    /// Phi_n(1).
    double peak() const noexcept { return peak_; }
    /// H(l/n) for l = 0..n-1.
    std::span<const double> filter_weights() const noexcept { return weights_; }

private:
    int n_;
    std::vector<double> weights_;
    double peak_;
};

/// One-shot evaluation; prefer ChebyshevKernel when evaluating repeatedly.
double chebyshev_kernel(double inner, int n);

/// Jacobi polynomial P_k^(alpha, alpha)(x) by the three-term recurrence.
double jacobi_eval(int k, double alpha, double x);

/// N_k = 2^(2a+1) G(k+a+1)^2 / (G(k+1) G(k+2a+1)) / (2k+2a+1), evaluated in
/// log-space. For k = 0 the factor G(2a+1)(2a+1) is folded into G(2a+2).
double jacobi_norm(int k, double alpha);

/// Phi_{n,q}(x) = sum_{k=0}^{n-1} H(k/n) P_k(1) P_k(x) / N_k with alpha = q/2 - 1.
class JacobiKernel {
public:
    JacobiKernel(int n, int q);

    int degree() const noexcept { return n_; }
    int sphere_dim() const noexcept { return q_; }
    double alpha() const noexcept { return alpha_; }
    double operator()(double inner) const noexcept;

private:
    int n_;
    int q_;
    double alpha_;
    std::vector<double> coeffs_;  // H(k/n) P_k(1) / N_k
    // Recurrence factors for k >= 2: P_k = (a_k x P_{k-1} - b_k P_{k-2}).
    std::vector<double> rec_a_;
    std::vector<double> rec_b_;
};

double jacobi_kernel(double inner, int n, int q);

/// R(n) = max over a uniform grid of t in [0, pi] of
///   |Phi_n(cos t)| * max(1, (n t)^S) / n.
/// Bounded independently of n when the kernel is localized at order S.
double localization_ratio(int n, int decay_exponent, std::size_t grid_points = 10000);

}  // namespace scale
