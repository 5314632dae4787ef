#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "scale/data.hpp"
#include "scale/kernels.hpp"
#include "scale/preprocess.hpp"

namespace scale {

/// F_{n,M} evaluated at every sample together with the thresholded set
/// G_n(Theta) restricted to the samples.
struct SupportEstimate {
    std::vector<double> f_values;
    double f_max = 0.0;
    double theta = 1.0;
    std::vector<bool> kept_mask;

    double threshold() const noexcept { return theta * f_max; }
    std::size_t kept_count() const;
    std::vector<std::size_t> kept_indices() const;
};

/// F_{n,M}(x) = (1/M) sum_j Phi_n(<x, x_j>)^2.
double f_estimator(std::span<const double> x, const SpherePoints& samples, const ChebyshevKernel& kernel);
double f_estimator(std::span<const double> x, const SpherePoints& samples, int n);

enum class FEvaluation {
    automatic,  // dense below dense_kernel_limit, streamed above
    dense,      // materialise the symmetric M x M matrix of Phi_n^2
    streamed    // evaluate pairs on the fly, one row at a time
};

/// Largest sample count for which the automatic mode builds the dense matrix.
inline constexpr std::size_t dense_kernel_limit = 4096;

/// F_{n,M}(x_i) for every sample. Each row is summed by one thread in index
/// order, so both evaluation modes and every thread count give identical bits.
std::vector<double> f_values(const SpherePoints& samples, const ChebyshevKernel& kernel,
                             FEvaluation mode = FEvaluation::automatic);

/// Keeps sample i iff F(x_i) >= theta * max_k F(x_k).
SupportEstimate threshold_support(std::vector<double> f_values, double theta);
SupportEstimate prune_support(const SpherePoints& samples, int n, double theta,
                              FEvaluation mode = FEvaluation::automatic);

struct ContainmentOptions {
    double eta = 0.3;               // separation used for the component check
    std::size_t probes_per_cap = 400;
    double probe_reach = 0.6;       // probes extend this far past each cap edge
};

/// Empirical check of support containment on a synthetic instance with known
/// support. Failures are recorded, never thrown.
struct ContainmentReport {
    int n = 0;
    double theta = 0.0;
    double eta = 0.0;
    std::size_t samples = 0;
    std::size_t kept = 0;
    double kept_fraction = 0.0;            // samples (all on the true support) that were kept
    std::size_t probes = 0;
    std::size_t probes_kept = 0;
    double max_kept_distance = 0.0;        // max geodesic distance of a kept probe to the support
    std::size_t component_count = 0;       // components of the kept samples at eta
    std::size_t expected_components = 0;  // eta-components of the true support
    bool components_match = false;
    double min_intercomponent_angle = 0.0; // smallest angle between distinct components
};

ContainmentReport containment_harness(const SyntheticSpec& spec, int n, double theta,
                                   const ContainmentOptions& options = {});

}  // namespace scale
