#include "scale/support.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "scale/error.hpp"
#include "scale/graph.hpp"

namespace scale {

namespace {

constexpr const char* kModule = "support";

std::vector<double> f_values_streamed(const SpherePoints& samples, const ChebyshevKernel& kernel) {
    const auto m = static_cast<std::ptrdiff_t>(samples.size());
    std::vector<double> out(samples.size());
#pragma omp parallel for schedule(dynamic, 16)
    for (std::ptrdiff_t i = 0; i < m; ++i) {
        double sum = 0.0;
        for (std::ptrdiff_t j = 0; j < m; ++j) {
            const double phi = kernel(samples.dot(static_cast<std::size_t>(i), static_cast<std::size_t>(j)));
            sum += phi * phi;
        }
        out[static_cast<std::size_t>(i)] = sum / static_cast<double>(m);
    }
    return out;
}

std::vector<double> f_values_dense(const SpherePoints& samples, const ChebyshevKernel& kernel) {
    const auto m = static_cast<std::ptrdiff_t>(samples.size());
    RowMatrix squared(m, m);
    // <x_i, x_j> and <x_j, x_i> are bitwise equal, so one evaluation fills both.
#pragma omp parallel for schedule(dynamic, 16)
    for (std::ptrdiff_t i = 0; i < m; ++i) {
        for (std::ptrdiff_t j = i; j < m; ++j) {
            const double phi = kernel(samples.dot(static_cast<std::size_t>(i), static_cast<std::size_t>(j)));
            squared(i, j) = phi * phi;
            squared(j, i) = phi * phi;
        }
    }
    std::vector<double> out(samples.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < m; ++i) {
        double sum = 0.0;
        for (std::ptrdiff_t j = 0; j < m; ++j) sum += squared(i, j);
        out[static_cast<std::size_t>(i)] = sum / static_cast<double>(m);
    }
    return out;
}

double sphere_distance_to_caps(std::span<const double> x, const std::vector<Cap>& caps) {
    double best = std::numeric_limits<double>::infinity();
    for (const Cap& cap : caps) {
        const double d = geodesic_angle(dot(x, cap.center)) - cap.radius;
        best = std::min(best, std::max(0.0, d));
    }
    return best;
}

}  // namespace

std::size_t SupportEstimate::kept_count() const {
    return static_cast<std::size_t>(std::count(kept_mask.begin(), kept_mask.end(), true));
}

std::vector<std::size_t> SupportEstimate::kept_indices() const {
    std::vector<std::size_t> out;
    out.reserve(kept_mask.size());
    for (std::size_t i = 0; i < kept_mask.size(); ++i) {
        if (kept_mask[i]) out.push_back(i);
    }
    return out;
}

double f_estimator(std::span<const double> x, const SpherePoints& samples, const ChebyshevKernel& kernel) {
    if (samples.size() == 0) throw ParameterError(kModule, "F_{n,M} needs at least one sample");
    if (x.size() != samples.ambient_dim()) throw ParameterError(kModule, "query point dimension mismatch");
    double sum = 0.0;
    for (std::size_t j = 0; j < samples.size(); ++j) {
        const double phi = kernel(dot(x, samples[j]));
        sum += phi * phi;
    }
    return sum / static_cast<double>(samples.size());
}

double f_estimator(std::span<const double> x, const SpherePoints& samples, int n) {
    return f_estimator(x, samples, ChebyshevKernel(n));
}

std::vector<double> f_values(const SpherePoints& samples, const ChebyshevKernel& kernel, FEvaluation mode) {
    if (samples.size() == 0) throw ParameterError(kModule, "F_{n,M} needs at least one sample");
    if (mode == FEvaluation::automatic) {
        mode = samples.size() <= dense_kernel_limit ? FEvaluation::dense : FEvaluation::streamed;
    }
    return mode == FEvaluation::dense ? f_values_dense(samples, kernel) : f_values_streamed(samples, kernel);
}

SupportEstimate threshold_support(std::vector<double> values, double theta) {
    if (!(theta > 0.0 && theta <= 1.0)) throw ParameterError(kModule, "theta must lie in (0, 1]");
    if (values.empty()) throw ParameterError(kModule, "no F values to threshold");
    SupportEstimate est;
    est.theta = theta;
    est.f_max = *std::max_element(values.begin(), values.end());
    if (!std::isfinite(est.f_max)) throw NumericError(kModule, "F_{n,M} produced a non-finite value");
    const double cut = est.threshold();
    est.kept_mask.resize(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) est.kept_mask[i] = values[i] >= cut;
    est.f_values = std::move(values);
    return est;
}

SupportEstimate prune_support(const SpherePoints& samples, int n, double theta, FEvaluation mode) {
    if (!(theta > 0.0 && theta <= 1.0)) throw ParameterError(kModule, "theta must lie in (0, 1]");
    return threshold_support(f_values(samples, ChebyshevKernel(n), mode), theta);
}

ContainmentReport containment_harness(const SyntheticSpec& spec, int n, double theta,
                                   const ContainmentOptions& options) {
    const SyntheticData data = generate_synthetic(spec);
    const SpherePoints& samples = data.points;
    const ChebyshevKernel kernel(n);
    const SupportEstimate est = threshold_support(f_values(samples, kernel), theta);

    ContainmentReport report;
    report.n = n;
    report.theta = theta;
    report.eta = options.eta;
    report.samples = samples.size();
    report.kept = est.kept_count();
    report.kept_fraction = static_cast<double>(report.kept) / static_cast<double>(report.samples);

    // Probes around every support cap measure how far G_n(Theta) reaches past the support.
    const std::vector<Cap> caps = support_caps(spec);
    std::vector<std::vector<double>> probes;
    std::mt19937_64 rng(spec.seed ^ 0x9e3779b97f4a7c15ULL);
    std::uniform_real_distribution<double> reach(0.0, 1.0);
    for (const Cap& cap : caps) {
        for (std::size_t p = 0; p < options.probes_per_cap; ++p) {
            const double r = reach(rng) * (cap.radius + options.probe_reach);
            probes.push_back(point_at_distance(cap.center, r, rng));
        }
    }
    report.probes = probes.size();
    std::vector<double> probe_distance(probes.size(), -1.0);
    const double cut = est.threshold();
#pragma omp parallel for schedule(dynamic, 8)
    for (std::ptrdiff_t p = 0; p < static_cast<std::ptrdiff_t>(probes.size()); ++p) {
        const auto& x = probes[static_cast<std::size_t>(p)];
        if (f_estimator(x, samples, kernel) >= cut) {
            probe_distance[static_cast<std::size_t>(p)] = sphere_distance_to_caps(x, caps);
        }
    }
    for (double d : probe_distance) {
        if (d < 0.0) continue;
        ++report.probes_kept;
        report.max_kept_distance = std::max(report.max_kept_distance, d);
    }

    const std::vector<std::size_t> kept = est.kept_indices();
    if (!kept.empty()) {
        const AngleGraph graph = build_components(AngleSource(samples), est.kept_mask, options.eta);
        report.component_count = graph.component_count;
        report.min_intercomponent_angle = min_intercomponent_angle(AngleSource(samples), graph);
    }
    report.expected_components = expected_component_count(spec, options.eta);
    report.components_match = report.component_count == report.expected_components;
    return report;
}

}  // namespace scale
