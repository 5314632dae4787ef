#include "scale/witness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "scale/error.hpp"

namespace scale {

namespace {

constexpr const char* kModule = "witness";

int argmax_class(const std::vector<double>& scores) {
    int best = 0;
    bool any_finite = false;
    for (std::size_t k = 0; k < scores.size(); ++k) {
        if (!std::isfinite(scores[k])) continue;
        if (!any_finite || scores[k] > scores[static_cast<std::size_t>(best)]) best = static_cast<int>(k);
        any_finite = true;
    }
    if (!any_finite) throw NumericError(kModule, "every class score is non-finite");
    return best + 1;
}

}  // namespace

WitnessModel::WitnessModel(std::vector<SpherePoints> anchors, int n, int q)
    : anchors_(std::move(anchors)), kernel_(n, q) {
    bool any = false;
    for (const SpherePoints& a : anchors_) {
        if (a.size() == 0) continue;
        any = true;
        if (static_cast<int>(a.sphere_dim()) != q) {
            throw ParameterError(kModule, "anchor dimension does not match q");
        }
    }
    if (!any) throw ConfigError(kModule, "no anchors in any class; the active loop labeled nothing");
}

WitnessModel WitnessModel::from_labels(const SpherePoints& points, const std::vector<int>& labels, int n, int q,
                                       const WitnessOptions& options) {
    if (labels.size() != points.size()) throw ParameterError(kModule, "label vector length mismatch");
    const int classes = labels.empty() ? 0 : *std::max_element(labels.begin(), labels.end());
    std::vector<std::vector<std::size_t>> rows(static_cast<std::size_t>(std::max(classes, 0)));
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (labels[i] > 0) rows[static_cast<std::size_t>(labels[i] - 1)].push_back(i);
    }
    std::mt19937_64 rng(options.seed);
    std::vector<SpherePoints> anchors;
    for (auto& r : rows) {
        if (options.anchor_cap && r.size() > *options.anchor_cap) {
            std::shuffle(r.begin(), r.end(), rng);
            r.resize(*options.anchor_cap);
            std::sort(r.begin(), r.end());
        }
        anchors.push_back(points.subset(r));
    }
    return WitnessModel(std::move(anchors), n, q);
}

std::vector<double> witness_scores(std::span<const double> x, const WitnessModel& model,
                                   const KernelFunction& kernel) {
    std::vector<double> scores(model.class_count(), -std::numeric_limits<double>::infinity());
    for (std::size_t k = 0; k < model.class_count(); ++k) {
        const SpherePoints& a = model.anchors(static_cast<int>(k + 1));
        if (a.size() == 0) continue;
        if (x.size() != a.ambient_dim()) throw ParameterError(kModule, "point dimension does not match anchors");
        double sum = 0.0;
        for (std::size_t i = 0; i < a.size(); ++i) sum += kernel(dot(x, a[i]));
        scores[k] = sum;
    }
    return scores;
}

std::vector<double> witness_scores(std::span<const double> x, const WitnessModel& model) {
    const JacobiKernel& kernel = model.kernel();
    return witness_scores(x, model, [&kernel](double t) { return kernel(t); });
}

int witness_classify(std::span<const double> x, const WitnessModel& model) {
    return argmax_class(witness_scores(x, model));
}

int witness_classify(std::span<const double> x, const WitnessModel& model, const KernelFunction& kernel) {
    return argmax_class(witness_scores(x, model, kernel));
}

LabelState classify_uncertain(LabelState state, const SpherePoints& points, int n, int q,
                              const WitnessOptions& options) {
    const std::vector<std::size_t> targets = state.needs_witness();
    if (targets.empty()) return state;
    const WitnessModel model = WitnessModel::from_labels(points, state.predicted, n, q, options);

    std::vector<int> assigned(targets.size(), 0);
    // Exceptions must not escape an OpenMP region; collect and rethrow.
    bool failed = false;
#pragma omp parallel for schedule(dynamic, 8)
    for (std::ptrdiff_t t = 0; t < static_cast<std::ptrdiff_t>(targets.size()); ++t) {
        try {
            assigned[static_cast<std::size_t>(t)] = witness_classify(points[targets[static_cast<std::size_t>(t)]], model);
        } catch (const Error&) {
#pragma omp atomic write
            failed = true;
        }
    }
    if (failed) throw NumericError(kModule, "witness scores were non-finite for an uncertain point");
    for (std::size_t t = 0; t < targets.size(); ++t) state.predicted[targets[t]] = assigned[t];
    state.witness_labeled = targets;
    return state;
}

}  // namespace scale
