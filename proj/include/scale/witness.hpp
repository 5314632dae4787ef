#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "scale/active_loop.hpp"
#include "scale/kernels.hpp"
#include "scale/preprocess.hpp"

namespace scale {

struct WitnessOptions {
    std::optional<std::size_t> anchor_cap;  // uniform per-class subsample size
    std::uint64_t seed = 1;
};

/// Per-class anchor sets for the witness rule. Class k lives at slot k - 1;
/// empty classes never win.
class WitnessModel {
public:
    WitnessModel(std::vector<SpherePoints> anchors, int n, int q);

    /// Anchors are all points with a non-zero entry in `labels`.
    static WitnessModel from_labels(const SpherePoints& points, const std::vector<int>& labels, int n, int q,
                                    const WitnessOptions& options = {});

    std::size_t class_count() const noexcept { return anchors_.size(); }
    const SpherePoints& anchors(int label) const { return anchors_.at(static_cast<std::size_t>(label - 1)); }
    const JacobiKernel& kernel() const noexcept { return kernel_; }

private:
    std::vector<SpherePoints> anchors_;
    JacobiKernel kernel_;
};

using KernelFunction = std::function<double(double)>;

/// sum over anchors of class k of kernel(<x, anchor>); -inf for empty classes.
std::vector<double> witness_scores(std::span<const double> x, const WitnessModel& model);
std::vector<double> witness_scores(std::span<const double> x, const WitnessModel& model,
                                   const KernelFunction& kernel);

/// argmax of the class scores, ties to the lowest class.
int witness_classify(std::span<const double> x, const WitnessModel& model);
int witness_classify(std::span<const double> x, const WitnessModel& model, const KernelFunction& kernel);

/// Labels every uncertain and pruned point with the witness rule, using all
/// loop-labeled points as anchors. Existing labels are left untouched.
LabelState classify_uncertain(LabelState state, const SpherePoints& points, int n, int q,
                              const WitnessOptions& options = {});

}  // namespace scale
