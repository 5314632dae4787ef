#include "scale/active_loop.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <set>

#include "scale/error.hpp"
#include "scale/graph.hpp"

namespace scale {

namespace {

constexpr const char* kModule = "active_loop";

bool same_double(double a, double b) { return (std::isnan(a) && std::isnan(b)) || a == b; }

}  // namespace

void LoopConfig::validate() const {
    if (!(eta_start > 0.0 && eta_start <= eta_max && eta_max <= std::numbers::pi)) {
        throw ParameterError(kModule, "need 0 < eta_start <= eta_max <= pi");
    }
    if (!(eta_step > 0.0)) throw ParameterError(kModule, "eta_step must be positive");
    if (n < 2) throw ParameterError(kModule, "degree n must be >= 2");
    if (!(theta > 0.0 && theta <= 1.0)) throw ParameterError(kModule, "theta must lie in (0, 1]");
}

std::vector<double> LoopConfig::eta_schedule() const {
    validate();
    std::vector<double> etas;
    // Multiples of the step avoid accumulated drift.
    for (std::size_t t = 0;; ++t) {
        const double eta = eta_start + static_cast<double>(t) * eta_step;
        if (eta > eta_max * (1.0 + 1e-12)) break;
        etas.push_back(std::min(eta, eta_max));
    }
    return etas;
}

std::vector<std::size_t> LabelState::needs_witness() const {
    std::vector<std::size_t> out = uncertain;
    out.insert(out.end(), pruned.begin(), pruned.end());
    std::sort(out.begin(), out.end());
    return out;
}

bool LabelState::operator==(const LabelState& o) const {
    return predicted == o.predicted && queried == o.queried && uncertain == o.uncertain && pruned == o.pruned &&
           witness_labeled == o.witness_labeled && component_history == o.component_history &&
           oracle_queries == o.oracle_queries && budget_exhausted == o.budget_exhausted &&
           std::equal(label_eta.begin(), label_eta.end(), o.label_eta.begin(), o.label_eta.end(), same_double);
}

LabelState run_scale(const AngleSource& angles, const SupportEstimate& support, LabelOracle& oracle,
                     const LoopConfig& config, std::span<const LabeledIndex> prequeried) {
    config.validate();
    const std::size_t m = angles.size();
    if (support.kept_mask.size() != m || support.f_values.size() != m) {
        throw ParameterError(kModule, "support estimate does not match the angle source");
    }

    LabelState state;
    state.predicted.assign(m, 0);
    state.label_eta.assign(m, std::numeric_limits<double>::quiet_NaN());
    std::vector<int> queried_label(m, 0);
    for (const LabeledIndex& li : prequeried) {
        if (li.index >= m || li.label < 1) throw ParameterError(kModule, "pre-queried entry out of range");
        if (queried_label[li.index] != 0) continue;
        queried_label[li.index] = li.label;
        state.predicted[li.index] = li.label;
        state.queried.push_back(li);
    }

    const auto propagate = [&](const std::vector<std::size_t>& members, int label, double eta) {
        for (std::size_t j : members) {
            if (state.predicted[j] != 0) continue;
            state.predicted[j] = label;
            state.label_eta[j] = eta;
        }
    };

    if (support.kept_count() > 0) {
        for (const double eta : config.eta_schedule()) {
            const AngleGraph graph = build_components(angles, support.kept_mask, eta);
            state.component_history.push_back({eta, graph.component_count});
            for (const std::vector<std::size_t>& members : graph.members()) {
                std::set<int> labels;
                for (std::size_t j : members) {
                    if (queried_label[j] != 0) labels.insert(queried_label[j]);
                }
                if (labels.empty()) {
                    if (config.query_budget && state.oracle_queries >= *config.query_budget) {
                        state.budget_exhausted = true;
                        continue;
                    }
                    // members are ascending, so strict > keeps the lowest index on ties.
                    std::size_t best = members.front();
                    for (std::size_t j : members) {
                        if (support.f_values[j] > support.f_values[best]) best = j;
                    }
                    const int label = oracle.query(best);
                    ++state.oracle_queries;
                    queried_label[best] = label;
                    state.predicted[best] = label;
                    state.queried.push_back({best, label});
                    propagate(members, label, eta);
                } else if (labels.size() == 1) {
                    propagate(members, *labels.begin(), eta);
                }
            }
        }
    }

    for (std::size_t i = 0; i < m; ++i) {
        if (state.predicted[i] != 0) continue;
        (support.kept_mask[i] ? state.uncertain : state.pruned).push_back(i);
    }
    return state;
}

std::vector<ComponentCount> component_sweep(const AngleSource& angles, const std::vector<bool>& kept_mask,
                                            const LoopConfig& config) {
    std::vector<ComponentCount> history;
    for (const double eta : config.eta_schedule()) {
        history.push_back({eta, build_components(angles, kept_mask, eta).component_count});
    }
    return history;
}

int refine_degree(const SpherePoints& points, const AngleSource& angles, const LoopConfig& config,
                  int max_doublings) {
    config.validate();
    if (max_doublings < 1) throw ParameterError(kModule, "max_doublings must be positive");
    int n = config.n;
    std::vector<ComponentCount> previous =
        component_sweep(angles, prune_support(points, n, config.theta).kept_mask, config);
    for (int step = 0; step < max_doublings; ++step) {
        const int next = 2 * n;
        std::vector<ComponentCount> current =
            component_sweep(angles, prune_support(points, next, config.theta).kept_mask, config);
        if (current == previous) return n;
        n = next;
        previous = std::move(current);
    }
    return n;
}

}  // namespace scale
