#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "scale/preprocess.hpp"
#include "scale/support.hpp"

namespace scale {

struct LabeledIndex {
    std::size_t index = 0;
    int label = 0;

    bool operator==(const LabeledIndex&) const = default;
};

struct QueryRecord {
    std::size_t order = 0;  // 1-based
    std::size_t index = 0;
    int label = 0;

    bool operator==(const QueryRecord&) const = default;
};

/// Source of ground-truth labels. Every distinct index is charged once;
/// repeated queries are answered from a cache without being counted.
class LabelOracle {
public:
    virtual ~LabelOracle() = default;

    int query(std::size_t index);
    std::size_t query_count() const noexcept { return log_.size(); }
    const std::vector<QueryRecord>& log() const noexcept { return log_; }

protected:
    /// Label in 1..K for `index`; throws DataError if it has none.
    virtual int lookup(std::size_t index) const = 0;

private:
    std::unordered_map<std::size_t, int> cache_;
    std::vector<QueryRecord> log_;
};

/// Answers from the dataset's own label vector.
class GroundTruthOracle final : public LabelOracle {
public:
    explicit GroundTruthOracle(std::vector<int> labels) : labels_(std::move(labels)) {}

protected:
    int lookup(std::size_t index) const override;

private:
    std::vector<int> labels_;
};

/// Answers from a fixed table, typically a previous run's query log.
class ReplayOracle final : public LabelOracle {
public:
    explicit ReplayOracle(std::map<std::size_t, int> answers) : answers_(std::move(answers)) {}
    static ReplayOracle from_csv(const std::filesystem::path& path);

protected:
    int lookup(std::size_t index) const override;

private:
    std::map<std::size_t, int> answers_;
};

/// Reads "index,label" or "order,index,label" rows; a header line is skipped.
std::vector<LabeledIndex> read_labeled_indices(const std::filesystem::path& path);

/// CSV with header "order,index,label".
std::string format_query_log(const std::vector<QueryRecord>& log);
void write_query_log(const std::filesystem::path& path, const std::vector<QueryRecord>& log);

struct LoopConfig {
    double eta_start = 0.1;
    double eta_step = 0.05;
    double eta_max = 0.7853981633974483;  // pi / 4
    int n = 32;
    double theta = 0.1;
    std::optional<std::size_t> query_budget;

    void validate() const;
    /// eta_start, eta_start + step, ... up to eta_max (inclusive up to rounding).
    std::vector<double> eta_schedule() const;
};

struct ComponentCount {
    double eta = 0.0;
    std::size_t components = 0;

    bool operator==(const ComponentCount&) const = default;
};

/// Per-point outcome of the active loop. `predicted[i] == 0` means unlabeled.
/// After the loop every index is in exactly one of: labeled, `uncertain`
/// (kept but never in a consistently labeled component) or `pruned`
/// (outside the estimated support and unlabeled).
struct LabelState {
    std::vector<int> predicted;
    std::vector<LabeledIndex> queried;       // the queried set, in insertion order
    std::vector<std::size_t> uncertain;
    std::vector<std::size_t> pruned;
    std::vector<double> label_eta;           // eta of propagation; NaN for queried/unlabeled
    std::vector<std::size_t> witness_labeled;
    std::vector<ComponentCount> component_history;
    std::size_t oracle_queries = 0;
    bool budget_exhausted = false;

    /// uncertain and pruned indices, ascending: the witness stage's input.
    std::vector<std::size_t> needs_witness() const;

    bool operator==(const LabelState&) const;
};

/// The active sweep over eta. For every component of the eta-graph on the
/// kept samples: with no queried member, query the member of largest F and
/// give its label to the component; with queried members that all agree,
/// give their label to the component; otherwise leave it alone. Labels once
/// assigned are never replaced.
LabelState run_scale(const AngleSource& angles, const SupportEstimate& support, LabelOracle& oracle,
                     const LoopConfig& config, std::span<const LabeledIndex> prequeried = {});

/// Component counts of the kept samples over the eta schedule.
std::vector<ComponentCount> component_sweep(const AngleSource& angles, const std::vector<bool>& kept_mask,
                                            const LoopConfig& config);

/// Doubles n (re-pruning each time) until the component history over the eta
/// sweep is identical for two consecutive degrees, at most `max_doublings` times.
/// Returns the first degree of the stable pair, or the last one tried.
int refine_degree(const SpherePoints& points, const AngleSource& angles, const LoopConfig& config,
                  int max_doublings = 3);

}  // namespace scale
