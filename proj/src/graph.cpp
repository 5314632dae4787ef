#include "scale/graph.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <numeric>

#include "scale/error.hpp"

namespace scale {

namespace {

constexpr const char* kModule = "graph";
constexpr std::size_t kRowBlock = 256;

class DisjointSets {
public:
    explicit DisjointSets(std::size_t n) : parent_(n), size_(n, 1) {
        std::iota(parent_.begin(), parent_.end(), std::size_t{0});
    }

    std::size_t find(std::size_t x) {
        std::size_t root = x;
        while (parent_[root] != root) root = parent_[root];
        while (parent_[x] != root) x = std::exchange(parent_[x], root);
        return root;
    }

    void unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return;
        if (size_[a] < size_[b]) std::swap(a, b);
        parent_[b] = a;
        size_[a] += size_[b];
    }

private:
    std::vector<std::size_t> parent_;
    std::vector<std::size_t> size_;
};

}  // namespace

std::vector<std::vector<std::size_t>> AngleGraph::members() const {
    std::vector<std::vector<std::size_t>> out(component_count);
    for (std::size_t v = 0; v < node_ids.size(); ++v) out[component_of[v]].push_back(node_ids[v]);
    return out;
}

std::vector<std::size_t> checked_graph_nodes(std::size_t size, const std::vector<bool>& kept_mask, double eta) {
    if (!(eta > 0.0 && eta <= std::numbers::pi)) throw ParameterError(kModule, "eta must lie in (0, pi]");
    if (kept_mask.size() != size) throw ParameterError(kModule, "kept mask length differs from the angle matrix");
    std::vector<std::size_t> nodes;
    for (std::size_t i = 0; i < size; ++i) {
        if (kept_mask[i]) nodes.push_back(i);
    }
    if (nodes.empty()) throw ParameterError(kModule, "no kept nodes to build a graph on");
    return nodes;
}

AngleGraph build_components(const AngleSource& angles, const std::vector<bool>& kept_mask, double eta) {
    AngleGraph g;
    g.eta = eta;
    g.node_ids = checked_graph_nodes(angles.size(), kept_mask, eta);
    const std::size_t count = g.node_ids.size();

    DisjointSets sets(count);
    std::vector<std::vector<std::uint32_t>> edges(kRowBlock);
    for (std::size_t block = 0; block < count; block += kRowBlock) {
        const std::size_t block_end = std::min(count, block + kRowBlock);
        // Scan in parallel, merge serially: unions never race.
#pragma omp parallel for schedule(dynamic, 4)
        for (std::ptrdiff_t v = static_cast<std::ptrdiff_t>(block); v < static_cast<std::ptrdiff_t>(block_end); ++v) {
            auto& out = edges[static_cast<std::size_t>(v) - block];
            out.clear();
            const std::size_t a = g.node_ids[static_cast<std::size_t>(v)];
            for (std::size_t w = static_cast<std::size_t>(v) + 1; w < count; ++w) {
                if (angles(a, g.node_ids[w]) < eta) out.push_back(static_cast<std::uint32_t>(w));
            }
        }
        for (std::size_t v = block; v < block_end; ++v) {
            for (std::uint32_t w : edges[v - block]) sets.unite(v, w);
        }
    }

    constexpr std::size_t unset = std::numeric_limits<std::size_t>::max();
    std::vector<std::size_t> id_of_root(count, unset);
    g.component_of.resize(count);
    for (std::size_t v = 0; v < count; ++v) {
        const std::size_t root = sets.find(v);
        if (id_of_root[root] == unset) id_of_root[root] = g.component_count++;
        g.component_of[v] = id_of_root[root];
    }
    return g;
}

double min_intercomponent_angle(const AngleSource& angles, const AngleGraph& graph) {
    const auto count = static_cast<std::ptrdiff_t>(graph.node_ids.size());
    double best = std::numeric_limits<double>::infinity();
#pragma omp parallel for schedule(dynamic, 16) reduction(min : best)
    for (std::ptrdiff_t v = 0; v < count; ++v) {
        for (std::ptrdiff_t w = v + 1; w < count; ++w) {
            if (graph.component_of[static_cast<std::size_t>(v)] == graph.component_of[static_cast<std::size_t>(w)]) continue;
            best = std::min(best, angles(graph.node_ids[static_cast<std::size_t>(v)],
                                         graph.node_ids[static_cast<std::size_t>(w)]));
        }
    }
    return best;
}

}  // namespace scale
