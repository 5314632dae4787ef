#pragma once

#include <cstddef>
#include <vector>

#include "scale/preprocess.hpp"

namespace scale {

/// Connected components of the graph on kept samples with an edge (i, j)
/// whenever angle(i, j) < eta.
struct AngleGraph {
    std::vector<std::size_t> node_ids;      // original sample indices, ascending
    double eta = 0.0;
    std::vector<std::size_t> component_of;  // per node; ids ordered by smallest member
    std::size_t component_count = 0;

    /// Original sample indices of each component.
    std::vector<std::vector<std::size_t>> members() const;
};

/// Union-find over a row-block parallel edge scan. The partition and its
/// numbering do not depend on the thread schedule.
AngleGraph build_components(const AngleSource& angles, const std::vector<bool>& kept_mask, double eta);

inline AngleGraph build_components(const AngleMatrix& angles, const std::vector<bool>& kept_mask, double eta) {
    return build_components(AngleSource(angles), kept_mask, eta);
}

/// Smallest angle between two nodes in different components (+inf if there
/// is only one component).
double min_intercomponent_angle(const AngleSource& angles, const AngleGraph& graph);

/// Validates the common preconditions of component builders; returns the kept node ids.
std::vector<std::size_t> checked_graph_nodes(std::size_t size, const std::vector<bool>& kept_mask, double eta);

}  // namespace scale
