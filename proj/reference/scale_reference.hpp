#pragma once

// Serial, deliberately plain implementations used as oracles by the test
// suites and as baselines by the benchmarks. Nothing here is parallel and
// nothing here shares an evaluation route with the library code it checks.

#include <cstddef>
#include <vector>

#include "scale/graph.hpp"
#include "scale/preprocess.hpp"
#include "scale/witness.hpp"

namespace scale::reference {

/// 1 + 2 sum H(l/n) cos(l t) with one std::cos per term.
double chebyshev_direct(double inner, int n);

/// Clenshaw summation of 1 + 2 sum H(l/n) T_l(x) in the Chebyshev basis.
double chebyshev_clenshaw(double inner, int n);

/// Row-by-row double loop over all pairs.
AngleMatrix angle_matrix_serial(const SpherePoints& points);

/// F_{n,M}(x_i) by a plain double loop, summing j in ascending order.
std::vector<double> f_values_serial(const SpherePoints& points, int n);

/// Components by breadth-first search over the eta-graph, no union-find.
AngleGraph components_oracle(const AngleSource& angles, const std::vector<bool>& kept_mask, double eta);

inline AngleGraph components_oracle(const AngleMatrix& angles, const std::vector<bool>& kept_mask, double eta) {
    return components_oracle(AngleSource(angles), kept_mask, eta);
}

/// Witness labels for `targets`, one point after another.
std::vector<int> witness_labels_serial(const SpherePoints& points, const std::vector<std::size_t>& targets,
                                       const WitnessModel& model);

}  // namespace scale::reference
