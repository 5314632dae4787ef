#include "scale_reference.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>

#include "scale/kernels.hpp"

namespace scale::reference {

double chebyshev_direct(double inner, int n) {
    const double t = std::acos(std::clamp(inner, -1.0, 1.0));
    double sum = 1.0;
    for (int l = 1; l < n; ++l) sum += 2.0 * filter_h(static_cast<double>(l) / n) * std::cos(l * t);
    return sum;
}

double chebyshev_clenshaw(double inner, int n) {
    const double x = std::clamp(inner, -1.0, 1.0);
    double b1 = 0.0;  // b_{k+1}
    double b2 = 0.0;  // b_{k+2}
    for (int k = n - 1; k >= 1; --k) {
        const double b0 = 2.0 * filter_h(static_cast<double>(k) / n) + 2.0 * x * b1 - b2;
        b2 = b1;
        b1 = b0;
    }
    return 1.0 + x * b1 - b2;
}

AngleMatrix angle_matrix_serial(const SpherePoints& points) {
    const std::size_t m = points.size();
    RowMatrix out(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(m));
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            if (i == j) {
                out(i, j) = 0.0;
                continue;
            }
            double s = 0.0;
            for (std::size_t k = 0; k < points.ambient_dim(); ++k) s += points[i][k] * points[j][k];
            out(i, j) = std::acos(std::clamp(s, -1.0, 1.0));
        }
    }
    return AngleMatrix(std::move(out));
}

std::vector<double> f_values_serial(const SpherePoints& points, int n) {
    const ChebyshevKernel kernel(n);
    const std::size_t m = points.size();
    std::vector<double> out(m);
    for (std::size_t i = 0; i < m; ++i) {
        double sum = 0.0;
        for (std::size_t j = 0; j < m; ++j) {
            double s = 0.0;
            for (std::size_t k = 0; k < points.ambient_dim(); ++k) s += points[i][k] * points[j][k];
            const double phi = kernel(s);
            sum += phi * phi;
        }
        out[i] = sum / static_cast<double>(m);
    }
    return out;
}

AngleGraph components_oracle(const AngleSource& angles, const std::vector<bool>& kept_mask, double eta) {
    AngleGraph g;
    g.eta = eta;
    g.node_ids = checked_graph_nodes(angles.size(), kept_mask, eta);
    const std::size_t count = g.node_ids.size();
    constexpr std::size_t unseen = std::numeric_limits<std::size_t>::max();
    g.component_of.assign(count, unseen);
    for (std::size_t start = 0; start < count; ++start) {
        if (g.component_of[start] != unseen) continue;
        const std::size_t id = g.component_count++;
        std::deque<std::size_t> frontier{start};
        g.component_of[start] = id;
        while (!frontier.empty()) {
            const std::size_t v = frontier.front();
            frontier.pop_front();
            for (std::size_t w = 0; w < count; ++w) {
                if (w == v || g.component_of[w] != unseen) continue;
                if (angles(g.node_ids[v], g.node_ids[w]) < eta) {
                    g.component_of[w] = id;
                    frontier.push_back(w);
                }
            }
        }
    }
    return g;
}

std::vector<int> witness_labels_serial(const SpherePoints& points, const std::vector<std::size_t>& targets,
                                       const WitnessModel& model) {
    std::vector<int> out;
    out.reserve(targets.size());
    for (std::size_t t : targets) {
        int best = 0;
        double best_score = -std::numeric_limits<double>::infinity();
        for (std::size_t k = 0; k < model.class_count(); ++k) {
            const SpherePoints& anchors = model.anchors(static_cast<int>(k + 1));
            if (anchors.size() == 0) continue;
            double score = 0.0;
            for (std::size_t a = 0; a < anchors.size(); ++a) score += model.kernel()(dot(points[t], anchors[a]));
            if (best == 0 || score > best_score) {
                best = static_cast<int>(k + 1);
                best_score = score;
            }
        }
        out.push_back(best);
    }
    return out;
}

}  // namespace scale::reference
