// Test-side oracles, deliberately independent of the library implementations
// they check: exhaustive enumeration for assignments and associations,
// Dijkstra for grid paths, quadrature for mixture mass.
#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>
#include <queue>
#include <vector>

#include <Eigen/Dense>

#include "swarmstat/gaussian.hpp"
#include "swarmstat/glmb.hpp"
#include "swarmstat/scenario.hpp"

namespace oracles {

// ---------------------------------------------------------------------------
// Assignment brute force

struct BruteAssignment {
    std::vector<int> row_to_col;
    double total = std::numeric_limits<double>::infinity();
};

// Minimum over all injective row->col maps (requires rows <= cols).
inline BruteAssignment brute_force_assignment(const Eigen::MatrixXd& costs) {
    const int rows = static_cast<int>(costs.rows());
    const int cols = static_cast<int>(costs.cols());
    std::vector<int> cols_perm(cols);
    std::iota(cols_perm.begin(), cols_perm.end(), 0);

    BruteAssignment best;
    std::vector<int> current(rows, -1);
    std::vector<char> used(cols, 0);
    const auto recurse = [&](const auto& self, int row, double acc) -> void {
        if (row == rows) {
            if (acc < best.total) {
                best.total = acc;
                best.row_to_col = current;
            }
            return;
        }
        for (int c = 0; c < cols; ++c) {
            if (used[c] || !std::isfinite(costs(row, c))) continue;
            used[c] = 1;
            current[row] = c;
            self(self, row + 1, acc + costs(row, c));
            used[c] = 0;
        }
    };
    recurse(recurse, 0, 0.0);
    return best;
}

// All full-row assignments with totals, sorted ascending (for ranked checks).
inline std::vector<BruteAssignment> all_assignments_sorted(const Eigen::MatrixXd& costs) {
    const int rows = static_cast<int>(costs.rows());
    const int cols = static_cast<int>(costs.cols());
    std::vector<BruteAssignment> out;
    std::vector<int> current(rows, -1);
    std::vector<char> used(cols, 0);
    const auto recurse = [&](const auto& self, int row, double acc) -> void {
        if (row == rows) {
            out.push_back({current, acc});
            return;
        }
        for (int c = 0; c < cols; ++c) {
            if (used[c] || !std::isfinite(costs(row, c))) continue;
            used[c] = 1;
            current[row] = c;
            self(self, row + 1, acc + costs(row, c));
            used[c] = 0;
        }
    };
    recurse(recurse, 0, 0.0);
    std::sort(out.begin(), out.end(),
              [](const BruteAssignment& a, const BruteAssignment& b) { return a.total < b.total; });
    return out;
}

// ---------------------------------------------------------------------------
// Grid path oracle

struct DijkstraResult {
    bool reachable = false;
    int orth = 0;
    int diag = 0;
};

// Octile-weight Dijkstra on the 8-connected grid, tracking move counts so the
// optimal cost can be reconstructed exactly as orth + sqrt(2) * diag.
inline DijkstraResult dijkstra_octile(const swarmstat::GridSpec& grid,
                                      const swarmstat::ObstacleSet& obstacles,
                                      swarmstat::GridNode start, swarmstat::GridNode goal) {
    const int n = grid.n_rows * grid.n_cols;
    const auto idx = [&](swarmstat::GridNode node) { return node.row * grid.n_cols + node.col; };
    std::vector<double> dist(n, std::numeric_limits<double>::infinity());
    std::vector<int> orth(n, 0), diag(n, 0);
    using Entry = std::pair<double, int>;
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> pq;
    dist[idx(start)] = 0.0;
    pq.push({0.0, idx(start)});
    while (!pq.empty()) {
        const auto [d, i] = pq.top();
        pq.pop();
        if (d > dist[i]) continue;
        const swarmstat::GridNode node{i / grid.n_cols, i % grid.n_cols};
        for (int dr = -1; dr <= 1; ++dr) {
            for (int dc = -1; dc <= 1; ++dc) {
                if (dr == 0 && dc == 0) continue;
                const swarmstat::GridNode nb{node.row + dr, node.col + dc};
                if (!grid.in_bounds(nb.row, nb.col) || obstacles.contains(nb)) continue;
                const bool diagonal = dr != 0 && dc != 0;
                const double nd = d + (diagonal ? M_SQRT2 : 1.0);
                if (nd < dist[idx(nb)]) {
                    dist[idx(nb)] = nd;
                    orth[idx(nb)] = orth[i] + (diagonal ? 0 : 1);
                    diag[idx(nb)] = diag[i] + (diagonal ? 1 : 0);
                    pq.push({nd, idx(nb)});
                }
            }
        }
    }
    if (!std::isfinite(dist[idx(goal)])) return {};
    return {true, orth[idx(goal)], diag[idx(goal)]};
}

// Unit-cost breadth-first search: optimal number of moves, or -1.
inline int bfs_moves(const swarmstat::GridSpec& grid, const swarmstat::ObstacleSet& obstacles,
                     swarmstat::GridNode start, swarmstat::GridNode goal) {
    const auto idx = [&](swarmstat::GridNode node) { return node.row * grid.n_cols + node.col; };
    std::vector<int> dist(grid.n_rows * grid.n_cols, -1);
    std::queue<swarmstat::GridNode> queue;
    dist[idx(start)] = 0;
    queue.push(start);
    while (!queue.empty()) {
        const swarmstat::GridNode node = queue.front();
        queue.pop();
        if (node == goal) return dist[idx(node)];
        for (int dr = -1; dr <= 1; ++dr) {
            for (int dc = -1; dc <= 1; ++dc) {
                if (dr == 0 && dc == 0) continue;
                const swarmstat::GridNode nb{node.row + dr, node.col + dc};
                if (!grid.in_bounds(nb.row, nb.col) || obstacles.contains(nb)) continue;
                if (dist[idx(nb)] != -1) continue;
                dist[idx(nb)] = dist[idx(node)] + 1;
                queue.push(nb);
            }
        }
    }
    return -1;
}

// ---------------------------------------------------------------------------
// Association oracle

// Joint association posterior over one hypothesis set, enumerated recursively
// with the same canonical branch order and factor arithmetic as the library
// (miss first, then measurements ascending; label factors ascending, clutter
// power last) so small-case weights must agree bit for bit.
struct OracleChild {
    int parent = -1;
    std::vector<int> assoc;
    double weight = 0.0;
};

inline std::vector<OracleChild> enumerate_update_children(
    const swarmstat::GlmbDensity& density, const std::vector<Eigen::Vector2d>& points,
    double p_detect, double kappa, const Eigen::MatrixXd& h, const Eigen::Matrix2d& r) {
    using swarmstat::Label;
    const int m = static_cast<int>(points.size());

    const auto eta_of = [&](const Label& label, int j) {
        const auto& track = density.tracks.at(label);
        double eta = 0.0;
        for (const auto& comp : track.p.components) {
            const auto ku = swarmstat::kalman_update(comp.g, points[j], h, r);
            eta += comp.weight * ku.likelihood;
        }
        return eta;
    };

    std::vector<OracleChild> children;
    for (std::size_t hi = 0; hi < density.hypotheses.size(); ++hi) {
        const auto& parent = density.hypotheses[hi];
        const int n_labels = static_cast<int>(parent.labels.size());
        std::vector<int> assoc(n_labels, -1);
        std::vector<char> used(std::max(m, 1), 0);
        const auto leaf = [&]() {
            double w = parent.weight;
            int matched = 0;
            for (int k = 0; k < n_labels; ++k) {
                if (assoc[k] < 0) {
                    w *= 1.0 - p_detect;
                } else {
                    w *= p_detect * eta_of(parent.labels[k], assoc[k]);
                    ++matched;
                }
            }
            w *= std::pow(kappa, m - matched);
            if (w != 0.0) children.push_back({static_cast<int>(hi), assoc, w});
        };
        const auto dfs = [&](const auto& self, int k) -> void {
            if (k == n_labels) {
                leaf();
                return;
            }
            if (p_detect < 1.0) {
                assoc[k] = -1;
                self(self, k + 1);
            }
            for (int j = 0; j < m; ++j) {
                if (used[j] || !(p_detect > 0.0) || eta_of(parent.labels[k], j) == 0.0) continue;
                used[j] = 1;
                assoc[k] = j;
                self(self, k + 1);
                used[j] = 0;
            }
            assoc[k] = -1;
        };
        dfs(dfs, 0);
    }
    double total = 0.0;
    for (const auto& c : children) total += c.weight;
    for (auto& c : children) c.weight /= total;
    return children;
}

// ---------------------------------------------------------------------------
// Quadrature

// Midpoint-rule mass of a 2D mixture over [lo, hi]^2.
inline double gm_mass_2d(const swarmstat::GaussianMixture& gm, double lo, double hi, int steps) {
    const double h = (hi - lo) / steps;
    double mass = 0.0;
    for (int i = 0; i < steps; ++i) {
        for (int j = 0; j < steps; ++j) {
            Eigen::VectorXd x(2);
            x << lo + (i + 0.5) * h, lo + (j + 0.5) * h;
            mass += swarmstat::gm_eval(gm, x) * h * h;
        }
    }
    return mass;
}

// Nearest-node brute force with the smaller-row-then-col tie rule.
inline swarmstat::GridNode nearest_node_brute(const Eigen::Vector2d& pos,
                                              const swarmstat::GridSpec& grid,
                                              const swarmstat::MissionArea& area) {
    swarmstat::GridNode best{0, 0};
    double best_dist = std::numeric_limits<double>::infinity();
    for (int r = 0; r < grid.n_rows; ++r) {
        for (int c = 0; c < grid.n_cols; ++c) {
            const double d = (swarmstat::grid_to_world({r, c}, grid, area) - pos).norm();
            if (d < best_dist) {
                best_dist = d;
                best = {r, c};
            }
        }
    }
    return best;
}

}  // namespace oracles
