#include "swarmstat/assignment.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <queue>

namespace swarmstat {

namespace {

struct RectSolution {
    std::vector<int> row_to_col;
    double total = 0.0;  // sum of matrix entries in ascending row order
};

// Jonker-Volgenant shortest augmenting paths on a square matrix (finite
// entries only; callers substitute a dominating BIG for +inf beforehand).
std::vector<int> lap_square(const Eigen::MatrixXd& a) {
    const int n = static_cast<int>(a.rows());
    std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
    std::vector<int> p(n + 1, 0), way(n + 1, 0);
    for (int i = 1; i <= n; ++i) {
        p[0] = i;
        int j0 = 0;
        std::vector<double> minv(n + 1, std::numeric_limits<double>::max());
        std::vector<char> used(n + 1, 0);
        do {
            used[j0] = 1;
            const int i0 = p[j0];
            int j1 = -1;
            double delta = std::numeric_limits<double>::max();
            for (int j = 1; j <= n; ++j) {
                if (used[j]) continue;
                const double cur = a(i0 - 1, j - 1) - u[i0] - v[j];
                if (cur < minv[j]) {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if (minv[j] < delta) {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for (int j = 0; j <= n; ++j) {
                if (used[j]) {
                    u[p[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
        } while (p[j0] != 0);
        do {
            const int j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
        } while (j0);
    }
    std::vector<int> row_to_col(n, -1);
    for (int j = 1; j <= n; ++j) {
        if (p[j] > 0) row_to_col[p[j] - 1] = j - 1;
    }
    return row_to_col;
}

// Optimal matching of every row of a rows<=cols matrix; nullopt when some row
// can only be covered by a forbidden (+inf) entry. Dummy zero-cost rows absorb
// the surplus columns.
std::optional<RectSolution> solve_rect(const Eigen::MatrixXd& costs) {
    const int rows = static_cast<int>(costs.rows());
    const int cols = static_cast<int>(costs.cols());
    if (rows == 0) return RectSolution{{}, 0.0};

    double max_abs = 0.0;
    for (int r = 0; r < rows; ++r) {
        bool any_finite = false;
        for (int c = 0; c < cols; ++c) {
            if (std::isfinite(costs(r, c))) {
                any_finite = true;
                max_abs = std::max(max_abs, std::abs(costs(r, c)));
            }
        }
        if (!any_finite) return std::nullopt;
    }
    const double big = (max_abs + 1.0) * (cols + 1);

    Eigen::MatrixXd square = Eigen::MatrixXd::Zero(cols, cols);
    for (int r = 0; r < rows; ++r) {
        for (int c = 0; c < cols; ++c) {
            square(r, c) = std::isfinite(costs(r, c)) ? costs(r, c) : big;
        }
    }
    const std::vector<int> full = lap_square(square);

    RectSolution sol;
    sol.row_to_col.assign(rows, -1);
    for (int r = 0; r < rows; ++r) {
        if (!std::isfinite(costs(r, full[r]))) return std::nullopt;
        sol.row_to_col[r] = full[r];
        sol.total += costs(r, full[r]);
    }
    return sol;
}

// Resolves cost ties toward the lexicographically smallest assignment vector
// by fixing rows in order and re-solving the remainder.
AssignmentResult solve_lexicographic(const Eigen::MatrixXd& costs, const char* caller) {
    const int rows = static_cast<int>(costs.rows());
    const int cols = static_cast<int>(costs.cols());
    const auto base = solve_rect(costs);
    if (!base) {
        throw InfeasibleError(std::string(caller) + ": no finite-cost complete assignment exists");
    }
    const double tol = 1e-9 * std::max(1.0, std::abs(base->total));

    std::vector<int> fixed(rows, -1);
    std::vector<char> used_col(cols, 0);
    double prefix = 0.0;
    for (int r = 0; r < rows; ++r) {
        bool placed = false;
        for (int c = 0; c < cols && !placed; ++c) {
            if (used_col[c] || !std::isfinite(costs(r, c))) continue;
            // Optimal completion with rows r+1.. over the remaining columns.
            const int sub_rows = rows - r - 1;
            std::vector<int> col_map;
            col_map.reserve(cols);
            for (int cc = 0; cc < cols; ++cc) {
                if (!used_col[cc] && cc != c) col_map.push_back(cc);
            }
            double rest = 0.0;
            bool feasible = true;
            if (sub_rows > 0) {
                Eigen::MatrixXd sub(sub_rows, static_cast<int>(col_map.size()));
                for (int rr = 0; rr < sub_rows; ++rr) {
                    for (std::size_t cc = 0; cc < col_map.size(); ++cc) {
                        sub(rr, static_cast<int>(cc)) = costs(r + 1 + rr, col_map[cc]);
                    }
                }
                const auto sub_sol = solve_rect(sub);
                if (!sub_sol) {
                    feasible = false;
                } else {
                    rest = sub_sol->total;
                }
            }
            if (feasible && prefix + costs(r, c) + rest <= base->total + tol) {
                fixed[r] = c;
                used_col[c] = 1;
                prefix += costs(r, c);
                placed = true;
            }
        }
        if (!placed) {
            // Numerical fallback; the base solution is always consistent.
            fixed[r] = base->row_to_col[r];
            used_col[fixed[r]] = 1;
            prefix += costs(r, fixed[r]);
        }
    }

    AssignmentResult out;
    out.agent_to_target = fixed;
    out.total_cost = 0.0;
    for (int r = 0; r < rows; ++r) out.total_cost += costs(r, fixed[r]);
    for (int c = 0; c < cols; ++c) {
        if (!used_col[c]) out.unassigned_targets.push_back(c);
    }
    return out;
}

}  // namespace

AssignmentResult hungarian(const Eigen::MatrixXd& costs) {
    if (costs.rows() == 0 || costs.rows() != costs.cols()) {
        throw std::invalid_argument("hungarian: cost matrix must be square and non-empty");
    }
    return solve_lexicographic(costs, "hungarian");
}

AssignmentResult assign_unequal(const Eigen::MatrixXd& costs) {
    if (costs.rows() == 0) throw std::invalid_argument("assign_unequal: empty cost matrix");
    if (costs.cols() < costs.rows()) {
        throw std::invalid_argument("assign_unequal: needs at least as many targets as agents");
    }
    return solve_lexicographic(costs, "assign_unequal");
}

std::vector<RankedAssignment> murty_best_k(const Eigen::MatrixXd& costs, int k) {
    if (costs.rows() > costs.cols()) {
        throw std::invalid_argument("murty_best_k: requires rows <= cols");
    }
    if (k < 1 || costs.rows() == 0) return {};
    const int rows = static_cast<int>(costs.rows());

    struct Node {
        Eigen::MatrixXd m;
        std::vector<char> forced;  // rows already pinned in m
        std::vector<int> sol;
        double cost;
        long seq;
    };
    const auto by_cost = [](const Node& a, const Node& b) {
        return a.cost > b.cost || (a.cost == b.cost && a.seq > b.seq);
    };
    std::priority_queue<Node, std::vector<Node>, decltype(by_cost)> queue(by_cost);

    long seq = 0;
    if (const auto root = solve_rect(costs)) {
        queue.push(Node{costs, std::vector<char>(rows, 0), root->row_to_col, root->total, seq++});
    }

    std::vector<RankedAssignment> out;
    while (!queue.empty() && static_cast<int>(out.size()) < k) {
        Node node = queue.top();
        queue.pop();
        out.push_back(RankedAssignment{node.sol, node.cost});

        // Partition the remaining feasible set around the emitted solution.
        Eigen::MatrixXd running = node.m;
        for (int r = 0; r < rows; ++r) {
            if (node.forced[r]) continue;
            Eigen::MatrixXd child = running;
            child(r, node.sol[r]) = kUnreachable;
            if (const auto sol = solve_rect(child)) {
                std::vector<char> forced = node.forced;
                for (int rr = 0; rr < r; ++rr) forced[rr] = 1;
                queue.push(Node{std::move(child), std::move(forced), sol->row_to_col, sol->total,
                                seq++});
            }
            // Pin row r to the emitted column before the next partition cut.
            const int keep = node.sol[r];
            for (int c = 0; c < running.cols(); ++c) {
                if (c != keep) running(r, c) = kUnreachable;
            }
        }
    }
    return out;
}

}  // namespace swarmstat
