#include "swarmstat/planning.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <sstream>

namespace swarmstat {

namespace {

constexpr int kMoves[8][2] = {{-1, -1}, {-1, 0}, {-1, 1}, {0, -1},
                              {0, 1},   {1, -1}, {1, 0},  {1, 1}};

double node_distance(GridNode a, GridNode b) {
    return std::hypot(static_cast<double>(a.row - b.row), static_cast<double>(a.col - b.col));
}

std::string node_str(GridNode n) {
    std::ostringstream os;
    os << "(" << n.row << ", " << n.col << ")";
    return os.str();
}

}  // namespace

std::optional<GridPath> astar_try(const GridSpec& grid, const ObstacleSet& obstacles,
                                  GridNode start, GridNode goal, CostRule rule) {
    if (!grid.in_bounds(start.row, start.col) || !grid.in_bounds(goal.row, goal.col)) {
        throw InvalidEndpointError("astar: endpoint outside grid");
    }
    if (obstacles.contains(start)) {
        throw InvalidEndpointError("astar: start " + node_str(start) + " is an obstacle");
    }
    if (obstacles.contains(goal)) {
        throw InvalidEndpointError("astar: goal " + node_str(goal) + " is an obstacle");
    }

    const int n_cols = grid.n_cols;
    const auto index = [n_cols](GridNode n) { return n.row * n_cols + n.col; };
    const int total = grid.n_rows * grid.n_cols;

    struct Entry {
        double f;
        double g;
        GridNode node;
    };
    // f ascending; ties to larger g, then lexicographically smaller node.
    const auto worse = [](const Entry& a, const Entry& b) {
        if (a.f != b.f) return a.f > b.f;
        if (a.g != b.g) return a.g < b.g;
        return b.node < a.node;
    };
    std::priority_queue<Entry, std::vector<Entry>, decltype(worse)> open(worse);

    std::vector<double> best_g(total, std::numeric_limits<double>::infinity());
    std::vector<int> parent(total, -1);
    std::vector<char> closed(total, 0);
    // Move counts ride along so the reported cost is reconstructed exactly.
    std::vector<int> orth(total, 0), diag(total, 0);

    best_g[index(start)] = 0.0;
    open.push({node_distance(start, goal), 0.0, start});

    while (!open.empty()) {
        const Entry cur = open.top();
        open.pop();
        const int ci = index(cur.node);
        if (closed[ci]) continue;
        closed[ci] = 1;

        if (cur.node == goal) {
            GridPath path;
            for (int i = ci; i != -1; i = parent[i]) {
                path.nodes.push_back(GridNode{i / n_cols, i % n_cols});
            }
            std::reverse(path.nodes.begin(), path.nodes.end());
            path.orth_moves = orth[ci];
            path.diag_moves = diag[ci];
            path.cost = path_cost(path.orth_moves, path.diag_moves, rule);
            return path;
        }

        for (const auto& mv : kMoves) {
            const GridNode nb{cur.node.row + mv[0], cur.node.col + mv[1]};
            if (!grid.in_bounds(nb.row, nb.col) || obstacles.contains(nb)) continue;
            const int ni = index(nb);
            if (closed[ni]) continue;
            const bool diagonal = mv[0] != 0 && mv[1] != 0;
            const double step =
                (rule == CostRule::octile && diagonal) ? M_SQRT2 : 1.0;
            const double g = cur.g + step;
            if (g < best_g[ni]) {
                best_g[ni] = g;
                parent[ni] = ci;
                orth[ni] = orth[ci] + (diagonal ? 0 : 1);
                diag[ni] = diag[ci] + (diagonal ? 1 : 0);
                open.push({g + node_distance(nb, goal), g, nb});
            }
        }
    }
    return std::nullopt;
}

GridPath astar(const GridSpec& grid, const ObstacleSet& obstacles, GridNode start, GridNode goal,
               CostRule rule) {
    auto path = astar_try(grid, obstacles, start, goal, rule);
    if (!path) {
        throw NoPathError("astar: no path from " + node_str(start) + " to " + node_str(goal));
    }
    return std::move(*path);
}

std::optional<GridNode> nearest_free_node(const Eigen::Vector2d& pos, const GridSpec& grid,
                                          const MissionArea& area, const ObstacleSet& obstacles) {
    std::optional<GridNode> best;
    double best_dist = std::numeric_limits<double>::infinity();
    for (int r = 0; r < grid.n_rows; ++r) {
        for (int c = 0; c < grid.n_cols; ++c) {
            const GridNode n{r, c};
            if (obstacles.contains(n)) continue;
            const double d = (grid_to_world(n, grid, area) - pos).norm();
            if (d < best_dist) {
                best_dist = d;
                best = n;
            }
        }
    }
    return best;
}

MissionPlan plan_mission(const std::vector<Eigen::Vector2d>& agent_positions,
                         const std::vector<Eigen::Vector2d>& target_positions,
                         const GridSpec& grid, const MissionArea& area,
                         const ObstacleSet& obstacles, CostRule rule) {
    const int n_agents = static_cast<int>(agent_positions.size());
    const int n_targets = static_cast<int>(target_positions.size());
    if (n_agents == 0) throw std::invalid_argument("plan_mission: no agents");
    if (n_targets == 0) throw InfeasibleError("plan_mission: no targets to assign");

    std::vector<GridNode> starts(n_agents);
    for (int i = 0; i < n_agents; ++i) {
        starts[i] = world_to_grid(agent_positions[i], grid, area);
        if (obstacles.contains(starts[i])) {
            throw InvalidEndpointError("plan_mission: agent " + std::to_string(i) +
                                       " start node " + node_str(starts[i]) + " is an obstacle");
        }
    }
    std::vector<GridNode> goals(n_targets);
    std::vector<char> relocated_goal(n_targets, 0);
    for (int j = 0; j < n_targets; ++j) {
        GridNode g = world_to_grid(target_positions[j], grid, area);
        if (obstacles.contains(g)) {
            // Targets may overfly obstacles; plan to the closest free node.
            const auto relocated = nearest_free_node(target_positions[j], grid, area, obstacles);
            if (!relocated) throw InfeasibleError("plan_mission: grid is fully obstructed");
            g = *relocated;
            relocated_goal[j] = 1;
        }
        goals[j] = g;
    }

    Eigen::MatrixXd costs(n_agents, n_targets);
    std::vector<std::vector<std::optional<GridPath>>> paths(
        n_agents, std::vector<std::optional<GridPath>>(n_targets));
    for (int i = 0; i < n_agents; ++i) {
        for (int j = 0; j < n_targets; ++j) {
            paths[i][j] = astar_try(grid, obstacles, starts[i], goals[j], rule);
            costs(i, j) = paths[i][j] ? paths[i][j]->cost : kUnreachable;
        }
    }

    // More agents than targets can only arise mid-mission (thin extractions);
    // the transposed problem covers every target and leaves agents over.
    MissionPlan plan;
    std::vector<int> agent_choice(n_agents, -1);
    if (n_targets >= n_agents) {
        const AssignmentResult res =
            n_targets == n_agents ? hungarian(costs) : assign_unequal(costs);
        agent_choice = res.agent_to_target;
        plan.unassigned_targets = res.unassigned_targets;
    } else {
        const AssignmentResult res = assign_unequal(costs.transpose());
        for (int j = 0; j < n_targets; ++j) agent_choice[res.agent_to_target[j]] = j;
    }

    for (int i = 0; i < n_agents; ++i) {
        const int j = agent_choice[i];
        if (j < 0) continue;
        PlanRoute route;
        route.agent_index = i;
        route.target_index = j;
        route.grid_path = paths[i][j]->nodes;
        route.cost = paths[i][j]->cost;
        route.waypoints.reserve(route.grid_path.size());
        for (const GridNode& n : route.grid_path) {
            route.waypoints.push_back(grid_to_world(n, grid, area));
        }
        // The list ends at the target's planned location, not its node; a
        // goal parked on an obstacle keeps the nearest free node instead.
        if (!relocated_goal[j]) route.waypoints.back() = target_positions[j];
        plan.routes.push_back(std::move(route));
    }
    return plan;
}

}  // namespace swarmstat
