#pragma once

#include <cmath>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "swarmstat/assignment.hpp"
#include "swarmstat/scenario.hpp"

namespace swarmstat {

/// Move-cost convention for the 8-connected grid search.
///   octile:     1 per orthogonal move, sqrt(2) per diagonal; Euclidean
///               heuristic is admissible and consistent (the default).
///   unit_moves: every move costs 1 (path cost = moves taken) with the same
///               Euclidean heuristic; kept as a compatibility mode, not
///               guaranteed optimal because the heuristic can overestimate.
enum class CostRule { octile, unit_moves };

struct GridPath {
    std::vector<GridNode> nodes;  // start..goal inclusive
    int orth_moves = 0;
    int diag_moves = 0;
    double cost = 0.0;            // under the rule the search ran with
};

inline double path_cost(int orth_moves, int diag_moves, CostRule rule) {
    return rule == CostRule::octile
               ? static_cast<double>(orth_moves) + M_SQRT2 * static_cast<double>(diag_moves)
               : static_cast<double>(orth_moves + diag_moves);
}

/// Minimum-cost 8-connected path avoiding obstacles. Ties in f resolve toward
/// larger g, then lexicographically smaller nodes, so results are replayable.
/// Throws InvalidEndpointError / NoPathError.
GridPath astar(const GridSpec& grid, const ObstacleSet& obstacles, GridNode start, GridNode goal,
               CostRule rule = CostRule::octile);

/// Same search, expressing unreachability as nullopt instead of an exception.
std::optional<GridPath> astar_try(const GridSpec& grid, const ObstacleSet& obstacles,
                                  GridNode start, GridNode goal,
                                  CostRule rule = CostRule::octile);

/// Nearest non-obstacle node to a world position, ties lexicographic;
/// nullopt when every node is an obstacle.
std::optional<GridNode> nearest_free_node(const Eigen::Vector2d& pos, const GridSpec& grid,
                                          const MissionArea& area, const ObstacleSet& obstacles);

/// One agent's share of a mission plan.
struct PlanRoute {
    int agent_index = -1;      // row in the planning input
    int target_index = -1;     // column in the planning input
    std::vector<GridNode> grid_path;
    std::vector<Eigen::Vector2d> waypoints;  // grid path mapped to the world
    double cost = 0.0;
};

struct MissionPlan {
    std::vector<PlanRoute> routes;        // ascending agent_index
    std::vector<int> unassigned_targets;  // ascending
    int replan_index = 0;
};

/// The coupled search/assignment routine: one path query per agent-target
/// pair, optimal (possibly rectangular) assignment on the resulting cost
/// matrix, winning paths mapped through the area mesh into waypoint lists.
/// Targets whose nearest node is an obstacle are re-anchored to the nearest
/// free node; an agent start on an obstacle node throws InvalidEndpointError.
/// When there are fewer targets than agents, the surplus agents are left
/// without routes.
MissionPlan plan_mission(const std::vector<Eigen::Vector2d>& agent_positions,
                         const std::vector<Eigen::Vector2d>& target_positions,
                         const GridSpec& grid, const MissionArea& area,
                         const ObstacleSet& obstacles, CostRule rule = CostRule::octile);

}  // namespace swarmstat
