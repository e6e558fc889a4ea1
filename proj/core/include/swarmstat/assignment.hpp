#pragma once

#include <limits>
#include <vector>

#include <Eigen/Dense>

#include "swarmstat/errors.hpp"

namespace swarmstat {

inline constexpr double kUnreachable = std::numeric_limits<double>::infinity();

struct AssignmentResult {
    std::vector<int> agent_to_target;    // one entry per row (agent)
    std::vector<int> unassigned_targets; // columns left over, ascending
    double total_cost = 0.0;
};

/// Minimum-cost perfect assignment on a square matrix. +inf marks forbidden
/// pairs. Among equal-cost optima the lexicographically smallest assignment
/// vector is returned. Throws InfeasibleError when no finite perfect matching
/// exists.
AssignmentResult hungarian(const Eigen::MatrixXd& costs);

/// Rectangular variant with at least as many targets (columns) as agents
/// (rows): every agent is matched, surplus targets are reported unassigned.
/// Equal dimensions reduce to hungarian().
AssignmentResult assign_unequal(const Eigen::MatrixXd& costs);

struct RankedAssignment {
    std::vector<int> row_to_col;
    double cost = 0.0;
};

/// Up to k cheapest full-row assignments in ascending cost order (Murty's
/// partition over a Jonker-Volgenant subproblem solver). Requires
/// rows <= cols; may return fewer than k when the feasible set is smaller.
std::vector<RankedAssignment> murty_best_k(const Eigen::MatrixXd& costs, int k);

}  // namespace swarmstat
