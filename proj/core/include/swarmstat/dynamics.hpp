#pragma once

#include <vector>

#include <Eigen/Dense>

#include "swarmstat/rng.hpp"
#include "swarmstat/scenario.hpp"

namespace swarmstat {

/// Truth state of one swarm agent. The lateral vector is
/// [lateral velocity, roll rate, yaw rate, roll angle, heading].
struct AgentState {
    Vector5d lateral = Vector5d::Zero();
    Eigen::Vector2d position{0.0, 0.0};
    bool alive = true;
    int id = 0;

    double heading() const { return lateral(4); }
};

struct TargetState {
    Eigen::Vector2d position{0.0, 0.0};
    Eigen::Vector2d velocity{0.0, 0.0};
    int id = 0;
};

/// Continuous-time lateral model; heading must be a pure integrator of yaw
/// rate (zero column) so error-state feedback and absolute propagation agree.
struct LinearModel {
    Matrix5d a = Matrix5d::Zero();
    Matrix52d b = Matrix52d::Zero();
    double dt = 0.01;
};

/// Zero-order-hold discretization of a LinearModel.
struct DiscreteModel {
    Matrix5d ad = Matrix5d::Identity();
    Matrix52d bd = Matrix52d::Zero();
    double dt = 0.01;
};

struct LqrGain {
    Eigen::Matrix<double, 2, 5> k = Eigen::Matrix<double, 2, 5>::Zero();
};

/// Per-agent guidance memory: the broadcast waypoint list and progress
/// through it. `mission_complete` means the list is exhausted, not that the
/// target was physically reached.
struct GuidanceState {
    int assigned_target = -1;  // plan-local target index
    std::vector<Eigen::Vector2d> waypoints;
    std::size_t active = 0;
    bool mission_complete = false;

    bool has_active() const { return active < waypoints.size(); }
};

DiscreteModel discretize(const LinearModel& model);

/// Stabilizing solution of A'PA - P - A'PB(R + B'PB)^-1 B'PA + Q = 0 via the
/// structure-preserving doubling iteration. Throws RiccatiError when the
/// iteration stalls (unstabilizable pair) or R is not positive definite.
Eigen::MatrixXd solve_dare(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b,
                           const Eigen::MatrixXd& q, const Eigen::MatrixXd& r);

/// Discrete LQR gain for the dt-discretized model; verifies the closed loop
/// is stable before returning.
LqrGain lqr_gain(const LinearModel& model, const Matrix5d& q, const Eigen::Matrix2d& r);

/// Wraps an angle to (-pi, pi].
double wrap_angle(double angle);

/// atan2 bearing from agent to waypoint, east = 0, counterclockwise positive.
/// Throws std::invalid_argument for coincident points.
double heading_command(const Eigen::Vector2d& agent_pos, const Eigen::Vector2d& waypoint);

/// One 100 Hz step: LQR feedback on the heading-error state, lateral dynamics
/// advanced, position integrated from pre-step body velocities rotated through
/// the pre-step heading. Throws std::invalid_argument for a dead agent.
AgentState step_agent(const AgentState& state, double heading_cmd, const DiscreteModel& model,
                      const LqrGain& gain, double forward_speed);

/// Exact double-integrator step: pos += v dt + a dt^2/2, v += a dt.
TargetState step_target(const TargetState& state, double dt, const Eigen::Vector2d& accel);

/// Advances the active waypoint (one increment per call) when the agent is
/// strictly within `threshold` of it; sets mission_complete after the last.
GuidanceState advance_waypoint(GuidanceState guidance, const Eigen::Vector2d& agent_pos,
                               double threshold);

/// Each living agent, in ascending id order, draws once and dies with
/// probability p. Dead agents keep their position and never revive.
std::vector<AgentState> death_process(std::vector<AgentState> agents, double p, Rng& rng);

}  // namespace swarmstat
