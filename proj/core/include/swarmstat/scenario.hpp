#pragma once

#include <algorithm>
#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "swarmstat/errors.hpp"
#include "swarmstat/rng.hpp"

namespace swarmstat {

using Matrix5d = Eigen::Matrix<double, 5, 5>;
using Matrix52d = Eigen::Matrix<double, 5, 2>;
using Vector5d = Eigen::Matrix<double, 5, 1>;

/// Rectangular world-frame mission region, meters.
struct MissionArea {
    double x_min = 0.0;
    double x_max = 0.0;
    double y_min = 0.0;
    double y_max = 0.0;

    double width() const { return x_max - x_min; }
    double height() const { return y_max - y_min; }
    double size() const { return width() * height(); }

    bool contains(const Eigen::Vector2d& p) const {
        return p.x() >= x_min && p.x() <= x_max && p.y() >= y_min && p.y() <= y_max;
    }

    Eigen::Vector2d clamp(const Eigen::Vector2d& p) const {
        return {std::clamp(p.x(), x_min, x_max), std::clamp(p.y(), y_min, y_max)};
    }
};

/// Node counts of the search lattice laid over the mission area.
struct GridSpec {
    int n_rows = 0;
    int n_cols = 0;

    bool in_bounds(int row, int col) const {
        return row >= 0 && row < n_rows && col >= 0 && col < n_cols;
    }
};

struct GridNode {
    int row = 0;
    int col = 0;

    friend bool operator==(const GridNode&, const GridNode&) = default;
    friend auto operator<=>(const GridNode&, const GridNode&) = default;
};

using ObstacleSet = std::set<GridNode>;

struct AgentInit {
    Eigen::Vector2d position{0.0, 0.0};
    double heading = 0.0;  // rad, east = 0, counterclockwise positive
};

struct TargetInit {
    Eigen::Vector2d position{0.0, 0.0};
    Eigen::Vector2d velocity{0.0, 0.0};
};

/// Deterministic mid-mission kill, applied at the first filter tick at or
/// after `time`. Used by scenarios that need a repeatable loss event.
struct DeathScriptEntry {
    double time = 0.0;
    int agent_id = 0;
};

/// Tracker truncation and birth settings shared by both filter instances.
struct GlmbSettings {
    double p_survival = 0.999;  // above the miss rate, or single misses kill tracks
    double birth_r_init = 0.9;        // existence mass planted at mission start
    double birth_r_recurring = 0.02;  // re-acquisition mass on later steps
    double birth_pos_var = 25.0;      // m^2
    double birth_vel_var = 4.0;       // (m/s)^2; tight enough that coasted
                                      // infant tracks stay associable
    double process_noise_agents = 4.0;   // white-accel intensity, agent filter;
                                         // tight enough that lost tracks fade
    double process_noise_targets = 1.0;  // white-accel intensity, target filter
    double hyp_weight_min = 1e-4;     // hypotheses below this are dropped
    int hyp_cap = 60;                 // max hypotheses kept after pruning
    double gm_weight_min = 1e-3;      // mixture components below this are dropped
    int gm_cap = 12;                  // max components per track
    int exhaustive_assoc_limit = 256; // max joint associations enumerated exactly
    int ranked_assoc_k = 24;          // children per hypothesis above the limit
    double predict_child_floor = 0.0; // per-parent relative floor on spawn/survival children
    double gate_mahalanobis2 = 0.0;   // squared gating distance; 0 disables gating
    double max_coast_pos_var = 0.0;   // components coasted beyond this position
                                      // variance stop associating; 0 disables
};

/// Simulation constants. Defaults follow the bundled missions: 10 m waypoint
/// threshold, 100/1/0.2 Hz rate stack, unit LQR weights. Sensor and death
/// defaults are project choices, not sourced values; scenario files override
/// them per mission.
struct ModelParams {
    double forward_speed = 6.0;        // m/s, body-frame u; keeps the turn
                                       // radius inside the waypoint threshold
    double waypoint_threshold = 10.0;  // m
    double dyn_rate = 100.0;           // Hz
    double filter_rate = 1.0;          // Hz
    double replan_rate = 0.2;          // Hz
    double death_prob_per_step = 0.0;  // per filter tick, per living agent
    double clutter_rate = 0.0;         // expected clutter points per scan
    double detect_prob = 0.98;
    Eigen::Matrix2d meas_noise_cov = Eigen::Matrix2d::Identity();  // m^2
    double target_process_noise = 0.0; // accel sigma, m/s^2; 0 = prescribed velocity
    double movement_threshold = 20.0;  // m, target-motion replan trigger
    Matrix5d lqr_q = Matrix5d::Identity();
    Eigen::Matrix2d lqr_r = Eigen::Matrix2d::Identity();
    Matrix5d agent_a;                  // continuous-time lateral model
    Matrix52d agent_b;
    double max_sim_seconds = 600.0;    // simulated-time cap
    GlmbSettings glmb;

    ModelParams();

    /// Dynamics ticks per filter tick; validated as an exact integer ratio.
    int dyn_steps_per_filter() const;
    /// Filter ticks per replan tick; validated as an exact integer ratio.
    int filter_steps_per_replan() const;
};

struct Scenario {
    std::string name;
    MissionArea area;
    GridSpec grid;
    ObstacleSet obstacles;
    std::vector<AgentInit> agents;
    std::vector<TargetInit> targets;
    std::vector<DeathScriptEntry> death_script;
    ModelParams params;
    std::uint64_t seed = 0;
};

/// Loads, resolves, and validates a scenario file (see docs/scenario_format.md).
/// Random obstacle/target declarations are materialized here from the scenario
/// seed, so the returned value is always fully explicit.
Scenario load_scenario(const std::string& path);

/// Writes the resolved scenario; load(save(load(f))) == load(f) field-for-field.
void save_scenario(const Scenario& scenario, const std::string& path);

/// Throws ValidationError naming the first violated invariant.
void validate_scenario(const Scenario& scenario);

/// One uniform draw per node in row-major order; a non-protected node becomes
/// an obstacle when its draw falls below `threshold`. Protected nodes consume
/// a draw too but are never obstacles, so the surrounding pattern does not
/// depend on the protection set.
ObstacleSet generate_random_obstacles(const GridSpec& grid, double threshold,
                                      const std::set<GridNode>& protected_nodes, Rng& rng);

/// Affine lattice map: (0,0) -> (x_min, y_min), (n_rows-1, n_cols-1) -> (x_max, y_max).
/// Columns advance x, rows advance y.
Eigen::Vector2d grid_to_world(GridNode node, const GridSpec& grid, const MissionArea& area);

/// Nearest lattice node; ties go to the smaller row, then smaller column.
/// Positions up to one cell outside the area are clamped; farther out throws.
GridNode world_to_grid(const Eigen::Vector2d& pos, const GridSpec& grid, const MissionArea& area);

}  // namespace swarmstat
