#pragma once

#include <string>
#include <vector>

#include "swarmstat/dynamics.hpp"
#include "swarmstat/glmb.hpp"
#include "swarmstat/planning.hpp"
#include "swarmstat/scenario.hpp"

namespace swarmstat {

struct SimOptions {
    CostRule cost_rule = CostRule::octile;
    double truth_decimate_hz = 10.0;  // truth snapshot rate in the trace
};

/// Multirate tick bookkeeping; filter and replan ticks land exactly on
/// dynamics ticks because the rate ratios are validated integers.
struct SimClock {
    double dt = 0.01;
    int steps_per_filter = 100;
    int steps_per_replan = 500;
    long tick = 0;

    double time() const { return tick * dt; }
    bool filter_tick() const { return tick % steps_per_filter == 0; }
    bool replan_tick() const { return tick % steps_per_replan == 0; }
};

enum class SimEventKind {
    death,
    replan,
    waypoint_reached,
    target_reached,
    spurious_extraction,
    termination,
};

const char* to_string(SimEventKind kind);

struct SimEvent {
    double t = 0.0;
    SimEventKind kind = SimEventKind::termination;
    std::string detail;
};

struct TruthSnapshot {
    double t = 0.0;
    std::vector<AgentState> agents;
    std::vector<TargetState> targets;
};

struct ScanRecord {
    double t = 0.0;
    MeasurementScan scan;
};

struct ExtractionRecord {
    double t = 0.0;
    std::vector<Extraction> agents;
    std::vector<Extraction> targets;
};

struct PlanRecord {
    double t = 0.0;
    MissionPlan plan;
    std::vector<int> route_agent_ids;  // per route: adopting truth agent, -1 if unadopted
    std::string reason;
};

enum class AgentOutcome { completed, dead, timeout };

const char* to_string(AgentOutcome outcome);

struct AgentSummary {
    int id = 0;
    AgentOutcome outcome = AgentOutcome::timeout;
    double t_final = 0.0;
};

struct SimTrace {
    std::vector<TruthSnapshot> truth;
    std::vector<ScanRecord> scans;
    std::vector<ExtractionRecord> extractions;
    std::vector<PlanRecord> plans;
    std::vector<SimEvent> events;
    std::vector<AgentSummary> summary;
    double t_end = 0.0;
    std::string termination_reason;
};

struct ExtractionPair {
    std::vector<Extraction> agents;
    std::vector<Extraction> targets;
};

struct ReplanDecision {
    bool flag = false;
    std::string reason;
};

/// Guidance-update test between consecutive replan-tick extraction samples:
/// fires on an agent-track count drop, on any identity-matched target moving
/// farther than the threshold, or on a target label that was not there before.
ReplanDecision replan_check(const ExtractionPair& previous, const ExtractionPair& current,
                            double movement_threshold);

/// Re-runs the planner from filter outputs only: starts are the agent-filter
/// extractions, goals the target-filter extractions, both clamped into the
/// area; extractions within the waypoint threshold of a claimed position
/// (an agent already parked on its target) are excluded; starts landing on an
/// obstacle node are re-anchored to the nearest free node.
MissionPlan replan(const std::vector<Extraction>& agent_extractions,
                   const std::vector<Extraction>& target_extractions, const Scenario& scenario,
                   int replan_index, CostRule rule = CostRule::octile,
                   const std::vector<Eigen::Vector2d>& claimed_positions = {});

/// Optimal-subpattern-assignment distance between two point sets.
double ospa(const std::vector<Eigen::Vector2d>& lhs, const std::vector<Eigen::Vector2d>& rhs,
            double cutoff, double order);

/// Runs the full multirate mission loop; the result is a pure function of
/// (scenario, seed). Throws InfeasibleError if the initial plan cannot be
/// built; a time-cap expiry is recorded as a termination event instead.
SimTrace run_simulation(const Scenario& scenario, const SimOptions& options = {});

}  // namespace swarmstat
