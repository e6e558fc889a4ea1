#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "swarmstat/simengine.hpp"

namespace swarmstat {

enum class TraceFormat { csv, jsonl };

/// Writes the seven trace files plus manifest.json into `dir` (created if
/// missing). Columns, in order:
///   truth:             t, kind, id, x, y, alive
///   scans:             t, x, y, truth_tag
///   estimates_agents:  t, label_birth, label_index, x, y
///   estimates_targets: t, label_birth, label_index, x, y
///   plans:             replan_index, t, agent_id, target_id, wp_seq, x, y
///   events:            t, kind, detail
///   summary:           id, outcome, t_final
/// Numbers use shortest round-trip formatting, so identical traces produce
/// byte-identical files.
void write_trace(const SimTrace& trace, const Scenario& scenario, const std::string& dir,
                 TraceFormat format);

void write_plan_file(const MissionPlan& plan, const std::vector<int>& route_agent_ids, double t,
                     const std::string& path, TraceFormat format);

struct RunConfig {
    std::string scenario_path;
    std::optional<std::uint64_t> seed_override;
    std::string out_dir = "out";
    TraceFormat format = TraceFormat::csv;
    double decimate_hz = 10.0;
    int runs = 1;
    bool paper_cost = false;
    int workers = 0;  // 0 = pick from hardware
};

/// Runs one mission (or a seeded batch under out_dir/run_<seed>/) and writes
/// traces. Returns a process exit status: 0 on any completed simulation,
/// 2 for scenario problems, 3 for planning infeasibility, 4 for I/O failures.
int cmd_run(const RunConfig& config);

/// Runs the planner once on the scenario's initial state and writes plans.csv
/// (or .jsonl) into out_dir.
int cmd_plan(const std::string& scenario_path, const std::string& out_dir, bool paper_cost,
             TraceFormat format = TraceFormat::csv);

struct ScoreConfig {
    std::string trace_dir;
    double cutoff = 20.0;
    double order = 1.0;
};

/// Reads a written trace and emits metrics.csv (per-scan OSPA for each
/// filter) and metrics_summary.csv (completion fraction, replan and death
/// counts, mean OSPA).
int cmd_score(const ScoreConfig& config);

}  // namespace swarmstat
