#include "swarmstat/simengine.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "swarmstat/assignment.hpp"

namespace swarmstat {

const char* to_string(SimEventKind kind) {
    switch (kind) {
        case SimEventKind::death: return "death";
        case SimEventKind::replan: return "replan";
        case SimEventKind::waypoint_reached: return "waypoint_reached";
        case SimEventKind::target_reached: return "target_reached";
        case SimEventKind::spurious_extraction: return "spurious_extraction";
        case SimEventKind::termination: return "termination";
    }
    return "unknown";
}

const char* to_string(AgentOutcome outcome) {
    switch (outcome) {
        case AgentOutcome::completed: return "completed";
        case AgentOutcome::dead: return "dead";
        case AgentOutcome::timeout: return "timeout";
    }
    return "unknown";
}

ReplanDecision replan_check(const ExtractionPair& previous, const ExtractionPair& current,
                            double movement_threshold) {
    if (current.agents.size() < previous.agents.size()) {
        return {true, "agent_count_drop"};
    }
    std::map<Label, Eigen::Vector2d> prev_targets;
    for (const auto& e : previous.targets) prev_targets.emplace(e.label, e.position);
    for (const auto& e : current.targets) {
        const auto it = prev_targets.find(e.label);
        if (it == prev_targets.end()) return {true, "new_target"};
        if ((e.position - it->second).norm() > movement_threshold) {
            return {true, "target_moved"};
        }
    }
    return {false, ""};
}

namespace {

bool near_any(const Eigen::Vector2d& pos, const std::vector<Eigen::Vector2d>& anchors,
              double radius) {
    for (const auto& a : anchors) {
        if ((pos - a).norm() < radius) return true;
    }
    return false;
}

}  // namespace

MissionPlan replan(const std::vector<Extraction>& agent_extractions,
                   const std::vector<Extraction>& target_extractions, const Scenario& scenario,
                   int replan_index, CostRule rule,
                   const std::vector<Eigen::Vector2d>& claimed_positions) {
    if (agent_extractions.empty()) {
        throw std::invalid_argument("replan: needs at least one agent extraction");
    }
    // A parked agent sits up to one threshold from its target, and the
    // target's extraction adds measurement noise on top; double the radius so
    // claimed targets reliably drop out of the goal pool.
    const double exclusion = 2.0 * scenario.params.waypoint_threshold;

    std::vector<Eigen::Vector2d> starts;
    for (const auto& e : agent_extractions) {
        const Eigen::Vector2d pos = scenario.area.clamp(e.position);
        if (near_any(pos, claimed_positions, exclusion)) continue;
        // Noisy extractions can land on an obstacle node; plan from the
        // nearest free node instead.
        const GridNode node = world_to_grid(pos, scenario.grid, scenario.area);
        if (scenario.obstacles.contains(node)) {
            const auto free = nearest_free_node(pos, scenario.grid, scenario.area,
                                                scenario.obstacles);
            if (!free) throw InfeasibleError("replan: grid is fully obstructed");
            starts.push_back(grid_to_world(*free, scenario.grid, scenario.area));
        } else {
            starts.push_back(pos);
        }
    }
    std::vector<Eigen::Vector2d> goals;
    for (const auto& e : target_extractions) {
        const Eigen::Vector2d pos = scenario.area.clamp(e.position);
        if (near_any(pos, claimed_positions, exclusion)) continue;
        goals.push_back(pos);
    }
    if (starts.empty()) throw InfeasibleError("replan: no unclaimed agent extractions");
    if (goals.empty()) throw InfeasibleError("replan: no unclaimed target extractions");

    MissionPlan plan =
        plan_mission(starts, goals, scenario.grid, scenario.area, scenario.obstacles, rule);
    plan.replan_index = replan_index;
    return plan;
}

double ospa(const std::vector<Eigen::Vector2d>& lhs, const std::vector<Eigen::Vector2d>& rhs,
            double cutoff, double order) {
    if (!(cutoff > 0.0)) throw std::invalid_argument("ospa: cutoff must be > 0");
    if (!(order >= 1.0)) throw std::invalid_argument("ospa: order must be >= 1");
    const auto* small = &lhs;
    const auto* large = &rhs;
    if (small->size() > large->size()) std::swap(small, large);
    const int m = static_cast<int>(small->size());
    const int n = static_cast<int>(large->size());
    if (n == 0) return 0.0;
    if (m == 0) return cutoff;

    Eigen::MatrixXd costs(m, n);
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < n; ++j) {
            costs(i, j) = std::pow(std::min(((*small)[i] - (*large)[j]).norm(), cutoff), order);
        }
    }
    const AssignmentResult res = assign_unequal(costs);
    const double total = res.total_cost + std::pow(cutoff, order) * (n - m);
    return std::pow(total / n, 1.0 / order);
}

// ---------------------------------------------------------------------------
// Mission loop

namespace {

struct EngineAgent {
    AgentState state;
    GuidanceState guidance;
    bool done = false;          // reached its assigned target
    int assigned_truth_target = -1;
    AgentOutcome outcome = AgentOutcome::timeout;
    double t_final = 0.0;
};

int nearest_truth_target(const Eigen::Vector2d& goal, const std::vector<TargetState>& targets) {
    int best = -1;
    double best_dist = std::numeric_limits<double>::infinity();
    for (const auto& t : targets) {
        const double d = (t.position - goal).norm();
        if (d < best_dist) {
            best_dist = d;
            best = t.id;
        }
    }
    return best;
}

// Broadcast adoption: each living, unfinished agent takes the route whose
// start is nearest to it (resolved as a min-cost matching so two agents never
// grab the same route). Routes left over go unused; agents left over keep
// their previous guidance.
std::vector<int> adopt_routes(const MissionPlan& plan, std::vector<EngineAgent>& agents,
                              const std::vector<TargetState>& targets) {
    std::vector<int> candidates;
    for (std::size_t i = 0; i < agents.size(); ++i) {
        if (agents[i].state.alive && !agents[i].done) candidates.push_back(static_cast<int>(i));
    }
    std::vector<int> route_agent(plan.routes.size(), -1);
    if (candidates.empty() || plan.routes.empty()) return route_agent;

    const int n_cand = static_cast<int>(candidates.size());
    const int n_routes = static_cast<int>(plan.routes.size());
    Eigen::MatrixXd dist(n_cand, n_routes);
    for (int i = 0; i < n_cand; ++i) {
        for (int j = 0; j < n_routes; ++j) {
            dist(i, j) =
                (agents[candidates[i]].state.position - plan.routes[j].waypoints.front()).norm();
        }
    }

    std::vector<std::pair<int, int>> matches;  // (candidate, route)
    if (n_routes >= n_cand) {
        const AssignmentResult res = assign_unequal(dist);
        for (int i = 0; i < n_cand; ++i) matches.emplace_back(i, res.agent_to_target[i]);
    } else {
        const AssignmentResult res = assign_unequal(dist.transpose());
        for (int j = 0; j < n_routes; ++j) matches.emplace_back(res.agent_to_target[j], j);
    }

    for (const auto& [ci, rj] : matches) {
        EngineAgent& agent = agents[candidates[ci]];
        const PlanRoute& route = plan.routes[rj];
        agent.guidance.assigned_target = route.target_index;
        agent.guidance.waypoints = route.waypoints;
        agent.guidance.active = 0;
        agent.guidance.mission_complete = false;
        agent.assigned_truth_target = nearest_truth_target(route.waypoints.back(), targets);
        route_agent[rj] = agents[candidates[ci]].state.id;
    }
    return route_agent;
}

}  // namespace

SimTrace run_simulation(const Scenario& scenario, const SimOptions& options) {
    validate_scenario(scenario);
    const ModelParams& params = scenario.params;

    SimClock clock;
    clock.dt = 1.0 / params.dyn_rate;
    clock.steps_per_filter = params.dyn_steps_per_filter();
    clock.steps_per_replan = clock.steps_per_filter * params.filter_steps_per_replan();
    const int decimate_every = std::max(
        1, static_cast<int>(std::round(params.dyn_rate / options.truth_decimate_hz)));

    LinearModel model;
    model.a = params.agent_a;
    model.b = params.agent_b;
    model.dt = clock.dt;
    const DiscreteModel dmodel = discretize(model);
    const LqrGain gain = lqr_gain(model, params.lqr_q, params.lqr_r);

    std::vector<EngineAgent> agents(scenario.agents.size());
    for (std::size_t i = 0; i < scenario.agents.size(); ++i) {
        agents[i].state.position = scenario.agents[i].position;
        agents[i].state.lateral.setZero();
        agents[i].state.lateral(4) = scenario.agents[i].heading;
        agents[i].state.id = static_cast<int>(i);
    }
    std::vector<TargetState> targets(scenario.targets.size());
    for (std::size_t i = 0; i < scenario.targets.size(); ++i) {
        targets[i].position = scenario.targets[i].position;
        targets[i].velocity = scenario.targets[i].velocity;
        targets[i].id = static_cast<int>(i);
    }

    // Two independent filter instances over the same scans. Each one's clutter
    // rate covers the true clutter plus the other population's detections.
    const double filter_dt = 1.0 / params.filter_rate;
    const auto make_filter = [&](const std::vector<Eigen::Vector2d>& births,
                                 const std::vector<Eigen::Vector2d>& birth_vels,
                                 double process_noise, double cross_count) {
        GlmbFilterConfig cfg;
        cfg.f = cv_transition(filter_dt);
        cfg.q = cv_process_noise(filter_dt, process_noise);
        cfg.h = Eigen::MatrixXd::Zero(2, 4);
        cfg.h(0, 0) = 1.0;
        cfg.h(1, 1) = 1.0;
        cfg.r = params.meas_noise_cov;
        cfg.p_detect = params.detect_prob;
        cfg.clutter_rate = params.clutter_rate + params.detect_prob * cross_count;
        cfg.area = scenario.area;
        cfg.birth_positions = births;
        cfg.birth_velocities = birth_vels;
        cfg.settings = params.glmb;
        return GlmbFilter(cfg);
    };
    // Start configuration (positions, commanded headings and speed,
    // prescribed target motion) is mission setup data, so both filters may
    // anchor their birth priors on it.
    std::vector<Eigen::Vector2d> agent_births, target_births;
    std::vector<Eigen::Vector2d> agent_birth_vels, target_birth_vels;
    for (const auto& a : scenario.agents) {
        agent_births.push_back(a.position);
        agent_birth_vels.emplace_back(params.forward_speed * std::cos(a.heading),
                                      params.forward_speed * std::sin(a.heading));
    }
    for (const auto& t : scenario.targets) {
        target_births.push_back(t.position);
        target_birth_vels.push_back(t.velocity);
    }
    GlmbFilter agent_filter =
        make_filter(agent_births, agent_birth_vels, params.glmb.process_noise_agents,
                    static_cast<double>(targets.size()));
    GlmbFilter target_filter =
        make_filter(target_births, target_birth_vels, params.glmb.process_noise_targets,
                    static_cast<double>(agents.size()));

    Rng rng(scenario.seed);
    SimTrace trace;

    const auto snapshot = [&](double t) {
        TruthSnapshot snap;
        snap.t = t;
        for (const auto& a : agents) snap.agents.push_back(a.state);
        snap.targets = targets;
        trace.truth.push_back(std::move(snap));
    };

    // Initial plan from the modeled start configuration, before any scan.
    {
        std::vector<Eigen::Vector2d> starts, goals;
        for (const auto& a : scenario.agents) starts.push_back(a.position);
        for (const auto& t : scenario.targets) goals.push_back(t.position);
        MissionPlan plan = plan_mission(starts, goals, scenario.grid, scenario.area,
                                        scenario.obstacles, options.cost_rule);
        plan.replan_index = 0;
        PlanRecord rec;
        rec.t = 0.0;
        rec.route_agent_ids = adopt_routes(plan, agents, targets);
        rec.plan = std::move(plan);
        rec.reason = "initial";
        trace.plans.push_back(std::move(rec));
    }
    snapshot(0.0);

    const Eigen::Matrix2d accel_chol = params.target_process_noise * Eigen::Matrix2d::Identity();

    std::vector<char> death_script_fired(scenario.death_script.size(), 0);
    ExtractionPair baseline;
    bool has_baseline = false;
    int replan_count = 0;
    bool terminated = false;

    while (!terminated) {
        ++clock.tick;
        const double t = clock.time();

        // 100 Hz: guidance, agent and target propagation, completion checks.
        for (auto& agent : agents) {
            if (!agent.state.alive || agent.done) continue;
            const std::size_t prev_active = agent.guidance.active;
            agent.guidance = advance_waypoint(agent.guidance, agent.state.position,
                                              params.waypoint_threshold);
            if (agent.guidance.active != prev_active && agent.guidance.has_active()) {
                std::ostringstream os;
                os << "agent " << agent.state.id << " waypoint " << agent.guidance.active << "/"
                   << agent.guidance.waypoints.size();
                trace.events.push_back({t, SimEventKind::waypoint_reached, os.str()});
            }
            // An exhausted list keeps the agent flying at its final waypoint
            // (the planned target location) until the truth check or a replan
            // resolves it; a fixed-wing agent cannot hover short of the mark.
            const Eigen::Vector2d* aim = nullptr;
            if (agent.guidance.has_active()) {
                aim = &agent.guidance.waypoints[agent.guidance.active];
            } else if (!agent.guidance.waypoints.empty()) {
                aim = &agent.guidance.waypoints.back();
            }
            if (aim != nullptr) {
                const double dist = (*aim - agent.state.position).norm();
                const double cmd = dist > 0.5 ? heading_command(agent.state.position, *aim)
                                              : agent.state.heading();
                agent.state = step_agent(agent.state, cmd, dmodel, gain, params.forward_speed);
            }
            if (agent.assigned_truth_target >= 0) {
                const auto& tgt = targets[agent.assigned_truth_target];
                if ((agent.state.position - tgt.position).norm() < params.waypoint_threshold) {
                    agent.done = true;
                    agent.outcome = AgentOutcome::completed;
                    agent.t_final = t;
                    std::ostringstream os;
                    os << "agent " << agent.state.id << " reached target "
                       << agent.assigned_truth_target;
                    trace.events.push_back({t, SimEventKind::target_reached, os.str()});
                }
            }
        }
        for (auto& tgt : targets) {
            Eigen::Vector2d accel{0.0, 0.0};
            if (params.target_process_noise > 0.0) accel = rng.normal2(accel_chol);
            tgt = step_target(tgt, clock.dt, accel);
        }

        // 1 Hz: scan synthesis, both filters, death process.
        if (clock.filter_tick()) {
            MeasurementScan scan;
            scan.time_index = static_cast<int>(clock.tick / clock.steps_per_filter);
            for (const auto& pt : generate_clutter(params.clutter_rate, scenario.area, rng)) {
                scan.points.push_back(pt);
                scan.truth_tags.push_back("clutter");
            }
            std::vector<Eigen::Vector2d> alive_positions;
            std::vector<int> alive_ids;
            for (const auto& a : agents) {
                if (a.state.alive) {
                    alive_positions.push_back(a.state.position);
                    alive_ids.push_back(a.state.id);
                }
            }
            for (const auto& det : generate_measurements(alive_positions, params.detect_prob,
                                                         params.meas_noise_cov, rng)) {
                scan.points.push_back(scenario.area.clamp(det.point));
                scan.truth_tags.push_back("agent:" + std::to_string(alive_ids[det.object_index]));
            }
            std::vector<Eigen::Vector2d> target_positions;
            for (const auto& tgt : targets) target_positions.push_back(tgt.position);
            for (const auto& det : generate_measurements(target_positions, params.detect_prob,
                                                         params.meas_noise_cov, rng)) {
                scan.points.push_back(scenario.area.clamp(det.point));
                scan.truth_tags.push_back("target:" + std::to_string(det.object_index));
            }

            agent_filter.step(scan);
            target_filter.step(scan);
            trace.scans.push_back({t, scan});

            ExtractionRecord rec;
            rec.t = t;
            rec.agents = agent_filter.extract();
            rec.targets = target_filter.extract();
            const std::size_t living =
                static_cast<std::size_t>(std::count_if(agents.begin(), agents.end(),
                                                       [](const EngineAgent& a) {
                                                           return a.state.alive;
                                                       }));
            if (rec.agents.size() > living) {
                std::ostringstream os;
                os << "agent filter extracted " << rec.agents.size() << " tracks, " << living
                   << " agents alive";
                trace.events.push_back({t, SimEventKind::spurious_extraction, os.str()});
            }
            if (rec.targets.size() > targets.size()) {
                std::ostringstream os;
                os << "target filter extracted " << rec.targets.size() << " tracks, "
                   << targets.size() << " targets";
                trace.events.push_back({t, SimEventKind::spurious_extraction, os.str()});
            }
            trace.extractions.push_back(rec);

            // Scripted deaths first (no draws), then the seeded process in
            // ascending id order.
            for (std::size_t k = 0; k < scenario.death_script.size(); ++k) {
                if (death_script_fired[k] || scenario.death_script[k].time > t) continue;
                death_script_fired[k] = 1;
                EngineAgent& victim = agents[scenario.death_script[k].agent_id];
                if (victim.state.alive) {
                    victim.state.alive = false;
                    if (!victim.done) {
                        victim.outcome = AgentOutcome::dead;
                        victim.t_final = t;
                    }
                    trace.events.push_back({t, SimEventKind::death,
                                            "agent " + std::to_string(victim.state.id)});
                }
            }
            if (params.death_prob_per_step > 0.0) {
                for (auto& agent : agents) {
                    if (!agent.state.alive) continue;
                    if (rng.bernoulli(params.death_prob_per_step)) {
                        agent.state.alive = false;
                        if (!agent.done) {
                            agent.outcome = AgentOutcome::dead;
                            agent.t_final = t;
                        }
                        trace.events.push_back({t, SimEventKind::death,
                                                "agent " + std::to_string(agent.state.id)});
                    }
                }
            }
        }

        // 0.2 Hz: guidance-update check against the previous replan sample.
        if (clock.replan_tick()) {
            const ExtractionRecord& latest = trace.extractions.back();
            ExtractionPair current{latest.agents, latest.targets};
            if (!has_baseline) {
                baseline = current;
                has_baseline = true;
            } else {
                const ReplanDecision decision =
                    replan_check(baseline, current, params.movement_threshold);
                baseline = current;
                if (decision.flag && current.agents.empty()) {
                    // Filter-loss degenerate case: only extraction-driven
                    // replans are allowed, so the previous plan stays live.
                    trace.events.push_back({t, SimEventKind::replan,
                                            "replan skipped (no agent extractions); previous "
                                            "plan retained"});
                } else if (decision.flag) {
                    std::vector<Eigen::Vector2d> claimed;
                    for (const auto& a : agents) {
                        if (a.done) claimed.push_back(a.state.position);
                    }
                    ++replan_count;
                    try {
                        MissionPlan plan = replan(current.agents, current.targets, scenario,
                                                  replan_count, options.cost_rule, claimed);
                        PlanRecord rec;
                        rec.t = t;
                        rec.route_agent_ids = adopt_routes(plan, agents, targets);
                        rec.plan = std::move(plan);
                        rec.reason = decision.reason;
                        trace.plans.push_back(std::move(rec));
                        trace.events.push_back({t, SimEventKind::replan,
                                                "replan " + std::to_string(replan_count) + " (" +
                                                    decision.reason + ")"});
                    } catch (const InfeasibleError& e) {
                        trace.events.push_back({t, SimEventKind::replan,
                                                "replan " + std::to_string(replan_count) +
                                                    " infeasible; previous plan retained"});
                    }
                }
            }
        }

        if (clock.tick % decimate_every == 0) snapshot(t);

        const bool all_resolved = std::all_of(agents.begin(), agents.end(), [](const EngineAgent& a) {
            return !a.state.alive || a.done;
        });
        if (all_resolved) {
            trace.events.push_back({t, SimEventKind::termination, "all agents resolved"});
            trace.termination_reason = "all agents resolved";
            terminated = true;
        } else if (t >= params.max_sim_seconds - 1e-12) {
            trace.events.push_back({t, SimEventKind::termination, "time cap"});
            trace.termination_reason = "time cap";
            terminated = true;
        }
        if (terminated) {
            trace.t_end = t;
            if (clock.tick % decimate_every != 0) snapshot(t);
        }
    }

    for (const auto& agent : agents) {
        AgentSummary s;
        s.id = agent.state.id;
        s.outcome = agent.outcome;
        s.t_final = agent.outcome == AgentOutcome::timeout ? trace.t_end : agent.t_final;
        trace.summary.push_back(s);
    }
    return trace;
}

}  // namespace swarmstat
