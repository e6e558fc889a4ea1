#include "swarmstat/trace_io.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <thread>

#include <json.hpp>

namespace swarmstat {

namespace fs = std::filesystem;

namespace {

std::string fmt(double v) {
    char buf[40];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

std::string fmt(long long v) { return std::to_string(v); }

struct Field {
    std::string name;
    std::string value;
    bool quoted = false;
};

Field num(std::string name, double v) { return {std::move(name), fmt(v), false}; }
Field num(std::string name, long long v) { return {std::move(name), fmt(v), false}; }
Field num(std::string name, int v) { return {std::move(name), fmt(static_cast<long long>(v)), false}; }
Field text(std::string name, std::string v) {
    // Keep the CSV single-token: our own strings never need full quoting.
    std::replace(v.begin(), v.end(), ',', ';');
    return {std::move(name), std::move(v), true};
}

class RowWriter {
public:
    RowWriter(const std::string& path, TraceFormat format) : format_(format), out_(path) {
        if (!out_) throw std::runtime_error("cannot open '" + path + "' for writing");
    }

    void row(const std::vector<Field>& fields) {
        if (format_ == TraceFormat::csv) {
            if (!header_done_) {
                for (std::size_t i = 0; i < fields.size(); ++i) {
                    if (i) out_ << ',';
                    out_ << fields[i].name;
                }
                out_ << '\n';
                header_done_ = true;
            }
            for (std::size_t i = 0; i < fields.size(); ++i) {
                if (i) out_ << ',';
                out_ << fields[i].value;
            }
            out_ << '\n';
        } else {
            out_ << '{';
            for (std::size_t i = 0; i < fields.size(); ++i) {
                if (i) out_ << ',';
                out_ << '"' << fields[i].name << "\":";
                if (fields[i].quoted) {
                    out_ << '"';
                    for (const char c : fields[i].value) {
                        if (c == '"' || c == '\\') out_ << '\\';
                        out_ << c;
                    }
                    out_ << '"';
                } else {
                    out_ << fields[i].value;
                }
            }
            out_ << "}\n";
        }
    }

    /// Emits the header even if no data rows follow (csv only).
    void ensure_header(const std::vector<std::string>& names) {
        if (format_ == TraceFormat::csv && !header_done_) {
            for (std::size_t i = 0; i < names.size(); ++i) {
                if (i) out_ << ',';
                out_ << names[i];
            }
            out_ << '\n';
            header_done_ = true;
        }
    }

private:
    TraceFormat format_;
    std::ofstream out_;
    bool header_done_ = false;
};

std::string ext(TraceFormat format) { return format == TraceFormat::csv ? ".csv" : ".jsonl"; }

}  // namespace

void write_plan_file(const MissionPlan& plan, const std::vector<int>& route_agent_ids, double t,
                     const std::string& path, TraceFormat format) {
    RowWriter w(path, format);
    w.ensure_header({"replan_index", "t", "agent_id", "target_id", "wp_seq", "x", "y"});
    for (std::size_t ri = 0; ri < plan.routes.size(); ++ri) {
        const PlanRoute& route = plan.routes[ri];
        const int agent_id = ri < route_agent_ids.size() ? route_agent_ids[ri] : route.agent_index;
        for (std::size_t wi = 0; wi < route.waypoints.size(); ++wi) {
            w.row({num("replan_index", plan.replan_index), num("t", t), num("agent_id", agent_id),
                   num("target_id", route.target_index), num("wp_seq", static_cast<int>(wi)),
                   num("x", route.waypoints[wi].x()), num("y", route.waypoints[wi].y())});
        }
    }
}

void write_trace(const SimTrace& trace, const Scenario& scenario, const std::string& dir,
                 TraceFormat format) {
    fs::create_directories(dir);
    const std::string e = ext(format);

    {
        RowWriter w(dir + "/truth" + e, format);
        w.ensure_header({"t", "kind", "id", "x", "y", "alive"});
        for (const auto& snap : trace.truth) {
            for (const auto& a : snap.agents) {
                w.row({num("t", snap.t), text("kind", "agent"), num("id", a.id),
                       num("x", a.position.x()), num("y", a.position.y()),
                       num("alive", a.alive ? 1 : 0)});
            }
            for (const auto& tgt : snap.targets) {
                w.row({num("t", snap.t), text("kind", "target"), num("id", tgt.id),
                       num("x", tgt.position.x()), num("y", tgt.position.y()), num("alive", 1)});
            }
        }
    }
    {
        RowWriter w(dir + "/scans" + e, format);
        w.ensure_header({"t", "x", "y", "truth_tag"});
        for (const auto& rec : trace.scans) {
            for (std::size_t i = 0; i < rec.scan.points.size(); ++i) {
                w.row({num("t", rec.t), num("x", rec.scan.points[i].x()),
                       num("y", rec.scan.points[i].y()),
                       text("truth_tag", rec.scan.truth_tags[i])});
            }
        }
    }
    for (const bool agents : {true, false}) {
        RowWriter w(dir + (agents ? "/estimates_agents" : "/estimates_targets") + e, format);
        w.ensure_header({"t", "label_birth", "label_index", "x", "y"});
        for (const auto& rec : trace.extractions) {
            for (const auto& est : agents ? rec.agents : rec.targets) {
                w.row({num("t", rec.t), num("label_birth", est.label.step),
                       num("label_index", est.label.index), num("x", est.position.x()),
                       num("y", est.position.y())});
            }
        }
    }
    {
        RowWriter w(dir + "/plans" + e, format);
        w.ensure_header({"replan_index", "t", "agent_id", "target_id", "wp_seq", "x", "y"});
        for (const auto& rec : trace.plans) {
            for (std::size_t ri = 0; ri < rec.plan.routes.size(); ++ri) {
                const PlanRoute& route = rec.plan.routes[ri];
                const int agent_id =
                    ri < rec.route_agent_ids.size() ? rec.route_agent_ids[ri] : route.agent_index;
                for (std::size_t wi = 0; wi < route.waypoints.size(); ++wi) {
                    w.row({num("replan_index", rec.plan.replan_index), num("t", rec.t),
                           num("agent_id", agent_id), num("target_id", route.target_index),
                           num("wp_seq", static_cast<int>(wi)), num("x", route.waypoints[wi].x()),
                           num("y", route.waypoints[wi].y())});
                }
            }
        }
    }
    {
        RowWriter w(dir + "/events" + e, format);
        w.ensure_header({"t", "kind", "detail"});
        for (const auto& ev : trace.events) {
            w.row({num("t", ev.t), text("kind", to_string(ev.kind)), text("detail", ev.detail)});
        }
    }
    {
        RowWriter w(dir + "/summary" + e, format);
        w.ensure_header({"id", "outcome", "t_final"});
        for (const auto& s : trace.summary) {
            w.row({num("id", s.id), text("outcome", to_string(s.outcome)),
                   num("t_final", s.t_final)});
        }
    }

    nlohmann::ordered_json manifest;
    manifest["schema_version"] = 1;
    manifest["scenario_name"] = scenario.name;
    manifest["seed"] = scenario.seed;
    manifest["dyn_rate"] = scenario.params.dyn_rate;
    manifest["filter_rate"] = scenario.params.filter_rate;
    manifest["replan_rate"] = scenario.params.replan_rate;
    manifest["n_agents"] = scenario.agents.size();
    manifest["n_targets"] = scenario.targets.size();
    manifest["t_end"] = trace.t_end;
    manifest["termination"] = trace.termination_reason;
    manifest["format"] = format == TraceFormat::csv ? "csv" : "jsonl";
    std::ofstream mf(dir + "/manifest.json");
    if (!mf) throw std::runtime_error("cannot open '" + dir + "/manifest.json' for writing");
    mf << manifest.dump(2) << "\n";
}

// ---------------------------------------------------------------------------
// Commands

namespace {

int run_one(const Scenario& scenario, const RunConfig& config, const std::string& dir) {
    SimOptions options;
    options.cost_rule = config.paper_cost ? CostRule::unit_moves : CostRule::octile;
    options.truth_decimate_hz = config.decimate_hz;
    const SimTrace trace = run_simulation(scenario, options);
    write_trace(trace, scenario, dir, config.format);
    return 0;
}

}  // namespace

int cmd_run(const RunConfig& config) {
    Scenario scenario;
    try {
        scenario = load_scenario(config.scenario_path);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    if (config.seed_override) scenario.seed = *config.seed_override;

    try {
        if (config.runs <= 1) {
            return run_one(scenario, config, config.out_dir);
        }
        // Seeded batch: one directory per seed, fanned out over a bounded
        // worker pool. Each run is independent, so output bytes do not depend
        // on scheduling.
        const std::uint64_t base_seed = scenario.seed;
        std::atomic<int> next{0};
        std::atomic<int> status{0};
        const int workers = config.workers > 0
                                ? config.workers
                                : std::max(1, std::min<int>(config.runs,
                                                            static_cast<int>(
                                                                std::thread::hardware_concurrency())));
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w) {
            pool.emplace_back([&]() {
                while (true) {
                    const int k = next.fetch_add(1);
                    if (k >= config.runs) return;
                    Scenario copy = scenario;
                    copy.seed = base_seed + static_cast<std::uint64_t>(k);
                    const std::string dir =
                        config.out_dir + "/run_" + std::to_string(copy.seed);
                    try {
                        RunConfig one = config;
                        run_one(copy, one, dir);
                    } catch (const InfeasibleError& e) {
                        std::cerr << "error (seed " << copy.seed << "): " << e.what() << "\n";
                        status.store(3);
                    } catch (const std::exception& e) {
                        std::cerr << "error (seed " << copy.seed << "): " << e.what() << "\n";
                        status.store(4);
                    }
                }
            });
        }
        for (auto& th : pool) th.join();
        return status.load();
    } catch (const InfeasibleError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    }
}

int cmd_plan(const std::string& scenario_path, const std::string& out_dir, bool paper_cost,
             TraceFormat format) {
    try {
        const Scenario scenario = load_scenario(scenario_path);
        std::vector<Eigen::Vector2d> starts, goals;
        for (const auto& a : scenario.agents) starts.push_back(a.position);
        for (const auto& t : scenario.targets) goals.push_back(t.position);
        const MissionPlan plan =
            plan_mission(starts, goals, scenario.grid, scenario.area, scenario.obstacles,
                         paper_cost ? CostRule::unit_moves : CostRule::octile);
        fs::create_directories(out_dir);
        std::vector<int> identity;
        for (const auto& route : plan.routes) identity.push_back(route.agent_index);
        write_plan_file(plan, identity, 0.0, out_dir + "/plans" + ext(format), format);
        return 0;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const InfeasibleError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    }
}

// ---------------------------------------------------------------------------
// Scoring

namespace {

std::vector<std::vector<std::string>> read_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    std::vector<std::vector<std::string>> rows;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (first) {  // header
            first = false;
            continue;
        }
        if (line.empty()) continue;
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        rows.push_back(std::move(cells));
    }
    return rows;
}

double to_double(const std::string& s) { return std::strtod(s.c_str(), nullptr); }

}  // namespace

int cmd_score(const ScoreConfig& config) {
    try {
        std::ifstream mf(config.trace_dir + "/manifest.json");
        if (!mf) throw std::runtime_error("cannot open '" + config.trace_dir + "/manifest.json'");
        const auto manifest = nlohmann::json::parse(mf);
        if (manifest.value("format", "csv") != "csv") {
            throw std::runtime_error("score reads csv traces; re-run with --format csv");
        }
        const double dyn_rate = manifest.at("dyn_rate").get<double>();
        const double filter_rate = manifest.at("filter_rate").get<double>();
        const double t_end = manifest.at("t_end").get<double>();
        const int steps_per_filter = static_cast<int>(std::round(dyn_rate / filter_rate));
        const double dt = 1.0 / dyn_rate;

        // Truth positions keyed by snapshot time.
        struct TruthSets {
            std::vector<Eigen::Vector2d> agents;
            std::vector<Eigen::Vector2d> targets;
        };
        std::map<double, TruthSets> truth;
        for (const auto& row : read_csv(config.trace_dir + "/truth.csv")) {
            const double t = to_double(row[0]);
            const Eigen::Vector2d pos{to_double(row[3]), to_double(row[4])};
            if (row[1] == "agent") {
                if (row[5] == "1") truth[t].agents.push_back(pos);
            } else {
                truth[t].targets.push_back(pos);
            }
        }
        std::map<double, std::vector<Eigen::Vector2d>> est_agents, est_targets;
        for (const auto& row : read_csv(config.trace_dir + "/estimates_agents.csv")) {
            est_agents[to_double(row[0])].emplace_back(to_double(row[3]), to_double(row[4]));
        }
        for (const auto& row : read_csv(config.trace_dir + "/estimates_targets.csv")) {
            est_targets[to_double(row[0])].emplace_back(to_double(row[3]), to_double(row[4]));
        }

        const auto nearest_truth = [&](double t) -> const TruthSets& {
            auto it = truth.lower_bound(t - 1e-9);
            if (it == truth.end()) it = std::prev(truth.end());
            return it->second;
        };

        RowWriter metrics(config.trace_dir + "/metrics.csv", TraceFormat::csv);
        metrics.ensure_header({"t", "ospa_agents", "ospa_targets"});
        double sum_a = 0.0, sum_t = 0.0;
        int scans = 0;
        for (long k = 1; k * steps_per_filter * dt <= t_end + 1e-9; ++k) {
            const double t = (k * steps_per_filter) * dt;  // engine tick arithmetic
            const TruthSets& ts = nearest_truth(t);
            const auto ea = est_agents.find(t);
            const auto et = est_targets.find(t);
            const double oa = ospa(ea != est_agents.end() ? ea->second
                                                          : std::vector<Eigen::Vector2d>{},
                                   ts.agents, config.cutoff, config.order);
            const double ot = ospa(et != est_targets.end() ? et->second
                                                           : std::vector<Eigen::Vector2d>{},
                                   ts.targets, config.cutoff, config.order);
            metrics.row({num("t", t), num("ospa_agents", oa), num("ospa_targets", ot)});
            sum_a += oa;
            sum_t += ot;
            ++scans;
        }

        int replans = 0, deaths = 0;
        for (const auto& row : read_csv(config.trace_dir + "/events.csv")) {
            if (row[1] == "replan") ++replans;
            if (row[1] == "death") ++deaths;
        }
        int completed = 0, total_agents = 0;
        for (const auto& row : read_csv(config.trace_dir + "/summary.csv")) {
            ++total_agents;
            if (row[1] == "completed") ++completed;
        }

        RowWriter summary(config.trace_dir + "/metrics_summary.csv", TraceFormat::csv);
        summary.ensure_header({"completion_fraction", "replan_count", "death_count",
                               "mean_ospa_agents", "mean_ospa_targets"});
        summary.row({num("completion_fraction",
                         total_agents ? static_cast<double>(completed) / total_agents : 0.0),
                     num("replan_count", replans), num("death_count", deaths),
                     num("mean_ospa_agents", scans ? sum_a / scans : 0.0),
                     num("mean_ospa_targets", scans ? sum_t / scans : 0.0)});
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    }
}

}  // namespace swarmstat
