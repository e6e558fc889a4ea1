#include "swarmstat/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace swarmstat {

using json = nlohmann::ordered_json;

ModelParams::ModelParams() {
    // Default lateral model of a small fixed-wing agent. State order is
    // [lateral velocity, roll rate, yaw rate, roll angle, heading]; inputs are
    // [aileron, rudder]. The numeric entries are configuration, tuned for a
    // responsive heading loop under the unit LQR weights; scenario files may
    // override them.
    agent_a << -1.2,   0.0, -10.0, 9.81, 0.0,
               -1.0, -14.0,   3.0,  0.0, 0.0,
                2.0,  -0.4,  -1.5,  0.0, 0.0,
                0.0,   1.0,   0.0,  0.0, 0.0,
                0.0,   0.0,   1.0,  0.0, 0.0;
    agent_b <<  0.0,  1.5,
               60.0,  2.0,
                1.0, -8.0,
                0.0,  0.0,
                0.0,  0.0;
}

namespace {

int exact_ratio(double num, double den, const char* what) {
    const double ratio = num / den;
    const double rounded = std::round(ratio);
    if (rounded < 1.0 || std::abs(ratio - rounded) > 1e-9) {
        throw ValidationError(std::string("params: ") + what +
                              " must be an exact integer ratio >= 1");
    }
    return static_cast<int>(rounded);
}

}  // namespace

int ModelParams::dyn_steps_per_filter() const {
    return exact_ratio(dyn_rate, filter_rate, "dyn_rate / filter_rate");
}

int ModelParams::filter_steps_per_replan() const {
    return exact_ratio(filter_rate, replan_rate, "filter_rate / replan_rate");
}

// ---------------------------------------------------------------------------
// Grid <-> world mapping

Eigen::Vector2d grid_to_world(GridNode node, const GridSpec& grid, const MissionArea& area) {
    if (!grid.in_bounds(node.row, node.col)) {
        std::ostringstream os;
        os << "grid_to_world: node (" << node.row << ", " << node.col << ") outside "
           << grid.n_rows << "x" << grid.n_cols << " grid";
        throw InvalidEndpointError(os.str());
    }
    const double x = area.x_min + node.col * (area.width() / (grid.n_cols - 1));
    const double y = area.y_min + node.row * (area.height() / (grid.n_rows - 1));
    return {x, y};
}

GridNode world_to_grid(const Eigen::Vector2d& pos, const GridSpec& grid, const MissionArea& area) {
    const double dx = area.width() / (grid.n_cols - 1);
    const double dy = area.height() / (grid.n_rows - 1);
    const double fc = (pos.x() - area.x_min) / dx;
    const double fr = (pos.y() - area.y_min) / dy;
    if (fc < -1.0 || fc > grid.n_cols || fr < -1.0 || fr > grid.n_rows) {
        std::ostringstream os;
        os << "world_to_grid: position (" << pos.x() << ", " << pos.y()
           << ") more than one cell outside the mission area";
        throw ValidationError(os.str());
    }
    // Nearest lattice node separates per axis; an exact half-cell tie rounds
    // down, which realizes the smaller-row-then-smaller-col rule.
    const auto nearest = [](double f, int n) {
        const int i = static_cast<int>(std::ceil(f - 0.5));
        return std::clamp(i, 0, n - 1);
    };
    return {nearest(fr, grid.n_rows), nearest(fc, grid.n_cols)};
}

ObstacleSet generate_random_obstacles(const GridSpec& grid, double threshold,
                                      const std::set<GridNode>& protected_nodes, Rng& rng) {
    if (threshold < 0.0 || threshold > 1.0) {
        throw ValidationError("obstacles: random threshold must be in [0, 1]");
    }
    for (const GridNode& n : protected_nodes) {
        if (!grid.in_bounds(n.row, n.col)) {
            throw ValidationError("obstacles: protected node outside grid");
        }
    }
    ObstacleSet out;
    for (int r = 0; r < grid.n_rows; ++r) {
        for (int c = 0; c < grid.n_cols; ++c) {
            const bool hit = rng.uniform() < threshold;
            if (hit && !protected_nodes.contains(GridNode{r, c})) {
                out.insert(GridNode{r, c});
            }
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Validation

namespace {

bool finite(double v) { return std::isfinite(v); }

void check_probability(double v, const char* name) {
    if (!(v >= 0.0 && v <= 1.0)) {
        throw ValidationError(std::string("params: ") + name + " must be in [0, 1]");
    }
}

void check_spd2(const Eigen::Matrix2d& m, const char* name) {
    if ((m - m.transpose()).cwiseAbs().maxCoeff() > 1e-9) {
        throw ValidationError(std::string("params: ") + name + " must be symmetric");
    }
    Eigen::LLT<Eigen::Matrix2d> llt(m);
    if (llt.info() != Eigen::Success) {
        throw ValidationError(std::string("params: ") + name + " must be positive definite");
    }
}

}  // namespace

void validate_scenario(const Scenario& s) {
    if (!(s.area.x_min < s.area.x_max)) throw ValidationError("area: x_min must be < x_max");
    if (!(s.area.y_min < s.area.y_max)) throw ValidationError("area: y_min must be < y_max");
    if (s.grid.n_rows < 2 || s.grid.n_cols < 2) {
        throw ValidationError("grid: n_rows and n_cols must be >= 2");
    }
    for (const GridNode& n : s.obstacles) {
        if (!s.grid.in_bounds(n.row, n.col)) {
            std::ostringstream os;
            os << "obstacles: node (" << n.row << ", " << n.col << ") outside grid";
            throw ValidationError(os.str());
        }
    }
    if (s.agents.empty()) throw ValidationError("agents: at least one agent required");
    for (std::size_t i = 0; i < s.agents.size(); ++i) {
        const auto& a = s.agents[i];
        if (!finite(a.position.x()) || !finite(a.position.y()) || !finite(a.heading)) {
            throw ValidationError("agents[" + std::to_string(i) + "]: non-finite value");
        }
        if (!s.area.contains(a.position)) {
            throw ValidationError("agents[" + std::to_string(i) + "]: position outside mission area");
        }
    }
    if (s.targets.size() < s.agents.size()) {
        throw ValidationError("targets: need at least as many targets (" +
                              std::to_string(s.targets.size()) + ") as agents (" +
                              std::to_string(s.agents.size()) + ")");
    }
    for (std::size_t i = 0; i < s.targets.size(); ++i) {
        const auto& t = s.targets[i];
        if (!finite(t.position.x()) || !finite(t.position.y()) || !finite(t.velocity.x()) ||
            !finite(t.velocity.y())) {
            throw ValidationError("targets[" + std::to_string(i) + "]: non-finite value");
        }
        if (!s.area.contains(t.position)) {
            throw ValidationError("targets[" + std::to_string(i) + "]: position outside mission area");
        }
    }
    for (const auto& a : s.agents) {
        const GridNode n = world_to_grid(a.position, s.grid, s.area);
        if (s.obstacles.contains(n)) {
            throw ValidationError("obstacles: node overlaps an agent start location");
        }
    }
    for (const auto& t : s.targets) {
        const GridNode n = world_to_grid(t.position, s.grid, s.area);
        if (s.obstacles.contains(n)) {
            throw ValidationError("obstacles: node overlaps a target start location");
        }
    }
    for (const auto& d : s.death_script) {
        if (d.time < 0.0 || d.agent_id < 0 ||
            d.agent_id >= static_cast<int>(s.agents.size())) {
            throw ValidationError("death_script: entry with bad time or agent id");
        }
    }

    const ModelParams& p = s.params;
    if (!(p.forward_speed > 0.0)) throw ValidationError("params: forward_speed must be > 0");
    if (!(p.waypoint_threshold > 0.0)) throw ValidationError("params: waypoint_threshold must be > 0");
    if (!(p.dyn_rate > 0.0 && p.filter_rate > 0.0 && p.replan_rate > 0.0)) {
        throw ValidationError("params: rates must be positive");
    }
    p.dyn_steps_per_filter();
    p.filter_steps_per_replan();
    check_probability(p.death_prob_per_step, "death_prob_per_step");
    check_probability(p.detect_prob, "detect_prob");
    if (!(p.clutter_rate >= 0.0)) throw ValidationError("params: clutter_rate must be >= 0");
    check_spd2(p.meas_noise_cov, "meas_noise_cov");
    if (!(p.target_process_noise >= 0.0)) {
        throw ValidationError("params: target_process_noise must be >= 0");
    }
    if (!(p.movement_threshold > 0.0)) throw ValidationError("params: movement_threshold must be > 0");
    if ((p.lqr_q - p.lqr_q.transpose()).cwiseAbs().maxCoeff() > 1e-9) {
        throw ValidationError("params: lqr_q must be symmetric");
    }
    check_spd2(p.lqr_r, "lqr_r");
    if (!(p.max_sim_seconds > 0.0)) throw ValidationError("params: max_sim_seconds must be > 0");

    const GlmbSettings& g = p.glmb;
    check_probability(g.p_survival, "glmb.p_survival");
    check_probability(g.birth_r_init, "glmb.birth_r_init");
    check_probability(g.birth_r_recurring, "glmb.birth_r_recurring");
    check_probability(g.hyp_weight_min, "glmb.hyp_weight_min");
    check_probability(g.gm_weight_min, "glmb.gm_weight_min");
    if (g.hyp_cap < 1 || g.gm_cap < 1) throw ValidationError("params: glmb caps must be >= 1");
    if (g.exhaustive_assoc_limit < 1 || g.ranked_assoc_k < 1) {
        throw ValidationError("params: glmb association limits must be >= 1");
    }
    if (!(g.birth_pos_var > 0.0 && g.birth_vel_var > 0.0)) {
        throw ValidationError("params: glmb birth variances must be > 0");
    }
    if (!(g.process_noise_agents >= 0.0 && g.process_noise_targets >= 0.0)) {
        throw ValidationError("params: glmb process noise must be >= 0");
    }
    if (!(g.max_coast_pos_var >= 0.0)) {
        throw ValidationError("params: glmb.max_coast_pos_var must be >= 0");
    }
}

// ---------------------------------------------------------------------------
// File format

namespace {

void reject_unknown_keys(const json& obj, std::initializer_list<const char*> allowed,
                         const std::string& where) {
    for (const auto& item : obj.items()) {
        if (std::find_if(allowed.begin(), allowed.end(), [&](const char* k) {
                return item.key() == k;
            }) == allowed.end()) {
            throw ParseError("unknown key '" + item.key() + "' in " + where);
        }
    }
}

double get_num(const json& obj, const char* key, const std::string& where) {
    if (!obj.contains(key)) throw ParseError("missing key '" + std::string(key) + "' in " + where);
    if (!obj[key].is_number()) throw ParseError("key '" + std::string(key) + "' in " + where + " must be a number");
    return obj[key].get<double>();
}

double opt_num(const json& obj, const char* key, double fallback) {
    return obj.contains(key) ? obj[key].get<double>() : fallback;
}

template <int R, int C>
Eigen::Matrix<double, R, C> parse_matrix(const json& arr, const std::string& where) {
    if (!arr.is_array() || arr.size() != R) throw ParseError(where + " must be a " +
        std::to_string(R) + "x" + std::to_string(C) + " array");
    Eigen::Matrix<double, R, C> m;
    for (int r = 0; r < R; ++r) {
        const auto& row = arr[r];
        if (!row.is_array() || row.size() != C) throw ParseError(where + " row has wrong length");
        for (int c = 0; c < C; ++c) m(r, c) = row[c].get<double>();
    }
    return m;
}

template <int R, int C>
json dump_matrix(const Eigen::Matrix<double, R, C>& m) {
    json arr = json::array();
    for (int r = 0; r < R; ++r) {
        json row = json::array();
        for (int c = 0; c < C; ++c) row.push_back(m(r, c));
        arr.push_back(row);
    }
    return arr;
}

GlmbSettings parse_glmb(const json& obj) {
    reject_unknown_keys(obj,
                        {"p_survival", "birth_r_init", "birth_r_recurring", "birth_pos_var",
                         "birth_vel_var", "process_noise_agents", "process_noise_targets",
                         "hyp_weight_min", "hyp_cap", "gm_weight_min", "gm_cap",
                         "exhaustive_assoc_limit", "ranked_assoc_k", "predict_child_floor",
                         "gate_mahalanobis2", "max_coast_pos_var"},
                        "params.glmb");
    GlmbSettings g;
    g.p_survival = opt_num(obj, "p_survival", g.p_survival);
    g.birth_r_init = opt_num(obj, "birth_r_init", g.birth_r_init);
    g.birth_r_recurring = opt_num(obj, "birth_r_recurring", g.birth_r_recurring);
    g.birth_pos_var = opt_num(obj, "birth_pos_var", g.birth_pos_var);
    g.birth_vel_var = opt_num(obj, "birth_vel_var", g.birth_vel_var);
    g.process_noise_agents = opt_num(obj, "process_noise_agents", g.process_noise_agents);
    g.process_noise_targets = opt_num(obj, "process_noise_targets", g.process_noise_targets);
    g.hyp_weight_min = opt_num(obj, "hyp_weight_min", g.hyp_weight_min);
    g.hyp_cap = static_cast<int>(opt_num(obj, "hyp_cap", g.hyp_cap));
    g.gm_weight_min = opt_num(obj, "gm_weight_min", g.gm_weight_min);
    g.gm_cap = static_cast<int>(opt_num(obj, "gm_cap", g.gm_cap));
    g.exhaustive_assoc_limit =
        static_cast<int>(opt_num(obj, "exhaustive_assoc_limit", g.exhaustive_assoc_limit));
    g.ranked_assoc_k = static_cast<int>(opt_num(obj, "ranked_assoc_k", g.ranked_assoc_k));
    g.predict_child_floor = opt_num(obj, "predict_child_floor", g.predict_child_floor);
    g.gate_mahalanobis2 = opt_num(obj, "gate_mahalanobis2", g.gate_mahalanobis2);
    g.max_coast_pos_var = opt_num(obj, "max_coast_pos_var", g.max_coast_pos_var);
    return g;
}

ModelParams parse_params(const json& obj) {
    reject_unknown_keys(obj,
                        {"forward_speed", "waypoint_threshold", "dyn_rate", "filter_rate",
                         "replan_rate", "death_prob_per_step", "clutter_rate", "detect_prob",
                         "meas_noise_cov", "target_process_noise", "movement_threshold", "lqr_q",
                         "lqr_r", "agent_a", "agent_b", "max_sim_seconds", "glmb"},
                        "params");
    ModelParams p;
    p.forward_speed = opt_num(obj, "forward_speed", p.forward_speed);
    p.waypoint_threshold = opt_num(obj, "waypoint_threshold", p.waypoint_threshold);
    p.dyn_rate = opt_num(obj, "dyn_rate", p.dyn_rate);
    p.filter_rate = opt_num(obj, "filter_rate", p.filter_rate);
    p.replan_rate = opt_num(obj, "replan_rate", p.replan_rate);
    p.death_prob_per_step = opt_num(obj, "death_prob_per_step", p.death_prob_per_step);
    p.clutter_rate = opt_num(obj, "clutter_rate", p.clutter_rate);
    p.detect_prob = opt_num(obj, "detect_prob", p.detect_prob);
    if (obj.contains("meas_noise_cov")) {
        p.meas_noise_cov = parse_matrix<2, 2>(obj["meas_noise_cov"], "params.meas_noise_cov");
    }
    p.target_process_noise = opt_num(obj, "target_process_noise", p.target_process_noise);
    p.movement_threshold = opt_num(obj, "movement_threshold", p.movement_threshold);
    if (obj.contains("lqr_q")) p.lqr_q = parse_matrix<5, 5>(obj["lqr_q"], "params.lqr_q");
    if (obj.contains("lqr_r")) p.lqr_r = parse_matrix<2, 2>(obj["lqr_r"], "params.lqr_r");
    if (obj.contains("agent_a")) p.agent_a = parse_matrix<5, 5>(obj["agent_a"], "params.agent_a");
    if (obj.contains("agent_b")) p.agent_b = parse_matrix<5, 2>(obj["agent_b"], "params.agent_b");
    p.max_sim_seconds = opt_num(obj, "max_sim_seconds", p.max_sim_seconds);
    if (obj.contains("glmb")) p.glmb = parse_glmb(obj["glmb"]);
    return p;
}

}  // namespace

Scenario load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open scenario file '" + path + "'");
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::exception& e) {
        throw ParseError("scenario file '" + path + "' is not valid JSON: " + e.what());
    }
    if (!doc.is_object()) throw ParseError("scenario file must contain a JSON object");
    reject_unknown_keys(doc,
                        {"format_version", "name", "area", "grid", "obstacles", "agents",
                         "targets", "targets_random", "death_script", "seed", "params"},
                        "scenario");
    if (!doc.contains("format_version") || doc["format_version"].get<int>() != 1) {
        throw ParseError("scenario file must declare format_version 1");
    }

    Scenario s;
    s.name = doc.contains("name") ? doc["name"].get<std::string>() : "";

    if (!doc.contains("area")) throw ParseError("missing key 'area' in scenario");
    const json& area = doc["area"];
    reject_unknown_keys(area, {"x_min", "x_max", "y_min", "y_max"}, "area");
    s.area = {get_num(area, "x_min", "area"), get_num(area, "x_max", "area"),
              get_num(area, "y_min", "area"), get_num(area, "y_max", "area")};

    if (!doc.contains("grid")) throw ParseError("missing key 'grid' in scenario");
    const json& grid = doc["grid"];
    reject_unknown_keys(grid, {"n_rows", "n_cols"}, "grid");
    s.grid = {static_cast<int>(get_num(grid, "n_rows", "grid")),
              static_cast<int>(get_num(grid, "n_cols", "grid"))};

    if (!doc.contains("agents") || !doc["agents"].is_array() || doc["agents"].empty()) {
        throw ParseError("scenario must list at least one agent");
    }
    for (const auto& a : doc["agents"]) {
        reject_unknown_keys(a, {"x", "y", "heading"}, "agents[]");
        AgentInit init;
        init.position = {get_num(a, "x", "agents[]"), get_num(a, "y", "agents[]")};
        init.heading = opt_num(a, "heading", 0.0);
        s.agents.push_back(init);
    }

    if (doc.contains("targets")) {
        for (const auto& t : doc["targets"]) {
            reject_unknown_keys(t, {"x", "y", "vx", "vy"}, "targets[]");
            TargetInit init;
            init.position = {get_num(t, "x", "targets[]"), get_num(t, "y", "targets[]")};
            init.velocity = {opt_num(t, "vx", 0.0), opt_num(t, "vy", 0.0)};
            s.targets.push_back(init);
        }
    }

    s.seed = doc.contains("seed") ? doc["seed"].get<std::uint64_t>() : 0;
    if (doc.contains("params")) s.params = parse_params(doc["params"]);

    // Randomized declarations resolve here, from the scenario seed, in a fixed
    // order: random targets first (ascending index), then obstacles row-major.
    Rng setup_rng(s.seed);
    if (doc.contains("targets_random")) {
        const json& tr = doc["targets_random"];
        reject_unknown_keys(tr, {"count", "center", "pos_std", "vel_mean", "vel_std"},
                            "targets_random");
        const int count = static_cast<int>(get_num(tr, "count", "targets_random"));
        if (!tr.contains("center") || !tr["center"].is_array() || tr["center"].size() != 2) {
            throw ParseError("targets_random.center must be [x, y]");
        }
        const Eigen::Vector2d center{tr["center"][0].get<double>(), tr["center"][1].get<double>()};
        const double pos_std = get_num(tr, "pos_std", "targets_random");
        Eigen::Vector2d vel_mean{0.0, 0.0};
        if (tr.contains("vel_mean")) {
            vel_mean = {tr["vel_mean"][0].get<double>(), tr["vel_mean"][1].get<double>()};
        }
        const double vel_std = opt_num(tr, "vel_std", 0.0);
        for (int i = 0; i < count; ++i) {
            TargetInit init;
            // Rejection-sample into the area, bounded tries, then clamp.
            for (int attempt = 0; attempt < 100; ++attempt) {
                const auto [gx, gy] = setup_rng.normal_pair();
                init.position = center + pos_std * Eigen::Vector2d(gx, gy);
                if (s.area.contains(init.position)) break;
            }
            init.position = s.area.clamp(init.position);
            const auto [gvx, gvy] = setup_rng.normal_pair();
            init.velocity = vel_mean + vel_std * Eigen::Vector2d(gvx, gvy);
            s.targets.push_back(init);
        }
    }

    if (doc.contains("obstacles")) {
        const json& obs = doc["obstacles"];
        reject_unknown_keys(obs, {"nodes", "random_threshold"}, "obstacles");
        if (obs.contains("nodes") && obs.contains("random_threshold")) {
            throw ParseError("obstacles: give either 'nodes' or 'random_threshold', not both");
        }
        if (obs.contains("nodes")) {
            for (const auto& n : obs["nodes"]) {
                if (!n.is_array() || n.size() != 2) {
                    throw ParseError("obstacles.nodes entries must be [row, col]");
                }
                s.obstacles.insert(GridNode{n[0].get<int>(), n[1].get<int>()});
            }
        } else if (obs.contains("random_threshold")) {
            std::set<GridNode> protected_nodes;
            for (const auto& a : s.agents) {
                protected_nodes.insert(world_to_grid(a.position, s.grid, s.area));
            }
            for (const auto& t : s.targets) {
                protected_nodes.insert(world_to_grid(t.position, s.grid, s.area));
            }
            s.obstacles = generate_random_obstacles(
                s.grid, obs["random_threshold"].get<double>(), protected_nodes, setup_rng);
        }
    }

    if (doc.contains("death_script")) {
        for (const auto& d : doc["death_script"]) {
            reject_unknown_keys(d, {"time", "agent"}, "death_script[]");
            s.death_script.push_back({get_num(d, "time", "death_script[]"),
                                      static_cast<int>(get_num(d, "agent", "death_script[]"))});
        }
    }

    validate_scenario(s);
    return s;
}

void save_scenario(const Scenario& s, const std::string& path) {
    json doc;
    doc["format_version"] = 1;
    doc["name"] = s.name;
    doc["area"] = {{"x_min", s.area.x_min},
                   {"x_max", s.area.x_max},
                   {"y_min", s.area.y_min},
                   {"y_max", s.area.y_max}};
    doc["grid"] = {{"n_rows", s.grid.n_rows}, {"n_cols", s.grid.n_cols}};
    json nodes = json::array();
    for (const GridNode& n : s.obstacles) nodes.push_back({n.row, n.col});
    doc["obstacles"] = {{"nodes", nodes}};
    json agents = json::array();
    for (const auto& a : s.agents) {
        agents.push_back({{"x", a.position.x()}, {"y", a.position.y()}, {"heading", a.heading}});
    }
    doc["agents"] = agents;
    json targets = json::array();
    for (const auto& t : s.targets) {
        targets.push_back({{"x", t.position.x()},
                           {"y", t.position.y()},
                           {"vx", t.velocity.x()},
                           {"vy", t.velocity.y()}});
    }
    doc["targets"] = targets;
    if (!s.death_script.empty()) {
        json script = json::array();
        for (const auto& d : s.death_script) {
            script.push_back({{"time", d.time}, {"agent", d.agent_id}});
        }
        doc["death_script"] = script;
    }
    doc["seed"] = s.seed;

    const ModelParams defaults;
    json params;
    params["forward_speed"] = s.params.forward_speed;
    params["waypoint_threshold"] = s.params.waypoint_threshold;
    params["dyn_rate"] = s.params.dyn_rate;
    params["filter_rate"] = s.params.filter_rate;
    params["replan_rate"] = s.params.replan_rate;
    params["death_prob_per_step"] = s.params.death_prob_per_step;
    params["clutter_rate"] = s.params.clutter_rate;
    params["detect_prob"] = s.params.detect_prob;
    params["meas_noise_cov"] = dump_matrix<2, 2>(s.params.meas_noise_cov);
    params["target_process_noise"] = s.params.target_process_noise;
    params["movement_threshold"] = s.params.movement_threshold;
    params["lqr_q"] = dump_matrix<5, 5>(s.params.lqr_q);
    params["lqr_r"] = dump_matrix<2, 2>(s.params.lqr_r);
    params["agent_a"] = dump_matrix<5, 5>(s.params.agent_a);
    params["agent_b"] = dump_matrix<5, 2>(s.params.agent_b);
    params["max_sim_seconds"] = s.params.max_sim_seconds;
    const GlmbSettings& g = s.params.glmb;
    params["glmb"] = {{"p_survival", g.p_survival},
                      {"birth_r_init", g.birth_r_init},
                      {"birth_r_recurring", g.birth_r_recurring},
                      {"birth_pos_var", g.birth_pos_var},
                      {"birth_vel_var", g.birth_vel_var},
                      {"process_noise_agents", g.process_noise_agents},
                      {"process_noise_targets", g.process_noise_targets},
                      {"hyp_weight_min", g.hyp_weight_min},
                      {"hyp_cap", g.hyp_cap},
                      {"gm_weight_min", g.gm_weight_min},
                      {"gm_cap", g.gm_cap},
                      {"exhaustive_assoc_limit", g.exhaustive_assoc_limit},
                      {"ranked_assoc_k", g.ranked_assoc_k},
                      {"predict_child_floor", g.predict_child_floor},
                      {"gate_mahalanobis2", g.gate_mahalanobis2},
                      {"max_coast_pos_var", g.max_coast_pos_var}};
    doc["params"] = params;

    std::ofstream out(path);
    if (!out) throw ParseError("cannot write scenario file '" + path + "'");
    out << doc.dump(2) << "\n";
}

}  // namespace swarmstat
