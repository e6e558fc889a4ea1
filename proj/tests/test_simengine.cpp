#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <set>

#include "swarmstat/simengine.hpp"

using namespace swarmstat;

namespace {

const std::string kScenarioDir = SWARMSTAT_SCENARIO_DIR;

Extraction make_extraction(int step, int index, double x, double y) {
    Extraction e;
    e.label = {step, index};
    e.state = Eigen::Vector4d(x, y, 0.0, 0.0);
    e.position = {x, y};
    return e;
}

}  // namespace

TEST_CASE("clock schedules the rate stack exactly") {
    const Scenario s = load_scenario(kScenarioDir + "/fig3_analog.json");
    const int spf = s.params.dyn_steps_per_filter();
    const int fpr = s.params.filter_steps_per_replan();
    CHECK(spf == 100);
    CHECK(fpr == 5);

    SimClock clock;
    clock.dt = 1.0 / s.params.dyn_rate;
    clock.steps_per_filter = spf;
    clock.steps_per_replan = spf * fpr;
    int filter_ticks = 0, replan_ticks = 0;
    const long total = static_cast<long>(10.0 * s.params.dyn_rate);  // 10 seconds
    for (long n = 1; n <= total; ++n) {
        clock.tick = n;
        filter_ticks += clock.filter_tick() ? 1 : 0;
        replan_ticks += clock.replan_tick() ? 1 : 0;
    }
    CHECK(total == 1000);
    CHECK(filter_ticks == 10);
    CHECK(replan_ticks == 2);
}

TEST_CASE("replan_check") {
    ExtractionPair prev;
    prev.agents = {make_extraction(0, 0, 10, 10), make_extraction(0, 1, 10, 30)};
    prev.targets = {make_extraction(0, 0, 90, 10), make_extraction(0, 1, 90, 40)};

    SUBCASE("identical samples do not fire") {
        const auto d = replan_check(prev, prev, 20.0);
        CHECK_FALSE(d.flag);
    }
    SUBCASE("agent count drop fires") {
        ExtractionPair cur = prev;
        cur.agents.pop_back();
        const auto d = replan_check(prev, cur, 20.0);
        CHECK(d.flag);
        CHECK(d.reason == "agent_count_drop");
    }
    SUBCASE("movement across the threshold fires, just below does not") {
        ExtractionPair cur = prev;
        cur.targets[1] = make_extraction(0, 1, 90, 40 + 20.1);
        CHECK(replan_check(prev, cur, 20.0).flag);
        cur.targets[1] = make_extraction(0, 1, 90, 40 + 19.9);
        CHECK_FALSE(replan_check(prev, cur, 20.0).flag);
    }
    SUBCASE("new target label fires") {
        ExtractionPair cur = prev;
        cur.targets.push_back(make_extraction(3, 0, 50, 50));
        const auto d = replan_check(prev, cur, 20.0);
        CHECK(d.flag);
        CHECK(d.reason == "new_target");
    }
}

TEST_CASE("replan mirrors the initial plan when extractions equal the starts") {
    const Scenario s = load_scenario(kScenarioDir + "/fig3_analog.json");
    std::vector<Extraction> agents, targets;
    for (std::size_t i = 0; i < s.agents.size(); ++i) {
        agents.push_back(make_extraction(0, static_cast<int>(i), s.agents[i].position.x(),
                                         s.agents[i].position.y()));
    }
    for (std::size_t i = 0; i < s.targets.size(); ++i) {
        targets.push_back(make_extraction(0, static_cast<int>(i), s.targets[i].position.x(),
                                          s.targets[i].position.y()));
    }
    const MissionPlan fresh = replan(agents, targets, s, 1);

    std::vector<Eigen::Vector2d> starts, goals;
    for (const auto& a : s.agents) starts.push_back(a.position);
    for (const auto& t : s.targets) goals.push_back(t.position);
    const MissionPlan initial = plan_mission(starts, goals, s.grid, s.area, s.obstacles);

    REQUIRE(fresh.routes.size() == initial.routes.size());
    for (std::size_t i = 0; i < fresh.routes.size(); ++i) {
        CHECK(fresh.routes[i].target_index == initial.routes[i].target_index);
        CHECK(fresh.routes[i].grid_path == initial.routes[i].grid_path);
    }
    CHECK(fresh.replan_index == 1);
}

TEST_CASE("replan with surviving subset leaves surplus targets unassigned") {
    const Scenario s = load_scenario(kScenarioDir + "/fig4_death.json");
    std::vector<Extraction> agents;
    for (int i = 0; i < 3; ++i) {
        agents.push_back(make_extraction(0, i, s.agents[i].position.x(), s.agents[i].position.y()));
    }
    std::vector<Extraction> targets;
    for (std::size_t i = 0; i < s.targets.size(); ++i) {
        targets.push_back(make_extraction(0, static_cast<int>(i), s.targets[i].position.x(),
                                          s.targets[i].position.y()));
    }
    REQUIRE(s.targets.size() == 5);
    const MissionPlan plan = replan(agents, targets, s, 2);
    CHECK(plan.routes.size() == 3);
    CHECK(plan.unassigned_targets.size() == 2);
}

TEST_CASE("ospa") {
    const std::vector<Eigen::Vector2d> a{{0.0, 0.0}, {10.0, 0.0}};
    SUBCASE("identical sets have zero distance") {
        CHECK(ospa(a, a, 5.0, 1.0) == 0.0);
    }
    SUBCASE("empty versus empty is zero") {
        CHECK(ospa({}, {}, 5.0, 2.0) == 0.0);
    }
    SUBCASE("empty versus anything is the cutoff") {
        CHECK(ospa({}, a, 5.0, 1.0) == doctest::Approx(5.0));
        CHECK(ospa(a, {}, 5.0, 2.0) == doctest::Approx(5.0));
    }
    SUBCASE("two-point case matches the hand evaluation") {
        const std::vector<Eigen::Vector2d> b{{1.0, 0.0}, {10.0, 2.0}};
        // Pairings: (0->0, 1->1) gives 1 and 2; the cross pairing is worse.
        const double c = 5.0, p = 2.0;
        const double expected = std::sqrt((1.0 + 4.0) / 2.0);
        CHECK(ospa(a, b, c, p) == doctest::Approx(expected).epsilon(1e-12));
    }
    SUBCASE("cardinality penalty counts missing points at cutoff") {
        const std::vector<Eigen::Vector2d> b{{0.0, 0.0}, {10.0, 0.0}, {50.0, 50.0}};
        const double c = 5.0, p = 1.0;
        CHECK(ospa(a, b, c, p) == doctest::Approx((0.0 + 0.0 + 5.0) / 3.0).epsilon(1e-12));
    }
}

TEST_CASE("fig3 mission: all agents complete with zero replans") {
    const Scenario s = load_scenario(kScenarioDir + "/fig3_analog.json");
    const SimTrace trace = run_simulation(s);

    CHECK(trace.termination_reason == "all agents resolved");
    REQUIRE(trace.summary.size() == 4);
    for (const auto& row : trace.summary) CHECK(row.outcome == AgentOutcome::completed);

    int replans = 0;
    for (const auto& ev : trace.events) replans += ev.kind == SimEventKind::replan ? 1 : 0;
    CHECK(replans == 0);

    // No planned waypoint sits on an obstacle node.
    for (const auto& rec : trace.plans) {
        for (const auto& route : rec.plan.routes) {
            for (const auto& node : route.grid_path) CHECK_FALSE(s.obstacles.contains(node));
        }
    }

    // Two-filter separation: the agent filter never invents more than one
    // extra track in this clean scenario.
    for (const auto& rec : trace.extractions) {
        CHECK(rec.agents.size() <= s.agents.size() + 1);
    }
}

TEST_CASE("identical seeds give identical traces") {
    const Scenario s = load_scenario(kScenarioDir + "/fig4_death.json");
    const SimTrace a = run_simulation(s);
    const SimTrace b = run_simulation(s);

    REQUIRE(a.truth.size() == b.truth.size());
    for (std::size_t i = 0; i < a.truth.size(); ++i) {
        CHECK(a.truth[i].t == b.truth[i].t);
        for (std::size_t j = 0; j < a.truth[i].agents.size(); ++j) {
            CHECK(a.truth[i].agents[j].position == b.truth[i].agents[j].position);
            CHECK(a.truth[i].agents[j].alive == b.truth[i].agents[j].alive);
        }
    }
    REQUIRE(a.scans.size() == b.scans.size());
    for (std::size_t i = 0; i < a.scans.size(); ++i) {
        REQUIRE(a.scans[i].scan.points.size() == b.scans[i].scan.points.size());
        for (std::size_t j = 0; j < a.scans[i].scan.points.size(); ++j) {
            CHECK(a.scans[i].scan.points[j] == b.scans[i].scan.points[j]);
        }
    }
    REQUIRE(a.events.size() == b.events.size());
    for (std::size_t i = 0; i < a.events.size(); ++i) {
        CHECK(a.events[i].t == b.events[i].t);
        CHECK(a.events[i].detail == b.events[i].detail);
    }
}

TEST_CASE("dead agents stop producing measurements") {
    Scenario s = load_scenario(kScenarioDir + "/fig4_death.json");
    const SimTrace trace = run_simulation(s);

    double death_time = -1.0;
    std::string dead_tag;
    for (const auto& ev : trace.events) {
        if (ev.kind == SimEventKind::death) {
            death_time = ev.t;
            dead_tag = "agent:" + ev.detail.substr(ev.detail.find(' ') + 1);
            break;
        }
    }
    REQUIRE(death_time > 0.0);
    for (const auto& rec : trace.scans) {
        if (rec.t <= death_time) continue;
        for (const auto& tag : rec.scan.truth_tags) CHECK(tag != dead_tag);
    }
}

TEST_CASE("time cap terminates with timeout outcomes") {
    Scenario s = load_scenario(kScenarioDir + "/fig3_analog.json");
    s.params.max_sim_seconds = 2.0;  // far too short to finish
    const SimTrace trace = run_simulation(s);
    CHECK(trace.termination_reason == "time cap");
    CHECK(trace.t_end == doctest::Approx(2.0).epsilon(1e-6));
    for (const auto& row : trace.summary) CHECK(row.outcome == AgentOutcome::timeout);
    CHECK(trace.events.back().kind == SimEventKind::termination);
}

TEST_CASE("zero targets rejected at validation") {
    Scenario s = load_scenario(kScenarioDir + "/fig3_analog.json");
    s.targets.clear();
    CHECK_THROWS_AS(run_simulation(s), ValidationError);
}
