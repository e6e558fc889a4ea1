#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "oracles.hpp"
#include "swarmstat/scenario.hpp"

using namespace swarmstat;

namespace {

const std::string kScenarioDir = SWARMSTAT_SCENARIO_DIR;

std::string temp_dir() {
    const std::string dir = SWARMSTAT_TEST_TMP;
    std::filesystem::create_directories(dir);
    return dir;
}

std::string write_file(const std::string& name, const std::string& body) {
    const std::string path = temp_dir() + "/" + name;
    std::ofstream out(path);
    out << body;
    return path;
}

}  // namespace

TEST_CASE("grid_to_world anchors the corners") {
    const GridSpec grid{5, 7};
    const MissionArea area{-10.0, 50.0, 5.0, 35.0};
    CHECK(grid_to_world({0, 0}, grid, area) == Eigen::Vector2d(-10.0, 5.0));
    CHECK(grid_to_world({4, 6}, grid, area) == Eigen::Vector2d(50.0, 35.0));

    // Midpoint node of an odd-dimension grid sits at the area center.
    const GridSpec odd{5, 5};
    const Eigen::Vector2d mid = grid_to_world({2, 2}, odd, area);
    CHECK(mid.x() == doctest::Approx(20.0).epsilon(1e-12));
    CHECK(mid.y() == doctest::Approx(20.0).epsilon(1e-12));

    CHECK_THROWS_AS(grid_to_world({5, 0}, grid, area), InvalidEndpointError);
}

TEST_CASE("world_to_grid inverts the lattice and breaks ties low") {
    const GridSpec grid{9, 11};
    const MissionArea area{0.0, 100.0, 0.0, 80.0};
    for (int r = 0; r < grid.n_rows; ++r) {
        for (int c = 0; c < grid.n_cols; ++c) {
            CHECK(world_to_grid(grid_to_world({r, c}, grid, area), grid, area) == GridNode{r, c});
        }
    }

    // Exact cell-boundary midpoint resolves to the lower-index node.
    const double dx = area.width() / (grid.n_cols - 1);
    const double dy = area.height() / (grid.n_rows - 1);
    const Eigen::Vector2d boundary{area.x_min + 0.5 * dx, area.y_min + 0.5 * dy};
    CHECK(world_to_grid(boundary, grid, area) == GridNode{0, 0});

    // Random interior points match the exhaustive nearest-node search.
    Rng rng(7);
    for (int i = 0; i < 500; ++i) {
        const Eigen::Vector2d p{rng.uniform(area.x_min, area.x_max),
                                rng.uniform(area.y_min, area.y_max)};
        CHECK(world_to_grid(p, grid, area) == oracles::nearest_node_brute(p, grid, area));
    }

    // Within one cell outside: clamped. Farther: rejected.
    CHECK(world_to_grid({-dx * 0.9, 40.0}, grid, area) == GridNode{world_to_grid({0.0, 40.0}, grid, area).row, 0});
    CHECK_THROWS_AS(world_to_grid({-2.0 * dx, 40.0}, grid, area), ValidationError);
}

TEST_CASE("random obstacle generation") {
    const GridSpec grid{10, 10};

    SUBCASE("threshold zero produces nothing") {
        Rng rng(1);
        CHECK(generate_random_obstacles(grid, 0.0, {}, rng).empty());
    }

    SUBCASE("threshold one spares only protected nodes") {
        Rng rng(1);
        const GridSpec small{2, 2};
        const auto set = generate_random_obstacles(small, 1.0, {GridNode{0, 0}}, rng);
        CHECK(set.size() == 3);
        CHECK_FALSE(set.contains(GridNode{0, 0}));
    }

    SUBCASE("same seed reproduces the same set") {
        Rng a(42), b(42);
        const auto first = generate_random_obstacles(grid, 0.3, {}, a);
        const auto second = generate_random_obstacles(grid, 0.3, {}, b);
        CHECK(first == second);
    }

    SUBCASE("obstacle fraction matches the threshold statistically") {
        const GridSpec big{100, 100};
        Rng rng(2024);
        const double t = 0.3;
        const auto set = generate_random_obstacles(big, t, {}, rng);
        const double frac = static_cast<double>(set.size()) / (100.0 * 100.0);
        const double bound = 3.0 * std::sqrt(t * (1.0 - t) / 10000.0);
        CHECK(std::abs(frac - t) <= bound);
    }

    SUBCASE("protected draws do not shift the surrounding pattern") {
        Rng a(5), b(5);
        const auto open = generate_random_obstacles(grid, 0.4, {}, a);
        const auto guarded = generate_random_obstacles(grid, 0.4, {GridNode{3, 3}}, b);
        for (const auto& n : open) {
            if (n == GridNode{3, 3}) continue;
            CHECK(guarded.contains(n));
        }
        CHECK_FALSE(guarded.contains(GridNode{3, 3}));
    }
}

TEST_CASE("minimal scenario load and identity round trip") {
    const std::string path = write_file("minimal.json", R"({
      "format_version": 1,
      "name": "mini",
      "area": {"x_min": 0, "x_max": 100, "y_min": 0, "y_max": 100},
      "grid": {"n_rows": 5, "n_cols": 5},
      "agents": [{"x": 10, "y": 10, "heading": 0.0}],
      "targets": [{"x": 90, "y": 90}],
      "seed": 3
    })");
    const Scenario s = load_scenario(path);
    CHECK(s.obstacles.empty());
    CHECK(s.agents.size() == 1);
    CHECK(s.targets.size() == 1);
    CHECK(s.seed == 3);

    const std::string saved = temp_dir() + "/minimal_saved.json";
    save_scenario(s, saved);
    const Scenario again = load_scenario(saved);
    CHECK(again.name == s.name);
    CHECK(again.area.x_max == s.area.x_max);
    CHECK(again.grid.n_rows == s.grid.n_rows);
    CHECK(again.obstacles == s.obstacles);
    CHECK(again.seed == s.seed);
    REQUIRE(again.agents.size() == s.agents.size());
    CHECK(again.agents[0].position == s.agents[0].position);
    CHECK(again.agents[0].heading == s.agents[0].heading);
    REQUIRE(again.targets.size() == s.targets.size());
    CHECK(again.targets[0].position == s.targets[0].position);
    CHECK(again.targets[0].velocity == s.targets[0].velocity);
    CHECK(again.params.forward_speed == s.params.forward_speed);
    CHECK(again.params.meas_noise_cov == s.params.meas_noise_cov);
    CHECK(again.params.agent_a == s.params.agent_a);
    CHECK(again.params.glmb.hyp_cap == s.params.glmb.hyp_cap);

    // Saving the reload gives byte-identical files.
    const std::string saved2 = temp_dir() + "/minimal_saved2.json";
    save_scenario(again, saved2);
    std::ifstream f1(saved), f2(saved2);
    const std::string b1((std::istreambuf_iterator<char>(f1)), {});
    const std::string b2((std::istreambuf_iterator<char>(f2)), {});
    CHECK(b1 == b2);
}

TEST_CASE("load failures") {
    SUBCASE("missing file") {
        CHECK_THROWS_AS(load_scenario(temp_dir() + "/nope.json"), ParseError);
    }
    SUBCASE("malformed json") {
        CHECK_THROWS_AS(load_scenario(write_file("bad.json", "{not json")), ParseError);
    }
    SUBCASE("unknown key rejected") {
        const std::string path = write_file("typo.json", R"({
          "format_version": 1,
          "area": {"x_min": 0, "x_max": 10, "y_min": 0, "y_max": 10},
          "grid": {"n_rows": 3, "n_cols": 3},
          "agents": [{"x": 1, "y": 1}],
          "targets": [{"x": 9, "y": 9}],
          "gridd_extra": true
        })");
        CHECK_THROWS_WITH_AS(load_scenario(path),
                             doctest::Contains("unknown key 'gridd_extra'"), ParseError);
    }
    SUBCASE("agent outside area names the invariant") {
        const std::string path = write_file("outside.json", R"({
          "format_version": 1,
          "area": {"x_min": 0, "x_max": 10, "y_min": 0, "y_max": 10},
          "grid": {"n_rows": 3, "n_cols": 3},
          "agents": [{"x": 50, "y": 1}],
          "targets": [{"x": 9, "y": 9}]
        })");
        CHECK_THROWS_WITH_AS(load_scenario(path), doctest::Contains("agents[0]"),
                             ValidationError);
    }
    SUBCASE("fewer targets than agents rejected") {
        const std::string path = write_file("toofew.json", R"({
          "format_version": 1,
          "area": {"x_min": 0, "x_max": 10, "y_min": 0, "y_max": 10},
          "grid": {"n_rows": 3, "n_cols": 3},
          "agents": [{"x": 1, "y": 1}, {"x": 2, "y": 2}],
          "targets": [{"x": 9, "y": 9}]
        })");
        CHECK_THROWS_WITH_AS(load_scenario(path), doctest::Contains("targets"), ValidationError);
    }
    SUBCASE("bad rate stack rejected") {
        const std::string path = write_file("rates.json", R"({
          "format_version": 1,
          "area": {"x_min": 0, "x_max": 10, "y_min": 0, "y_max": 10},
          "grid": {"n_rows": 3, "n_cols": 3},
          "agents": [{"x": 1, "y": 1}],
          "targets": [{"x": 9, "y": 9}],
          "params": {"dyn_rate": 100, "filter_rate": 3}
        })");
        CHECK_THROWS_AS(load_scenario(path), ValidationError);
    }
}

TEST_CASE("bundled fig3 scenario") {
    const Scenario s = load_scenario(kScenarioDir + "/fig3_analog.json");
    CHECK(s.agents.size() == 4);
    CHECK(s.targets.size() == 4);
    CHECK_FALSE(s.obstacles.empty());
    CHECK(s.params.clutter_rate == 0.0);
    CHECK(s.params.death_prob_per_step == 0.0);
}

TEST_CASE("random obstacle scenario resolves deterministically at load") {
    const std::string body = R"({
      "format_version": 1,
      "area": {"x_min": 0, "x_max": 100, "y_min": 0, "y_max": 100},
      "grid": {"n_rows": 12, "n_cols": 12},
      "obstacles": {"random_threshold": 0.25},
      "agents": [{"x": 5, "y": 50}],
      "targets": [{"x": 95, "y": 50}],
      "seed": 11
    })";
    const Scenario a = load_scenario(write_file("rand_a.json", body));
    const Scenario b = load_scenario(write_file("rand_b.json", body));
    CHECK(a.obstacles == b.obstacles);
    CHECK_FALSE(a.obstacles.contains(world_to_grid({5, 50}, a.grid, a.area)));
    CHECK_FALSE(a.obstacles.contains(world_to_grid({95, 50}, a.grid, a.area)));
}
