#include <benchmark/benchmark.h>

#include "swarmstat/glmb.hpp"
#include "swarmstat/simengine.hpp"

using namespace swarmstat;

namespace {

const MissionArea kArea{0.0, 200.0, 0.0, 200.0};

GlmbFilter make_filter(int n_objects) {
    GlmbFilterConfig cfg;
    cfg.f = cv_transition(1.0);
    cfg.q = cv_process_noise(1.0, 1.0);
    cfg.h = Eigen::MatrixXd::Zero(2, 4);
    cfg.h(0, 0) = 1.0;
    cfg.h(1, 1) = 1.0;
    cfg.r = 4.0 * Eigen::Matrix2d::Identity();
    cfg.p_detect = 0.95;
    cfg.clutter_rate = 10.0;
    cfg.area = kArea;
    for (int i = 0; i < n_objects; ++i) {
        cfg.birth_positions.push_back({20.0, 20.0 + 40.0 * i});
    }
    cfg.settings.gate_mahalanobis2 = 36.0;
    cfg.settings.predict_child_floor = 1e-6;
    return GlmbFilter(cfg);
}

void FilterScanCycle(benchmark::State& state) {
    const int n_objects = static_cast<int>(state.range(0));
    std::vector<Eigen::Vector2d> truth;
    for (int i = 0; i < n_objects; ++i) truth.push_back({20.0, 20.0 + 40.0 * i});

    for (auto _ : state) {
        state.PauseTiming();
        GlmbFilter filter = make_filter(n_objects);
        Rng rng(5);
        state.ResumeTiming();
        for (int k = 0; k < 10; ++k) {
            MeasurementScan scan;
            scan.time_index = k;
            for (const auto& pt : generate_clutter(10.0, kArea, rng)) {
                scan.points.push_back(pt);
                scan.truth_tags.push_back("clutter");
            }
            for (const auto& det :
                 generate_measurements(truth, 0.95, 4.0 * Eigen::Matrix2d::Identity(), rng)) {
                scan.points.push_back(det.point);
                scan.truth_tags.push_back("object");
            }
            filter.step(scan);
        }
        benchmark::DoNotOptimize(filter.density().hypotheses.size());
    }
}
BENCHMARK(FilterScanCycle)->Arg(2)->Arg(4)->Arg(6)->Unit(benchmark::kMillisecond);

void MissionFig3(benchmark::State& state) {
    const Scenario s = load_scenario(std::string(SWARMSTAT_SCENARIO_DIR) + "/fig3_analog.json");
    for (auto _ : state) {
        const SimTrace trace = run_simulation(s);
        benchmark::DoNotOptimize(trace.t_end);
    }
}
BENCHMARK(MissionFig3)->Unit(benchmark::kMillisecond)->Iterations(1);

}  // namespace

BENCHMARK_MAIN();
