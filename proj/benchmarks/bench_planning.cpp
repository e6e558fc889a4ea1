#include <benchmark/benchmark.h>

#include "swarmstat/planning.hpp"
#include "swarmstat/rng.hpp"

using namespace swarmstat;

namespace {

ObstacleSet make_obstacles(const GridSpec& grid, double density, std::uint64_t seed) {
    Rng rng(seed);
    ObstacleSet set;
    for (int r = 0; r < grid.n_rows; ++r) {
        for (int c = 0; c < grid.n_cols; ++c) {
            if ((r == 0 && c == 0) || (r == grid.n_rows - 1 && c == grid.n_cols - 1)) continue;
            if (rng.uniform() < density) set.insert({r, c});
        }
    }
    return set;
}

void AstarGrid(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const GridSpec grid{n, n};
    const ObstacleSet obs = make_obstacles(grid, 0.2, 7);
    for (auto _ : state) {
        auto path = astar_try(grid, obs, {0, 0}, {n - 1, n - 1});
        benchmark::DoNotOptimize(path);
    }
    state.SetComplexityN(n);
}
BENCHMARK(AstarGrid)->RangeMultiplier(2)->Range(10, 80)->Complexity();

void AssignmentDense(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    Rng rng(11);
    Eigen::MatrixXd costs(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) costs(i, j) = rng.uniform(0.0, 100.0);
    for (auto _ : state) {
        auto res = hungarian(costs);
        benchmark::DoNotOptimize(res);
    }
    state.SetComplexityN(n);
}
BENCHMARK(AssignmentDense)->RangeMultiplier(2)->Range(4, 64)->Complexity();

void RankedAssignments(benchmark::State& state) {
    const int rows = 6, cols = 20;
    Rng rng(13);
    Eigen::MatrixXd costs(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) costs(i, j) = rng.uniform(-3.0, 8.0);
    const int k = static_cast<int>(state.range(0));
    for (auto _ : state) {
        auto ranked = murty_best_k(costs, k);
        benchmark::DoNotOptimize(ranked);
    }
}
BENCHMARK(RankedAssignments)->Arg(8)->Arg(24)->Arg(64);

}  // namespace
