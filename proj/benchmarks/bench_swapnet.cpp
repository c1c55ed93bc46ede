#include <benchmark/benchmark.h>

#include <dgblock/swapnet.hpp>

using namespace dgblock;

static void BM_k4_network(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    auto schedule = k4_complete_network(n);
    benchmark::DoNotOptimize(schedule.depth());
  }
}
BENCHMARK(BM_k4_network)->Arg(6)->Arg(10)->Arg(12)->Unit(benchmark::kMillisecond);

static void BM_block_diagonal_strategy(benchmark::State& state) {
  const int blocks = static_cast<int>(state.range(0));
  const int per_block = static_cast<int>(state.range(1));
  for (auto _ : state) {
    auto result = block_diagonal_strategy(blocks, per_block);
    benchmark::DoNotOptimize(result.schedule.depth());
  }
}
BENCHMARK(BM_block_diagonal_strategy)
    ->Args({2, 4})
    ->Args({4, 4})
    ->Args({4, 6})
    ->Unit(benchmark::kMillisecond);

static void BM_verify_strategy(benchmark::State& state) {
  const int blocks = static_cast<int>(state.range(0));
  const int per_block = static_cast<int>(state.range(1));
  const auto result = block_diagonal_strategy(blocks, per_block);
  const auto requirements =
      required_quadruples(std::vector<int>(static_cast<std::size_t>(blocks), per_block));
  for (auto _ : state) {
    auto report = verify_schedule(result.schedule, requirements);
    benchmark::DoNotOptimize(report.covered);
  }
  state.counters["requirements"] = static_cast<double>(requirements.size());
}
BENCHMARK(BM_verify_strategy)->Args({2, 4})->Args({4, 6})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
