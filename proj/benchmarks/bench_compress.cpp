#include <benchmark/benchmark.h>

#include <dgblock/activespace.hpp>
#include <dgblock/dgbasis.hpp>
#include <dgblock/primitive.hpp>

using namespace dgblock;

namespace {

struct ChainSetup {
  PrimitiveSystem system;
  OrbitalSet orbitals;
  Partition partition;
};

ChainSetup make_setup(int atoms) {
  ChainSetup setup;
  const auto geometry = make_chain(atoms, 1.8, 1.0);
  const Grid grid = build_grid(geometry, 0.45, 3.6);
  setup.system =
      assemble_primitive(grid, geometry, KineticScheme::kFiniteDifference2, 1.0, false);
  std::vector<Shell> shells;
  for (int a = 0; a < atoms; ++a) {
    shells.push_back({a, 0.5, AngularTag::kS});
    shells.push_back({a, 1.5, AngularTag::kS});
  }
  setup.orbitals = lowdin_orthonormalize(sample_gaussians(grid, geometry, shells));
  setup.partition = partition_atom_centered(grid, geometry);
  return setup;
}

}  // namespace

static void BM_blockwise_compress(benchmark::State& state) {
  const auto setup = make_setup(static_cast<int>(state.range(0)));
  CompressOptions options;
  options.tau = 1e-2;
  for (auto _ : state) {
    auto dg = compress(setup.orbitals, setup.partition, options);
    benchmark::DoNotOptimize(dg.total_functions);
  }
  state.counters["grid_points"] = setup.system.grid.num_points;
}
BENCHMARK(BM_blockwise_compress)->Arg(4)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);

static void BM_assemble_primitive(benchmark::State& state) {
  const auto geometry = make_chain(static_cast<int>(state.range(0)), 1.8, 1.0);
  const Grid grid = build_grid(geometry, 0.45, 3.6);
  for (auto _ : state) {
    auto sys = assemble_primitive(grid, geometry, KineticScheme::kFiniteDifference2, 1.0, false);
    benchmark::DoNotOptimize(sys.v_p(0, 0));
  }
}
BENCHMARK(BM_assemble_primitive)->Arg(4)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
