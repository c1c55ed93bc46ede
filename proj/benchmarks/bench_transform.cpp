#include <benchmark/benchmark.h>

#include <dgblock/activespace.hpp>
#include <dgblock/blockham.hpp>
#include <dgblock/costmodel.hpp>
#include <dgblock/dgbasis.hpp>
#include <dgblock/primitive.hpp>

using namespace dgblock;

namespace {

struct Built {
  PrimitiveSystem system;
  OrbitalSet orbitals;
  DGBasis dg;
  ActiveHamiltonian active;
};

Built make_built(int atoms) {
  Built built;
  const auto geometry = make_chain(atoms, 1.8, 1.0);
  const Grid grid = build_grid(geometry, 0.45, 3.6);
  built.system =
      assemble_primitive(grid, geometry, KineticScheme::kFiniteDifference2, 1.0, false);
  std::vector<Shell> shells;
  for (int a = 0; a < atoms; ++a) {
    shells.push_back({a, 0.5, AngularTag::kS});
    shells.push_back({a, 1.5, AngularTag::kS});
  }
  built.orbitals = lowdin_orthonormalize(sample_gaussians(grid, geometry, shells));
  CompressOptions options;
  options.tau = 1e-2;
  built.dg = compress(built.orbitals, partition_atom_centered(grid, geometry), options);
  return built;
}

}  // namespace

static void BM_active_projection(benchmark::State& state) {
  auto built = make_built(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    auto active = project_active_hamiltonian(built.system, built.orbitals);
    benchmark::DoNotOptimize(active.v_a(0, 0, 0, 0));
  }
}
BENCHMARK(BM_active_projection)->Arg(4)->Arg(8)->Arg(12)->Unit(benchmark::kMillisecond);

static void BM_block_twobody(benchmark::State& state) {
  auto built = make_built(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    auto two = transform_twobody(built.system, built.dg);
    benchmark::DoNotOptimize(two.stored_entry_count());
  }
}
BENCHMARK(BM_block_twobody)->Arg(4)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);

static void BM_lambda_metric(benchmark::State& state) {
  auto built = make_built(static_cast<int>(state.range(0)));
  const auto two = transform_twobody(built.system, built.dg);
  for (auto _ : state) {
    benchmark::DoNotOptimize(lambda_metric(two));
  }
}
BENCHMARK(BM_lambda_metric)->Arg(8)->Arg(16)->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
