#pragma once

//
// End-to-end orchestration: build the model system, active space and
// block-compressed bases for one chain size, write the artifact set with a
// manifest, and run size sweeps with scaling fits and crossover detection.
//

#include <dgblock/activespace.hpp>
#include <dgblock/blockham.hpp>
#include <dgblock/config.hpp>
#include <dgblock/costmodel.hpp>
#include <dgblock/dgbasis.hpp>
#include <dgblock/primitive.hpp>

#include <functional>
#include <map>
#include <optional>

namespace dgblock {

struct BuiltSystem {
  PrimitiveSystem system;
  OrbitalSet active;
  ActiveHamiltonian active_h;
  Partition partition;
  std::vector<double> taus;
  std::vector<DGBasis> bases;        // per tau
  std::vector<BlockOneBody> dg_one;  // per tau
  std::vector<BlockTwoBody> dg_two;  // per tau
  int n_electrons = 0;
  std::optional<DensityMatrix> scf_density;  // present for mean-field runs
};

// Builds the whole pipeline in memory; atoms_override > 0 replaces
// config.atoms (used by sweeps).
BuiltSystem build_chain_system(const ExperimentConfig& config, int atoms_override = -1);

// Cost metrics for every representation of a built system: primitive,
// active, and one dg(tau) row per tolerance.
std::vector<CostReport> compute_metrics(const BuiltSystem& built, double cutoff);

struct ChainOutput {
  std::string dir;
  std::vector<std::string> files;  // artifact names, manifest not included
  std::vector<CostReport> metrics;
  int atoms = 0;
};

// Writes system.json, phi.dgb, active.ints and per-tau basis/integral
// artifacts plus manifest.json into `dir`. Deterministic byte-for-byte for
// a fixed config. On a stage failure the partial manifest is persisted with
// the failing stage recorded, then the error is rethrown.
ChainOutput run_chain(const ExperimentConfig& config, int atoms, const std::string& dir);

struct CrossoverReport {
  std::string csv_path;
  std::string json_path;
  // key "<metric>/<representation>", metric in {nnz, lambda}
  std::map<std::string, ScalingFit> fits;
  // key "<metric>/<representation>"; present only when a crossover exists
  std::map<std::string, double> crossovers;
};

// Runs the configured size sweep (config.sweep_sizes, config.threads
// workers), writing per-size artifact directories N<k>/ under out_dir, then
// assembles crossover.csv and crossover.json. Output bytes are independent
// of the worker count.
CrossoverReport run_crossover(const ExperimentConfig& config);

// Assembles the crossover report from previously written per-size manifests.
CrossoverReport crossover_from_manifests(const std::vector<std::string>& manifest_paths,
                                         const std::string& out_dir);

struct LowrankReport {
  std::string csv_path;
  std::string json_path;
  int n_pairs = 0;
  double max_reconstruction_error = 0.0;
};

// Factorizes every stored block pair of one basis from a chain manifest and
// writes per-pair rank/error rows plus the layered depth estimate.
LowrankReport run_lowrank(const std::string& manifest_path, int tau_index, double outer_tol,
                          double inner_tol);

// Deterministic task-parallel loop: results must not depend on scheduling.
void parallel_for(int n_tasks, int threads, const std::function<void(int)>& task);

}  // namespace dgblock
