#pragma once

//
// Acquaintance schedules for block-diagonal Hamiltonians on a line of
// qubits: linear pair networks, 4-complete networks, partitioned swap
// networks, (balanced) double bipartite networks, and the composed
// block-diagonal strategy, plus exhaustive verification.
//
// A schedule is architecture-level IR: fswap and part-swap gates permute a
// qubit-to-orbital mapping, and an acquaint gate marks a contiguous range
// whose current orbitals are brought together, as a placeholder for the
// logical gate applied there. Depth counts mapping-changing layers (an
// fswap layer costs 1, a part-swap layer its widest window); acquaint-only
// layers are free.
//

#include <dgblock/types.hpp>

#include <array>
#include <compare>
#include <cstdint>
#include <optional>

namespace dgblock {

enum class Spin : std::uint8_t { kUp = 0, kDown = 1 };

struct OrbitalLabel {
  std::int16_t block = 0;
  std::int16_t index = 0;
  Spin spin = Spin::kUp;
  bool inert = false;  // padding orbital, never part of a requirement
  auto operator<=>(const OrbitalLabel&) const = default;
};

struct Gate {
  enum class Kind : std::uint8_t { kFswap, kPartSwap, kAcquaint };
  Kind kind = Kind::kFswap;
  // kFswap: swaps positions (a, a+1).
  // kPartSwap: exchanges the ranges [a, b) and [b, c) keeping inner order.
  // kAcquaint: marks the range [a, b).
  int a = 0, b = 0, c = 0;

  int span_begin() const { return a; }
  int span_end() const {
    switch (kind) {
      case Kind::kFswap: return a + 2;
      case Kind::kPartSwap: return c;
      case Kind::kAcquaint: return b;
    }
    return a;
  }
  int cost() const {
    switch (kind) {
      case Kind::kFswap: return 1;
      case Kind::kPartSwap: return c - a;
      case Kind::kAcquaint: return 0;
    }
    return 0;
  }
};

using Layer = std::vector<Gate>;

struct SwapSchedule {
  int width = 0;
  std::vector<OrbitalLabel> initial_mapping;  // position -> orbital
  std::vector<Layer> layers;
  std::vector<OrbitalLabel> final_mapping;

  int depth() const;            // sum over layers of the widest gate cost
  std::size_t swap_layer_count() const;
};

// An unordered 4-set of orbitals, stored sorted.
using Quadruple = std::array<OrbitalLabel, 4>;
Quadruple make_quadruple(OrbitalLabel a, OrbitalLabel b, OrbitalLabel c, OrbitalLabel d);

// Every orbital 4-set a block-diagonal two-body term can touch: two orbitals
// from one block and two from another (or all four from one block), with an
// even number of each spin. Spatial sizes are per block; spin doubles them.
std::vector<Quadruple> required_quadruples(const std::vector<int>& n_per_block);

struct VerificationReport {
  std::size_t required = 0;
  std::size_t covered = 0;
  std::vector<Quadruple> missing;
  std::size_t duplicate_acquaintances = 0;  // re-acquainted required sets
  std::size_t distinct_four_sets = 0;       // distinct real 4-sets acquainted
  int depth = 0;
  std::size_t swap_layers = 0;
  std::vector<OrbitalLabel> final_mapping;
  bool complete() const { return covered == required; }
};

// Simulates the mapping layer by layer, checks that gates within a layer are
// position-disjoint and that every intermediate mapping stays a permutation,
// and reports which requirements some acquaint gate's orbital set contains.
VerificationReport verify_schedule(const SwapSchedule& schedule,
                                   const std::vector<Quadruple>& requirements);

// All C(n,2) pairs in n swap layers (1 for n = 2); final order reversed.
SwapSchedule linear_swap_network(int n);

// Acquaints every 4-subset of n >= 4 orbitals: deterministic greedy cover of
// all disjoint pair-pairs by partial pairings, each realized by routing the
// pairing adjacent and sweeping a partitioned swap pass across it.
SwapSchedule k4_complete_network(int n);

// Acquaints the union of every two parts; final order reverses the parts.
SwapSchedule p_swap_network(const std::vector<int>& part_sizes);

// Acquaints every (2-subset of top) x (2-subset of bottom); final mapping
// places the bottom part before the top part.
SwapSchedule double_bipartite_network(int n_top, int n_bottom);

// Spin-resolved variant over two blocks of n_spatial x 2 spin orbitals each:
// acquaints exactly the cross 4-sets whose two pairs have equal spin parity,
// and swaps the two blocks.
SwapSchedule balanced_double_bipartite_network(int n_spatial_a, int n_spatial_b);

struct StrategyResult {
  SwapSchedule schedule;
  // stage -> depth: "k4-halves", "intra-bipartite", "interleave", "inter-block"
  std::vector<std::pair<std::string, int>> stage_depths;
};

// Four-stage strategy: same-spin 4-sets inside each half-block, mixed-spin
// 4-sets inside each block, an interleaving permutation, then alternating
// balanced double bipartite layers so every block pair meets once.
// Non-uniform sizes are padded with inert orbitals.
StrategyResult block_diagonal_strategy(int n_blocks, const std::vector<int>& n_per_block);
StrategyResult block_diagonal_strategy(int n_blocks, int n_uniform);

}  // namespace dgblock
