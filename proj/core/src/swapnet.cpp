#include <dgblock/swapnet.hpp>

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <sstream>

namespace dgblock {

int SwapSchedule::depth() const {
  int total = 0;
  for (const auto& layer : layers) {
    int cost = 0;
    for (const auto& gate : layer) cost = std::max(cost, gate.cost());
    total += cost;
  }
  return total;
}

std::size_t SwapSchedule::swap_layer_count() const {
  std::size_t count = 0;
  for (const auto& layer : layers) {
    for (const auto& gate : layer) {
      if (gate.kind != Gate::Kind::kAcquaint) {
        ++count;
        break;
      }
    }
  }
  return count;
}

Quadruple make_quadruple(OrbitalLabel a, OrbitalLabel b, OrbitalLabel c, OrbitalLabel d) {
  Quadruple q{a, b, c, d};
  std::sort(q.begin(), q.end());
  return q;
}

namespace {

int spin_bit(const OrbitalLabel& label) { return label.spin == Spin::kDown ? 1 : 0; }

// ---------------------------------------------------------------------------
// Schedule construction machinery.

struct Builder {
  std::vector<OrbitalLabel> map;
  std::vector<Layer> layers;

  explicit Builder(std::vector<OrbitalLabel> initial) : map(std::move(initial)) {}

  void apply(const Gate& gate) {
    switch (gate.kind) {
      case Gate::Kind::kFswap:
        std::swap(map[static_cast<std::size_t>(gate.a)],
                  map[static_cast<std::size_t>(gate.a + 1)]);
        break;
      case Gate::Kind::kPartSwap:
        std::rotate(map.begin() + gate.a, map.begin() + gate.b, map.begin() + gate.c);
        break;
      case Gate::Kind::kAcquaint:
        break;
    }
  }

  void push_layer(Layer layer) {
    if (layer.empty()) return;
    for (const auto& gate : layer) apply(gate);
    layers.push_back(std::move(layer));
  }

  SwapSchedule finish(std::vector<OrbitalLabel> initial) && {
    SwapSchedule s;
    s.width = static_cast<int>(map.size());
    s.initial_mapping = std::move(initial);
    s.layers = std::move(layers);
    s.final_mapping = std::move(map);
    return s;
  }
};

// Sorts [lo, lo+len) into the target label order with odd-even transposition
// rounds; each round is one fswap layer.
void route_to(Builder& b, int lo, const std::vector<OrbitalLabel>& target) {
  const int len = static_cast<int>(target.size());
  std::map<OrbitalLabel, int> rank;
  for (int i = 0; i < len; ++i) rank[target[static_cast<std::size_t>(i)]] = i;
  for (int i = 0; i < len; ++i) {
    if (!rank.count(b.map[static_cast<std::size_t>(lo + i)])) {
      throw Error("routing target is not a permutation of the current range");
    }
  }
  auto sorted = [&] {
    for (int i = 0; i + 1 < len; ++i) {
      if (rank.at(b.map[static_cast<std::size_t>(lo + i)]) >
          rank.at(b.map[static_cast<std::size_t>(lo + i + 1)])) {
        return false;
      }
    }
    return true;
  };
  int parity = 0;
  for (int round = 0; round <= len + 1 && !sorted(); ++round) {
    Layer layer;
    for (int p = parity; p + 1 < len; p += 2) {
      if (rank.at(b.map[static_cast<std::size_t>(lo + p)]) >
          rank.at(b.map[static_cast<std::size_t>(lo + p + 1)])) {
        layer.push_back({Gate::Kind::kFswap, lo + p, 0, 0});
      }
    }
    b.push_layer(std::move(layer));
    parity ^= 1;
  }
}

// Runs region generators on disjoint ranges and zips their layers so the
// regions execute concurrently.
void parallel_regions(Builder& b, const std::vector<std::pair<int, int>>& ranges,
                      const std::function<void(Builder&, int, int)>& generate) {
  std::vector<std::vector<Layer>> produced;
  for (const auto& [lo, hi] : ranges) {
    Builder sub(b.map);
    generate(sub, lo, hi);
    produced.push_back(std::move(sub.layers));
  }
  std::size_t max_len = 0;
  for (const auto& layers : produced) max_len = std::max(max_len, layers.size());
  for (std::size_t k = 0; k < max_len; ++k) {
    Layer merged;
    for (const auto& layers : produced) {
      if (k < layers.size()) {
        merged.insert(merged.end(), layers[k].begin(), layers[k].end());
      }
    }
    b.push_layer(std::move(merged));
  }
}

// ---------------------------------------------------------------------------
// Partitioned swap pass: a brick-wall of part-level swaps in which every two
// parts become adjacent exactly once per pass. `acquaint_pred` decides which
// adjacencies get an acquaint gate over the union window.

struct Part {
  int size = 1;
  int kind = 0;    // construction-specific type tag
  int parity = 0;  // spin parity for balanced filtering
};

using AcquaintPred = std::function<bool(const Part&, const Part&)>;

void pswap_pass(Builder& b, int lo, std::vector<Part>& parts, const AcquaintPred& pred,
                int passes) {
  const int m = static_cast<int>(parts.size());
  for (int pass = 0; pass < passes; ++pass) {
    for (int round = 0; round < m; ++round) {
      std::vector<int> starts(static_cast<std::size_t>(m) + 1, lo);
      for (int s = 0; s < m; ++s) {
        starts[static_cast<std::size_t>(s) + 1] =
            starts[static_cast<std::size_t>(s)] + parts[static_cast<std::size_t>(s)].size;
      }
      Layer acquaints;
      Layer swaps;
      std::vector<int> swapped_slots;
      for (int s = round % 2; s + 1 < m; s += 2) {
        const int a = starts[static_cast<std::size_t>(s)];
        const int mid = starts[static_cast<std::size_t>(s) + 1];
        const int c = starts[static_cast<std::size_t>(s) + 2];
        // Every part pair is adjacent once per pass; a second pass only
        // undoes the reversal, so it carries no acquaint gates.
        if (pass == 0 &&
            pred(parts[static_cast<std::size_t>(s)], parts[static_cast<std::size_t>(s) + 1])) {
          acquaints.push_back({Gate::Kind::kAcquaint, a, c, 0});
        }
        if (mid - a == 1 && c - mid == 1) {
          swaps.push_back({Gate::Kind::kFswap, a, 0, 0});
        } else {
          swaps.push_back({Gate::Kind::kPartSwap, a, mid, c});
        }
        swapped_slots.push_back(s);
      }
      b.push_layer(std::move(acquaints));
      b.push_layer(std::move(swaps));
      for (int s : swapped_slots) {
        std::swap(parts[static_cast<std::size_t>(s)], parts[static_cast<std::size_t>(s) + 1]);
      }
    }
  }
}

// ---------------------------------------------------------------------------
// Double bipartite core: for every round pair (t,u) the pairs crossing in the
// top pass at round t and in the bottom pass at round u are simultaneously
// current, and one filtered partitioned pass (run twice, restoring order)
// acquaints the selected cross unions. Every (top pair, bottom pair)
// combination is current at exactly one (t,u).

constexpr int kPartIdle = 0;
constexpr int kPartTop = 1;
constexpr int kPartBottom = 2;
constexpr int kPartPlain = 3;

std::vector<Part> phase_parts(const Builder& b, int lo, int n_top, int n_bottom,
                              int top_parity, int bottom_parity) {
  std::vector<Part> parts;
  auto emit_side = [&](int base, int len, int parity, int kind) {
    int p = 0;
    if (parity == 1) {
      parts.push_back({1, kPartIdle, 0});
      p = 1;
    }
    while (p + 1 < len) {
      const auto& l0 = b.map[static_cast<std::size_t>(base + p)];
      const auto& l1 = b.map[static_cast<std::size_t>(base + p + 1)];
      parts.push_back({2, kind, (spin_bit(l0) + spin_bit(l1)) % 2});
      p += 2;
    }
    while (p < len) {
      parts.push_back({1, kPartIdle, 0});
      ++p;
    }
  };
  emit_side(lo, n_top, top_parity, kPartTop);
  emit_side(lo + n_top, n_bottom, bottom_parity, kPartBottom);
  return parts;
}

void bipartite_core(Builder& b, int lo, int n_top, int n_bottom, bool balanced,
                    bool restore_order, bool end_block_swap) {
  if (n_top < 2 || n_bottom < 2) throw Error("bipartite networks need at least 2 per side");
  const std::vector<OrbitalLabel> top0(b.map.begin() + lo, b.map.begin() + lo + n_top);
  const std::vector<OrbitalLabel> bottom0(b.map.begin() + lo + n_top,
                                          b.map.begin() + lo + n_top + n_bottom);

  auto cross_pred = [balanced](const Part& x, const Part& y) {
    const bool cross = (x.kind == kPartTop && y.kind == kPartBottom) ||
                       (x.kind == kPartBottom && y.kind == kPartTop);
    if (!cross) return false;
    return !balanced || x.parity == y.parity;
  };

  for (int t = 0; t < n_top; ++t) {
    const int tp = t % 2;
    const bool top_active = tp + 1 < n_top;
    if (!top_active) continue;
    for (int u = 0; u < n_bottom; ++u) {
      const int up = u % 2;
      if (up + 1 >= n_bottom) continue;
      auto parts = phase_parts(b, lo, n_top, n_bottom, tp, up);
      pswap_pass(b, lo, parts, cross_pred, 2);
      // Advance the bottom pass by one round.
      Layer advance;
      for (int p = up; p + 1 < n_bottom; p += 2) {
        advance.push_back({Gate::Kind::kFswap, lo + n_top + p, 0, 0});
      }
      b.push_layer(std::move(advance));
    }
    // Advance the top pass.
    Layer advance;
    for (int p = tp; p + 1 < n_top; p += 2) {
      advance.push_back({Gate::Kind::kFswap, lo + p, 0, 0});
    }
    b.push_layer(std::move(advance));
  }

  if (restore_order) {
    std::vector<OrbitalLabel> target = top0;
    target.insert(target.end(), bottom0.begin(), bottom0.end());
    route_to(b, lo, target);
  }
  if (end_block_swap) {
    Layer swap_layer;
    swap_layer.push_back({Gate::Kind::kPartSwap, lo, lo + n_top, lo + n_top + n_bottom});
    b.push_layer(std::move(swap_layer));
  }
}

// ---------------------------------------------------------------------------
// 4-complete core: deterministic greedy cover of all disjoint pair-pairs of
// the range's current orbitals by partial pairings; each pairing is routed
// adjacent and swept with a partitioned pass acquainting pair-pair unions.

void k4_core(Builder& b, int lo, int n) {
  if (n < 4) return;
  const std::vector<OrbitalLabel> elems(b.map.begin() + lo, b.map.begin() + lo + n);

  const auto pair_key = [n](int x, int y) { return x * n + y; };  // x < y
  std::vector<std::pair<int, int>> all_pairs;
  for (int x = 0; x < n; ++x) {
    for (int y = x + 1; y < n; ++y) all_pairs.emplace_back(x, y);
  }
  // Uncovered disjoint pair-pairs, canonical order.
  std::set<std::pair<int, int>> uncovered;  // (key(e), key(f)), key(e) < key(f)
  for (std::size_t i = 0; i < all_pairs.size(); ++i) {
    for (std::size_t j = i + 1; j < all_pairs.size(); ++j) {
      const auto& e = all_pairs[i];
      const auto& f = all_pairs[j];
      if (e.first != f.first && e.first != f.second && e.second != f.first &&
          e.second != f.second) {
        uncovered.emplace(pair_key(e.first, e.second), pair_key(f.first, f.second));
      }
    }
  }

  while (!uncovered.empty()) {
    std::vector<char> used(static_cast<std::size_t>(n), 0);
    std::vector<std::pair<int, int>> matching;
    auto try_add = [&](int x, int y) {
      if (used[static_cast<std::size_t>(x)] || used[static_cast<std::size_t>(y)]) return false;
      used[static_cast<std::size_t>(x)] = used[static_cast<std::size_t>(y)] = 1;
      matching.emplace_back(x, y);
      return true;
    };
    // Seed with the first uncovered pair-pair, then greedily add pairs that
    // cover something new against the current matching.
    {
      const auto [ke, kf] = *uncovered.begin();
      try_add(ke / n, ke % n);
      try_add(kf / n, kf % n);
    }
    bool grew = true;
    while (grew) {
      grew = false;
      for (const auto& e : all_pairs) {
        if (used[static_cast<std::size_t>(e.first)] || used[static_cast<std::size_t>(e.second)]) {
          continue;
        }
        bool covers_new = false;
        const int ke = pair_key(e.first, e.second);
        for (const auto& m : matching) {
          const int km = pair_key(m.first, m.second);
          const auto key = std::minmax(ke, km);
          if (uncovered.count({key.first, key.second})) {
            covers_new = true;
            break;
          }
        }
        if (covers_new) {
          try_add(e.first, e.second);
          grew = true;
        }
      }
    }

    // Route the matching adjacent: pairs first, leftover singles after.
    std::vector<OrbitalLabel> target;
    std::vector<Part> parts;
    for (const auto& m : matching) {
      target.push_back(elems[static_cast<std::size_t>(m.first)]);
      target.push_back(elems[static_cast<std::size_t>(m.second)]);
      parts.push_back({2, kPartPlain, 0});
    }
    for (int x = 0; x < n; ++x) {
      if (!used[static_cast<std::size_t>(x)]) {
        target.push_back(elems[static_cast<std::size_t>(x)]);
        parts.push_back({1, kPartIdle, 0});
      }
    }
    route_to(b, lo, target);
    auto pred = [](const Part& x, const Part& y) {
      return x.kind == kPartPlain && y.kind == kPartPlain;
    };
    pswap_pass(b, lo, parts, pred, 1);

    for (std::size_t i = 0; i < matching.size(); ++i) {
      for (std::size_t j = i + 1; j < matching.size(); ++j) {
        const int ki = pair_key(matching[i].first, matching[i].second);
        const int kj = pair_key(matching[j].first, matching[j].second);
        const auto key = std::minmax(ki, kj);
        uncovered.erase({key.first, key.second});
      }
    }
  }
}

std::vector<OrbitalLabel> default_labels(int n) {
  std::vector<OrbitalLabel> labels;
  labels.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    labels.push_back({0, static_cast<std::int16_t>(i), Spin::kUp, false});
  }
  return labels;
}

}  // namespace

SwapSchedule linear_swap_network(int n) {
  if (n < 2) throw Error("linear network needs at least 2 orbitals");
  auto initial = default_labels(n);
  Builder b(initial);
  for (int round = 0; round < n; ++round) {
    Layer acquaints;
    Layer swaps;
    for (int p = round % 2; p + 1 < n; p += 2) {
      acquaints.push_back({Gate::Kind::kAcquaint, p, p + 2, 0});
      swaps.push_back({Gate::Kind::kFswap, p, 0, 0});
    }
    b.push_layer(std::move(acquaints));
    b.push_layer(std::move(swaps));
  }
  return std::move(b).finish(std::move(initial));
}

SwapSchedule k4_complete_network(int n) {
  if (n < 4) throw Error("4-complete network needs at least 4 orbitals");
  auto initial = default_labels(n);
  Builder b(initial);
  k4_core(b, 0, n);
  return std::move(b).finish(std::move(initial));
}

SwapSchedule p_swap_network(const std::vector<int>& part_sizes) {
  if (part_sizes.empty()) throw Error("partition must be nonempty");
  int width = 0;
  std::vector<Part> parts;
  for (int size : part_sizes) {
    if (size < 1) throw Error("partition contains an empty part");
    parts.push_back({size, kPartPlain, 0});
    width += size;
  }
  auto initial = default_labels(width);
  Builder b(initial);
  auto pred = [](const Part&, const Part&) { return true; };
  pswap_pass(b, 0, parts, pred, 1);
  return std::move(b).finish(std::move(initial));
}

SwapSchedule double_bipartite_network(int n_top, int n_bottom) {
  if (n_top < 2 || n_bottom < 2) throw Error("bipartite networks need at least 2 per side");
  std::vector<OrbitalLabel> initial;
  for (int j = 0; j < n_top; ++j) {
    initial.push_back({0, static_cast<std::int16_t>(j), Spin::kUp, false});
  }
  for (int j = 0; j < n_bottom; ++j) {
    initial.push_back({1, static_cast<std::int16_t>(j), Spin::kUp, false});
  }
  Builder b(initial);
  bipartite_core(b, 0, n_top, n_bottom, /*balanced=*/false, /*restore_order=*/true,
                 /*end_block_swap=*/true);
  return std::move(b).finish(std::move(initial));
}

SwapSchedule balanced_double_bipartite_network(int n_spatial_a, int n_spatial_b) {
  if (n_spatial_a < 1 || n_spatial_b < 1) throw Error("blocks need at least 1 spatial orbital");
  std::vector<OrbitalLabel> initial;
  for (int j = 0; j < n_spatial_a; ++j) {
    initial.push_back({0, static_cast<std::int16_t>(j), Spin::kUp, false});
    initial.push_back({0, static_cast<std::int16_t>(j), Spin::kDown, false});
  }
  for (int j = 0; j < n_spatial_b; ++j) {
    initial.push_back({1, static_cast<std::int16_t>(j), Spin::kUp, false});
    initial.push_back({1, static_cast<std::int16_t>(j), Spin::kDown, false});
  }
  Builder b(initial);
  bipartite_core(b, 0, 2 * n_spatial_a, 2 * n_spatial_b, /*balanced=*/true,
                 /*restore_order=*/true, /*end_block_swap=*/true);
  return std::move(b).finish(std::move(initial));
}

StrategyResult block_diagonal_strategy(int n_blocks, const std::vector<int>& n_per_block) {
  if (n_blocks < 1) throw Error("strategy needs at least one block");
  if (static_cast<int>(n_per_block.size()) != n_blocks) throw Error("block size list mismatch");
  int n_max = 0;
  for (int n : n_per_block) {
    if (n < 1) throw Error("blocks need at least 1 spatial orbital");
    n_max = std::max(n_max, n);
  }

  // Initial order: block-major, spin halves inside each block; blocks padded
  // to a common size with inert orbitals.
  std::vector<OrbitalLabel> initial;
  for (int k = 0; k < n_blocks; ++k) {
    for (int spin = 0; spin < 2; ++spin) {
      for (int j = 0; j < n_max; ++j) {
        initial.push_back({static_cast<std::int16_t>(k), static_cast<std::int16_t>(j),
                           spin == 0 ? Spin::kUp : Spin::kDown,
                           j >= n_per_block[static_cast<std::size_t>(k)]});
      }
    }
  }
  const int block_width = 2 * n_max;
  Builder b(initial);
  StrategyResult result;
  int depth_before = 0;
  auto record_stage = [&](const std::string& name) {
    SwapSchedule probe;
    probe.layers = b.layers;
    const int d = probe.depth();
    result.stage_depths.emplace_back(name, d - depth_before);
    depth_before = d;
  };

  // Stage 1: 4-complete networks on every same-spin half-block.
  {
    std::vector<std::pair<int, int>> halves;
    for (int k = 0; k < n_blocks; ++k) {
      halves.emplace_back(k * block_width, k * block_width + n_max);
      halves.emplace_back(k * block_width + n_max, (k + 1) * block_width);
    }
    parallel_regions(b, halves, [&](Builder& sub, int lo, int hi) {
      k4_core(sub, lo, hi - lo);
    });
    record_stage("k4-halves");
  }

  // Stage 2: double bipartite across the spin halves of each block.
  if (n_max >= 2) {
    std::vector<std::pair<int, int>> blocks;
    for (int k = 0; k < n_blocks; ++k) {
      blocks.emplace_back(k * block_width, (k + 1) * block_width);
    }
    parallel_regions(b, blocks, [&](Builder& sub, int lo, int) {
      bipartite_core(sub, lo, n_max, n_max, /*balanced=*/false, /*restore_order=*/false,
                     /*end_block_swap=*/false);
    });
    record_stage("intra-bipartite");
  } else {
    record_stage("intra-bipartite");
  }

  if (n_blocks > 1) {
    // Stage 3: interleave spins within each block for the inter-block stage.
    for (int k = 0; k < n_blocks; ++k) {
      std::vector<OrbitalLabel> target;
      std::set<OrbitalLabel> members(b.map.begin() + k * block_width,
                                     b.map.begin() + (k + 1) * block_width);
      std::vector<OrbitalLabel> sorted_members(members.begin(), members.end());
      std::sort(sorted_members.begin(), sorted_members.end(),
                [](const OrbitalLabel& x, const OrbitalLabel& y) {
                  return std::tie(x.index, x.spin, x.inert) < std::tie(y.index, y.spin, y.inert);
                });
      route_to(b, k * block_width, sorted_members);
    }
    record_stage("interleave");

    // Stage 4: alternating balanced double bipartite layers; each network
    // also swaps its two blocks, so every pair of blocks meets exactly once.
    for (int round = 0; round < n_blocks; ++round) {
      std::vector<std::pair<int, int>> regions;
      for (int s = round % 2; s + 1 < n_blocks; s += 2) {
        regions.emplace_back(s * block_width, (s + 2) * block_width);
      }
      if (regions.empty()) continue;
      parallel_regions(b, regions, [&](Builder& sub, int lo, int) {
        bipartite_core(sub, lo, block_width, block_width, /*balanced=*/true,
                       /*restore_order=*/true, /*end_block_swap=*/true);
      });
    }
    record_stage("inter-block");
  }

  result.schedule = std::move(b).finish(std::move(initial));
  return result;
}

StrategyResult block_diagonal_strategy(int n_blocks, int n_uniform) {
  return block_diagonal_strategy(n_blocks,
                                 std::vector<int>(static_cast<std::size_t>(n_blocks), n_uniform));
}

std::vector<Quadruple> required_quadruples(const std::vector<int>& n_per_block) {
  const int n_blocks = static_cast<int>(n_per_block.size());
  auto spin_orbitals = [&](int block) {
    std::vector<OrbitalLabel> out;
    for (int j = 0; j < n_per_block[static_cast<std::size_t>(block)]; ++j) {
      out.push_back({static_cast<std::int16_t>(block), static_cast<std::int16_t>(j),
                     Spin::kUp, false});
      out.push_back({static_cast<std::int16_t>(block), static_cast<std::int16_t>(j),
                     Spin::kDown, false});
    }
    return out;
  };
  auto even_parity = [](const Quadruple& q) {
    int downs = 0;
    for (const auto& l : q) downs += spin_bit(l);
    return downs % 2 == 0;
  };

  std::set<Quadruple> out;
  for (int k = 0; k < n_blocks; ++k) {
    const auto orbs = spin_orbitals(k);
    const int m = static_cast<int>(orbs.size());
    for (int a = 0; a < m; ++a) {
      for (int b2 = a + 1; b2 < m; ++b2) {
        for (int c = b2 + 1; c < m; ++c) {
          for (int d = c + 1; d < m; ++d) {
            const auto q = make_quadruple(orbs[static_cast<std::size_t>(a)],
                                          orbs[static_cast<std::size_t>(b2)],
                                          orbs[static_cast<std::size_t>(c)],
                                          orbs[static_cast<std::size_t>(d)]);
            if (even_parity(q)) out.insert(q);
          }
        }
      }
    }
  }
  for (int ka = 0; ka < n_blocks; ++ka) {
    const auto orbs_a = spin_orbitals(ka);
    for (int kb = ka + 1; kb < n_blocks; ++kb) {
      const auto orbs_b = spin_orbitals(kb);
      for (std::size_t a1 = 0; a1 < orbs_a.size(); ++a1) {
        for (std::size_t a2 = a1 + 1; a2 < orbs_a.size(); ++a2) {
          for (std::size_t b1 = 0; b1 < orbs_b.size(); ++b1) {
            for (std::size_t b2 = b1 + 1; b2 < orbs_b.size(); ++b2) {
              const auto q = make_quadruple(orbs_a[a1], orbs_a[a2], orbs_b[b1], orbs_b[b2]);
              if (even_parity(q)) out.insert(q);
            }
          }
        }
      }
    }
  }
  return {out.begin(), out.end()};
}

VerificationReport verify_schedule(const SwapSchedule& schedule,
                                   const std::vector<Quadruple>& requirements) {
  VerificationReport report;
  report.required = requirements.size();
  report.depth = schedule.depth();
  report.swap_layers = schedule.swap_layer_count();

  std::set<Quadruple> pending(requirements.begin(), requirements.end());
  std::set<Quadruple> covered;
  std::set<Quadruple> distinct;

  std::vector<OrbitalLabel> map = schedule.initial_mapping;
  if (static_cast<int>(map.size()) != schedule.width) {
    throw Error("schedule width does not match its initial mapping");
  }
  std::vector<OrbitalLabel> reference = map;
  std::sort(reference.begin(), reference.end());

  for (const auto& layer : schedule.layers) {
    // Gates within a layer must act on disjoint positions.
    std::vector<std::pair<int, int>> spans;
    for (const auto& gate : layer) {
      if (gate.span_begin() < 0 || gate.span_end() > schedule.width ||
          gate.span_begin() >= gate.span_end()) {
        throw Error("malformed layer: gate out of range");
      }
      spans.emplace_back(gate.span_begin(), gate.span_end());
    }
    std::sort(spans.begin(), spans.end());
    for (std::size_t i = 0; i + 1 < spans.size(); ++i) {
      if (spans[i].second > spans[i + 1].first) {
        throw Error("malformed layer: overlapping gates");
      }
    }

    for (const auto& gate : layer) {
      if (gate.kind != Gate::Kind::kAcquaint) continue;
      std::vector<OrbitalLabel> real;
      for (int p = gate.a; p < gate.b; ++p) {
        const auto& label = map[static_cast<std::size_t>(p)];
        if (!label.inert) real.push_back(label);
      }
      if (real.size() > 16) throw Error("acquaint range too wide to enumerate");
      const int m = static_cast<int>(real.size());
      for (int a = 0; a < m; ++a) {
        for (int b2 = a + 1; b2 < m; ++b2) {
          for (int c = b2 + 1; c < m; ++c) {
            for (int d = c + 1; d < m; ++d) {
              const auto q = make_quadruple(real[static_cast<std::size_t>(a)],
                                            real[static_cast<std::size_t>(b2)],
                                            real[static_cast<std::size_t>(c)],
                                            real[static_cast<std::size_t>(d)]);
              distinct.insert(q);
              if (pending.count(q)) {
                pending.erase(q);
                covered.insert(q);
              } else if (covered.count(q)) {
                ++report.duplicate_acquaintances;
              }
            }
          }
        }
      }
    }
    for (const auto& gate : layer) {
      switch (gate.kind) {
        case Gate::Kind::kFswap:
          std::swap(map[static_cast<std::size_t>(gate.a)],
                    map[static_cast<std::size_t>(gate.a + 1)]);
          break;
        case Gate::Kind::kPartSwap:
          std::rotate(map.begin() + gate.a, map.begin() + gate.b, map.begin() + gate.c);
          break;
        case Gate::Kind::kAcquaint:
          break;
      }
    }
    std::vector<OrbitalLabel> check = map;
    std::sort(check.begin(), check.end());
    if (check != reference) throw Error("layer broke the mapping permutation");
  }

  report.covered = covered.size();
  report.missing.assign(pending.begin(), pending.end());
  report.distinct_four_sets = distinct.size();
  report.final_mapping = map;
  if (!schedule.final_mapping.empty() && schedule.final_mapping != map) {
    throw Error("stored final mapping disagrees with simulation");
  }
  return report;
}

}  // namespace dgblock
