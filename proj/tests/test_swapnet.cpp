#include <doctest.h>

#include <dgblock/swapnet.hpp>

#include <algorithm>
#include <set>

using namespace dgblock;

namespace {

OrbitalLabel lab(int block, int index, Spin spin = Spin::kUp) {
  return {static_cast<std::int16_t>(block), static_cast<std::int16_t>(index), spin, false};
}

// Brute-force requirement oracle: filter every 4-subset of all spin orbitals
// by the two block-diagonal properties.
std::vector<Quadruple> brute_force_requirements(const std::vector<int>& n_per_block) {
  std::vector<OrbitalLabel> all;
  for (std::size_t k = 0; k < n_per_block.size(); ++k) {
    for (int j = 0; j < n_per_block[k]; ++j) {
      all.push_back(lab(static_cast<int>(k), j, Spin::kUp));
      all.push_back(lab(static_cast<int>(k), j, Spin::kDown));
    }
  }
  std::vector<Quadruple> out;
  const int m = static_cast<int>(all.size());
  for (int a = 0; a < m; ++a) {
    for (int b = a + 1; b < m; ++b) {
      for (int c = b + 1; c < m; ++c) {
        for (int d = c + 1; d < m; ++d) {
          const Quadruple q = make_quadruple(all[static_cast<std::size_t>(a)],
                                             all[static_cast<std::size_t>(b)],
                                             all[static_cast<std::size_t>(c)],
                                             all[static_cast<std::size_t>(d)]);
          std::map<int, int> per_block;
          int downs = 0;
          for (const auto& l : q) {
            per_block[l.block] += 1;
            downs += l.spin == Spin::kDown ? 1 : 0;
          }
          const bool two_blocks =
              per_block.size() == 1 ||
              (per_block.size() == 2 && per_block.begin()->second == 2);
          if (two_blocks && downs % 2 == 0) out.push_back(q);
        }
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::size_t count_all_pairs_covered(const SwapSchedule& schedule) {
  std::set<std::pair<OrbitalLabel, OrbitalLabel>> pairs;
  std::vector<OrbitalLabel> map = schedule.initial_mapping;
  for (const auto& layer : schedule.layers) {
    for (const auto& gate : layer) {
      if (gate.kind == Gate::Kind::kAcquaint) {
        for (int x = gate.a; x < gate.b; ++x) {
          for (int y = x + 1; y < gate.b; ++y) {
            auto u = map[static_cast<std::size_t>(x)];
            auto v = map[static_cast<std::size_t>(y)];
            if (v < u) std::swap(u, v);
            pairs.insert({u, v});
          }
        }
      }
    }
    for (const auto& gate : layer) {
      if (gate.kind == Gate::Kind::kFswap) {
        std::swap(map[static_cast<std::size_t>(gate.a)],
                  map[static_cast<std::size_t>(gate.a + 1)]);
      } else if (gate.kind == Gate::Kind::kPartSwap) {
        std::rotate(map.begin() + gate.a, map.begin() + gate.b, map.begin() + gate.c);
      }
    }
  }
  return pairs.size();
}

}  // namespace

TEST_CASE("required quadruples") {
  SUBCASE("one block of two functions has exactly the mixed quadruple") {
    const auto req = required_quadruples({2});
    REQUIRE(req.size() == 1);
    int downs = 0;
    for (const auto& l : req[0]) downs += l.spin == Spin::kDown ? 1 : 0;
    CHECK(downs == 2);
  }
  SUBCASE("same-spin intra-block count is twice C(n,4)") {
    for (int n : {4, 5, 6}) {
      const auto req = required_quadruples({n});
      std::size_t same_spin = 0;
      for (const auto& q : req) {
        const bool all_same = q[0].spin == q[1].spin && q[1].spin == q[2].spin &&
                              q[2].spin == q[3].spin;
        if (all_same) ++same_spin;
      }
      const std::size_t c_n4 = static_cast<std::size_t>(n) * (n - 1) * (n - 2) * (n - 3) / 24;
      CHECK(same_spin == 2 * c_n4);
    }
  }
  SUBCASE("generator matches the exhaustive filter") {
    for (const auto& sizes :
         std::vector<std::vector<int>>{{2, 2}, {1, 1}, {3, 2}, {2, 2, 2}}) {
      const auto fast = required_quadruples(sizes);
      const auto slow = brute_force_requirements(sizes);
      CHECK(fast == slow);
    }
  }
}

TEST_CASE("linear swap network") {
  SUBCASE("two orbitals: one swap layer, pair acquainted, mapping reversed") {
    const auto schedule = linear_swap_network(2);
    CHECK(schedule.depth() == 1);
    CHECK(count_all_pairs_covered(schedule) == 1);
    CHECK(schedule.final_mapping.front().index == 1);
    CHECK(schedule.final_mapping.back().index == 0);
  }
  SUBCASE("four orbitals: six pairs, reversal") {
    const auto schedule = linear_swap_network(4);
    CHECK(schedule.depth() == 4);
    CHECK(count_all_pairs_covered(schedule) == 6);
    for (int p = 0; p < 4; ++p) {
      CHECK(schedule.final_mapping[static_cast<std::size_t>(p)].index == 3 - p);
    }
  }
  SUBCASE("nine orbitals verified exhaustively") {
    const auto schedule = linear_swap_network(9);
    CHECK(schedule.depth() == 9);
    CHECK(count_all_pairs_covered(schedule) == 36);
    verify_schedule(schedule, {});  // well-formedness
  }
}

TEST_CASE("4-complete network") {
  SUBCASE("minimum size covers the single quadruple") {
    const auto schedule = k4_complete_network(4);
    const auto report = verify_schedule(schedule, required_quadruples({4}));
    // All-same-spin requirement filter does not apply here: orbitals carry a
    // single spin, so check distinct coverage directly.
    CHECK(report.distinct_four_sets == 1);
  }
  SUBCASE("coverage is exactly C(n,4) for n = 4..10") {
    for (int n = 4; n <= 10; ++n) {
      const auto schedule = k4_complete_network(n);
      const auto report = verify_schedule(schedule, {});
      const std::size_t expected = static_cast<std::size_t>(n) * (n - 1) * (n - 2) * (n - 3) / 24;
      CHECK(report.distinct_four_sets == expected);
    }
  }
  SUBCASE("depth stays within a cubic envelope") {
    for (int n = 4; n <= 12; ++n) {
      const auto schedule = k4_complete_network(n);
      const double ratio = static_cast<double>(schedule.depth()) / (n * n * n);
      CHECK(ratio < 8.0);
    }
  }
  SUBCASE("too small rejected") { CHECK_THROWS_AS(k4_complete_network(3), Error); }
}

TEST_CASE("partitioned swap network") {
  SUBCASE("two parts: one union, parts exchanged") {
    const auto schedule = p_swap_network({2, 3});
    const auto report = verify_schedule(schedule, {});
    // Final mapping: part order reversed.
    CHECK(schedule.final_mapping[0].index == 2);
    CHECK(schedule.final_mapping[4].index == 1);
    std::size_t acquaints = 0;
    for (const auto& layer : schedule.layers) {
      for (const auto& gate : layer) {
        if (gate.kind == Gate::Kind::kAcquaint) ++acquaints;
      }
    }
    CHECK(acquaints == 1);
    CHECK(report.depth > 0);
  }
  SUBCASE("five parts acquaint all ten unions") {
    const std::vector<int> sizes = {1, 2, 1, 2, 2};
    const auto schedule = p_swap_network(sizes);
    // Expected unions: for every part pair, the union of their members.
    std::vector<std::set<int>> parts;
    int next = 0;
    for (int s : sizes) {
      std::set<int> part;
      for (int k = 0; k < s; ++k) part.insert(next++);
      parts.push_back(std::move(part));
    }
    // Collect acquainted sets by simulation.
    std::set<std::set<int>> acquainted;
    std::vector<OrbitalLabel> map = schedule.initial_mapping;
    for (const auto& layer : schedule.layers) {
      for (const auto& gate : layer) {
        if (gate.kind == Gate::Kind::kAcquaint) {
          std::set<int> got;
          for (int p = gate.a; p < gate.b; ++p) {
            got.insert(map[static_cast<std::size_t>(p)].index);
          }
          acquainted.insert(std::move(got));
        }
      }
      for (const auto& gate : layer) {
        if (gate.kind == Gate::Kind::kFswap) {
          std::swap(map[static_cast<std::size_t>(gate.a)],
                    map[static_cast<std::size_t>(gate.a + 1)]);
        } else if (gate.kind == Gate::Kind::kPartSwap) {
          std::rotate(map.begin() + gate.a, map.begin() + gate.b, map.begin() + gate.c);
        }
      }
    }
    std::size_t found = 0;
    for (std::size_t i = 0; i < parts.size(); ++i) {
      for (std::size_t j = i + 1; j < parts.size(); ++j) {
        std::set<int> expected = parts[i];
        expected.insert(parts[j].begin(), parts[j].end());
        if (acquainted.count(expected)) ++found;
      }
    }
    CHECK(found == 10);
    // Reversal of the part order: the last part's members lead.
    CHECK(schedule.final_mapping[0].index == 6);
    CHECK(schedule.final_mapping[1].index == 7);
  }
  SUBCASE("three pairs give three unions of size four") {
    const auto schedule = p_swap_network({2, 2, 2});
    const auto report = verify_schedule(schedule, {});
    CHECK(report.distinct_four_sets == 3);
  }
  SUBCASE("empty parts rejected") {
    CHECK_THROWS_AS(p_swap_network({2, 0, 1}), Error);
  }
}

TEST_CASE("double bipartite network") {
  SUBCASE("2x2 acquaints exactly one quadruple") {
    const auto schedule = double_bipartite_network(2, 2);
    const auto report = verify_schedule(schedule, {});
    CHECK(report.distinct_four_sets == 1);
  }
  SUBCASE("square cases acquaint exactly C(n,2)^2") {
    for (int n : {2, 3, 4}) {
      const auto schedule = double_bipartite_network(n, n);
      const auto report = verify_schedule(schedule, {});
      const std::size_t c2 = static_cast<std::size_t>(n) * (n - 1) / 2;
      CHECK(report.distinct_four_sets == c2 * c2);
    }
  }
  SUBCASE("rectangular coverage 3x5") {
    const auto schedule = double_bipartite_network(3, 5);
    std::vector<Quadruple> requirements;
    for (int a = 0; a < 3; ++a) {
      for (int b = a + 1; b < 3; ++b) {
        for (int c = 0; c < 5; ++c) {
          for (int d = c + 1; d < 5; ++d) {
            requirements.push_back(make_quadruple(lab(0, a), lab(0, b), lab(1, c), lab(1, d)));
          }
        }
      }
    }
    REQUIRE(requirements.size() == 30);
    const auto report = verify_schedule(schedule, requirements);
    CHECK(report.complete());
    CHECK(report.distinct_four_sets == 30);
  }
  SUBCASE("final mapping places the bottom block first") {
    const auto schedule = double_bipartite_network(3, 4);
    for (int p = 0; p < 4; ++p) {
      CHECK(schedule.final_mapping[static_cast<std::size_t>(p)].block == 1);
    }
    for (int p = 4; p < 7; ++p) {
      CHECK(schedule.final_mapping[static_cast<std::size_t>(p)].block == 0);
    }
  }
}

TEST_CASE("balanced double bipartite network") {
  SUBCASE("single spatial orbital per block keeps only the even-parity set") {
    const auto schedule = balanced_double_bipartite_network(1, 1);
    const auto report = verify_schedule(schedule, {});
    // Pairs within each block have odd parity (up+down), total parity even:
    // exactly one acquaintable quadruple.
    CHECK(report.distinct_four_sets == 1);
  }
  SUBCASE("coverage equals the required cross set") {
    for (int n : {1, 2, 3}) {
      const auto schedule = balanced_double_bipartite_network(n, n);
      // Cross-block members of the two-block requirement set.
      std::vector<Quadruple> cross;
      for (const auto& q : required_quadruples({n, n})) {
        int first_block = 0;
        for (const auto& l : q) first_block += l.block == 0 ? 1 : 0;
        if (first_block == 2) cross.push_back(q);
      }
      const auto report = verify_schedule(schedule, cross);
      CHECK(report.complete());
      // Set equality, not just containment.
      CHECK(report.distinct_four_sets == cross.size());
    }
  }
  SUBCASE("the two blocks end swapped") {
    const auto schedule = balanced_double_bipartite_network(2, 2);
    for (int p = 0; p < 4; ++p) {
      CHECK(schedule.final_mapping[static_cast<std::size_t>(p)].block == 1);
    }
    for (int p = 4; p < 8; ++p) {
      CHECK(schedule.final_mapping[static_cast<std::size_t>(p)].block == 0);
    }
  }
}

TEST_CASE("block-diagonal strategy") {
  SUBCASE("single block uses the intra stages only") {
    const auto result = block_diagonal_strategy(1, 3);
    const auto report = verify_schedule(result.schedule, required_quadruples({3}));
    CHECK(report.complete());
    CHECK(result.stage_depths.size() == 2);
  }
  SUBCASE("two blocks of two functions cover everything") {
    const auto result = block_diagonal_strategy(2, 2);
    const auto report = verify_schedule(result.schedule, required_quadruples({2, 2}));
    CHECK(report.complete());
  }
  SUBCASE("non-uniform blocks are padded with inert orbitals") {
    const auto result = block_diagonal_strategy(2, std::vector<int>{3, 2});
    const auto report = verify_schedule(result.schedule, required_quadruples({3, 2}));
    CHECK(report.complete());
  }
  SUBCASE("every block pair meets exactly once in the inter stage") {
    const auto result = block_diagonal_strategy(3, 2);
    // Count balanced-double-bipartite block encounters via block-level
    // acquaintances across distinct blocks.
    std::set<std::pair<int, int>> met;
    std::vector<OrbitalLabel> map = result.schedule.initial_mapping;
    for (const auto& layer : result.schedule.layers) {
      for (const auto& gate : layer) {
        if (gate.kind == Gate::Kind::kAcquaint) {
          std::set<int> blocks;
          for (int p = gate.a; p < gate.b; ++p) {
            blocks.insert(map[static_cast<std::size_t>(p)].block);
          }
          if (blocks.size() == 2) {
            met.insert({*blocks.begin(), *blocks.rbegin()});
          }
        }
      }
      for (const auto& gate : layer) {
        if (gate.kind == Gate::Kind::kFswap) {
          std::swap(map[static_cast<std::size_t>(gate.a)],
                    map[static_cast<std::size_t>(gate.a + 1)]);
        } else if (gate.kind == Gate::Kind::kPartSwap) {
          std::rotate(map.begin() + gate.a, map.begin() + gate.b, map.begin() + gate.c);
        }
      }
    }
    CHECK(met.size() == 3);  // (0,1), (0,2), (1,2)
  }
  SUBCASE("four blocks of ten functions: full coverage, inter-block stage dominates") {
    const auto result = block_diagonal_strategy(4, 10);
    const auto report = verify_schedule(result.schedule, required_quadruples({10, 10, 10, 10}));
    CHECK(report.complete());
    CHECK(report.depth <= 150.0 * 4 * 10 * 10 * 10);
    int inter = 0, total = 0;
    for (const auto& [stage, depth] : result.stage_depths) {
      total += depth;
      if (stage == "inter-block") inter = depth;
    }
    CHECK(inter > total / 2);
  }
  SUBCASE("mutating a verified schedule is caught") {
    const auto result = block_diagonal_strategy(2, 2);
    const auto requirements = required_quadruples({2, 2});
    REQUIRE(verify_schedule(result.schedule, requirements).complete());
    bool some_deletion_breaks = false;
    for (std::size_t k = 0; k < result.schedule.layers.size() && !some_deletion_breaks; ++k) {
      bool has_acquaint = false;
      for (const auto& gate : result.schedule.layers[k]) {
        if (gate.kind == Gate::Kind::kAcquaint) has_acquaint = true;
      }
      if (!has_acquaint) continue;
      SwapSchedule mutated = result.schedule;
      mutated.layers.erase(mutated.layers.begin() + static_cast<std::ptrdiff_t>(k));
      const auto report = verify_schedule(mutated, requirements);
      if (!report.missing.empty()) some_deletion_breaks = true;
    }
    CHECK(some_deletion_breaks);
  }
}

TEST_CASE("verification mechanics") {
  SUBCASE("empty schedule covers nothing") {
    SwapSchedule schedule;
    schedule.width = 4;
    for (int i = 0; i < 4; ++i) schedule.initial_mapping.push_back(lab(0, i));
    schedule.final_mapping = schedule.initial_mapping;
    const auto report = verify_schedule(schedule, required_quadruples({2}));
    CHECK(report.covered == 0);
    CHECK(report.missing.size() == report.required);
  }
  SUBCASE("overlapping gates in a layer are malformed") {
    SwapSchedule schedule;
    schedule.width = 4;
    for (int i = 0; i < 4; ++i) schedule.initial_mapping.push_back(lab(0, i));
    Layer bad;
    bad.push_back({Gate::Kind::kFswap, 0, 0, 0});
    bad.push_back({Gate::Kind::kFswap, 1, 0, 0});
    schedule.layers.push_back(bad);
    CHECK_THROWS_AS(verify_schedule(schedule, {}), Error);
  }
  SUBCASE("intermediate mappings must stay permutations") {
    const auto schedule = linear_swap_network(5);
    const auto report = verify_schedule(schedule, {});
    CHECK(report.final_mapping == schedule.final_mapping);
  }
}
