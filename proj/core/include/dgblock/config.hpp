#pragma once

//
// Line-based experiment configuration: "[section]" headers and "key = value"
// pairs, '#' comments. Parsing and the canonical echo are loss-free so runs
// can be reproduced byte for byte from the manifest.
//

#include <dgblock/types.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace dgblock {

struct ExperimentConfig {
  // [system]
  int atoms = 2;
  double bond = 1.4;            // bohr
  std::string geometry_file;    // overrides atoms/bond when set
  double spacing = 0.5;         // bohr
  double padding = 3.0;         // bohr
  std::string kinetic = "fd2";  // fd2 | sinc
  double softening = 1.0;       // bohr
  bool self_term = false;

  // [active]
  std::vector<double> shells = {0.5, 1.5};  // s-type exponents per atom
  std::string scf = "none";                 // none | rhf | uhf
  int electrons = -1;                       // -1: neutral (sum of charges)
  double hybrid_alpha = 0.0;
  std::string keep;                         // "count:N" | "occ:X" | empty (all)

  // [dg]
  std::string partition = "atoms";  // atoms | uniform:N
  std::vector<double> taus = {1e-2};
  std::string tau_mode = "relative";  // relative | absolute

  // [metrics]
  double cutoff = 1e-6;

  // [sweep]
  std::vector<int> sweep_sizes;

  // [output]
  std::string out_dir = "out";
  int threads = 1;
  std::uint64_t seed = 0;  // echoed into manifests; reserved for randomized extensions
};

ExperimentConfig parse_config_text(const std::string& text);
ExperimentConfig parse_config_file(const std::string& path);

// Deterministic serialization; parse(canonical(c)) == c.
std::string canonical_config_text(const ExperimentConfig& config);

}  // namespace dgblock
