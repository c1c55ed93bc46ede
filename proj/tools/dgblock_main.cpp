//
// Command-line front end: chain builds, size sweeps with crossover reports,
// swap-network generation/verification, and low-rank factorization reports.
//
// Exit codes: 0 success, 1 usage or configuration error, 2 verification
// failure, 3 numerical failure.
//

#include <CLI11.hpp>

#include <dgblock/experiment.hpp>
#include <dgblock/io.hpp>
#include <dgblock/swapnet.hpp>

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

namespace {

using namespace dgblock;
namespace fs = std::filesystem;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitVerification = 2;
constexpr int kExitNumerical = 3;

int cmd_chain(const std::string& config_path, const std::string& out_override) {
  ExperimentConfig config = parse_config_file(config_path);
  if (!out_override.empty()) config.out_dir = out_override;
  const ChainOutput out = run_chain(config, config.atoms, config.out_dir);
  std::cout << "wrote " << out.files.size() << " artifacts + manifest to " << out.dir << "\n";
  for (const auto& m : out.metrics) {
    std::cout << "  " << m.representation << ": n=" << m.n_functions
              << " nnz=" << m.nnz_two_body << " lambda=" << format_double(m.lambda) << "\n";
  }
  return kExitOk;
}

int cmd_crossover(const std::string& config_path, const std::vector<std::string>& manifests,
                  const std::string& out_override, int threads_override) {
  CrossoverReport report;
  if (!manifests.empty()) {
    const std::string out_dir = out_override.empty() ? "." : out_override;
    report = crossover_from_manifests(manifests, out_dir);
  } else {
    ExperimentConfig config = parse_config_file(config_path);
    if (!out_override.empty()) config.out_dir = out_override;
    if (threads_override > 0) config.threads = threads_override;
    report = run_crossover(config);
  }
  std::cout << "wrote " << report.csv_path << " and " << report.json_path << "\n";
  for (const auto& [key, fit] : report.fits) {
    std::cout << "  fit " << key << ": exponent=" << format_double(fit.exponent)
              << " offset=" << format_double(fit.offset) << "\n";
  }
  for (const auto& [key, n] : report.crossovers) {
    std::cout << "  crossover " << key << ": N=" << n << "\n";
  }
  return kExitOk;
}

std::vector<Quadruple> all_four_subsets(int n) {
  std::vector<Quadruple> out;
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      for (int c = b + 1; c < n; ++c) {
        for (int d = c + 1; d < n; ++d) {
          out.push_back(make_quadruple(
              {0, static_cast<std::int16_t>(a), Spin::kUp, false},
              {0, static_cast<std::int16_t>(b), Spin::kUp, false},
              {0, static_cast<std::int16_t>(c), Spin::kUp, false},
              {0, static_cast<std::int16_t>(d), Spin::kUp, false}));
        }
      }
    }
  }
  return out;
}

int report_and_exit_code(const SwapSchedule& schedule, const std::vector<Quadruple>& requirements,
                         const std::string& out_dir, const std::string& name, bool with_trace) {
  const VerificationReport report = verify_schedule(schedule, requirements);
  fs::create_directories(out_dir);
  write_schedule_text(out_dir + "/" + name + ".swap", schedule);
  write_schedule_json(out_dir + "/" + name + ".json", schedule, with_trace);

  nlohmann::json j;
  j["schema_version"] = 1;
  j["required"] = report.required;
  j["covered"] = report.covered;
  j["missing"] = report.missing.size();
  j["duplicate_acquaintances"] = report.duplicate_acquaintances;
  j["distinct_four_sets"] = report.distinct_four_sets;
  j["depth"] = report.depth;
  j["swap_layers"] = report.swap_layers;
  std::ofstream rep(out_dir + "/" + name + ".report.json");
  rep << j.dump(2) << "\n";

  std::cout << name << ": width=" << schedule.width << " depth=" << report.depth
            << " covered=" << report.covered << "/" << report.required;
  if (!report.missing.empty()) std::cout << " MISSING=" << report.missing.size();
  std::cout << "\n";
  return report.missing.empty() ? kExitOk : kExitVerification;
}

int cmd_swapnet(const std::string& kind, int n, int n_blocks, int n_kappa,
                const std::string& parts_csv, const std::string& out_dir,
                const std::string& verify_file, bool with_trace) {
  if (!verify_file.empty()) {
    const SwapSchedule schedule = read_schedule_text(verify_file);
    std::vector<int> sizes(static_cast<std::size_t>(n_blocks), n_kappa);
    const auto requirements = required_quadruples(sizes);
    const VerificationReport report = verify_schedule(schedule, requirements);
    std::cout << "verify " << verify_file << ": covered=" << report.covered << "/"
              << report.required << " depth=" << report.depth << "\n";
    if (!report.missing.empty()) {
      std::cout << "missing (first 10):\n";
      for (std::size_t i = 0; i < std::min<std::size_t>(10, report.missing.size()); ++i) {
        for (const auto& l : report.missing[i]) std::cout << " " << orbital_label_to_string(l);
        std::cout << "\n";
      }
      return kExitVerification;
    }
    return kExitOk;
  }

  if (kind == "linear") {
    const SwapSchedule schedule = linear_swap_network(n);
    // Pair coverage: every 2-subset must appear inside some acquaint range.
    std::set<std::pair<int, int>> pairs;
    std::vector<OrbitalLabel> map = schedule.initial_mapping;
    for (const auto& layer : schedule.layers) {
      for (const auto& gate : layer) {
        if (gate.kind == Gate::Kind::kAcquaint) {
          for (int x = gate.a; x < gate.b; ++x) {
            for (int y = x + 1; y < gate.b; ++y) {
              const int ix = map[static_cast<std::size_t>(x)].index;
              const int iy = map[static_cast<std::size_t>(y)].index;
              pairs.insert({std::min(ix, iy), std::max(ix, iy)});
            }
          }
        }
      }
      for (const auto& gate : layer) {
        if (gate.kind == Gate::Kind::kFswap) {
          std::swap(map[static_cast<std::size_t>(gate.a)],
                    map[static_cast<std::size_t>(gate.a + 1)]);
        }
      }
    }
    const std::size_t expected = static_cast<std::size_t>(n) * (n - 1) / 2;
    const int code = report_and_exit_code(schedule, {}, out_dir, "linear", with_trace);
    std::cout << "pairs covered: " << pairs.size() << "/" << expected << "\n";
    if (pairs.size() != expected) return kExitVerification;
    return code;
  }
  if (kind == "k4") {
    const SwapSchedule schedule = k4_complete_network(n);
    return report_and_exit_code(schedule, all_four_subsets(n), out_dir, "k4", with_trace);
  }
  if (kind == "pswap") {
    std::vector<int> parts;
    std::istringstream in(parts_csv);
    std::string item;
    while (std::getline(in, item, ',')) parts.push_back(std::stoi(item));
    const SwapSchedule schedule = p_swap_network(parts);
    return report_and_exit_code(schedule, {}, out_dir, "pswap", with_trace);
  }
  if (kind == "double-bipartite") {
    const SwapSchedule schedule = double_bipartite_network(n, n);
    std::vector<Quadruple> requirements;
    for (int a = 0; a < n; ++a) {
      for (int b = a + 1; b < n; ++b) {
        for (int c = 0; c < n; ++c) {
          for (int d = c + 1; d < n; ++d) {
            requirements.push_back(make_quadruple(
                {0, static_cast<std::int16_t>(a), Spin::kUp, false},
                {0, static_cast<std::int16_t>(b), Spin::kUp, false},
                {1, static_cast<std::int16_t>(c), Spin::kUp, false},
                {1, static_cast<std::int16_t>(d), Spin::kUp, false}));
          }
        }
      }
    }
    return report_and_exit_code(schedule, requirements, out_dir, "double_bipartite", with_trace);
  }
  if (kind == "balanced") {
    const SwapSchedule schedule = balanced_double_bipartite_network(n_kappa, n_kappa);
    return report_and_exit_code(schedule, {}, out_dir, "balanced", with_trace);
  }
  if (kind == "block-diagonal") {
    const StrategyResult result = block_diagonal_strategy(n_blocks, n_kappa);
    std::vector<int> sizes(static_cast<std::size_t>(n_blocks), n_kappa);
    for (const auto& [stage, depth] : result.stage_depths) {
      std::cout << "stage " << stage << ": depth " << depth << "\n";
    }
    return report_and_exit_code(result.schedule, required_quadruples(sizes), out_dir,
                                "block_diagonal", with_trace);
  }
  std::cerr << "unknown swap network kind: " << kind << "\n";
  return kExitUsage;
}

int cmd_lowrank(const std::string& manifest, int tau_index, double outer_tol, double inner_tol) {
  const LowrankReport report = run_lowrank(manifest, tau_index, outer_tol, inner_tol);
  std::cout << "wrote " << report.csv_path << " and " << report.json_path << " ("
            << report.n_pairs << " pairs, max reconstruction error "
            << format_double(report.max_reconstruction_error) << ")\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"block-compressed electronic-structure Hamiltonians and swap schedules"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  auto* chain = app.add_subcommand("chain", "build one chain and write its artifact set");
  chain->add_option("--config", config_path, "configuration file")->required();
  chain->add_option("--out", out_dir, "override the output directory");

  std::string x_config, x_out;
  std::vector<std::string> x_manifests;
  int x_threads = 0;
  auto* crossover =
      app.add_subcommand("crossover", "size sweep with scaling fits and crossover detection");
  crossover->add_option("--config", x_config, "configuration file with a [sweep] section");
  crossover->add_option("--manifests", x_manifests, "existing per-size manifest.json files");
  crossover->add_option("--out", x_out, "override the output directory");
  crossover->add_option("--threads", x_threads, "override the worker count");

  std::string s_kind = "linear", s_parts = "2,2", s_out = "swapnet", s_verify;
  int s_n = 6, s_blocks = 2, s_nk = 2;
  bool s_trace = false;
  auto* swapnet = app.add_subcommand("swapnet", "generate and verify acquaintance schedules");
  swapnet->add_option("--kind", s_kind,
                      "linear | k4 | pswap | double-bipartite | balanced | block-diagonal");
  swapnet->add_option("-n,--size", s_n, "orbital count (linear, k4, double-bipartite)");
  swapnet->add_option("--blocks", s_blocks, "block count (block-diagonal, verify)");
  swapnet->add_option("--nk", s_nk, "functions per block (balanced, block-diagonal, verify)");
  swapnet->add_option("--parts", s_parts, "comma part sizes (pswap)");
  swapnet->add_option("--out", s_out, "output directory");
  swapnet->add_option("--verify-file", s_verify, "verify an existing schedule file");
  swapnet->add_flag("--trace", s_trace, "include the mapping trace in the JSON output");

  std::string l_manifest;
  int l_tau = 0;
  double l_outer = 1e-8, l_inner = 1e-10;
  auto* lowrank = app.add_subcommand("lowrank", "factorize block pairs of a built basis");
  lowrank->add_option("--manifest", l_manifest, "chain manifest.json")->required();
  lowrank->add_option("--tau-index", l_tau, "which tolerance in the dg list");
  lowrank->add_option("--outer-tol", l_outer, "residual trace stop for the outer factorization");
  lowrank->add_option("--inner-tol", l_inner, "eigenvalue cut for the inner factorization");

  try {
    app.parse(argc, argv);
    if (chain->parsed()) return cmd_chain(config_path, out_dir);
    if (crossover->parsed()) {
      if (x_config.empty() && x_manifests.empty()) {
        std::cerr << "crossover needs --config or --manifests\n";
        return kExitUsage;
      }
      return cmd_crossover(x_config, x_manifests, x_out, x_threads);
    }
    if (swapnet->parsed()) {
      return cmd_swapnet(s_kind, s_n, s_blocks, s_nk, s_parts, s_out, s_verify, s_trace);
    }
    if (lowrank->parsed()) return cmd_lowrank(l_manifest, l_tau, l_outer, l_inner);
    return kExitUsage;
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  } catch (const ConvergenceError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}
