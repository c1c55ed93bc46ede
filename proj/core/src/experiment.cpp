#include <dgblock/experiment.hpp>

#include <dgblock/io.hpp>
#include <dgblock/lowrank.hpp>

#include <json.hpp>

#include <atomic>
#include <cmath>
#include <exception>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <numeric>
#include <sstream>
#include <thread>

namespace dgblock {

namespace fs = std::filesystem;
using nlohmann::json;

void parallel_for(int n_tasks, int threads, const std::function<void(int)>& task) {
  threads = std::max(1, std::min(threads, n_tasks));
  if (threads == 1) {
    for (int i = 0; i < n_tasks; ++i) task(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  for (int w = 0; w < threads; ++w) {
    pool.emplace_back([&] {
      while (true) {
        const int i = next.fetch_add(1);
        if (i >= n_tasks) return;
        try {
          task(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!first_error) first_error = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

namespace {

NaturalOrbitalRule parse_keep_rule(const std::string& keep, int fallback_count) {
  if (keep.empty()) return NaturalOrbitalRule::keep_count(fallback_count);
  if (keep.rfind("count:", 0) == 0) {
    return NaturalOrbitalRule::keep_count(std::stoi(keep.substr(6)));
  }
  if (keep.rfind("occ:", 0) == 0) {
    return NaturalOrbitalRule::keep_occupation(std::stod(keep.substr(4)));
  }
  throw Error("keep rule must be 'count:N' or 'occ:X'");
}

Partition make_partition(const ExperimentConfig& config, const Grid& grid,
                         const Geometry& geometry) {
  if (config.partition == "atoms") return partition_atom_centered(grid, geometry);
  if (config.partition.rfind("uniform:", 0) == 0) {
    const int n_blocks = std::stoi(config.partition.substr(8));
    return partition_uniform(grid, n_blocks, grid.dimension - 1);
  }
  throw Error("partition must be 'atoms' or 'uniform:N'");
}

}  // namespace

BuiltSystem build_chain_system(const ExperimentConfig& config, int atoms_override) {
  BuiltSystem built;
  Geometry geometry;
  if (!config.geometry_file.empty()) {
    geometry = read_geometry_file(config.geometry_file, config.softening);
  } else {
    const int atoms = atoms_override > 0 ? atoms_override : config.atoms;
    geometry = make_chain(atoms, config.bond, config.softening);
  }
  const Grid grid = build_grid(geometry, config.spacing, config.padding);
  const KineticScheme scheme = config.kinetic == "sinc" ? KineticScheme::kSpectralSinc
                                                        : KineticScheme::kFiniteDifference2;
  built.system = assemble_primitive(grid, geometry, scheme, config.softening, config.self_term);

  std::vector<Shell> shells;
  for (std::size_t a = 0; a < geometry.atoms.size(); ++a) {
    for (double zeta : config.shells) {
      shells.push_back({static_cast<int>(a), zeta, AngularTag::kS});
    }
  }
  const Matrix raw = sample_gaussians(grid, geometry, shells);
  const OrbitalSet gauss = lowdin_orthonormalize(raw);

  int electrons = config.electrons;
  if (electrons < 0) {
    double total = 0;
    for (const auto& atom : geometry.atoms) total += atom.charge;
    electrons = static_cast<int>(std::lround(total));
  }
  built.n_electrons = electrons;

  if (config.scf == "none") {
    built.active = gauss;
  } else {
    ScfOptions options;
    options.kind = config.scf == "uhf" ? ScfKind::kUnrestricted : ScfKind::kRestricted;
    const ScfResult scf = scf_mean_field(built.system, electrons, options);
    DensityMatrix density = scf.density;
    if (config.hybrid_alpha > 0.0) {
      density = hybrid_density(density, span_projector(gauss), config.hybrid_alpha);
    }
    const auto rule = parse_keep_rule(config.keep, gauss.count());
    built.active = natural_orbitals(density, rule);
    built.scf_density = density;
  }

  built.active_h = project_active_hamiltonian(built.system, built.active);
  built.partition = make_partition(config, grid, geometry);
  built.taus = config.taus;
  const TruncationMode mode = config.tau_mode == "absolute" ? TruncationMode::kAbsolute
                                                            : TruncationMode::kRelative;
  for (double tau : config.taus) {
    CompressOptions options;
    options.tau = tau;
    options.mode = mode;
    DGBasis dg = compress(built.active, built.partition, options);
    built.dg_one.push_back(transform_onebody(built.system, dg));
    built.dg_two.push_back(transform_twobody(built.system, dg));
    built.bases.push_back(std::move(dg));
  }
  return built;
}

std::vector<CostReport> compute_metrics(const BuiltSystem& built, double cutoff) {
  std::vector<CostReport> out;
  {
    CostReport primitive;
    primitive.representation = "primitive";
    primitive.n_functions = built.system.grid.num_points;
    primitive.nnz_two_body = count_nonzero(built.system.v_p, cutoff);
    // Every primitive two-body term is a number term, so the coefficient
    // 1-norm under the number-term omission is identically zero.
    primitive.lambda = 0.0;
    out.push_back(std::move(primitive));
  }
  {
    CostReport active;
    active.representation = "active";
    active.n_functions = built.active.count();
    active.nnz_two_body = count_nonzero(built.active_h.v_a, cutoff);
    active.lambda = lambda_metric(built.active_h.v_a, true, TwoBodyLayout::kOperatorSlots);
    out.push_back(std::move(active));
  }
  for (std::size_t t = 0; t < built.bases.size(); ++t) {
    CostReport dg;
    std::ostringstream name;
    name << "dg:" << format_double(built.taus[t]);
    dg.representation = name.str();
    dg.n_functions = built.bases[t].total_functions;
    dg.nnz_two_body = count_nonzero(built.dg_two[t], cutoff);
    dg.lambda = lambda_metric(built.dg_two[t], true);
    dg.n_kappa = built.bases[t].n_kappa;
    dg.mean_n_kappa = built.bases[t].mean_kept();
    out.push_back(std::move(dg));
  }
  return out;
}

namespace {

json metrics_to_json(const std::vector<CostReport>& metrics) {
  json arr = json::array();
  for (const auto& m : metrics) {
    json j;
    j["representation"] = m.representation;
    j["n_functions"] = m.n_functions;
    j["nnz_two_body"] = m.nnz_two_body;
    j["lambda"] = m.lambda;
    if (!m.n_kappa.empty()) {
      j["n_kappa"] = m.n_kappa;
      j["mean_n_kappa"] = m.mean_n_kappa;
    }
    arr.push_back(std::move(j));
  }
  return arr;
}

std::vector<CostReport> metrics_from_json(const json& arr) {
  std::vector<CostReport> out;
  for (const auto& j : arr) {
    CostReport m;
    m.representation = j.at("representation").get<std::string>();
    m.n_functions = j.at("n_functions").get<int>();
    m.nnz_two_body = j.at("nnz_two_body").get<std::size_t>();
    m.lambda = j.at("lambda").get<double>();
    if (j.contains("n_kappa")) {
      m.n_kappa = j.at("n_kappa").get<std::vector<int>>();
      m.mean_n_kappa = j.at("mean_n_kappa").get<double>();
    }
    out.push_back(std::move(m));
  }
  return out;
}

// Canonical config text with the per-size fields masked, used to detect
// incompatible sweep members.
std::string config_family_key(const ExperimentConfig& config) {
  ExperimentConfig family = config;
  family.atoms = 0;
  family.threads = 1;
  family.out_dir.clear();
  return canonical_config_text(family);
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open for writing: " + path);
  out << content;
}

json system_to_json(const BuiltSystem& built, const ExperimentConfig& config) {
  const auto& grid = built.system.grid;
  const auto& geometry = built.system.geometry;
  json j;
  j["schema_version"] = 1;
  j["grid"] = {{"dimension", grid.dimension},
               {"extents", {grid.extents[0], grid.extents[1], grid.extents[2]}},
               {"spacing", grid.spacing[0]},
               {"origin", {grid.origin[0], grid.origin[1], grid.origin[2]}},
               {"periodic", grid.periodic},
               {"num_points", grid.num_points}};
  json atoms = json::array();
  for (const auto& atom : geometry.atoms) {
    atoms.push_back({{"charge", atom.charge},
                     {"position", {atom.position[0], atom.position[1], atom.position[2]}}});
  }
  j["geometry"] = {{"dimension", geometry.dimension},
                   {"atoms", atoms},
                   {"softening", geometry.softening},
                   {"nuclear_repulsion", geometry.nuclear_repulsion}};
  j["kinetic"] = config.kinetic;
  j["self_term"] = config.self_term;
  j["n_electrons"] = built.n_electrons;
  j["active_functions"] = built.active.count();
  return j;
}

json basis_to_json(const DGBasis& dg, double tau, const std::string& mode,
                   const BlockTwoBody& two, double cutoff) {
  json j;
  j["schema_version"] = 1;
  j["tau"] = tau;
  j["mode"] = mode;
  j["n_blocks"] = dg.partition.count();
  j["strategy"] = dg.partition.strategy;
  json blocks = json::array();
  for (int b = 0; b < dg.partition.count(); ++b) {
    const auto bu = static_cast<std::size_t>(b);
    blocks.push_back({{"points", dg.partition.blocks[bu].size()},
                      {"kept", dg.n_kappa[bu]},
                      {"first_index", dg.partition.blocks[bu].front()},
                      {"discarded", dg.discarded_values[bu].size()}});
  }
  j["blocks"] = blocks;
  j["total_functions"] = dg.total_functions;
  j["mean_kept"] = dg.mean_kept();
  json pair_nnz = json::array();
  for (const auto& [key, tensor] : two.pairs()) {
    std::size_t nnz = 0;
    for (double x : tensor.data()) {
      if (std::abs(x) > cutoff) ++nnz;
    }
    pair_nnz.push_back({{"block_a", key.first},
                        {"block_b", key.second},
                        {"stored", tensor.size()},
                        {"nnz", nnz}});
  }
  j["pair_nnz"] = pair_nnz;
  return j;
}

}  // namespace

ChainOutput run_chain(const ExperimentConfig& config, int atoms, const std::string& dir) {
  fs::create_directories(dir);
  ChainOutput out;
  out.dir = dir;
  out.atoms = atoms;

  ExperimentConfig effective = config;
  effective.atoms = atoms;
  effective.out_dir = dir;
  // The worker count is a runtime knob; outputs must not depend on it.
  effective.threads = 1;

  json manifest;
  manifest["schema_version"] = 1;
  manifest["config"] = canonical_config_text(effective);
  manifest["config_family"] = config_family_key(effective);
  manifest["atoms"] = atoms;
  json stages = json::array();

  auto persist_manifest = [&](const std::string& failed_stage) {
    manifest["stages"] = stages;
    if (!failed_stage.empty()) manifest["failed_stage"] = failed_stage;
    json artifacts = json::array();
    for (const auto& name : out.files) {
      const std::string path = dir + "/" + name;
      artifacts.push_back({{"name", name},
                           {"bytes", fs::file_size(path)},
                           {"fnv1a64", file_fnv1a64_hex(path)}});
    }
    manifest["artifacts"] = artifacts;
    write_text_file(dir + "/manifest.json", manifest.dump(2) + "\n");
  };

  std::string stage = "build";
  try {
    const BuiltSystem built = build_chain_system(effective, atoms);
    stages.push_back(stage);

    stage = "system";
    write_text_file(dir + "/system.json", system_to_json(built, effective).dump(2) + "\n");
    out.files.push_back("system.json");
    stages.push_back(stage);

    stage = "orbitals";
    write_matrix_file(dir + "/phi.dgb", built.active.phi);
    out.files.push_back("phi.dgb");
    if (built.scf_density) {
      write_matrix_file(dir + "/density.dgb", built.scf_density->d);
      out.files.push_back("density.dgb");
    }
    stages.push_back(stage);

    stage = "active-integrals";
    write_integral_file(dir + "/active.ints", built.active_h.h_a, built.active_h.v_a,
                        built.active_h.core_energy, built.n_electrons, config.cutoff);
    out.files.push_back("active.ints");
    stages.push_back(stage);

    for (std::size_t t = 0; t < built.bases.size(); ++t) {
      std::ostringstream base;
      base << "dg_t" << t;
      stage = base.str();
      write_basis_file(dir + "/" + base.str() + ".dgb", built.bases[t]);
      out.files.push_back(base.str() + ".dgb");
      write_text_file(dir + "/" + base.str() + ".json",
                      basis_to_json(built.bases[t], built.taus[t], config.tau_mode,
                                    built.dg_two[t], config.cutoff)
                              .dump(2) +
                          "\n");
      out.files.push_back(base.str() + ".json");

      // Sparse expansion keeps the integral file proportional to the stored
      // block entries.
      const SparseFourIndex full = expand_to_full(built.dg_two[t]);
      std::ofstream ints(dir + "/" + base.str() + ".ints");
      if (!ints) throw Error("cannot open for writing: " + dir + "/" + base.str() + ".ints");
      const int nd = built.bases[t].total_functions;
      ints << "&FCI NORB=" << nd << " NELEC=" << built.n_electrons << " MS2=0 ORDER=PQRS /\n";
      char buf[128];
      for (const auto& e : full.entries) {
        if (std::abs(e.value) <= config.cutoff) continue;
        std::snprintf(buf, sizeof(buf), "%.16e %d %d %d %d\n", e.value, e.p + 1, e.q + 1,
                      e.r + 1, e.s + 1);
        ints << buf;
      }
      const Matrix& hd = built.dg_one[t].h_d;
      for (int p = 0; p < nd; ++p) {
        for (int q = 0; q < nd; ++q) {
          if (std::abs(hd(p, q)) <= config.cutoff) continue;
          std::snprintf(buf, sizeof(buf), "%.16e %d %d 0 0\n", hd(p, q), p + 1, q + 1);
          ints << buf;
        }
      }
      std::snprintf(buf, sizeof(buf), "%.16e 0 0 0 0\n", built.active_h.core_energy);
      ints << buf;
      ints.close();
      out.files.push_back(base.str() + ".ints");
      stages.push_back(stage);
    }

    stage = "metrics";
    out.metrics = compute_metrics(built, config.cutoff);
    manifest["metrics"] = metrics_to_json(out.metrics);
    stages.push_back(stage);
  } catch (...) {
    persist_manifest(stage);
    throw;
  }
  persist_manifest("");
  return out;
}

namespace {

struct SweepData {
  std::vector<int> sizes;
  // representation -> series over sizes, for each metric
  std::map<std::string, std::vector<std::pair<double, double>>> nnz_series;
  std::map<std::string, std::vector<std::pair<double, double>>> lambda_series;
  std::vector<std::vector<CostReport>> per_size;
};

CrossoverReport assemble_crossover(const SweepData& data, const std::string& out_dir) {
  CrossoverReport report;
  fs::create_directories(out_dir);

  // CSV: one row per (size, representation).
  std::ostringstream csv;
  csv << "# sizes: atom count; nnz: integral count above cutoff; lambda: hartree\n";
  csv << "N,representation,n_functions,nnz,lambda,mean_n_kappa\n";
  for (std::size_t i = 0; i < data.sizes.size(); ++i) {
    for (const auto& m : data.per_size[i]) {
      csv << data.sizes[i] << "," << m.representation << "," << m.n_functions << ","
          << m.nnz_two_body << "," << format_double(m.lambda) << ","
          << format_double(m.mean_n_kappa) << "\n";
    }
  }
  report.csv_path = out_dir + "/crossover.csv";
  write_text_file(report.csv_path, csv.str());

  json j;
  j["schema_version"] = 1;
  json fits = json::object();
  json crossings = json::object();
  json series = json::object();

  auto fit_series = [&](const std::string& metric,
                        const std::map<std::string, std::vector<std::pair<double, double>>>& all) {
    for (const auto& [repr, pts] : all) {
      json s = json::array();
      for (const auto& [n, v] : pts) s.push_back({n, v});
      series[metric + "/" + repr] = s;
      bool positive = pts.size() >= 3;
      for (const auto& [n, v] : pts) positive = positive && v > 0.0;
      if (!positive) continue;
      const ScalingFit fit = fit_scaling(pts);
      report.fits[metric + "/" + repr] = fit;
      fits[metric + "/" + repr] = {{"exponent", fit.exponent},
                                   {"offset", fit.offset},
                                   {"amplitude", fit.amplitude},
                                   {"residual", fit.residual},
                                   {"range", fit.fit_range}};
    }
  };
  fit_series("nnz", data.nnz_series);
  fit_series("lambda", data.lambda_series);

  auto detect = [&](const std::string& metric,
                    const std::map<std::string, std::vector<std::pair<double, double>>>& all) {
    const auto active = all.find("active");
    if (active == all.end()) return;
    for (const auto& [repr, pts] : all) {
      if (repr.rfind("dg:", 0) != 0) continue;
      const auto cross = detect_crossover(active->second, pts);
      if (cross) {
        report.crossovers[metric + "/" + repr] = *cross;
        crossings[metric + "/" + repr] = *cross;
      } else {
        crossings[metric + "/" + repr] = nullptr;
      }
    }
  };
  detect("nnz", data.nnz_series);
  detect("lambda", data.lambda_series);

  j["fits"] = fits;
  j["crossovers"] = crossings;
  j["series"] = series;
  report.json_path = out_dir + "/crossover.json";
  write_text_file(report.json_path, j.dump(2) + "\n");
  return report;
}

SweepData sweep_from_metrics(const std::vector<int>& sizes,
                             std::vector<std::vector<CostReport>> per_size) {
  SweepData data;
  data.sizes = sizes;
  data.per_size = std::move(per_size);
  for (std::size_t i = 0; i < data.sizes.size(); ++i) {
    for (const auto& m : data.per_size[i]) {
      const double n = static_cast<double>(data.sizes[i]);
      data.nnz_series[m.representation].emplace_back(n, static_cast<double>(m.nnz_two_body));
      data.lambda_series[m.representation].emplace_back(n, m.lambda);
    }
  }
  return data;
}

}  // namespace

CrossoverReport run_crossover(const ExperimentConfig& config) {
  if (config.sweep_sizes.size() < 3) throw Error("sweep needs at least 3 sizes");
  std::vector<int> sizes = config.sweep_sizes;
  for (std::size_t i = 0; i + 1 < sizes.size(); ++i) {
    if (sizes[i + 1] <= sizes[i]) throw Error("sweep sizes must be increasing");
  }
  std::vector<std::vector<CostReport>> per_size(sizes.size());
  parallel_for(static_cast<int>(sizes.size()), config.threads, [&](int i) {
    const int n = sizes[static_cast<std::size_t>(i)];
    std::ostringstream dir;
    dir << config.out_dir << "/N" << n;
    per_size[static_cast<std::size_t>(i)] = run_chain(config, n, dir.str()).metrics;
  });
  return assemble_crossover(sweep_from_metrics(sizes, std::move(per_size)), config.out_dir);
}

CrossoverReport crossover_from_manifests(const std::vector<std::string>& manifest_paths,
                                         const std::string& out_dir) {
  if (manifest_paths.size() < 3) throw Error("sweep needs at least 3 sizes");
  std::vector<std::pair<int, std::vector<CostReport>>> rows;
  std::string family;
  for (const auto& path : manifest_paths) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open: " + path);
    json manifest = json::parse(in);
    const std::string this_family = manifest.at("config_family").get<std::string>();
    if (family.empty()) {
      family = this_family;
    } else if (family != this_family) {
      throw Error("inconsistent grids across sizes: " + path);
    }
    rows.emplace_back(manifest.at("atoms").get<int>(),
                      metrics_from_json(manifest.at("metrics")));
  }
  std::sort(rows.begin(), rows.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<int> sizes;
  std::vector<std::vector<CostReport>> per_size;
  for (auto& [n, metrics] : rows) {
    if (!sizes.empty() && sizes.back() == n) throw Error("duplicate sweep size");
    sizes.push_back(n);
    per_size.push_back(std::move(metrics));
  }
  return assemble_crossover(sweep_from_metrics(sizes, std::move(per_size)), out_dir);
}

LowrankReport run_lowrank(const std::string& manifest_path, int tau_index, double outer_tol,
                          double inner_tol) {
  std::ifstream in(manifest_path);
  if (!in) throw Error("cannot open: " + manifest_path);
  json manifest = json::parse(in);
  const ExperimentConfig config = parse_config_text(manifest.at("config").get<std::string>());
  const std::string dir = fs::path(manifest_path).parent_path().string();
  if (tau_index < 0 || tau_index >= static_cast<int>(config.taus.size())) {
    throw Error("tau index out of range");
  }

  std::ostringstream base;
  base << dir << "/dg_t" << tau_index;
  const std::string basis_path = base.str() + ".dgb";
  if (!fs::exists(basis_path)) throw Error("missing basis artifact: " + basis_path);

  // Rebuild the system deterministically from the config echo, reload the
  // stored basis, and reassemble the pair tensors.
  const BuiltSystem built = build_chain_system(config, config.atoms);
  const BasisFile file = read_basis_file(basis_path);
  DGBasis dg;
  dg.tau = config.taus[static_cast<std::size_t>(tau_index)];
  int next = 0;
  for (std::size_t b = 0; b < file.block_sizes.size(); ++b) {
    std::vector<int> block(static_cast<std::size_t>(file.block_sizes[b]));
    std::iota(block.begin(), block.end(), next);
    next += file.block_sizes[b];
    dg.partition.blocks.push_back(std::move(block));
    dg.u_blocks.push_back(file.u_blocks[b]);
    dg.singular_values.push_back(file.singular_values[b]);
    dg.discarded_values.emplace_back();
    dg.n_kappa.push_back(file.n_kappa[b]);
    dg.total_functions += file.n_kappa[b];
  }
  dg.partition.strategy = "loaded";
  if (next != built.system.grid.num_points) {
    throw Error("basis artifact does not match the rebuilt grid");
  }
  const BlockTwoBody two = transform_twobody(built.system, dg);

  LowrankReport report;
  std::ostringstream csv;
  csv << "# per block pair: ranks dimensionless, errors hartree (Frobenius)\n";
  csv << "block_a,block_b,n_a,n_b,outer_rank,sum_inner_rank,max_inner_rank,reconstruction_error\n";
  std::vector<BlockPairFactors> all;
  json pair_records = json::array();
  std::ofstream dump(dir + "/lowrank_factors.dgb", std::ios::binary);
  if (!dump) throw Error("cannot open for writing: " + dir + "/lowrank_factors.dgb");
  for (const auto& [key, tensor] : two.pairs()) {
    auto factors = factorize_pair(two, key.first, key.second, outer_tol, inner_tol);
    int sum_rho = 0, max_rho = 0;
    for (int rho : factors.inner_ranks) {
      sum_rho += rho;
      max_rho = std::max(max_rho, rho);
    }
    const double err = pair_reconstruction_error(two, factors);
    report.max_reconstruction_error = std::max(report.max_reconstruction_error, err);
    csv << key.first << "," << key.second << "," << factors.n_a << "," << factors.n_b << ","
        << factors.outer_rank << "," << sum_rho << "," << max_rho << ","
        << format_double(err) << "\n";
    pair_records.push_back({{"block_a", key.first},
                            {"block_b", key.second},
                            {"outer_rank", factors.outer_rank},
                            {"inner_ranks", factors.inner_ranks},
                            {"reconstruction_error", err}});
    // Factor dump: one header matrix (pair metadata) followed by the
    // union-space factors, all in the binary matrix container.
    Matrix header(1, 5);
    header << key.first, key.second, factors.n_a, factors.n_b,
        static_cast<double>(factors.outer_rank);
    write_matrix_record(dump, header);
    for (const auto& g : factors.outer_factors) write_matrix_record(dump, g);
    all.push_back(std::move(factors));
    ++report.n_pairs;
  }
  dump.close();
  report.csv_path = dir + "/lowrank.csv";
  write_text_file(report.csv_path, csv.str());

  const auto trotter = trotter_depth_estimate(all, two.n_blocks());
  json j;
  j["schema_version"] = 1;
  j["tau_index"] = tau_index;
  j["outer_tol"] = outer_tol;
  j["inner_tol"] = inner_tol;
  j["pairs"] = pair_records;
  j["per_pair_depth"] = trotter.per_pair_depth;
  j["max_pair_depth"] = trotter.max_pair_depth;
  j["n_blocks"] = trotter.n_blocks;
  j["total_depth"] = trotter.total_depth;
  j["max_reconstruction_error"] = report.max_reconstruction_error;
  report.json_path = dir + "/lowrank.json";
  write_text_file(report.json_path, j.dump(2) + "\n");
  return report;
}

}  // namespace dgblock
