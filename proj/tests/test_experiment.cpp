#include <doctest.h>

#include <dgblock/experiment.hpp>
#include <dgblock/io.hpp>
#include <dgblock/oracle.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace dgblock;
namespace fs = std::filesystem;

namespace {

ExperimentConfig small_config(const std::string& dir) {
  ExperimentConfig config;
  config.atoms = 2;
  config.bond = 1.8;
  config.spacing = 0.45;
  config.padding = 1.8;
  config.shells = {0.5, 1.5};
  config.taus = {1e-2};
  config.partition = "atoms";
  config.out_dir = dir;
  return config;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& name) : path(fs::temp_directory_path() / name) {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

}  // namespace

TEST_CASE("chain artifacts") {
  TempDir tmp("dgblock_exp_chain");
  const auto config = small_config(tmp.path.string());
  const auto out = run_chain(config, config.atoms, config.out_dir);

  SUBCASE("single-tolerance run writes six artifacts plus the manifest") {
    CHECK(out.files.size() == 6);
    for (const auto& name :
         {"system.json", "phi.dgb", "active.ints", "dg_t0.dgb", "dg_t0.json", "dg_t0.ints"}) {
      CHECK(fs::exists(tmp.path / name));
    }
    CHECK(fs::exists(tmp.path / "manifest.json"));
  }
  SUBCASE("metrics cover all representations") {
    REQUIRE(out.metrics.size() == 3);
    CHECK(out.metrics[0].representation == "primitive");
    CHECK(out.metrics[1].representation == "active");
    CHECK(out.metrics[2].representation.rfind("dg:", 0) == 0);
    CHECK(out.metrics[1].n_functions == 4);
    CHECK(out.metrics[1].nnz_two_body > 0);
    CHECK(out.metrics[2].mean_n_kappa > 0.0);
  }
  SUBCASE("reruns are byte-identical") {
    std::map<std::string, std::string> first;
    for (const auto& entry : fs::directory_iterator(tmp.path)) {
      first[entry.path().filename().string()] = slurp(entry.path());
    }
    run_chain(config, config.atoms, config.out_dir);
    for (const auto& entry : fs::directory_iterator(tmp.path)) {
      CHECK(first.at(entry.path().filename().string()) == slurp(entry.path()));
    }
  }
  SUBCASE("the integral artifact feeds the exact-diagonalization reader") {
    const auto file = read_integral_file((tmp.path / "active.ints").string());
    CHECK(file.n_orbitals == 4);
    const double energy = fci_ground_energy(file.h, file.v, file.core, 2);
    CHECK(std::isfinite(energy));
    CHECK(energy < file.core);  // binding
  }
}

TEST_CASE("mean-field chains export the density and natural orbitals") {
  TempDir tmp("dgblock_exp_scf");
  auto config = small_config(tmp.path.string());
  config.scf = "uhf";
  config.hybrid_alpha = 0.01;
  config.keep = "count:3";
  const auto out = run_chain(config, config.atoms, config.out_dir);
  CHECK(fs::exists(tmp.path / "density.dgb"));
  const Matrix density = read_matrix_file((tmp.path / "density.dgb").string());
  // Spin-summed electrons plus the weighted span projector.
  CHECK(density.trace() == doctest::Approx(2.0 + 0.01 * 4.0).epsilon(1e-10));
  const Matrix phi = read_matrix_file((tmp.path / "phi.dgb").string());
  CHECK(phi.cols() == 3);
  CHECK((phi.transpose() * phi - Matrix::Identity(3, 3)).cwiseAbs().maxCoeff() < 1e-10);
  CHECK(out.metrics[1].n_functions == 3);
}

TEST_CASE("chain failure persists a partial manifest") {
  TempDir tmp("dgblock_exp_fail");
  auto config = small_config(tmp.path.string());
  config.partition = "uniform:999";  // more blocks than grid points
  CHECK_THROWS_AS(run_chain(config, config.atoms, config.out_dir), Error);
  REQUIRE(fs::exists(tmp.path / "manifest.json"));
  const std::string manifest = slurp(tmp.path / "manifest.json");
  CHECK(manifest.find("failed_stage") != std::string::npos);
}

TEST_CASE("crossover sweep") {
  TempDir tmp("dgblock_exp_sweep");
  auto config = small_config(tmp.path.string());
  config.sweep_sizes = {2, 3, 4, 5};
  config.threads = 1;
  const auto report = run_crossover(config);

  SUBCASE("outputs exist with fits for every representation") {
    CHECK(fs::exists(report.csv_path));
    CHECK(fs::exists(report.json_path));
    CHECK(report.fits.count("nnz/active") == 1);
    CHECK(report.fits.count("nnz/dg:0.01") == 1);
    CHECK(report.fits.count("lambda/active") == 1);
    for (const auto& [key, fit] : report.fits) {
      CHECK(std::isfinite(fit.exponent));
      CHECK(std::isfinite(fit.residual));
    }
  }
  SUBCASE("per-size manifests are consumable") {
    std::vector<std::string> manifests;
    for (int n : config.sweep_sizes) {
      manifests.push_back((tmp.path / ("N" + std::to_string(n)) / "manifest.json").string());
      CHECK(fs::exists(manifests.back()));
    }
    TempDir tmp2("dgblock_exp_sweep2");
    const auto again = crossover_from_manifests(manifests, tmp2.path.string());
    CHECK(slurp(again.csv_path) == slurp(report.csv_path));
  }
  SUBCASE("worker count does not change the bytes") {
    // Snapshot the single-worker outputs, rerun into the same directory with
    // eight workers, and require every file byte-identical.
    std::map<std::string, std::string> snapshot;
    for (const auto& entry : fs::recursive_directory_iterator(tmp.path)) {
      if (entry.is_regular_file()) {
        snapshot[fs::relative(entry.path(), tmp.path).string()] = slurp(entry.path());
      }
    }
    auto config8 = config;
    config8.threads = 8;
    run_crossover(config8);
    std::size_t compared = 0;
    for (const auto& entry : fs::recursive_directory_iterator(tmp.path)) {
      if (entry.is_regular_file()) {
        const auto rel = fs::relative(entry.path(), tmp.path).string();
        CHECK(snapshot.at(rel) == slurp(entry.path()));
        ++compared;
      }
    }
    CHECK(compared == snapshot.size());
  }
  SUBCASE("mixed configurations are rejected") {
    auto other = config;
    TempDir tmp3("dgblock_exp_other");
    other.out_dir = tmp3.path.string();
    other.bond = 2.4;
    run_chain(other, 3, other.out_dir + "/N3");
    const std::vector<std::string> mixed = {
        (tmp.path / "N2" / "manifest.json").string(),
        (tmp.path / "N3" / "manifest.json").string(),
        (tmp3.path / "N3" / "manifest.json").string(),
    };
    TempDir tmp4("dgblock_exp_mixed");
    CHECK_THROWS_AS(crossover_from_manifests(mixed, tmp4.path.string()), Error);
  }
}

TEST_CASE("lowrank report from a manifest") {
  TempDir tmp("dgblock_exp_lowrank");
  auto config = small_config(tmp.path.string());
  config.atoms = 4;
  run_chain(config, config.atoms, config.out_dir);
  const auto report =
      run_lowrank((tmp.path / "manifest.json").string(), 0, 1e-8, 1e-10);
  CHECK(fs::exists(report.csv_path));
  CHECK(fs::exists(report.json_path));
  CHECK(report.n_pairs == 10);  // 4 blocks: 4 diagonal + 6 cross pairs
  CHECK(report.max_reconstruction_error < 1e-6);

  SUBCASE("the factor dump holds readable union-space records") {
    std::ifstream dump(tmp.path / "lowrank_factors.dgb", std::ios::binary);
    REQUIRE(dump.good());
    int pairs_seen = 0;
    while (dump.peek() != EOF) {
      const Matrix header = read_matrix_record(dump);
      REQUIRE(header.rows() == 1);
      REQUIRE(header.cols() == 5);
      const int n_a = static_cast<int>(header(0, 2));
      const int n_b = static_cast<int>(header(0, 3));
      const int outer = static_cast<int>(header(0, 4));
      for (int l = 0; l < outer; ++l) {
        const Matrix g = read_matrix_record(dump);
        CHECK(g.rows() == n_a + n_b);
        CHECK((g - g.transpose()).cwiseAbs().maxCoeff() == 0.0);
      }
      ++pairs_seen;
    }
    CHECK(pairs_seen == 10);
  }

  SUBCASE("tightening the outer tolerance never increases the error") {
    double previous = 1e300;
    for (double tol : {1e-2, 1e-5, 1e-8}) {
      const auto r = run_lowrank((tmp.path / "manifest.json").string(), 0, tol, 0.0);
      CHECK(r.max_reconstruction_error <= previous + 1e-12);
      previous = r.max_reconstruction_error;
    }
  }
  SUBCASE("missing artifacts are reported") {
    CHECK_THROWS_AS(run_lowrank((tmp.path / "manifest.json").string(), 3, 1e-8, 1e-10), Error);
  }
}
