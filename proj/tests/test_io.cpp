#include <doctest.h>

#include <dgblock/activespace.hpp>
#include <dgblock/config.hpp>
#include <dgblock/dgbasis.hpp>
#include <dgblock/io.hpp>
#include <dgblock/primitive.hpp>
#include <dgblock/swapnet.hpp>

#include <filesystem>
#include <fstream>
#include <random>

using namespace dgblock;
namespace fs = std::filesystem;

namespace {

fs::path temp_file(const std::string& name) {
  return fs::temp_directory_path() / ("dgblock_io_" + name);
}

}  // namespace

TEST_CASE("matrix container round trip") {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Matrix m(7, 5);
  for (int i = 0; i < m.size(); ++i) m.data()[i] = gauss(rng);
  const auto path = temp_file("matrix.dgb");
  write_matrix_file(path.string(), m);
  const Matrix back = read_matrix_file(path.string());
  CHECK((m - back).cwiseAbs().maxCoeff() == 0.0);
  // Header is exactly 16 bytes plus the payload.
  CHECK(fs::file_size(path) == 16 + 7 * 5 * sizeof(double));
  fs::remove(path);
}

TEST_CASE("matrix csv export") {
  Matrix m(2, 2);
  m << 1.5, -2.0, 0.25, 1e-17;
  const auto path = temp_file("matrix.csv");
  write_matrix_csv(path.string(), m, "entries in hartree");
  std::ifstream in(path);
  std::string line;
  std::getline(in, line);
  CHECK(line == "# entries in hartree");
  std::getline(in, line);
  CHECK(line == "row,c0,c1");
  std::getline(in, line);
  CHECK(line.rfind("0,1.5,-2", 0) == 0);
  fs::remove(path);
}

TEST_CASE("bad magic rejected") {
  const auto path = temp_file("bad.dgb");
  std::ofstream out(path, std::ios::binary);
  out << "NOPE garbage";
  out.close();
  CHECK_THROWS_AS(read_matrix_file(path.string()), Error);
  fs::remove(path);
}

TEST_CASE("basis container round trip") {
  const auto geometry = make_chain(3, 1.8, 1.0);
  const Grid grid = build_grid(geometry, 0.45, 1.8);
  const auto sys =
      assemble_primitive(grid, geometry, KineticScheme::kFiniteDifference2, 1.0, false);
  std::vector<Shell> shells;
  for (int a = 0; a < 3; ++a) shells.push_back({a, 0.8, AngularTag::kS});
  const auto orbitals = lowdin_orthonormalize(sample_gaussians(grid, geometry, shells));
  const auto part = partition_atom_centered(grid, geometry);
  CompressOptions options;
  options.tau = 1e-2;
  const auto dg = compress(orbitals, part, options);

  const auto path = temp_file("basis.dgbs");
  write_basis_file(path.string(), dg);
  const auto file = read_basis_file(path.string());
  REQUIRE(file.u_blocks.size() == dg.u_blocks.size());
  for (std::size_t b = 0; b < file.u_blocks.size(); ++b) {
    CHECK(file.block_sizes[b] == static_cast<int>(dg.partition.blocks[b].size()));
    CHECK(file.n_kappa[b] == dg.n_kappa[b]);
    CHECK((file.u_blocks[b] - dg.u_blocks[b]).cwiseAbs().maxCoeff() == 0.0);
    REQUIRE(file.singular_values[b].size() == dg.singular_values[b].size());
    for (std::size_t k = 0; k < file.singular_values[b].size(); ++k) {
      CHECK(file.singular_values[b][k] == dg.singular_values[b][k]);
    }
  }
  fs::remove(path);
}

TEST_CASE("geometry file") {
  SUBCASE("1d round trip") {
    const auto path = temp_file("geom1.txt");
    {
      std::ofstream out(path);
      out << "# comment line\n";
      out << "1.0 0.0\n";
      out << "1.0 1.7  # trailing comment\n";
    }
    const auto geometry = read_geometry_file(path.string(), 1.0);
    CHECK(geometry.dimension == 1);
    REQUIRE(geometry.atoms.size() == 2);
    CHECK(geometry.atoms[1].position[0] == doctest::Approx(1.7));
    const auto path2 = temp_file("geom1b.txt");
    write_geometry_file(path2.string(), geometry);
    const auto again = read_geometry_file(path2.string(), 1.0);
    CHECK(again.atoms[1].position[0] == doctest::Approx(1.7));
    CHECK(again.nuclear_repulsion == doctest::Approx(geometry.nuclear_repulsion));
    fs::remove(path);
    fs::remove(path2);
  }
  SUBCASE("3d detection and malformed lines") {
    const auto path = temp_file("geom3.txt");
    {
      std::ofstream out(path);
      out << "1.0 0.0 0.0 0.0\n1.0 0.0 0.0 2.0\n";
    }
    const auto geometry = read_geometry_file(path.string(), 1.0);
    CHECK(geometry.dimension == 3);
    fs::remove(path);
    const auto bad = temp_file("geom_bad.txt");
    {
      std::ofstream out(bad);
      out << "1.0 0.0 1.0\n";
    }
    CHECK_THROWS_AS(read_geometry_file(bad.string(), 1.0), Error);
    fs::remove(bad);
  }
}

TEST_CASE("schedule text round trip") {
  const auto strategies = block_diagonal_strategy(2, 2);
  const auto& schedule = strategies.schedule;
  const std::string text = schedule_to_text(schedule);
  const SwapSchedule back = schedule_from_text(text);
  CHECK(back.width == schedule.width);
  CHECK(back.initial_mapping == schedule.initial_mapping);
  REQUIRE(back.layers.size() == schedule.layers.size());
  for (std::size_t k = 0; k < back.layers.size(); ++k) {
    REQUIRE(back.layers[k].size() == schedule.layers[k].size());
    for (std::size_t g = 0; g < back.layers[k].size(); ++g) {
      CHECK(back.layers[k][g].kind == schedule.layers[k][g].kind);
      CHECK(back.layers[k][g].a == schedule.layers[k][g].a);
      CHECK(back.layers[k][g].b == schedule.layers[k][g].b);
      CHECK(back.layers[k][g].c == schedule.layers[k][g].c);
    }
  }
  CHECK(back.final_mapping == schedule.final_mapping);
  // The round-tripped schedule verifies identically.
  const auto requirements = required_quadruples({2, 2});
  CHECK(verify_schedule(back, requirements).complete());
}

TEST_CASE("schedule json contains the structure") {
  const auto schedule = linear_swap_network(3);
  const std::string json_text = schedule_to_json(schedule, true);
  CHECK(json_text.find("\"width\": 3") != std::string::npos);
  CHECK(json_text.find("mapping_trace") != std::string::npos);
  CHECK(json_text.find("fswap") != std::string::npos);
  const std::string no_trace = schedule_to_json(schedule, false);
  CHECK(no_trace.find("mapping_trace") == std::string::npos);
}

TEST_CASE("orbital label strings") {
  const OrbitalLabel label{3, 12, Spin::kDown, false};
  CHECK(orbital_label_to_string(label) == "3:12d");
  CHECK(orbital_label_from_string("3:12d") == label);
  const OrbitalLabel inert{0, 5, Spin::kUp, true};
  CHECK(orbital_label_to_string(inert) == "0:5u*");
  CHECK(orbital_label_from_string("0:5u*") == inert);
}

TEST_CASE("config parsing") {
  const std::string text = R"(
# experiment setup
[system]
atoms = 6
bond = 1.8
spacing = 0.45
padding = 3.6
kinetic = fd2
softening = 1.0
self_term = false
[active]
shells = 0.35,1.05
scf = none
[dg]
partition = atoms
tau = 1e-1,1e-2
tau_mode = relative
[metrics]
cutoff = 1e-6
[sweep]
sizes = 4,6,8
[output]
dir = out/test
threads = 2
seed = 7
)";
  const auto config = parse_config_text(text);
  CHECK(config.atoms == 6);
  CHECK(config.bond == doctest::Approx(1.8));
  CHECK(config.shells == std::vector<double>{0.35, 1.05});
  CHECK(config.taus == std::vector<double>{1e-1, 1e-2});
  CHECK(config.sweep_sizes == std::vector<int>{4, 6, 8});
  CHECK(config.threads == 2);
  CHECK(config.seed == 7);

  SUBCASE("canonical echo round-trips losslessly") {
    const std::string canonical = canonical_config_text(config);
    const auto again = parse_config_text(canonical);
    CHECK(canonical_config_text(again) == canonical);
    CHECK(again.atoms == config.atoms);
    CHECK(again.taus == config.taus);
    CHECK(again.out_dir == config.out_dir);
  }
  SUBCASE("unknown keys rejected") {
    CHECK_THROWS_AS(parse_config_text("[system]\nnope = 3\n"), Error);
  }
  SUBCASE("bad values rejected") {
    CHECK_THROWS_AS(parse_config_text("[system]\nspacing = -1\n"), Error);
    CHECK_THROWS_AS(parse_config_text("[system]\nkinetic = banana\n"), Error);
    CHECK_THROWS_AS(parse_config_text("[dg]\ntau = \n"), Error);
  }
}

TEST_CASE("content hash is stable") {
  const auto path = temp_file("hash.bin");
  {
    std::ofstream out(path, std::ios::binary);
    out << "fixed content";
  }
  CHECK(file_fnv1a64_hex(path.string()) == file_fnv1a64_hex(path.string()));
  const std::string h1 = file_fnv1a64_hex(path.string());
  {
    std::ofstream out(path, std::ios::binary);
    out << "fixed content!";
  }
  CHECK(file_fnv1a64_hex(path.string()) != h1);
  fs::remove(path);
}
