#include <doctest.h>

#include <dgblock/activespace.hpp>
#include <dgblock/dgbasis.hpp>
#include <dgblock/primitive.hpp>

#include <Eigen/Dense>

#include <numeric>
#include <random>

using namespace dgblock;

namespace {

Grid line_grid(int points, double spacing = 1.0) {
  Grid grid;
  grid.dimension = 1;
  grid.extents = {points, 1, 1};
  grid.spacing = {spacing, spacing, spacing};
  grid.origin = {0, 0, 0};
  grid.periodic = false;
  grid.num_points = points;
  return grid;
}

OrbitalSet random_orbitals(int rows, int cols, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Matrix raw(rows, cols);
  for (int i = 0; i < raw.size(); ++i) raw.data()[i] = gauss(rng);
  return lowdin_orthonormalize(raw);
}

}  // namespace

TEST_CASE("uniform partition") {
  SUBCASE("even split") {
    const auto part = partition_uniform(line_grid(12), 3, 0);
    REQUIRE(part.count() == 3);
    for (const auto& block : part.blocks) CHECK(block.size() == 4);
  }
  SUBCASE("remainder goes to the leading blocks") {
    const auto part = partition_uniform(line_grid(10), 3, 0);
    REQUIRE(part.count() == 3);
    CHECK(part.blocks[0].size() == 4);
    CHECK(part.blocks[1].size() == 3);
    CHECK(part.blocks[2].size() == 3);
  }
  SUBCASE("3d z-slabs are contiguous index ranges") {
    Grid grid;
    grid.dimension = 3;
    grid.extents = {4, 4, 8};
    grid.spacing = {1, 1, 1};
    grid.origin = {0, 0, 0};
    grid.num_points = 4 * 4 * 8;
    const auto part = partition_uniform(grid, 4, 2);
    REQUIRE(part.count() == 4);
    int expected_start = 0;
    for (const auto& block : part.blocks) {
      CHECK(block.size() == 32);
      CHECK(block.front() == expected_start);
      CHECK(block.back() == expected_start + 31);
      // All 32 indices share two z-planes.
      for (int idx : block) {
        const auto ijk = grid.point_index(idx);
        CHECK(ijk[2] >= grid.point_index(block.front())[2]);
        CHECK(ijk[2] <= grid.point_index(block.back())[2]);
      }
      expected_start += 32;
    }
    CHECK_THROWS_AS(partition_uniform(grid, 4, 0), Error);
  }
  SUBCASE("too many blocks rejected") {
    CHECK_THROWS_AS(partition_uniform(line_grid(3), 5, 0), Error);
  }
}

TEST_CASE("atom-centered partition") {
  SUBCASE("midpoint snapped to a grid plane, point on the cut goes left") {
    const auto geometry = make_geometry(1, {{1.0, {0.0, 0, 0}}, {1.0, {2.0, 0, 0}}}, 1.0);
    Grid grid = line_grid(9, 0.5);
    grid.origin = {-1.0, 0, 0};
    const auto part = partition_atom_centered(grid, geometry);
    REQUIRE(part.count() == 2);
    CHECK(part.blocks[0].size() == 5);
    CHECK(part.blocks[1].size() == 4);
  }
  SUBCASE("single atom keeps the whole grid") {
    const auto geometry = make_geometry(1, {{1.0, {0.5, 0, 0}}}, 1.0);
    const auto part = partition_atom_centered(line_grid(6, 0.25), geometry);
    REQUIRE(part.count() == 1);
    CHECK(part.blocks[0].size() == 6);
  }
  SUBCASE("equally spaced chain gives equal interior blocks") {
    const auto geometry = make_chain(4, 2.0, 1.0);
    const Grid grid = build_grid(geometry, 0.5, 2.0);
    const auto part = partition_atom_centered(grid, geometry);
    REQUIRE(part.count() == 4);
    CHECK(part.blocks[1].size() == part.blocks[2].size());
  }
  SUBCASE("atoms closer than one spacing are unresolvable") {
    const auto geometry = make_geometry(1, {{1.0, {0.0, 0, 0}}, {1.0, {0.3, 0, 0}}}, 1.0);
    Grid grid = line_grid(10, 0.5);
    grid.origin = {-2.0, 0, 0};
    CHECK_THROWS_WITH_AS(partition_atom_centered(grid, geometry), "unresolvable partition",
                         Error);
  }
}

TEST_CASE("compression") {
  SUBCASE("tau = 0 on a single block keeps the full rank") {
    const auto orbitals = random_orbitals(16, 4, 101);
    Partition part;
    part.blocks.push_back(std::vector<int>(16));
    std::iota(part.blocks[0].begin(), part.blocks[0].end(), 0);
    const auto dg = compress(orbitals, part, {});
    CHECK(dg.total_functions == 4);
    // Same span: the compressed projector reproduces the orbitals.
    CHECK(projection_residual_sq(dg, orbitals) < 1e-16);
  }
  SUBCASE("tau = 0 on any partition contains the orbital span") {
    const auto orbitals = random_orbitals(18, 5, 7);
    const auto part = partition_uniform(line_grid(18), 3, 0);
    const auto dg = compress(orbitals, part, {});
    CHECK(std::sqrt(projection_residual_sq(dg, orbitals)) < 1e-8);
  }
  SUBCASE("kept counts match a per-block dense SVD oracle") {
    const auto orbitals = random_orbitals(16, 4, 55);
    const auto part = partition_uniform(line_grid(16), 2, 0);
    CompressOptions options;
    options.tau = 1e-1;
    const auto dg = compress(orbitals, part, options);
    double sigma_max = 0.0;
    std::vector<Eigen::JacobiSVD<Matrix>> svds;
    for (int b = 0; b < 2; ++b) {
      Matrix sub(8, 4);
      for (int r = 0; r < 8; ++r) sub.row(r) = orbitals.phi.row(part.blocks[b][r]);
      svds.emplace_back(sub, Eigen::ComputeThinU);
      sigma_max = std::max(sigma_max, svds.back().singularValues()(0));
    }
    for (int b = 0; b < 2; ++b) {
      int expected = 0;
      for (int k = 0; k < svds[b].singularValues().size(); ++k) {
        if (svds[b].singularValues()(k) >= options.tau * sigma_max) ++expected;
      }
      CHECK(dg.n_kappa[static_cast<std::size_t>(b)] == expected);
    }
  }
  SUBCASE("absolute mode thresholds directly") {
    const auto orbitals = random_orbitals(12, 3, 9);
    const auto part = partition_uniform(line_grid(12), 2, 0);
    CompressOptions options;
    options.tau = 0.9;
    options.mode = TruncationMode::kAbsolute;
    const auto dg = compress(orbitals, part, options);
    for (std::size_t b = 0; b < 2; ++b) {
      // Values below the cut survive only through the n_min floor.
      if (dg.n_kappa[b] > options.n_min) {
        for (double s : dg.singular_values[b]) CHECK(s >= 0.9);
      }
    }
  }
  SUBCASE("clamping") {
    const auto orbitals = random_orbitals(12, 3, 13);
    const auto part = partition_uniform(line_grid(12), 2, 0);
    CompressOptions options;
    options.tau = 0.999;  // relative: would drop nearly everything
    options.n_min = 2;
    const auto dg = compress(orbitals, part, options);
    for (int n : dg.n_kappa) CHECK(n >= 2);
    options.n_min = 1;
    options.n_max = 1;
    options.tau = 0.0;
    const auto dg2 = compress(orbitals, part, options);
    for (int n : dg2.n_kappa) CHECK(n == 1);
  }
  SUBCASE("zero block content is an error") {
    OrbitalSet orbitals;
    orbitals.phi = Matrix::Zero(8, 2);
    orbitals.phi(0, 0) = 1.0;
    orbitals.phi(1, 1) = 1.0;  // support only in the first block
    orbitals.labels.assign(2, OrbitalKind::kCanonicalMo);
    const auto part = partition_uniform(line_grid(8), 2, 0);
    CHECK_THROWS_AS(compress(orbitals, part, {}), Error);
  }
}

TEST_CASE("block-diagonal matrix assembly") {
  const auto orbitals = random_orbitals(14, 4, 77);
  SUBCASE("single block returns U itself") {
    Partition part;
    part.blocks.push_back(std::vector<int>(14));
    std::iota(part.blocks[0].begin(), part.blocks[0].end(), 0);
    const auto dg = compress(orbitals, part, {});
    const Matrix u = dg_block_diagonal_matrix(dg);
    CHECK((u - dg.u_blocks[0]).cwiseAbs().maxCoeff() == 0.0);
  }
  SUBCASE("orthonormal columns and exact structural zeros") {
    const auto part = partition_uniform(line_grid(14), 3, 0);
    const auto dg = compress(orbitals, part, {});
    const Matrix u = dg_block_diagonal_matrix(dg);
    CHECK((u.transpose() * u - Matrix::Identity(dg.total_functions, dg.total_functions))
              .cwiseAbs()
              .maxCoeff() < 1e-10);
    std::size_t zeros = 0;
    for (int i = 0; i < u.rows(); ++i) {
      for (int j = 0; j < u.cols(); ++j) {
        if (u(i, j) == 0.0) ++zeros;
      }
    }
    std::size_t expected = static_cast<std::size_t>(u.rows()) * u.cols();
    for (int b = 0; b < part.count(); ++b) {
      expected -= part.blocks[static_cast<std::size_t>(b)].size() *
                  static_cast<std::size_t>(dg.n_kappa[static_cast<std::size_t>(b)]);
    }
    CHECK(zeros >= expected);  // structural zeros; entries inside blocks may vanish too
  }
}

TEST_CASE("truncation monotonicity, nesting and the residual identity") {
  const auto orbitals = random_orbitals(20, 5, 31);
  const auto part = partition_uniform(line_grid(20), 4, 0);
  std::vector<double> taus = {1e-3, 1e-2, 1e-1, 0.3};
  std::vector<DGBasis> bases;
  for (double tau : taus) {
    CompressOptions options;
    options.tau = tau;
    bases.push_back(compress(orbitals, part, options));
  }
  for (std::size_t t = 0; t + 1 < taus.size(); ++t) {
    for (int b = 0; b < part.count(); ++b) {
      // Larger tolerance never keeps more.
      CHECK(bases[t].n_kappa[static_cast<std::size_t>(b)] >=
            bases[t + 1].n_kappa[static_cast<std::size_t>(b)]);
      // Nesting: the kept space at the larger tolerance sits inside the
      // smaller tolerance's space (principal angles ~ 0).
      const Matrix& big = bases[t].u_blocks[static_cast<std::size_t>(b)];
      const Matrix& small = bases[t + 1].u_blocks[static_cast<std::size_t>(b)];
      Eigen::JacobiSVD<Matrix> svd(big.transpose() * small);
      if (small.cols() > 0) CHECK(svd.singularValues().minCoeff() > 1.0 - 1e-8);
    }
  }
  for (std::size_t t = 0; t < taus.size(); ++t) {
    CHECK(projection_residual_sq(bases[t], orbitals) ==
          doctest::Approx(discarded_sigma_sq(bases[t])).epsilon(1e-10));
  }
}

TEST_CASE("degenerate singular groups are kept together") {
  // Two identical blocks by construction: block-restricted columns have a
  // twofold degenerate singular value; a cutoff inside the group must not
  // split it.
  Matrix phi = Matrix::Zero(8, 2);
  // Orthonormal columns, each split evenly across both blocks.
  phi(0, 0) = phi(4, 0) = 1.0 / std::sqrt(2.0);
  phi(1, 1) = phi(5, 1) = 1.0 / std::sqrt(2.0);
  OrbitalSet orbitals;
  orbitals.phi = phi;
  orbitals.labels.assign(2, OrbitalKind::kCanonicalMo);
  const auto part = partition_uniform(line_grid(8), 2, 0);
  CompressOptions options;
  options.mode = TruncationMode::kAbsolute;
  options.tau = 1.0 / std::sqrt(2.0) + 1e-13;  // just above the degenerate value
  const auto dg = compress(orbitals, part, options);
  // Both members of the degenerate group survive in each block.
  CHECK(dg.n_kappa[0] == 2);
  CHECK(dg.n_kappa[1] == 2);
}

TEST_CASE("column sign convention is deterministic") {
  const auto orbitals = random_orbitals(10, 3, 41);
  const auto part = partition_uniform(line_grid(10), 2, 0);
  const auto dg = compress(orbitals, part, {});
  for (const auto& u : dg.u_blocks) {
    for (int j = 0; j < u.cols(); ++j) {
      int arg = 0;
      u.col(j).cwiseAbs().maxCoeff(&arg);
      CHECK(u(arg, j) > 0.0);
    }
  }
}
