#include <doctest.h>

#include <dgblock/oracle.hpp>

#include <Eigen/Dense>

#include <algorithm>
#include <bit>
#include <random>

using namespace dgblock;

TEST_CASE("diagonal one-body spectrum is the subset sums") {
  const int n = 4;
  Matrix h = Matrix::Zero(n, n);
  h.diagonal() << 0.5, -1.25, 2.0, 0.75;
  Tensor4 v(n, n, n, n);
  const double core = 0.3;
  const auto op = build_hamiltonian_matrix(h, v, core);

  std::vector<double> expected;
  for (int state = 0; state < 16; ++state) {
    double e = core;
    for (int p = 0; p < n; ++p) {
      if (state & (1 << p)) e += h(p, p);
    }
    expected.push_back(e);
  }
  std::sort(expected.begin(), expected.end());
  Eigen::SelfAdjointEigenSolver<Matrix> es(Matrix(op.matrix), Eigen::EigenvaluesOnly);
  for (int i = 0; i < 16; ++i) {
    CHECK(es.eigenvalues()(i) == doctest::Approx(expected[static_cast<std::size_t>(i)])
                                     .epsilon(1e-12));
  }
}

TEST_CASE("two-mode single term is hand-checkable") {
  // H = w a+_0 a+_1 a_1 a_0 = w n_0 n_1 (with the relabeled partner, each at
  // weight w/2 through the 1/2 prefactor): only |11> feels it.
  const int n = 2;
  Matrix h = Matrix::Zero(n, n);
  Tensor4 v(n, n, n, n);
  const double w = 0.8;
  v(0, 1, 1, 0) = w;
  v(1, 0, 0, 1) = w;
  const auto op = build_hamiltonian_matrix(h, v, 0.0);
  const Matrix dense = Matrix(op.matrix);
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      const double expected = (i == 3 && j == 3) ? w : 0.0;
      CHECK(dense(i, j) == doctest::Approx(expected).epsilon(1e-14));
    }
  }
}

TEST_CASE("random six-mode operator: hermiticity, number conservation, CI cross-check") {
  const int n = 6;
  std::mt19937_64 rng(23);
  std::normal_distribution<double> gauss(0.0, 0.5);
  Matrix h(n, n);
  for (int p = 0; p < n; ++p) {
    for (int q = 0; q <= p; ++q) {
      h(p, q) = gauss(rng);
      h(q, p) = h(p, q);
    }
  }
  Tensor4 v(n, n, n, n);
  for (int p = 0; p < n; ++p) {
    for (int q = 0; q < n; ++q) {
      for (int r = 0; r < n; ++r) {
        for (int s = 0; s < n; ++s) {
          if (v(p, q, r, s) != 0.0) continue;
          const double x = 0.1 * gauss(rng);
          // Impose the operator relabeling and real-orbital symmetries so the
          // assembled matrix is Hermitian.
          v(p, q, r, s) = x;
          v(q, p, s, r) = x;
          v(s, r, q, p) = x;
          v(r, s, p, q) = x;
        }
      }
    }
  }
  const auto op = build_hamiltonian_matrix(h, v, 0.1);
  const Matrix dense = Matrix(op.matrix);
  CHECK((dense - dense.transpose()).cwiseAbs().maxCoeff() < 1e-12);
  for (int i = 0; i < 64; ++i) {
    for (int j = 0; j < 64; ++j) {
      if (std::popcount(static_cast<unsigned>(i)) != std::popcount(static_cast<unsigned>(j))) {
        CHECK(dense(i, j) == 0.0);
      }
    }
  }
  for (int electrons : {1, 2, 3}) {
    CHECK(ground_energy(op, electrons) ==
          doctest::Approx(sector_ci_ground_energy(h, v, 0.1, electrons)).epsilon(1e-10));
  }
}

TEST_CASE("ground energy edge sectors") {
  const int n = 3;
  Matrix h = Matrix::Zero(n, n);
  h.diagonal() << 1.0, 2.0, 3.0;
  h(0, 1) = h(1, 0) = -0.4;
  Tensor4 v(n, n, n, n);
  const double core = -2.5;
  const auto op = build_hamiltonian_matrix(h, v, core);
  SUBCASE("zero electrons is the core energy") {
    CHECK(ground_energy(op, 0) == doctest::Approx(core).epsilon(1e-14));
  }
  SUBCASE("one electron is the lowest one-body eigenvalue plus core") {
    Eigen::SelfAdjointEigenSolver<Matrix> es(h, Eigen::EigenvaluesOnly);
    CHECK(ground_energy(op, 1) == doctest::Approx(core + es.eigenvalues()(0)).epsilon(1e-12));
  }
  SUBCASE("overfilled sector rejected") {
    CHECK_THROWS_AS(ground_energy(op, 4), Error);
    CHECK_THROWS_AS(sector_ci_ground_energy(h, v, core, 4), Error);
  }
}

TEST_CASE("mode cap enforced on the full-space builder only") {
  Matrix h = Matrix::Zero(16, 16);
  Tensor4 v(16, 16, 16, 16);
  CHECK_THROWS_AS(build_hamiltonian_matrix(h, v, 0.0), Error);
  h(0, 0) = -1.0;
  CHECK(sector_ci_ground_energy(h, v, 0.0, 1) == doctest::Approx(-1.0).epsilon(1e-12));
}

TEST_CASE("fermionic swap identities") {
  SUBCASE("two modes, direct computation") {
    CHECK(fswap_conjugation_check(2, 0, 1));
  }
  SUBCASE("involution with integer entries") {
    const auto f = fermionic_swap(3, 1, 2);
    const Matrix dense = Matrix(f.matrix);
    CHECK(((dense * dense) - Matrix::Identity(8, 8)).cwiseAbs().maxCoeff() == 0.0);
    for (int i = 0; i < 8; ++i) {
      for (int j = 0; j < 8; ++j) {
        const double x = dense(i, j);
        CHECK((x == 0.0 || x == 1.0 || x == -1.0));
      }
    }
  }
  SUBCASE("all adjacent pairs on four modes, both directions") {
    for (int p = 0; p + 1 < 4; ++p) {
      CHECK(fswap_conjugation_check(4, p, p + 1));
      CHECK(fswap_conjugation_check(4, p + 1, p));
    }
  }
  SUBCASE("non-adjacent modes rejected") {
    CHECK_THROWS_AS(fermionic_swap(4, 0, 2), Error);
  }
}

TEST_CASE("spin expansion places both spin channels") {
  Matrix h(1, 1);
  h(0, 0) = -0.7;
  Tensor4 v(1, 1, 1, 1);
  v(0, 0, 0, 0) = 0.9;  // on-site repulsion
  const auto spin = to_spin_orbitals(h, v, 0.0);
  CHECK(spin.h(0, 0) == doctest::Approx(-0.7));
  CHECK(spin.h(1, 1) == doctest::Approx(-0.7));
  CHECK(spin.h(0, 1) == 0.0);
  CHECK(spin.v(0, 1, 1, 0) == doctest::Approx(0.9));
  CHECK(spin.v(1, 0, 0, 1) == doctest::Approx(0.9));
  CHECK(spin.v(0, 0, 0, 0) == doctest::Approx(0.9));  // same-spin slot, killed by Pauli
  // Two electrons on one site pay the repulsion once.
  CHECK(sector_ci_ground_energy(spin.h, spin.v, 0.0, 2) == doctest::Approx(-1.4 + 0.9));
}
