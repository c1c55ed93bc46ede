#pragma once

//
// Small exact engines for cross-checks: a full Fock-space operator
// representation (Jordan-Wigner ordered occupation basis) and an
// independent determinant-based configuration-interaction path.
//

#include <dgblock/types.hpp>

#include <Eigen/SparseCore>

namespace dgblock {

inline constexpr int kMaxFockModes = 14;

// Operator on the 2^n occupation basis, bit p of the basis index = mode p.
struct FockOperator {
  int n_modes = 0;
  Eigen::SparseMatrix<double> matrix;
};

// Expands spatial one-/two-body coefficients over spin orbitals
// (spin index = 2 * spatial + sigma). The two-body slot order matches
// a+_p a+_q a_r a_s with spins paired as (p,s) and (q,r).
struct SpinHamiltonian {
  Matrix h;    // 2N x 2N
  Tensor4 v;   // (2N)^4
  double core = 0.0;
};
SpinHamiltonian to_spin_orbitals(const Matrix& h_spatial, const Tensor4& v_spatial,
                                 double core_energy);

// H = sum h_pq a+_p a_q + 1/2 sum v_pqrs a+_p a+_q a_r a_s + core, over spin
// orbitals. Number-conserving by construction.
FockOperator build_hamiltonian_matrix(const Matrix& h, const Tensor4& v, double core_energy);

// Lowest eigenvalue within the fixed-particle-number sector.
double ground_energy(const FockOperator& op, int n_electrons);

// Independent determinant-CI route: builds the Hamiltonian directly in the
// fixed-number determinant basis (sorted occupied-orbital lists) without the
// full Fock-space matrix. Handles mode counts beyond the Fock-space cap.
double sector_ci_ground_energy(const Matrix& h, const Tensor4& v, double core_energy,
                               int n_electrons);

// Convenience: spatial inputs, spin-summed electrons.
double fci_ground_energy(const Matrix& h_spatial, const Tensor4& v_spatial,
                         double core_energy, int n_electrons);

// Fermionic swap f = 1 + a+_p a_q + a+_q a_p - n_p - n_q for adjacent modes.
FockOperator fermionic_swap(int n_modes, int p, int q);

// Checks f a+_p f^T == a+_q and f^2 == 1 exactly (all entries are 0 or +-1).
bool fswap_conjugation_check(int n_modes, int p, int q);

}  // namespace dgblock
