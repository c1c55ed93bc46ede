#pragma once

//
// Two-stage factorization of block-pair tensors: a pivoted Cholesky of the
// pair matricization, then an eigendecomposition of each reshaped factor on
// the pair's union orbital space. Feeds circuit-depth estimates.
//

#include <dgblock/blockham.hpp>
#include <dgblock/types.hpp>

namespace dgblock {

struct PairMatricization {
  int block_a = 0;
  int block_b = 0;
  int n_a = 0;  // kept functions in block_a
  int n_b = 0;
  Matrix m;     // (n_a*n_b) x (n_a*n_b), rows = creation pairs (i,i'),
                // columns = annihilation pairs (j,j'); symmetric
  double min_eigenvalue = 0.0;
};

// Matricizes the stored pair tensor with the two creation indices as the row
// pair and the two annihilation indices as the column pair, the ordering for
// which entrywise-nonnegative kernels give a positive semidefinite matrix.
// An eigenvalue below -1e-8 signals an index-convention bug and throws.
PairMatricization pair_union_matricize(const BlockTwoBody& v, int block_a, int block_b);

struct BlockPairFactors {
  int block_a = 0;
  int block_b = 0;
  int n_a = 0;
  int n_b = 0;
  // Outer factors embedded on the union space of the pair's two orbital
  // legs (dimension n_a + n_b): g^l is symmetric with the reshaped Cholesky
  // vector as its off-diagonal block.
  std::vector<Matrix> outer_factors;
  // Inner eigendecompositions g^l = U^l diag(lambda^l) U^l^T, truncated.
  std::vector<Matrix> inner_vectors;       // (n_a+n_b) x rho_l
  std::vector<Vector> inner_eigenvalues;   // rho_l entries
  std::vector<int> inner_ranks;            // rho_l
  int outer_rank = 0;                      // L_pair
  double reconstruction_error = 0.0;       // Frobenius, vs the input matrix
};

// Pivoted Cholesky (largest remaining diagonal, ties to the lowest index)
// until the residual trace drops to outer_tol, then an eigendecomposition of
// each factor discarding |eigenvalue| <= inner_tol. Tolerances must be
// nonnegative.
BlockPairFactors double_factorize(const Matrix& matricized, int n_a, int n_b,
                                  double outer_tol, double inner_tol);

// Convenience: matricize and factorize one stored pair.
BlockPairFactors factorize_pair(const BlockTwoBody& v, int block_a, int block_b,
                                double outer_tol, double inner_tol);

// Rebuilds the pair tensor (shape n_a, n_b, n_b, n_a) from truncated factors.
Tensor4 reconstruct_pair(const BlockPairFactors& factors);

// Frobenius distance between a stored pair tensor and its reconstruction.
double pair_reconstruction_error(const BlockTwoBody& v, const BlockPairFactors& factors);

struct TrotterDepthEstimate {
  std::vector<int> per_pair_depth;  // sum_l rho_l per factorized pair
  int max_pair_depth = 0;
  int n_blocks = 0;
  int total_depth = 0;  // max pair depth * n_blocks (odd/even pair layering)
};

TrotterDepthEstimate trotter_depth_estimate(const std::vector<BlockPairFactors>& pairs,
                                            int n_blocks);

}  // namespace dgblock
