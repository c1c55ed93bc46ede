#pragma once

//
// Partitioning of the primitive index set into blocks and blockwise
// truncated-SVD compression of an orbital set into a block-supported basis.
//

#include <dgblock/activespace.hpp>
#include <dgblock/primitive.hpp>
#include <dgblock/types.hpp>

#include <limits>

namespace dgblock {

struct Partition {
  std::vector<std::vector<int>> blocks;  // disjoint, union = all grid points
  std::string strategy;
  int count() const { return static_cast<int>(blocks.size()); }
  int total_points() const;
  void validate(int num_points) const;
};

// Contiguous slabs along the slowest-varying grid axis; the remainder goes
// to the leading blocks one point-slab at a time.
Partition partition_uniform(const Grid& grid, int n_blocks, int axis);

// One block per atom, slab boundaries at midpoints between consecutive atom
// positions along the chain axis, snapped to the nearest grid plane.
Partition partition_atom_centered(const Grid& grid, const Geometry& geometry);

enum class TruncationMode { kRelative, kAbsolute };

struct CompressOptions {
  double tau = 0.0;
  TruncationMode mode = TruncationMode::kRelative;
  int n_min = 1;
  int n_max = std::numeric_limits<int>::max();
};

struct DGBasis {
  Partition partition;
  std::vector<Matrix> u_blocks;                 // |kappa| x n_kappa, orthonormal columns
  std::vector<std::vector<double>> singular_values;  // kept spectra, descending
  std::vector<std::vector<double>> discarded_values; // dropped spectra, descending
  double tau = 0.0;
  TruncationMode mode = TruncationMode::kRelative;
  std::vector<int> n_kappa;
  int total_functions = 0;  // sum of n_kappa

  int block_offset(int block) const;
  double mean_kept() const;
};

// Per-block truncated SVD of the orbital matrix restricted to each block.
// Relative mode thresholds against the largest singular value over all
// blocks; absolute mode thresholds directly. Degenerate groups straddling
// the cutoff (within 1e-12) are kept together, and each kept column is
// signed so its largest-magnitude entry is positive.
DGBasis compress(const OrbitalSet& orbitals, const Partition& partition,
                 const CompressOptions& options);

// The N_p x N_d block-diagonal matrix U = diag[U_1, ..., U_Nb]; rows indexed
// by grid point, columns by (block, j) lexicographic.
Matrix dg_block_diagonal_matrix(const DGBasis& dg);

// Frobenius norm squared of (I - P) Phi where P projects onto the compressed
// basis; equals the sum of discarded sigma^2 exactly.
double projection_residual_sq(const DGBasis& dg, const OrbitalSet& orbitals);
double discarded_sigma_sq(const DGBasis& dg);

}  // namespace dgblock
