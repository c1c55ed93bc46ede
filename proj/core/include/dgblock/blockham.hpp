#pragma once

//
// Hamiltonian coefficients in the block-compressed basis: a dense one-body
// matrix and a two-body tensor stored per block pair, whose cross-block
// entries are structural zeros that the storage cannot even represent.
//

#include <dgblock/dgbasis.hpp>
#include <dgblock/primitive.hpp>
#include <dgblock/types.hpp>

namespace dgblock {

struct BlockOneBody {
  Matrix h_d;  // N_d x N_d, rows/cols ordered by (block, j)
};

// Two-body tensor over block pairs. For a pair (ka <= kb) the stored tensor
// has shape (n_ka, n_kb, n_kb, n_ka) with index order (i, i', j', j) matching
// the operator c+_{ka,i} c+_{kb,i'} c_{kb,j'} c_{ka,j}; the i,j legs contract
// the kernel row restricted to ka and the i',j' legs the column on kb.
class BlockTwoBody {
 public:
  BlockTwoBody() = default;
  BlockTwoBody(std::vector<int> block_sizes) : block_sizes_(std::move(block_sizes)) {}

  int n_blocks() const { return static_cast<int>(block_sizes_.size()); }
  const std::vector<int>& block_sizes() const { return block_sizes_; }
  int total_functions() const;
  int block_offset(int block) const;

  // Stored tensor for ka <= kb.
  const Tensor4& pair(int ka, int kb) const;
  Tensor4& pair_mutable(int ka, int kb);
  void set_pair(int ka, int kb, Tensor4 tensor);

  // Entry accessor for any block order; applies the relabeling symmetry
  // v[ka,kb][i,i',j',j] = v[kb,ka][i',i,j,j'] when ka > kb.
  double entry(int ka, int i, int kb, int ip, int jp, int j) const;

  // Number of stored coefficients (pairs counted once).
  std::size_t stored_entry_count() const;
  // Entry count of the full ordered-pair expansion.
  std::size_t expanded_entry_count() const;

  const std::map<std::pair<int, int>, Tensor4>& pairs() const { return pairs_; }

 private:
  std::vector<int> block_sizes_;
  std::map<std::pair<int, int>, Tensor4> pairs_;
};

// h_d = U^T h_p U with the block-diagonal U.
BlockOneBody transform_onebody(const PrimitiveSystem& system, const DGBasis& dg);

// v_d[ka,kb][i,i',j',j] = sum_{mu in ka, nu in kb}
//   U_ka[mu][i] U_ka[mu][j] v_p[mu][nu] U_kb[nu][i'] U_kb[nu][j'].
BlockTwoBody transform_twobody(const PrimitiveSystem& system, const DGBasis& dg);

// Explicit sparse expansion over the (block,j) spatial-orbital range, slot
// order (p,q,r,s) matching a+_p a+_q a_r a_s. Nonzeros occur only at index
// patterns with block(p) == block(s) and block(q) == block(r).
SparseFourIndex expand_to_full(const BlockTwoBody& v);

// Rebuilds pair tensors from an expansion; exact inverse of expand_to_full.
BlockTwoBody extract_from_full(const SparseFourIndex& full, const std::vector<int>& block_sizes);

// Plain-text integral file: header line, then "value i j k l" with 1-based
// indices in the a+_i a+_j a_k a_l slot order, one-body terms as
// "value i j 0 0" and the core energy as "value 0 0 0 0".
void write_integral_file(const std::string& path, const Matrix& h, const Tensor4& v,
                         double core_energy, int n_electrons, double threshold = 0.0);
struct IntegralFile {
  Matrix h;
  Tensor4 v;
  double core = 0.0;
  int n_orbitals = 0;
  int n_electrons = 0;
};
IntegralFile read_integral_file(const std::string& path);

}  // namespace dgblock
