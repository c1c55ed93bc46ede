#include <dgblock/dgbasis.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace dgblock {

int Partition::total_points() const {
  int total = 0;
  for (const auto& block : blocks) total += static_cast<int>(block.size());
  return total;
}

void Partition::validate(int num_points) const {
  std::vector<char> seen(static_cast<std::size_t>(num_points), 0);
  for (const auto& block : blocks) {
    if (block.empty()) throw Error("partition contains an empty block");
    for (int idx : block) {
      if (idx < 0 || idx >= num_points) throw Error("partition index out of range");
      if (seen[static_cast<std::size_t>(idx)]) throw Error("partition blocks overlap");
      seen[static_cast<std::size_t>(idx)] = 1;
    }
  }
  for (char c : seen) {
    if (!c) throw Error("partition does not cover all points");
  }
}

namespace {

// Blocks are ranges of slabs along the slowest axis; with the point ordering
// (axis 0 fastest) a slab range is a contiguous index range.
Partition slabs_to_partition(const Grid& grid, const std::vector<int>& slab_counts,
                             std::string strategy) {
  const int slow_axis = grid.dimension - 1;
  int slab_size = 1;
  for (int k = 0; k < slow_axis; ++k) slab_size *= grid.extents[static_cast<std::size_t>(k)];

  Partition part;
  part.strategy = std::move(strategy);
  int next = 0;
  for (int count : slab_counts) {
    std::vector<int> block(static_cast<std::size_t>(count) * slab_size);
    std::iota(block.begin(), block.end(), next);
    next += static_cast<int>(block.size());
    part.blocks.push_back(std::move(block));
  }
  part.validate(grid.num_points);
  return part;
}

}  // namespace

Partition partition_uniform(const Grid& grid, int n_blocks, int axis) {
  const int slow_axis = grid.dimension - 1;
  if (axis != slow_axis) {
    throw Error("uniform partition must split along the slowest-varying grid axis");
  }
  const int extent = grid.extents[static_cast<std::size_t>(axis)];
  if (n_blocks < 1 || n_blocks > extent) throw Error("block count exceeds axis extent");

  const int base = extent / n_blocks;
  const int remainder = extent % n_blocks;
  std::vector<int> slabs(static_cast<std::size_t>(n_blocks), base);
  for (int i = 0; i < remainder; ++i) slabs[static_cast<std::size_t>(i)] += 1;

  std::ostringstream tag;
  tag << "uniform:" << n_blocks;
  return slabs_to_partition(grid, slabs, tag.str());
}

Partition partition_atom_centered(const Grid& grid, const Geometry& geometry) {
  const int slow_axis = grid.dimension - 1;
  const auto axis = static_cast<std::size_t>(slow_axis);
  const double h = grid.spacing[axis];
  const double x0 = grid.origin[axis];
  const int extent = grid.extents[axis];

  std::vector<double> positions;
  for (const auto& atom : geometry.atoms) positions.push_back(atom.position[axis]);
  if (!std::is_sorted(positions.begin(), positions.end())) {
    throw Error("atoms must be sorted along the chain axis");
  }

  // Cut after the grid plane nearest to each midpoint.
  std::vector<int> cuts;
  for (std::size_t i = 0; i + 1 < positions.size(); ++i) {
    if (positions[i + 1] - positions[i] <= h) throw Error("unresolvable partition");
    const double midpoint = 0.5 * (positions[i] + positions[i + 1]);
    int cut = static_cast<int>(std::lround((midpoint - x0) / h));
    cut = std::clamp(cut, 0, extent - 1);
    cuts.push_back(cut);
  }
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    if (cuts[i + 1] <= cuts[i]) throw Error("unresolvable partition");
  }

  std::vector<int> slabs;
  int previous = -1;
  for (int cut : cuts) {
    slabs.push_back(cut - previous);
    previous = cut;
  }
  slabs.push_back(extent - 1 - previous);
  if (!slabs.empty() && slabs.back() <= 0) throw Error("unresolvable partition");
  return slabs_to_partition(grid, slabs, "atom-centered");
}

int DGBasis::block_offset(int block) const {
  int offset = 0;
  for (int b = 0; b < block; ++b) offset += n_kappa[static_cast<std::size_t>(b)];
  return offset;
}

double DGBasis::mean_kept() const {
  if (n_kappa.empty()) return 0.0;
  return static_cast<double>(total_functions) / static_cast<double>(n_kappa.size());
}

DGBasis compress(const OrbitalSet& orbitals, const Partition& partition,
                 const CompressOptions& options) {
  if (options.tau < 0.0) throw Error("truncation tolerance must be nonnegative");
  if (options.n_min < 0) throw Error("n_min must be nonnegative");
  const Matrix& phi = orbitals.phi;

  struct BlockSvd {
    Matrix u;
    Vector sigma;
  };
  std::vector<BlockSvd> svds;
  svds.reserve(partition.blocks.size());
  double sigma_max_global = 0.0;
  for (const auto& block : partition.blocks) {
    Matrix sub(static_cast<int>(block.size()), phi.cols());
    for (std::size_t r = 0; r < block.size(); ++r) {
      sub.row(static_cast<int>(r)) = phi.row(block[r]);
    }
    Eigen::JacobiSVD<Matrix> svd(sub, Eigen::ComputeThinU);
    svds.push_back({svd.matrixU(), svd.singularValues()});
    if (svd.singularValues().size() > 0) {
      sigma_max_global = std::max(sigma_max_global, svd.singularValues()(0));
    }
  }

  double threshold = options.mode == TruncationMode::kRelative
                         ? options.tau * sigma_max_global
                         : options.tau;
  // Values at numerical-rank level never count as kept content.
  const double rank_floor = 1e-14 * sigma_max_global;
  threshold = std::max(threshold, rank_floor);

  DGBasis dg;
  dg.partition = partition;
  dg.tau = options.tau;
  dg.mode = options.mode;
  for (std::size_t b = 0; b < svds.size(); ++b) {
    const auto& svd = svds[b];
    const int available = static_cast<int>(svd.sigma.size());
    if ((available == 0 || svd.sigma(0) <= 0.0) && options.n_min >= 1) {
      std::ostringstream msg;
      msg << "empty block content in block " << b << "; repartition with fewer blocks";
      throw Error(msg.str());
    }

    // Keep a degenerate group together whenever a cut would split it, both
    // at the threshold and after the n_min raise.
    const auto extend_group = [&](int k) {
      while (k > 0 && k < available &&
             svd.sigma(k - 1) - svd.sigma(k) <= 1e-12 * std::max(1.0, sigma_max_global)) {
        ++k;
      }
      return k;
    };
    int keep = 0;
    while (keep < available && svd.sigma(keep) >= threshold) ++keep;
    keep = extend_group(keep);
    const int floor_keep = std::min(options.n_min, available);
    if (keep < floor_keep) keep = extend_group(floor_keep);
    keep = std::min(keep, options.n_max);

    Matrix u = svd.u.leftCols(keep);
    for (int j = 0; j < keep; ++j) {
      int arg = 0;
      u.col(j).cwiseAbs().maxCoeff(&arg);
      if (u(arg, j) < 0.0) u.col(j) = -u.col(j);
    }
    dg.u_blocks.push_back(std::move(u));
    dg.singular_values.emplace_back(svd.sigma.data(), svd.sigma.data() + keep);
    dg.discarded_values.emplace_back(svd.sigma.data() + keep, svd.sigma.data() + available);
    dg.n_kappa.push_back(keep);
    dg.total_functions += keep;
  }
  return dg;
}

Matrix dg_block_diagonal_matrix(const DGBasis& dg) {
  int n_rows = 0;
  for (const auto& block : dg.partition.blocks) n_rows += static_cast<int>(block.size());
  Matrix u = Matrix::Zero(n_rows, dg.total_functions);
  for (std::size_t b = 0; b < dg.u_blocks.size(); ++b) {
    const auto& block = dg.partition.blocks[b];
    const int offset = dg.block_offset(static_cast<int>(b));
    for (std::size_t r = 0; r < block.size(); ++r) {
      for (int j = 0; j < dg.n_kappa[b]; ++j) {
        u(block[r], offset + j) = dg.u_blocks[b](static_cast<int>(r), j);
      }
    }
  }
  return u;
}

double projection_residual_sq(const DGBasis& dg, const OrbitalSet& orbitals) {
  double total = 0.0;
  for (std::size_t b = 0; b < dg.u_blocks.size(); ++b) {
    const auto& block = dg.partition.blocks[b];
    Matrix sub(static_cast<int>(block.size()), orbitals.phi.cols());
    for (std::size_t r = 0; r < block.size(); ++r) {
      sub.row(static_cast<int>(r)) = orbitals.phi.row(block[r]);
    }
    const Matrix residual = sub - dg.u_blocks[b] * (dg.u_blocks[b].transpose() * sub);
    total += residual.squaredNorm();
  }
  return total;
}

double discarded_sigma_sq(const DGBasis& dg) {
  double total = 0.0;
  for (const auto& dropped : dg.discarded_values) {
    for (double s : dropped) total += s * s;
  }
  return total;
}

}  // namespace dgblock
