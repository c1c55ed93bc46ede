#include <dgblock/lowrank.hpp>

#include <algorithm>
#include <cmath>

namespace dgblock {

PairMatricization pair_union_matricize(const BlockTwoBody& v, int block_a, int block_b) {
  if (block_a > block_b) std::swap(block_a, block_b);
  const Tensor4& t = v.pair(block_a, block_b);
  const int na = t.dim(0);
  const int nb = t.dim(1);

  PairMatricization out;
  out.block_a = block_a;
  out.block_b = block_b;
  out.n_a = na;
  out.n_b = nb;
  Matrix m(na * nb, na * nb);
  for (int i = 0; i < na; ++i) {
    for (int ip = 0; ip < nb; ++ip) {
      for (int j = 0; j < na; ++j) {
        for (int jp = 0; jp < nb; ++jp) {
          m(i * nb + ip, j * nb + jp) = t(i, ip, jp, j);
        }
      }
    }
  }
  out.m = 0.5 * (m + m.transpose());

  Eigen::SelfAdjointEigenSolver<Matrix> es(out.m, Eigen::EigenvaluesOnly);
  out.min_eigenvalue = es.eigenvalues()(0);
  if (out.min_eigenvalue < -1e-8) {
    throw NumericalError("matricization not PSD; check the index convention");
  }
  return out;
}

BlockPairFactors double_factorize(const Matrix& matricized, int n_a, int n_b,
                                  double outer_tol, double inner_tol) {
  if (outer_tol < 0.0 || inner_tol < 0.0) throw Error("tolerances must be nonnegative");
  const int d = static_cast<int>(matricized.rows());
  if (d != n_a * n_b || matricized.cols() != d) throw Error("matricization shape mismatch");

  BlockPairFactors out;
  out.n_a = n_a;
  out.n_b = n_b;

  // Pivoted Cholesky with deterministic pivoting. Tiny negative residual
  // diagonals from roundoff act as exhausted pivots.
  Matrix residual = matricized;
  const double trace0 = residual.trace();
  const double pivot_floor = std::max(1e-14 * std::max(trace0, 0.0), 1e-300);
  std::vector<Vector> cholesky;
  while (static_cast<int>(cholesky.size()) < d) {
    if (residual.trace() <= outer_tol) break;
    int pivot = 0;
    double best = residual(0, 0);
    for (int k = 1; k < d; ++k) {
      if (residual(k, k) > best) {
        best = residual(k, k);
        pivot = k;
      }
    }
    if (best <= pivot_floor) break;
    const Vector w = residual.col(pivot) / std::sqrt(best);
    cholesky.push_back(w);
    residual -= w * w.transpose();
  }
  out.outer_rank = static_cast<int>(cholesky.size());

  const int m = n_a + n_b;
  Matrix approx = Matrix::Zero(d, d);
  for (const auto& w : cholesky) {
    // Reshape w to the n_a x n_b off-diagonal block of a symmetric union
    // matrix g; row pairs were laid out as i*n_b + i'.
    Matrix g = Matrix::Zero(m, m);
    for (int i = 0; i < n_a; ++i) {
      for (int ip = 0; ip < n_b; ++ip) {
        g(i, n_a + ip) = w(i * n_b + ip);
        g(n_a + ip, i) = w(i * n_b + ip);
      }
    }
    Eigen::SelfAdjointEigenSolver<Matrix> es(g);
    const double scale = es.eigenvalues().cwiseAbs().maxCoeff();
    const double keep_floor = std::max(inner_tol, 1e-14 * scale);
    std::vector<int> kept;
    for (int k = 0; k < m; ++k) {
      if (std::abs(es.eigenvalues()(k)) > keep_floor) kept.push_back(k);
    }
    Matrix u(m, static_cast<int>(kept.size()));
    Vector lam(static_cast<int>(kept.size()));
    for (std::size_t c = 0; c < kept.size(); ++c) {
      u.col(static_cast<int>(c)) = es.eigenvectors().col(kept[c]);
      lam(static_cast<int>(c)) = es.eigenvalues()(kept[c]);
    }
    const Matrix g_kept = u * lam.asDiagonal() * u.transpose();
    // Accumulate the truncated reconstruction of the matricization.
    Vector w_kept(d);
    for (int i = 0; i < n_a; ++i) {
      for (int ip = 0; ip < n_b; ++ip) {
        w_kept(i * n_b + ip) = g_kept(i, n_a + ip);
      }
    }
    approx += w_kept * w_kept.transpose();

    out.outer_factors.push_back(std::move(g));
    out.inner_vectors.push_back(std::move(u));
    out.inner_eigenvalues.push_back(std::move(lam));
    out.inner_ranks.push_back(static_cast<int>(kept.size()));
  }
  out.reconstruction_error = (matricized - approx).norm();
  return out;
}

BlockPairFactors factorize_pair(const BlockTwoBody& v, int block_a, int block_b,
                                double outer_tol, double inner_tol) {
  const auto mat = pair_union_matricize(v, block_a, block_b);
  auto factors = double_factorize(mat.m, mat.n_a, mat.n_b, outer_tol, inner_tol);
  factors.block_a = mat.block_a;
  factors.block_b = mat.block_b;
  return factors;
}

Tensor4 reconstruct_pair(const BlockPairFactors& factors) {
  const int na = factors.n_a;
  const int nb = factors.n_b;
  Tensor4 t(na, nb, nb, na);
  for (std::size_t l = 0; l < factors.inner_vectors.size(); ++l) {
    const Matrix g = factors.inner_vectors[l] *
                     factors.inner_eigenvalues[l].asDiagonal() *
                     factors.inner_vectors[l].transpose();
    for (int i = 0; i < na; ++i) {
      for (int ip = 0; ip < nb; ++ip) {
        for (int jp = 0; jp < nb; ++jp) {
          for (int j = 0; j < na; ++j) {
            t(i, ip, jp, j) += g(i, na + ip) * g(j, na + jp);
          }
        }
      }
    }
  }
  return t;
}

double pair_reconstruction_error(const BlockTwoBody& v, const BlockPairFactors& factors) {
  const Tensor4& reference = v.pair(factors.block_a, factors.block_b);
  const Tensor4 rebuilt = reconstruct_pair(factors);
  double err = 0.0;
  for (std::size_t k = 0; k < reference.size(); ++k) {
    const double d = reference.data()[k] - rebuilt.data()[k];
    err += d * d;
  }
  return std::sqrt(err);
}

TrotterDepthEstimate trotter_depth_estimate(const std::vector<BlockPairFactors>& pairs,
                                            int n_blocks) {
  TrotterDepthEstimate est;
  est.n_blocks = n_blocks;
  for (const auto& pair : pairs) {
    int depth = 0;
    for (int rho : pair.inner_ranks) depth += rho;
    est.per_pair_depth.push_back(depth);
    est.max_pair_depth = std::max(est.max_pair_depth, depth);
  }
  est.total_depth = est.max_pair_depth * n_blocks;
  return est;
}

}  // namespace dgblock
