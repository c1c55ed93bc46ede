#include <dgblock/oracle.hpp>

#include <Eigen/Dense>

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>

namespace dgblock {

SpinHamiltonian to_spin_orbitals(const Matrix& h_spatial, const Tensor4& v_spatial,
                                 double core_energy) {
  const int n = static_cast<int>(h_spatial.rows());
  const int m = 2 * n;
  SpinHamiltonian out;
  out.core = core_energy;
  out.h = Matrix::Zero(m, m);
  for (int p = 0; p < n; ++p) {
    for (int q = 0; q < n; ++q) {
      out.h(2 * p, 2 * q) = h_spatial(p, q);
      out.h(2 * p + 1, 2 * q + 1) = h_spatial(p, q);
    }
  }
  out.v = Tensor4(m, m, m, m);
  for (int p = 0; p < n; ++p) {
    for (int q = 0; q < n; ++q) {
      for (int r = 0; r < n; ++r) {
        for (int s = 0; s < n; ++s) {
          const double val = v_spatial(p, q, r, s);
          if (val == 0.0) continue;
          for (int sigma = 0; sigma < 2; ++sigma) {
            for (int tau = 0; tau < 2; ++tau) {
              out.v(2 * p + sigma, 2 * q + tau, 2 * r + tau, 2 * s + sigma) = val;
            }
          }
        }
      }
    }
  }
  return out;
}

namespace {

// Jordan-Wigner sign for acting on mode p of occupation word `state`.
inline int jw_sign(std::uint32_t state, int p) {
  const std::uint32_t below = state & ((1u << p) - 1u);
  return (std::popcount(below) & 1) ? -1 : 1;
}

// Applies a+_p a+_q a_r a_s to |state>; returns false when annihilated.
bool apply_two_body(std::uint32_t state, int p, int q, int r, int s,
                    std::uint32_t* out_state, int* out_sign) {
  int sign = 1;
  if (!(state & (1u << s))) return false;
  sign *= jw_sign(state, s);
  state &= ~(1u << s);
  if (!(state & (1u << r))) return false;
  sign *= jw_sign(state, r);
  state &= ~(1u << r);
  if (state & (1u << q)) return false;
  sign *= jw_sign(state, q);
  state |= (1u << q);
  if (state & (1u << p)) return false;
  sign *= jw_sign(state, p);
  state |= (1u << p);
  *out_state = state;
  *out_sign = sign;
  return true;
}

bool apply_one_body(std::uint32_t state, int p, int q, std::uint32_t* out_state,
                    int* out_sign) {
  int sign = 1;
  if (!(state & (1u << q))) return false;
  sign *= jw_sign(state, q);
  state &= ~(1u << q);
  if (state & (1u << p)) return false;
  sign *= jw_sign(state, p);
  state |= (1u << p);
  *out_state = state;
  *out_sign = sign;
  return true;
}

}  // namespace

FockOperator build_hamiltonian_matrix(const Matrix& h, const Tensor4& v, double core_energy) {
  const int m = static_cast<int>(h.rows());
  if (m > kMaxFockModes) throw Error("Fock-space operator capped at 14 modes");
  if (v.dim(0) != m) throw Error("one-/two-body dimension mismatch");
  const std::uint32_t dim = 1u << m;

  std::vector<Eigen::Triplet<double>> triplets;
  for (std::uint32_t state = 0; state < dim; ++state) {
    triplets.emplace_back(static_cast<int>(state), static_cast<int>(state), core_energy);
    for (int p = 0; p < m; ++p) {
      for (int q = 0; q < m; ++q) {
        const double hpq = h(p, q);
        if (hpq == 0.0) continue;
        std::uint32_t to = 0;
        int sign = 0;
        if (apply_one_body(state, p, q, &to, &sign)) {
          triplets.emplace_back(static_cast<int>(to), static_cast<int>(state), sign * hpq);
        }
      }
    }
    for (int p = 0; p < m; ++p) {
      for (int q = 0; q < m; ++q) {
        for (int r = 0; r < m; ++r) {
          for (int s = 0; s < m; ++s) {
            const double w = v(p, q, r, s);
            if (w == 0.0) continue;
            std::uint32_t to = 0;
            int sign = 0;
            if (apply_two_body(state, p, q, r, s, &to, &sign)) {
              triplets.emplace_back(static_cast<int>(to), static_cast<int>(state),
                                    0.5 * sign * w);
            }
          }
        }
      }
    }
  }
  FockOperator op;
  op.n_modes = m;
  op.matrix.resize(static_cast<int>(dim), static_cast<int>(dim));
  op.matrix.setFromTriplets(triplets.begin(), triplets.end());
  return op;
}

namespace {

double lowest_eigenvalue_dense(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

// Lanczos with full reorthogonalization for larger sectors; deterministic.
double lowest_eigenvalue_lanczos(const std::function<Vector(const Vector&)>& apply, int dim) {
  const int max_iter = std::min(dim, 300);
  std::vector<Vector> basis;
  Vector q = Vector::Zero(dim);
  q(0) = 1.0;
  basis.push_back(q);
  std::vector<double> alpha, beta;
  double best = 0.0;
  for (int it = 0; it < max_iter; ++it) {
    Vector w = apply(basis.back());
    const double a = basis.back().dot(w);
    alpha.push_back(a);
    for (const auto& b : basis) w -= b.dot(w) * b;
    for (const auto& b : basis) w -= b.dot(w) * b;  // second pass for stability
    const double nb = w.norm();
    Matrix tri = Matrix::Zero(static_cast<int>(alpha.size()), static_cast<int>(alpha.size()));
    for (std::size_t i = 0; i < alpha.size(); ++i) {
      tri(static_cast<int>(i), static_cast<int>(i)) = alpha[i];
      if (i + 1 < alpha.size()) {
        tri(static_cast<int>(i), static_cast<int>(i + 1)) = beta[i];
        tri(static_cast<int>(i + 1), static_cast<int>(i)) = beta[i];
      }
    }
    const double current = lowest_eigenvalue_dense(tri);
    if (it > 10 && std::abs(current - best) < 1e-13) return current;
    best = current;
    if (nb < 1e-13) return best;
    beta.push_back(nb);
    basis.push_back(w / nb);
  }
  return best;
}

}  // namespace

double ground_energy(const FockOperator& op, int n_electrons) {
  const std::uint32_t dim = 1u << op.n_modes;
  std::vector<int> sector;
  for (std::uint32_t state = 0; state < dim; ++state) {
    if (std::popcount(state) == n_electrons) sector.push_back(static_cast<int>(state));
  }
  if (sector.empty()) throw Error("empty particle-number sector");
  const int d = static_cast<int>(sector.size());
  Matrix block(d, d);
  for (int j = 0; j < d; ++j) {
    for (int i = 0; i < d; ++i) {
      block(i, j) = op.matrix.coeff(sector[static_cast<std::size_t>(i)],
                                    sector[static_cast<std::size_t>(j)]);
    }
  }
  return lowest_eigenvalue_dense(block);
}

namespace {

// Determinants as sorted occupied-orbital lists: an independent fermion
// algebra from the bitmask route above.
struct Determinant {
  std::vector<int> occupied;  // ascending
};

// Removes orbital q; returns parity sign or 0 when absent.
int det_annihilate(Determinant* det, int q) {
  auto it = std::lower_bound(det->occupied.begin(), det->occupied.end(), q);
  if (it == det->occupied.end() || *it != q) return 0;
  const int position = static_cast<int>(it - det->occupied.begin());
  det->occupied.erase(it);
  return (position % 2 == 0) ? 1 : -1;
}

int det_create(Determinant* det, int p) {
  auto it = std::lower_bound(det->occupied.begin(), det->occupied.end(), p);
  if (it != det->occupied.end() && *it == p) return 0;
  const int position = static_cast<int>(it - det->occupied.begin());
  det->occupied.insert(it, p);
  return (position % 2 == 0) ? 1 : -1;
}

std::vector<std::vector<int>> enumerate_sector(int n_modes, int n_electrons) {
  std::vector<std::vector<int>> out;
  std::vector<int> current;
  std::function<void(int)> rec = [&](int next) {
    if (static_cast<int>(current.size()) == n_electrons) {
      out.push_back(current);
      return;
    }
    const int needed = n_electrons - static_cast<int>(current.size());
    for (int orb = next; orb <= n_modes - needed; ++orb) {
      current.push_back(orb);
      rec(orb + 1);
      current.pop_back();
    }
  };
  rec(0);
  return out;
}

}  // namespace

double sector_ci_ground_energy(const Matrix& h, const Tensor4& v, double core_energy,
                               int n_electrons) {
  const int m = static_cast<int>(h.rows());
  if (n_electrons < 0 || n_electrons > m) throw Error("empty particle-number sector");
  const auto dets = enumerate_sector(m, n_electrons);
  const int dim = static_cast<int>(dets.size());
  if (dim == 0) throw Error("empty particle-number sector");

  std::map<std::vector<int>, int> index;
  for (int i = 0; i < dim; ++i) index[dets[static_cast<std::size_t>(i)]] = i;

  auto accumulate_column = [&](int col, const auto& add) {
    const auto& occ = dets[static_cast<std::size_t>(col)];
    add(col, core_energy);
    // One-body.
    for (int q : occ) {
      for (int p = 0; p < m; ++p) {
        if (h(p, q) == 0.0) continue;
        Determinant det{occ};
        int sign = det_annihilate(&det, q);
        const int s2 = det_create(&det, p);
        if (s2 == 0) continue;
        sign *= s2;
        add(index.at(det.occupied), sign * h(p, q));
      }
    }
    // Two-body: 1/2 v_pqrs a+_p a+_q a_r a_s; s and r must be occupied.
    for (int s : occ) {
      for (int r : occ) {
        if (r == s) continue;
        for (int q = 0; q < m; ++q) {
          for (int p = 0; p < m; ++p) {
            const double w = v(p, q, r, s);
            if (w == 0.0) continue;
            Determinant det{occ};
            int sign = det_annihilate(&det, s);
            int t = det_annihilate(&det, r);
            if (t == 0) continue;
            sign *= t;
            t = det_create(&det, q);
            if (t == 0) continue;
            sign *= t;
            t = det_create(&det, p);
            if (t == 0) continue;
            sign *= t;
            add(index.at(det.occupied), 0.5 * sign * w);
          }
        }
      }
    }
  };

  if (dim <= 900) {
    Matrix hmat = Matrix::Zero(dim, dim);
    for (int col = 0; col < dim; ++col) {
      accumulate_column(col, [&](int row, double val) { hmat(row, col) += val; });
    }
    return lowest_eigenvalue_dense(hmat);
  }

  // Matrix-free matvec for larger sectors.
  auto apply = [&](const Vector& x) {
    Vector y = Vector::Zero(dim);
    for (int col = 0; col < dim; ++col) {
      const double xc = x(col);
      if (xc == 0.0) continue;
      accumulate_column(col, [&](int row, double val) { y(row) += val * xc; });
    }
    return y;
  };
  return lowest_eigenvalue_lanczos(apply, dim);
}

double fci_ground_energy(const Matrix& h_spatial, const Tensor4& v_spatial,
                         double core_energy, int n_electrons) {
  const auto spin = to_spin_orbitals(h_spatial, v_spatial, core_energy);
  return sector_ci_ground_energy(spin.h, spin.v, spin.core, n_electrons);
}

FockOperator fermionic_swap(int n_modes, int p, int q) {
  if (n_modes > kMaxFockModes) throw Error("Fock-space operator capped at 14 modes");
  if (std::abs(p - q) != 1) throw Error("fermionic swap requires adjacent modes");
  const std::uint32_t dim = 1u << n_modes;
  std::vector<Eigen::Triplet<double>> triplets;
  for (std::uint32_t state = 0; state < dim; ++state) {
    triplets.emplace_back(static_cast<int>(state), static_cast<int>(state), 1.0);
    std::uint32_t to = 0;
    int sign = 0;
    if (apply_one_body(state, p, q, &to, &sign)) {
      triplets.emplace_back(static_cast<int>(to), static_cast<int>(state),
                            static_cast<double>(sign));
    }
    if (apply_one_body(state, q, p, &to, &sign)) {
      triplets.emplace_back(static_cast<int>(to), static_cast<int>(state),
                            static_cast<double>(sign));
    }
    if (state & (1u << p)) {
      triplets.emplace_back(static_cast<int>(state), static_cast<int>(state), -1.0);
    }
    if (state & (1u << q)) {
      triplets.emplace_back(static_cast<int>(state), static_cast<int>(state), -1.0);
    }
  }
  FockOperator op;
  op.n_modes = n_modes;
  op.matrix.resize(static_cast<int>(dim), static_cast<int>(dim));
  op.matrix.setFromTriplets(triplets.begin(), triplets.end());
  return op;
}

namespace {

Eigen::SparseMatrix<double> creation_matrix(int n_modes, int p) {
  const std::uint32_t dim = 1u << n_modes;
  std::vector<Eigen::Triplet<double>> triplets;
  for (std::uint32_t state = 0; state < dim; ++state) {
    if (state & (1u << p)) continue;
    const int sign = jw_sign(state, p);
    triplets.emplace_back(static_cast<int>(state | (1u << p)), static_cast<int>(state),
                          static_cast<double>(sign));
  }
  Eigen::SparseMatrix<double> m(static_cast<int>(dim), static_cast<int>(dim));
  m.setFromTriplets(triplets.begin(), triplets.end());
  return m;
}

bool matrices_equal_exact(const Eigen::SparseMatrix<double>& a,
                          const Eigen::SparseMatrix<double>& b) {
  const Matrix da = Matrix(a);
  const Matrix db = Matrix(b);
  return (da - db).cwiseAbs().maxCoeff() == 0.0;
}

}  // namespace

bool fswap_conjugation_check(int n_modes, int p, int q) {
  const auto f = fermionic_swap(n_modes, p, q);
  const auto cp = creation_matrix(n_modes, p);
  const auto cq = creation_matrix(n_modes, q);
  const std::uint32_t dim = 1u << n_modes;

  // f is real and an involution, so f^T = f and f^-1 = f. All entries are
  // integers, so exact comparisons are meaningful.
  Eigen::SparseMatrix<double> identity(static_cast<int>(dim), static_cast<int>(dim));
  identity.setIdentity();
  const Eigen::SparseMatrix<double> ff = f.matrix * f.matrix;
  if (!matrices_equal_exact(ff, identity)) return false;

  const Eigen::SparseMatrix<double> conj = f.matrix * cp * f.matrix;
  return matrices_equal_exact(conj, cq);
}

}  // namespace dgblock
