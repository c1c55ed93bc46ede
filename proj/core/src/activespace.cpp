#include <dgblock/activespace.hpp>

#include <cmath>
#include <sstream>

namespace dgblock {

Matrix sample_gaussians(const Grid& grid, const Geometry& geometry,
                        const std::vector<Shell>& shells) {
  if (shells.empty()) throw Error("no shells given");
  const int n = grid.num_points;
  Matrix raw(n, static_cast<int>(shells.size()));
  for (std::size_t c = 0; c < shells.size(); ++c) {
    const auto& shell = shells[c];
    if (shell.exponent <= 0.0) throw Error("shell exponent must be positive");
    if (shell.atom < 0 || shell.atom >= static_cast<int>(geometry.atoms.size())) {
      throw Error("shell references an atom outside the geometry");
    }
    const auto& center = geometry.atoms[static_cast<std::size_t>(shell.atom)].position;
    for (int mu = 0; mu < n; ++mu) {
      const double d = grid.distance_to(mu, center);
      double value = std::exp(-shell.exponent * d * d);
      if (shell.angular != AngularTag::kS) {
        const int axis = shell.angular == AngularTag::kPx   ? 0
                         : shell.angular == AngularTag::kPy ? 1
                                                            : 2;
        const auto x = grid.point_coord(mu);
        value *= x[static_cast<std::size_t>(axis)] - center[static_cast<std::size_t>(axis)];
      }
      raw(mu, static_cast<int>(c)) = value;
    }
  }
  return raw;
}

OrbitalSet lowdin_orthonormalize(const Matrix& raw, double threshold, OrbitalKind label) {
  const Matrix gram = raw.transpose() * raw;
  Eigen::SelfAdjointEigenSolver<Matrix> es(gram);
  const Vector evals = es.eigenvalues();
  if (evals(0) < threshold) {
    std::ostringstream msg;
    msg << "column set numerically singular; smallest Gram eigenvalues:";
    for (int i = 0; i < std::min<int>(3, evals.size()); ++i) msg << " " << evals(i);
    throw Error(msg.str());
  }
  const Matrix inv_sqrt =
      es.eigenvectors() * evals.cwiseSqrt().cwiseInverse().asDiagonal() * es.eigenvectors().transpose();
  OrbitalSet out;
  out.phi = raw * inv_sqrt;
  out.labels.assign(static_cast<std::size_t>(out.phi.cols()), label);
  return out;
}

namespace {

// Fock matrix for the diagonal two-body form:
//   F_sigma = h + diag(v * diag(D)) - v .* D_sigma
Matrix fock_matrix(const Matrix& h, const Matrix& v, const Matrix& d_total,
                   const Matrix& d_sigma) {
  const Vector coulomb = v * d_total.diagonal();
  Matrix f = h;
  f += coulomb.asDiagonal();
  f -= v.cwiseProduct(d_sigma);
  return f;
}

double mean_field_energy(const Matrix& h, const Matrix& v, const Matrix& d_total,
                         const Matrix& d_alpha, const Matrix& d_beta) {
  const Vector rho = d_total.diagonal();
  const double direct = 0.5 * rho.dot(v * rho);
  const double exchange =
      0.5 * (v.cwiseProduct(d_alpha).cwiseProduct(d_alpha).sum() +
             v.cwiseProduct(d_beta).cwiseProduct(d_beta).sum());
  return (h.cwiseProduct(d_total)).sum() + direct - exchange;
}

Matrix aufbau_density(const Matrix& fock, int n_occupied, Matrix* orbitals_out = nullptr) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(fock);
  if (orbitals_out) *orbitals_out = es.eigenvectors();
  const Matrix occ = es.eigenvectors().leftCols(n_occupied);
  return occ * occ.transpose();
}

}  // namespace

ScfResult scf_mean_field(const PrimitiveSystem& system, int n_electrons,
                         const ScfOptions& options) {
  const int n = system.grid.num_points;
  if (n_electrons < 0 || n_electrons > 2 * n) throw Error("electron count out of range");
  if (options.convergence <= 0.0) throw Error("convergence tolerance must be positive");

  const Matrix& h = system.h_p;
  const Matrix& v = system.v_p;
  const double e_nuc = system.geometry.nuclear_repulsion;

  ScfResult result;
  if (n_electrons == 0) {
    result.energy = e_nuc;
    result.orbitals.phi = Matrix::Identity(n, n);
    result.orbitals.labels.assign(static_cast<std::size_t>(n), OrbitalKind::kCanonicalMo);
    result.density.d = Matrix::Zero(n, n);
    result.density_alpha = Matrix::Zero(n, n);
    result.density_beta = Matrix::Zero(n, n);
    return result;
  }

  int n_alpha = (n_electrons + 1) / 2;
  int n_beta = n_electrons / 2;
  if (options.kind == ScfKind::kRestricted && n_alpha != n_beta) {
    throw Error("restricted mean field needs an even electron count");
  }

  // Core guess.
  Matrix d_alpha = aufbau_density(h, n_alpha);
  Matrix d_beta = n_beta > 0 ? aufbau_density(h, n_beta) : Matrix::Zero(n, n);

  Matrix orbitals;
  double energy = 0.0;
  double delta = 0.0;
  for (int iter = 0; iter < options.max_iterations; ++iter) {
    const Matrix d_total = d_alpha + d_beta;
    energy = mean_field_energy(h, v, d_total, d_alpha, d_beta) + e_nuc;
    result.energy_history.push_back(energy);

    Matrix new_alpha, new_beta;
    if (options.kind == ScfKind::kRestricted) {
      const Matrix f = fock_matrix(h, v, d_total, d_alpha);
      new_alpha = aufbau_density(f, n_alpha, &orbitals);
      new_beta = new_alpha;
    } else {
      const Matrix f_alpha = fock_matrix(h, v, d_total, d_alpha);
      const Matrix f_beta = fock_matrix(h, v, d_total, d_beta);
      new_alpha = aufbau_density(f_alpha, n_alpha, &orbitals);
      new_beta = n_beta > 0 ? aufbau_density(f_beta, n_beta) : Matrix::Zero(n, n);
    }

    delta = std::max((new_alpha - d_alpha).cwiseAbs().maxCoeff(),
                     (new_beta - d_beta).cwiseAbs().maxCoeff());
    result.iterations = iter + 1;
    if (delta < options.convergence) {
      d_alpha = new_alpha;
      d_beta = new_beta;
      const Matrix d_fin = d_alpha + d_beta;
      result.energy = mean_field_energy(h, v, d_fin, d_alpha, d_beta) + e_nuc;
      result.orbitals.phi = orbitals;
      result.orbitals.labels.assign(static_cast<std::size_t>(orbitals.cols()),
                                    OrbitalKind::kCanonicalMo);
      result.density.d = d_fin;
      result.density_alpha = d_alpha;
      result.density_beta = d_beta;
      return result;
    }
    d_alpha += options.mixing * (new_alpha - d_alpha);
    d_beta += options.mixing * (new_beta - d_beta);
  }
  std::ostringstream msg;
  msg << "mean field did not converge in " << options.max_iterations
      << " iterations (last energy " << energy << ", |dD| " << delta << ")";
  throw ConvergenceError(msg.str(), energy, delta);
}

DensityMatrix hybrid_density(const DensityMatrix& d_uhf, const DensityMatrix& d_gauss,
                             double alpha) {
  if (alpha < 0.0) throw Error("hybrid weight must be nonnegative");
  if (d_uhf.d.rows() != d_gauss.d.rows() || d_uhf.d.cols() != d_gauss.d.cols()) {
    throw Error("density matrix dimension mismatch");
  }
  DensityMatrix out;
  out.d = d_uhf.d + alpha * d_gauss.d;
  return out;
}

DensityMatrix span_projector(const OrbitalSet& orbitals) {
  DensityMatrix out;
  out.d = orbitals.phi * orbitals.phi.transpose();
  return out;
}

OrbitalSet natural_orbitals(const DensityMatrix& density, const NaturalOrbitalRule& rule,
                            std::vector<double>* occupations) {
  const int n = static_cast<int>(density.d.rows());
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (density.d + density.d.transpose()));

  int keep = 0;
  if (rule.kind == NaturalOrbitalRule::Kind::kCount) {
    if (rule.count > n) throw Error("cannot keep more natural orbitals than grid points");
    keep = rule.count;
  } else {
    for (int i = 0; i < n; ++i) {
      if (es.eigenvalues()(i) >= rule.threshold) ++keep;
    }
  }

  OrbitalSet out;
  out.phi = Matrix(n, keep);
  if (occupations) occupations->clear();
  for (int j = 0; j < keep; ++j) {
    const int src = n - 1 - j;  // eigenvalue-descending
    Vector col = es.eigenvectors().col(src);
    // Deterministic sign: largest-magnitude component positive.
    int arg = 0;
    col.cwiseAbs().maxCoeff(&arg);
    if (col(arg) < 0.0) col = -col;
    out.phi.col(j) = col;
    if (occupations) occupations->push_back(es.eigenvalues()(src));
  }
  out.labels.assign(static_cast<std::size_t>(keep), OrbitalKind::kNaturalOrbital);
  return out;
}

ActiveHamiltonian project_active_hamiltonian(const PrimitiveSystem& system,
                                             const OrbitalSet& orbitals) {
  const Matrix& phi = orbitals.phi;
  if (phi.rows() != system.h_p.rows()) throw Error("orbital/system dimension mismatch");
  const int np = static_cast<int>(phi.rows());
  const int na = static_cast<int>(phi.cols());

  ActiveHamiltonian out;
  Matrix h_eff = system.h_p;
  if (system.include_self_term) {
    // Reordering the on-site n n term leaves a one-body remainder.
    h_eff += (0.5 * system.v_p.diagonal()).asDiagonal();
  }
  out.h_a = phi.transpose() * h_eff * phi;
  out.core_energy = system.geometry.nuclear_repulsion;

  // v_a[p][q][r][s] = sum_{mu nu} (phi_mu_p phi_mu_s) v_mu_nu (phi_nu_q phi_nu_r).
  // Matricized: G = P v P^T with P[(p,s)][mu] = phi_mu_p phi_mu_s.
  Matrix pair_density(na * na, np);
  for (int p = 0; p < na; ++p) {
    for (int s = 0; s < na; ++s) {
      pair_density.row(p * na + s) = phi.col(p).cwiseProduct(phi.col(s)).transpose();
    }
  }
  const Matrix g = pair_density * system.v_p * pair_density.transpose();

  out.v_a = Tensor4(na, na, na, na);
  for (int p = 0; p < na; ++p) {
    for (int q = 0; q < na; ++q) {
      for (int r = 0; r < na; ++r) {
        for (int s = 0; s < na; ++s) {
          out.v_a(p, q, r, s) = g(p * na + s, q * na + r);
        }
      }
    }
  }
  return out;
}

}  // namespace dgblock
