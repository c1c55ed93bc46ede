#pragma once

//
// Active-space construction on top of a primitive system: Gaussian shells
// sampled on the grid, Loewdin orthonormalization, a small self-consistent
// mean field, hybrid densities, natural orbitals, and the dense projection
// of the Hamiltonian into the active orbitals.
//

#include <dgblock/primitive.hpp>
#include <dgblock/types.hpp>

#include <optional>

namespace dgblock {

enum class OrbitalKind { kGaussianShell, kCanonicalMo, kNaturalOrbital };

struct OrbitalSet {
  Matrix phi;                       // N_p x N_a, orthonormal columns
  std::vector<OrbitalKind> labels;  // one per column
  int count() const { return static_cast<int>(phi.cols()); }
};

struct DensityMatrix {
  Matrix d;  // N_p x N_p, symmetric
  double trace() const { return d.trace(); }
};

struct ActiveHamiltonian {
  Matrix h_a;         // N_a x N_a
  Tensor4 v_a;        // N_a^4, slot order matching a+_p a+_q a_r a_s
  double core_energy = 0.0;
  int count() const { return static_cast<int>(h_a.rows()); }
};

enum class AngularTag { kS, kPx, kPy, kPz };

struct Shell {
  int atom = 0;        // index into geometry.atoms
  double exponent = 1.0;
  AngularTag angular = AngularTag::kS;
};

// Point-sampled Gaussian columns, one per shell; not yet orthonormal.
Matrix sample_gaussians(const Grid& grid, const Geometry& geometry,
                        const std::vector<Shell>& shells);

// Symmetric (Loewdin) orthonormalization phi = raw * S^{-1/2}. Fails when the
// column Gram matrix has an eigenvalue below `threshold`.
OrbitalSet lowdin_orthonormalize(const Matrix& raw, double threshold = 1e-10,
                                 OrbitalKind label = OrbitalKind::kGaussianShell);

enum class ScfKind { kRestricted, kUnrestricted };

struct ScfOptions {
  ScfKind kind = ScfKind::kRestricted;
  int max_iterations = 200;
  double convergence = 1e-10;  // max |Delta D|
  double mixing = 0.3;         // weight of the new density per iteration
};

struct ScfResult {
  double energy = 0.0;           // includes nuclear repulsion
  OrbitalSet orbitals;           // canonical orbitals (all N_p columns)
  DensityMatrix density;         // spin-summed
  Matrix density_alpha;
  Matrix density_beta;
  int iterations = 0;
  std::vector<double> energy_history;
};

ScfResult scf_mean_field(const PrimitiveSystem& system, int n_electrons,
                         const ScfOptions& options = {});

// D = D_uhf + alpha * D_gauss.
DensityMatrix hybrid_density(const DensityMatrix& d_uhf, const DensityMatrix& d_gauss,
                             double alpha);

// Projector onto the span of an orthonormal set, trace = column count.
DensityMatrix span_projector(const OrbitalSet& orbitals);

struct NaturalOrbitalRule {
  enum class Kind { kCount, kOccupationThreshold } kind = Kind::kCount;
  int count = 0;
  double threshold = 0.0;
  static NaturalOrbitalRule keep_count(int n) { return {Kind::kCount, n, 0.0}; }
  static NaturalOrbitalRule keep_occupation(double t) {
    return {Kind::kOccupationThreshold, 0, t};
  }
};

// Eigenvectors of D with the largest eigenvalues, eigenvalue-descending,
// each column signed so its largest-magnitude entry is positive.
OrbitalSet natural_orbitals(const DensityMatrix& density, const NaturalOrbitalRule& rule,
                            std::vector<double>* occupations = nullptr);

// h_a = Phi^T h_p Phi;  v_a[p][q][r][s] = sum_{mu,nu} Phi_mu_p Phi_nu_q
// v_p[mu][nu] Phi_nu_r Phi_mu_s. When the system keeps the on-site kernel
// term, the reordering correction (1/2) diag(v_p) is folded into h_a.
ActiveHamiltonian project_active_hamiltonian(const PrimitiveSystem& system,
                                             const OrbitalSet& orbitals);

}  // namespace dgblock
