#pragma once

//
// Model systems with a diagonal two-body kernel on a uniform real-space
// grid: soft-Coulomb interactions, finite-difference or periodic-sinc
// kinetic operators, and the assembled one-/two-body coefficient matrices.
//

#include <dgblock/types.hpp>

namespace dgblock {

struct Atom {
  double charge = 1.0;                 // Z, dimensionless
  std::array<double, 3> position{};    // bohr; y,z unused for 1D
};

struct Geometry {
  int dimension = 1;  // 1 or 3
  std::vector<Atom> atoms;
  double softening = 1.0;          // kernel parameter a, bohr
  double nuclear_repulsion = 0.0;  // hartree, from the softened kernel
};

// Builds a geometry and evaluates the nuclear repulsion
//   E_II = sum_{I<J} Z_I Z_J / sqrt(|R_I - R_J|^2 + a^2).
Geometry make_geometry(int dimension, std::vector<Atom> atoms, double softening);

// Convenience: equally spaced chain of unit charges along x, centered at 0.
Geometry make_chain(int n_atoms, double bond_length, double softening);

enum class KineticScheme {
  kFiniteDifference2,  // 3-point stencil per axis
  kSpectralSinc,       // exact periodic-sinc Laplacian
};

struct Grid {
  int dimension = 1;
  std::array<int, 3> extents{1, 1, 1};     // points per axis
  std::array<double, 3> spacing{1, 1, 1};  // bohr per axis
  std::array<double, 3> origin{0, 0, 0};   // coordinate of point (0,0,0)
  bool periodic = false;                   // wrap-around distances and stencils
  int num_points = 1;                      // product of extents

  // Point ordering: axis 0 fastest, last axis slowest, so slabs along the
  // last axis are contiguous index ranges.
  std::array<int, 3> point_index(int mu) const;
  std::array<double, 3> point_coord(int mu) const;
  // Euclidean distance; minimum-image when periodic.
  double distance(int mu, int nu) const;
  double distance_to(int mu, const std::array<double, 3>& x) const;
};

// Uniform grid covering the bounding box of the atoms extended by `padding`
// on each side; anchored at the padded lower corner. Open boundaries.
Grid build_grid(const Geometry& geometry, double spacing, double padding);

// Uniform periodic grid with given extents, anchored at `origin`.
Grid build_periodic_grid(int dimension, std::array<int, 3> extents, double spacing,
                         std::array<double, 3> origin = {0, 0, 0});

// -1/2 Laplacian on the grid. The finite-difference variant uses the 3-point
// stencil per axis (wrapping when the grid is periodic); the spectral variant
// is the periodic-sinc Laplacian, diagonal in the discrete Fourier basis with
// eigenvalues k^2/2, and requires a periodic grid interpretation.
Matrix kinetic_matrix(const Grid& grid, KineticScheme scheme);

// Analytic Fourier eigenvalues {k^2/2} of the spectral kinetic matrix,
// unsorted, one per grid point.
std::vector<double> spectral_kinetic_eigenvalues(const Grid& grid);

struct DiagonalKernel {
  Vector external;  // -sum_I Z_I / sqrt(|R_I - r_mu|^2 + a^2)
  Matrix v;         // 1 / sqrt(|r_mu - r_nu|^2 + a^2)
};

// Softened Coulomb kernel and external potential. The diagonal of `v` is the
// on-site value 1/a; callers decide whether to keep or zero it.
DiagonalKernel diagonal_kernel(const Grid& grid, const Geometry& geometry, double softening);

struct PrimitiveSystem {
  Grid grid;
  Geometry geometry;
  Matrix h_p;  // kinetic + diag(external), hartree
  Matrix v_p;  // diagonal two-body kernel, hartree; zero diagonal unless
               // include_self_term
  KineticScheme kinetic_scheme = KineticScheme::kFiniteDifference2;
  double softening = 1.0;
  bool include_self_term = false;
};

PrimitiveSystem assemble_primitive(const Grid& grid, const Geometry& geometry,
                                   KineticScheme scheme, double softening,
                                   bool include_self_term = false);

}  // namespace dgblock
