#include <dgblock/primitive.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace dgblock {

namespace {

double soft_coulomb(double distance, double a) {
  return 1.0 / std::sqrt(distance * distance + a * a);
}

double atom_distance(const Atom& a, const Atom& b, int dimension) {
  double d2 = 0.0;
  for (int k = 0; k < dimension; ++k) {
    const double d = a.position[static_cast<std::size_t>(k)] - b.position[static_cast<std::size_t>(k)];
    d2 += d * d;
  }
  return std::sqrt(d2);
}

}  // namespace

Geometry make_geometry(int dimension, std::vector<Atom> atoms, double softening) {
  if (dimension != 1 && dimension != 3) throw Error("geometry dimension must be 1 or 3");
  if (softening <= 0.0) throw Error("softening parameter must be positive");
  for (const auto& atom : atoms) {
    if (atom.charge <= 0.0) throw Error("atomic charge must be positive");
  }
  Geometry g;
  g.dimension = dimension;
  g.atoms = std::move(atoms);
  g.softening = softening;
  for (std::size_t i = 0; i < g.atoms.size(); ++i) {
    for (std::size_t j = i + 1; j < g.atoms.size(); ++j) {
      const double d = atom_distance(g.atoms[i], g.atoms[j], dimension);
      if (d == 0.0) throw Error("atom positions must be pairwise distinct");
      g.nuclear_repulsion += g.atoms[i].charge * g.atoms[j].charge * soft_coulomb(d, softening);
    }
  }
  return g;
}

Geometry make_chain(int n_atoms, double bond_length, double softening) {
  if (n_atoms < 1) throw Error("chain needs at least one atom");
  std::vector<Atom> atoms;
  atoms.reserve(static_cast<std::size_t>(n_atoms));
  const double x0 = -0.5 * bond_length * (n_atoms - 1);
  for (int i = 0; i < n_atoms; ++i) {
    atoms.push_back(Atom{1.0, {x0 + bond_length * i, 0.0, 0.0}});
  }
  return make_geometry(1, std::move(atoms), softening);
}

std::array<int, 3> Grid::point_index(int mu) const {
  std::array<int, 3> idx{0, 0, 0};
  int rest = mu;
  for (int k = 0; k < dimension; ++k) {
    idx[static_cast<std::size_t>(k)] = rest % extents[static_cast<std::size_t>(k)];
    rest /= extents[static_cast<std::size_t>(k)];
  }
  return idx;
}

std::array<double, 3> Grid::point_coord(int mu) const {
  const auto idx = point_index(mu);
  std::array<double, 3> x{0, 0, 0};
  for (int k = 0; k < dimension; ++k) {
    x[static_cast<std::size_t>(k)] =
        origin[static_cast<std::size_t>(k)] + spacing[static_cast<std::size_t>(k)] * idx[static_cast<std::size_t>(k)];
  }
  return x;
}

double Grid::distance(int mu, int nu) const {
  const auto a = point_index(mu);
  const auto b = point_index(nu);
  double d2 = 0.0;
  for (int k = 0; k < dimension; ++k) {
    const auto ku = static_cast<std::size_t>(k);
    double dk = static_cast<double>(a[ku] - b[ku]);
    if (periodic) {
      const double n = extents[ku];
      dk = dk - n * std::round(dk / n);  // minimum image in index space
    }
    dk *= spacing[ku];
    d2 += dk * dk;
  }
  return std::sqrt(d2);
}

double Grid::distance_to(int mu, const std::array<double, 3>& x) const {
  const auto p = point_coord(mu);
  double d2 = 0.0;
  for (int k = 0; k < dimension; ++k) {
    const auto ku = static_cast<std::size_t>(k);
    double dk = p[ku] - x[ku];
    if (periodic) {
      const double length = extents[ku] * spacing[ku];
      dk = dk - length * std::round(dk / length);
    }
    d2 += dk * dk;
  }
  return std::sqrt(d2);
}

Grid build_grid(const Geometry& geometry, double spacing, double padding) {
  if (geometry.atoms.empty()) throw Error("empty geometry");
  if (spacing <= 0.0) throw Error("grid spacing must be positive");
  if (padding < 0.0) throw Error("grid padding must be nonnegative");

  Grid grid;
  grid.dimension = geometry.dimension;
  grid.periodic = false;
  grid.num_points = 1;
  for (int k = 0; k < grid.dimension; ++k) {
    const auto ku = static_cast<std::size_t>(k);
    double lo = geometry.atoms.front().position[ku];
    double hi = lo;
    for (const auto& atom : geometry.atoms) {
      lo = std::min(lo, atom.position[ku]);
      hi = std::max(hi, atom.position[ku]);
    }
    lo -= padding;
    hi += padding;
    const double span = hi - lo;
    // Enough cells to cover the padded box; tolerance absorbs roundoff when
    // span is an exact multiple of the spacing.
    const int cells = static_cast<int>(std::ceil(span / spacing - 1e-9));
    grid.extents[ku] = cells + 1;
    grid.spacing[ku] = spacing;
    grid.origin[ku] = lo;
    grid.num_points *= grid.extents[ku];
  }
  return grid;
}

Grid build_periodic_grid(int dimension, std::array<int, 3> extents, double spacing,
                         std::array<double, 3> origin) {
  if (dimension != 1 && dimension != 3) throw Error("grid dimension must be 1 or 3");
  if (spacing <= 0.0) throw Error("grid spacing must be positive");
  Grid grid;
  grid.dimension = dimension;
  grid.periodic = true;
  grid.origin = origin;
  grid.num_points = 1;
  for (int k = 0; k < dimension; ++k) {
    const auto ku = static_cast<std::size_t>(k);
    if (extents[ku] < 2) throw Error("periodic grid needs at least 2 points per axis");
    grid.extents[ku] = extents[ku];
    grid.spacing[ku] = spacing;
    grid.num_points *= extents[ku];
  }
  return grid;
}

namespace {

// 1D -1/2 d^2/dx^2 with the 3-point stencil; wraps when periodic.
Matrix fd2_axis(int n, double h, bool periodic) {
  Matrix t = Matrix::Zero(n, n);
  const double diag = 1.0 / (h * h);
  const double off = -0.5 / (h * h);
  for (int i = 0; i < n; ++i) {
    t(i, i) = diag;
    if (i + 1 < n) {
      t(i, i + 1) = off;
      t(i + 1, i) = off;
    }
  }
  if (periodic && n > 2) {
    t(0, n - 1) += off;
    t(n - 1, 0) += off;
  } else if (periodic && n == 2) {
    // Both neighbors alias onto the same point.
    t(0, 1) += off;
    t(1, 0) += off;
  }
  return t;
}

// Fourier frequencies for an n-point ring with spacing h.
std::vector<double> fourier_modes(int n, double h) {
  std::vector<double> k(static_cast<std::size_t>(n));
  const double dk = 2.0 * std::numbers::pi / (n * h);
  for (int m = 0; m < n; ++m) {
    const int shifted = (m <= n / 2) ? m : m - n;  // symmetric set
    k[static_cast<std::size_t>(m)] = dk * shifted;
  }
  return k;
}

// Periodic-sinc Laplacian: T = F^H diag(k^2/2) F, assembled in real space.
// Entries depend only on the index difference; imaginary parts cancel.
Matrix sinc_axis(int n, double h) {
  const auto modes = fourier_modes(n, h);
  std::vector<double> row(static_cast<std::size_t>(n), 0.0);
  for (int d = 0; d < n; ++d) {
    double sum = 0.0;
    for (int m = 0; m < n; ++m) {
      const double k = modes[static_cast<std::size_t>(m)];
      sum += 0.5 * k * k * std::cos(k * d * h);
    }
    row[static_cast<std::size_t>(d)] = sum / n;
  }
  Matrix t(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      int d = std::abs(i - j);
      t(i, j) = row[static_cast<std::size_t>(d)];
    }
  }
  // Exact symmetry by construction of |i-j|.
  return t;
}

}  // namespace

Matrix kinetic_matrix(const Grid& grid, KineticScheme scheme) {
  std::array<Matrix, 3> axis;
  for (int k = 0; k < grid.dimension; ++k) {
    const auto ku = static_cast<std::size_t>(k);
    switch (scheme) {
      case KineticScheme::kFiniteDifference2:
        axis[ku] = fd2_axis(grid.extents[ku], grid.spacing[ku], grid.periodic);
        break;
      case KineticScheme::kSpectralSinc:
        axis[ku] = sinc_axis(grid.extents[ku], grid.spacing[ku]);
        break;
      default:
        throw Error("unknown kinetic scheme");
    }
  }
  if (grid.dimension == 1) return axis[0];

  // Kronecker sum over axes: T = T_x (x) I (x) I + I (x) T_y (x) I + ...
  const int n = grid.num_points;
  Matrix t = Matrix::Zero(n, n);
  for (int mu = 0; mu < n; ++mu) {
    const auto a = grid.point_index(mu);
    for (int nu = 0; nu < n; ++nu) {
      const auto b = grid.point_index(nu);
      double val = 0.0;
      for (int k = 0; k < grid.dimension; ++k) {
        const auto ku = static_cast<std::size_t>(k);
        bool others_match = true;
        for (int k2 = 0; k2 < grid.dimension; ++k2) {
          if (k2 != k && a[static_cast<std::size_t>(k2)] != b[static_cast<std::size_t>(k2)]) {
            others_match = false;
            break;
          }
        }
        if (others_match) val += axis[ku](a[ku], b[ku]);
      }
      t(mu, nu) = val;
    }
  }
  return t;
}

std::vector<double> spectral_kinetic_eigenvalues(const Grid& grid) {
  std::vector<double> eigs;
  eigs.reserve(static_cast<std::size_t>(grid.num_points));
  std::array<std::vector<double>, 3> modes;
  for (int k = 0; k < grid.dimension; ++k) {
    const auto ku = static_cast<std::size_t>(k);
    modes[ku] = fourier_modes(grid.extents[ku], grid.spacing[ku]);
  }
  for (int mu = 0; mu < grid.num_points; ++mu) {
    const auto idx = grid.point_index(mu);
    double val = 0.0;
    for (int k = 0; k < grid.dimension; ++k) {
      const auto ku = static_cast<std::size_t>(k);
      const double km = modes[ku][static_cast<std::size_t>(idx[ku])];
      val += 0.5 * km * km;
    }
    eigs.push_back(val);
  }
  return eigs;
}

DiagonalKernel diagonal_kernel(const Grid& grid, const Geometry& geometry, double softening) {
  if (softening <= 0.0) throw Error("softening parameter must be positive");
  const int n = grid.num_points;
  DiagonalKernel out;
  out.external = Vector::Zero(n);
  out.v = Matrix::Zero(n, n);
  for (int mu = 0; mu < n; ++mu) {
    double ext = 0.0;
    for (const auto& atom : geometry.atoms) {
      ext -= atom.charge * soft_coulomb(grid.distance_to(mu, atom.position), softening);
    }
    out.external(mu) = ext;
    for (int nu = mu; nu < n; ++nu) {
      const double val = soft_coulomb(grid.distance(mu, nu), softening);
      out.v(mu, nu) = val;
      out.v(nu, mu) = val;
    }
  }
  return out;
}

PrimitiveSystem assemble_primitive(const Grid& grid, const Geometry& geometry,
                                   KineticScheme scheme, double softening,
                                   bool include_self_term) {
  PrimitiveSystem sys;
  sys.grid = grid;
  sys.geometry = geometry;
  sys.kinetic_scheme = scheme;
  sys.softening = softening;
  sys.include_self_term = include_self_term;

  const auto kernel = diagonal_kernel(grid, geometry, softening);
  sys.h_p = kinetic_matrix(grid, scheme);
  sys.h_p += kernel.external.asDiagonal();
  sys.v_p = kernel.v;
  if (!include_self_term) {
    sys.v_p.diagonal().setZero();
  }
  return sys;
}

}  // namespace dgblock
