#include <dgblock/blockham.hpp>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace dgblock {

int BlockTwoBody::total_functions() const {
  int total = 0;
  for (int n : block_sizes_) total += n;
  return total;
}

int BlockTwoBody::block_offset(int block) const {
  int offset = 0;
  for (int b = 0; b < block; ++b) offset += block_sizes_[static_cast<std::size_t>(b)];
  return offset;
}

const Tensor4& BlockTwoBody::pair(int ka, int kb) const {
  auto it = pairs_.find({ka, kb});
  if (it == pairs_.end()) throw Error("block pair not stored");
  return it->second;
}

Tensor4& BlockTwoBody::pair_mutable(int ka, int kb) {
  auto it = pairs_.find({ka, kb});
  if (it == pairs_.end()) throw Error("block pair not stored");
  return it->second;
}

void BlockTwoBody::set_pair(int ka, int kb, Tensor4 tensor) {
  if (ka > kb) throw Error("pair tensors are stored for ka <= kb");
  pairs_[{ka, kb}] = std::move(tensor);
}

double BlockTwoBody::entry(int ka, int i, int kb, int ip, int jp, int j) const {
  if (ka <= kb) return pair(ka, kb)(i, ip, jp, j);
  return pair(kb, ka)(ip, i, j, jp);
}

std::size_t BlockTwoBody::stored_entry_count() const {
  std::size_t total = 0;
  for (const auto& [key, tensor] : pairs_) total += tensor.size();
  return total;
}

std::size_t BlockTwoBody::expanded_entry_count() const {
  std::size_t total = 0;
  for (const auto& [key, tensor] : pairs_) {
    total += tensor.size();
    if (key.first != key.second) total += tensor.size();
  }
  return total;
}

BlockOneBody transform_onebody(const PrimitiveSystem& system, const DGBasis& dg) {
  if (dg.partition.total_points() != system.grid.num_points) {
    throw Error("basis was built over a different grid");
  }
  Matrix h_eff = system.h_p;
  if (system.include_self_term) {
    h_eff += (0.5 * system.v_p.diagonal()).asDiagonal();
  }
  const Matrix u = dg_block_diagonal_matrix(dg);
  BlockOneBody out;
  out.h_d = u.transpose() * h_eff * u;
  return out;
}

BlockTwoBody transform_twobody(const PrimitiveSystem& system, const DGBasis& dg) {
  if (dg.partition.total_points() != system.grid.num_points) {
    throw Error("basis was built over a different grid");
  }
  const int nb = dg.partition.count();
  BlockTwoBody out(dg.n_kappa);

  // Per-block pair densities A[(i,j)][mu] = U[mu][i] U[mu][j].
  std::vector<Matrix> pair_density(static_cast<std::size_t>(nb));
  for (int b = 0; b < nb; ++b) {
    const Matrix& u = dg.u_blocks[static_cast<std::size_t>(b)];
    const int n = dg.n_kappa[static_cast<std::size_t>(b)];
    const int rows = static_cast<int>(u.rows());
    Matrix a(n * n, rows);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        a.row(i * n + j) = u.col(i).cwiseProduct(u.col(j)).transpose();
      }
    }
    pair_density[static_cast<std::size_t>(b)] = std::move(a);
  }

  for (int ka = 0; ka < nb; ++ka) {
    const auto& block_a = dg.partition.blocks[static_cast<std::size_t>(ka)];
    const int na = dg.n_kappa[static_cast<std::size_t>(ka)];
    for (int kb = ka; kb < nb; ++kb) {
      const auto& block_b = dg.partition.blocks[static_cast<std::size_t>(kb)];
      const int nbk = dg.n_kappa[static_cast<std::size_t>(kb)];

      Matrix v_sub(static_cast<int>(block_a.size()), static_cast<int>(block_b.size()));
      for (std::size_t r = 0; r < block_a.size(); ++r) {
        for (std::size_t c = 0; c < block_b.size(); ++c) {
          v_sub(static_cast<int>(r), static_cast<int>(c)) =
              system.v_p(block_a[r], block_b[c]);
        }
      }
      const Matrix w = pair_density[static_cast<std::size_t>(ka)] * v_sub *
                       pair_density[static_cast<std::size_t>(kb)].transpose();

      Tensor4 tensor(na, nbk, nbk, na);
      for (int i = 0; i < na; ++i) {
        for (int ip = 0; ip < nbk; ++ip) {
          for (int jp = 0; jp < nbk; ++jp) {
            for (int j = 0; j < na; ++j) {
              tensor(i, ip, jp, j) = w(i * na + j, ip * nbk + jp);
            }
          }
        }
      }
      out.set_pair(ka, kb, std::move(tensor));
    }
  }
  return out;
}

SparseFourIndex expand_to_full(const BlockTwoBody& v) {
  SparseFourIndex out;
  out.dim = v.total_functions();
  const int nb = v.n_blocks();
  for (int ka = 0; ka < nb; ++ka) {
    const int oa = v.block_offset(ka);
    const int na = v.block_sizes()[static_cast<std::size_t>(ka)];
    for (int kb = 0; kb < nb; ++kb) {
      const int ob = v.block_offset(kb);
      const int nbk = v.block_sizes()[static_cast<std::size_t>(kb)];
      for (int i = 0; i < na; ++i) {
        for (int ip = 0; ip < nbk; ++ip) {
          for (int jp = 0; jp < nbk; ++jp) {
            for (int j = 0; j < na; ++j) {
              const double val = v.entry(ka, i, kb, ip, jp, j);
              out.entries.push_back({oa + i, ob + ip, ob + jp, oa + j, val});
            }
          }
        }
      }
    }
  }
  std::sort(out.entries.begin(), out.entries.end(), [](const SparseEntry4& a, const SparseEntry4& b) {
    return std::tie(a.p, a.q, a.r, a.s) < std::tie(b.p, b.q, b.r, b.s);
  });
  return out;
}

BlockTwoBody extract_from_full(const SparseFourIndex& full, const std::vector<int>& block_sizes) {
  BlockTwoBody out(block_sizes);
  const int nb = out.n_blocks();
  std::vector<int> owner(static_cast<std::size_t>(full.dim), -1);
  for (int b = 0; b < nb; ++b) {
    const int off = out.block_offset(b);
    for (int j = 0; j < block_sizes[static_cast<std::size_t>(b)]; ++j) {
      owner[static_cast<std::size_t>(off + j)] = b;
    }
  }
  for (int ka = 0; ka < nb; ++ka) {
    for (int kb = ka; kb < nb; ++kb) {
      out.set_pair(ka, kb,
                   Tensor4(block_sizes[static_cast<std::size_t>(ka)],
                           block_sizes[static_cast<std::size_t>(kb)],
                           block_sizes[static_cast<std::size_t>(kb)],
                           block_sizes[static_cast<std::size_t>(ka)]));
    }
  }
  for (const auto& e : full.entries) {
    const int ka = owner[static_cast<std::size_t>(e.p)];
    const int kb = owner[static_cast<std::size_t>(e.q)];
    if (owner[static_cast<std::size_t>(e.s)] != ka || owner[static_cast<std::size_t>(e.r)] != kb) {
      throw Error("expansion entry violates the block pattern");
    }
    const int i = e.p - out.block_offset(ka);
    const int ip = e.q - out.block_offset(kb);
    const int jp = e.r - out.block_offset(kb);
    const int j = e.s - out.block_offset(ka);
    if (ka <= kb) {
      out.pair_mutable(ka, kb)(i, ip, jp, j) = e.value;
    } else {
      out.pair_mutable(kb, ka)(ip, i, j, jp) = e.value;
    }
  }
  return out;
}

void write_integral_file(const std::string& path, const Matrix& h, const Tensor4& v,
                         double core_energy, int n_electrons, double threshold) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open integral file for writing: " + path);
  const int n = static_cast<int>(h.rows());
  char buf[128];
  out << "&FCI NORB=" << n << " NELEC=" << n_electrons << " MS2=0 ORDER=PQRS /\n";
  for (int p = 0; p < n; ++p) {
    for (int q = 0; q < n; ++q) {
      for (int r = 0; r < n; ++r) {
        for (int s = 0; s < n; ++s) {
          const double val = v(p, q, r, s);
          if (std::abs(val) <= threshold) continue;
          std::snprintf(buf, sizeof(buf), "%.16e %d %d %d %d\n", val, p + 1, q + 1, r + 1, s + 1);
          out << buf;
        }
      }
    }
  }
  for (int p = 0; p < n; ++p) {
    for (int q = 0; q < n; ++q) {
      if (std::abs(h(p, q)) <= threshold) continue;
      std::snprintf(buf, sizeof(buf), "%.16e %d %d 0 0\n", h(p, q), p + 1, q + 1);
      out << buf;
    }
  }
  std::snprintf(buf, sizeof(buf), "%.16e 0 0 0 0\n", core_energy);
  out << buf;
}

IntegralFile read_integral_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open integral file: " + path);
  std::string header;
  std::getline(in, header);
  IntegralFile out;
  {
    const auto norb_pos = header.find("NORB=");
    const auto nelec_pos = header.find("NELEC=");
    if (norb_pos == std::string::npos) throw Error("integral file missing NORB");
    out.n_orbitals = std::stoi(header.substr(norb_pos + 5));
    if (nelec_pos != std::string::npos) out.n_electrons = std::stoi(header.substr(nelec_pos + 6));
  }
  const int n = out.n_orbitals;
  out.h = Matrix::Zero(n, n);
  out.v = Tensor4(n, n, n, n);
  double val;
  int p, q, r, s;
  while (in >> val >> p >> q >> r >> s) {
    if (p == 0 && q == 0) {
      out.core = val;
    } else if (r == 0 && s == 0) {
      out.h(p - 1, q - 1) = val;
    } else {
      out.v(p - 1, q - 1, r - 1, s - 1) = val;
    }
  }
  return out;
}

}  // namespace dgblock
