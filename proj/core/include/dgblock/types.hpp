#pragma once

#include <Eigen/Dense>

#include <array>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace dgblock {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// Thrown for contract violations (bad inputs, malformed files, size caps).
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Thrown when an iterative solver fails to converge; carries the last state.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double last_energy, double last_delta)
      : Error(what), last_energy(last_energy), last_delta(last_delta) {}
  double last_energy;
  double last_delta;
};

// Thrown for numerical failures that indicate a convention or data bug
// (e.g. a matrix that should be positive semidefinite is not).
class NumericalError : public Error {
 public:
  explicit NumericalError(const std::string& what) : Error(what) {}
};

// Dense 4-index tensor with fixed dimensions, row-major over (a,b,c,d).
class Tensor4 {
 public:
  Tensor4() : dims_{0, 0, 0, 0} {}
  Tensor4(int d0, int d1, int d2, int d3)
      : dims_{d0, d1, d2, d3},
        data_(static_cast<std::size_t>(d0) * d1 * d2 * d3, 0.0) {}

  double& operator()(int a, int b, int c, int d) {
    return data_[index(a, b, c, d)];
  }
  double operator()(int a, int b, int c, int d) const {
    return data_[index(a, b, c, d)];
  }

  const std::array<int, 4>& dims() const { return dims_; }
  int dim(int k) const { return dims_[static_cast<std::size_t>(k)]; }
  std::size_t size() const { return data_.size(); }
  const std::vector<double>& data() const { return data_; }
  std::vector<double>& data() { return data_; }

 private:
  std::size_t index(int a, int b, int c, int d) const {
    return ((static_cast<std::size_t>(a) * dims_[1] + b) * dims_[2] + c) * dims_[3] + d;
  }
  std::array<int, 4> dims_;
  std::vector<double> data_;
};

// Sparse 4-index tensor as an explicit, lexicographically sorted entry list.
struct SparseEntry4 {
  int p, q, r, s;
  double value;
};

struct SparseFourIndex {
  int dim = 0;
  std::vector<SparseEntry4> entries;  // sorted by (p,q,r,s)
};

}  // namespace dgblock
