#pragma once

//
// Cost observables for comparing Hamiltonian representations: thresholded
// nonzero counts, the coefficient 1-norm lambda, power-law scaling fits,
// crossover detection, and a table-lookup cost comparator.
//

#include <dgblock/blockham.hpp>
#include <dgblock/types.hpp>

#include <optional>

namespace dgblock {

// Entries with |value| > cutoff. For the block tensor the count runs over the
// full ordered-pair expansion (structural zeros count as zeros), so it is
// directly comparable with dense representations.
std::size_t count_nonzero(const Matrix& v, double cutoff = 1e-6);
std::size_t count_nonzero(const Tensor4& v, double cutoff = 1e-6);
std::size_t count_nonzero(const BlockTwoBody& v, double cutoff = 1e-6);

// How a 4-index tuple is read when deciding which entries are the
// number-operator ("low order") terms.
enum class TwoBodyLayout {
  // (c1, c2, a1, a2): creation pair first, annihilation pair second, with
  // kernel legs (c1,a1) and (c2,a2); number terms sit at c1==a1 && c2==a2,
  // i.e. tuple positions 1==3 and 2==4.
  kLegListed,
  // Operator slots a+_p a+_q a_r a_s with legs (p,s) and (q,r); number terms
  // sit at p==s && q==r.
  kOperatorSlots,
};

// Sum of |coefficient| over the two-body tensor, optionally skipping the
// number-operator terms of the declared layout.
double lambda_metric(const Tensor4& v, bool exclude_number_terms = true,
                     TwoBodyLayout layout = TwoBodyLayout::kLegListed);
// Block form; cross pairs contribute for both block orderings, matching the
// full expanded index range. Stored pair tensors are leg-listed by
// construction: number terms are i==j && i'==j'.
double lambda_metric(const BlockTwoBody& v, bool exclude_number_terms = true);

struct ScalingFit {
  double exponent = 0.0;   // alpha in  value ~ c + amplitude * N^alpha
  double offset = 0.0;     // c
  double amplitude = 0.0;
  double residual = 0.0;   // rms of relative residuals over the fitted points
  std::string fit_range;
};

// Least-squares fit of value ~ c + a*N^alpha with relative (log-scale)
// weighting, dropping the first point. Constant series degrade to
// alpha = 0, c = mean.
ScalingFit fit_scaling(const std::vector<std::pair<double, double>>& points);

// Smallest N where b < a strictly and stays below through the end of the
// common grid; nullopt when no such N exists.
std::optional<double> detect_crossover(const std::vector<std::pair<double, double>>& series_a,
                                       const std::vector<std::pair<double, double>>& series_b);

struct LcuEstimate {
  double terms = 0.0;        // L
  double table_split = 0.0;  // g
  double lambda = 0.0;
  double time = 0.0;
  double epsilon = 0.0;
  double prepare_cost = 0.0;      // L/g + g
  double select_cost = 0.0;       // sqrt(L), same unit scale
  double total_cost = 0.0;        // (prepare + select) * lambda * t
  double measurement_count = 0.0; // lambda^2 / epsilon^2
};

// Unit-constant comparator, not an absolute resource count. With g
// unspecified the balanced split g = sqrt(L) is used, which minimizes
// L/g + g and makes total_cost proportional to sqrt(L) * lambda * t.
LcuEstimate lcu_estimate(double terms, double lambda, double time,
                         std::optional<double> table_split, double epsilon);

struct CostReport {
  std::string representation;  // "primitive" | "active" | "dg(tau)"
  int n_functions = 0;
  std::size_t nnz_two_body = 0;
  double lambda = 0.0;
  std::vector<int> n_kappa;  // per block, dg only
  double mean_n_kappa = 0.0;
  std::size_t lcu_terms() const { return nnz_two_body; }
};

}  // namespace dgblock
