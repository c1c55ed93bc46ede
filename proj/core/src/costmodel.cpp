#include <dgblock/costmodel.hpp>

#include <algorithm>
#include <cmath>
#include <sstream>

namespace dgblock {

std::size_t count_nonzero(const Matrix& v, double cutoff) {
  if (cutoff < 0.0) throw Error("cutoff must be nonnegative");
  std::size_t count = 0;
  for (int j = 0; j < v.cols(); ++j) {
    for (int i = 0; i < v.rows(); ++i) {
      if (std::abs(v(i, j)) > cutoff) ++count;
    }
  }
  return count;
}

std::size_t count_nonzero(const Tensor4& v, double cutoff) {
  if (cutoff < 0.0) throw Error("cutoff must be nonnegative");
  std::size_t count = 0;
  for (double x : v.data()) {
    if (std::abs(x) > cutoff) ++count;
  }
  return count;
}

std::size_t count_nonzero(const BlockTwoBody& v, double cutoff) {
  if (cutoff < 0.0) throw Error("cutoff must be nonnegative");
  std::size_t count = 0;
  for (const auto& [key, tensor] : v.pairs()) {
    std::size_t local = 0;
    for (double x : tensor.data()) {
      if (std::abs(x) > cutoff) ++local;
    }
    count += key.first == key.second ? local : 2 * local;
  }
  return count;
}

double lambda_metric(const Tensor4& v, bool exclude_number_terms, TwoBodyLayout layout) {
  const int d0 = v.dim(0), d1 = v.dim(1), d2 = v.dim(2), d3 = v.dim(3);
  double sum = 0.0;
  for (int p = 0; p < d0; ++p) {
    for (int q = 0; q < d1; ++q) {
      for (int r = 0; r < d2; ++r) {
        for (int s = 0; s < d3; ++s) {
          if (exclude_number_terms) {
            const bool number_term = layout == TwoBodyLayout::kLegListed
                                         ? (p == r && q == s)
                                         : (p == s && q == r);
            if (number_term) continue;
          }
          sum += std::abs(v(p, q, r, s));
        }
      }
    }
  }
  return sum;
}

double lambda_metric(const BlockTwoBody& v, bool exclude_number_terms) {
  double sum = 0.0;
  for (const auto& [key, tensor] : v.pairs()) {
    const int na = tensor.dim(0);
    const int nb = tensor.dim(1);
    double local = 0.0;
    for (int i = 0; i < na; ++i) {
      for (int ip = 0; ip < nb; ++ip) {
        for (int jp = 0; jp < nb; ++jp) {
          for (int j = 0; j < na; ++j) {
            if (exclude_number_terms && i == j && ip == jp) continue;
            local += std::abs(tensor(i, ip, jp, j));
          }
        }
      }
    }
    sum += key.first == key.second ? local : 2.0 * local;
  }
  return sum;
}

namespace {

struct LinearFitResult {
  double amplitude = 0.0;
  double offset = 0.0;
  double sse = 0.0;
};

// For fixed alpha, solve min over (a,c) of sum ((v - c - a N^alpha)/v)^2.
LinearFitResult fit_given_exponent(const std::vector<std::pair<double, double>>& pts,
                                   double alpha) {
  double s11 = 0, s12 = 0, s22 = 0, r1 = 0, r2 = 0;
  for (const auto& [n, v] : pts) {
    const double w = 1.0 / v;
    const double x1 = std::pow(n, alpha) * w;
    const double x2 = w;
    s11 += x1 * x1;
    s12 += x1 * x2;
    s22 += x2 * x2;
    r1 += x1;  // target is v*w = 1
    r2 += x2;
  }
  const double det = s11 * s22 - s12 * s12;
  LinearFitResult out;
  if (std::abs(det) < 1e-300) {
    out.amplitude = 0.0;
    out.offset = r2 / s22;
  } else {
    out.amplitude = (r1 * s22 - r2 * s12) / det;
    out.offset = (s11 * r2 - s12 * r1) / det;
  }
  for (const auto& [n, v] : pts) {
    const double predicted = out.offset + out.amplitude * std::pow(n, alpha);
    const double rel = (v - predicted) / v;
    out.sse += rel * rel;
  }
  return out;
}

}  // namespace

ScalingFit fit_scaling(const std::vector<std::pair<double, double>>& points) {
  if (points.size() < 3) throw Error("scaling fit needs at least 3 points");
  for (std::size_t i = 0; i + 1 < points.size(); ++i) {
    if (points[i + 1].first <= points[i].first) throw Error("sizes must be increasing");
  }
  // Fit convention: drop the first point.
  std::vector<std::pair<double, double>> pts(points.begin() + 1, points.end());
  for (const auto& [n, v] : pts) {
    if (n <= 0.0 || v <= 0.0) throw Error("scaling fit needs positive sizes and values");
  }

  ScalingFit fit;
  {
    std::ostringstream range;
    range << "N=" << pts.front().first << ".." << pts.back().first << " (first point dropped)";
    fit.fit_range = range.str();
  }

  const double vmin = std::min_element(pts.begin(), pts.end(), [](auto& a, auto& b) {
                        return a.second < b.second;
                      })->second;
  const double vmax = std::max_element(pts.begin(), pts.end(), [](auto& a, auto& b) {
                        return a.second < b.second;
                      })->second;
  if (vmax - vmin <= 1e-14 * std::abs(vmax)) {
    fit.exponent = 0.0;
    fit.offset = 0.0;
    for (const auto& [n, v] : pts) fit.offset += v;
    fit.offset /= static_cast<double>(pts.size());
    fit.amplitude = 0.0;
    fit.residual = 0.0;
    return fit;
  }

  // Coarse deterministic scan over the exponent, then golden-section refine.
  double best_alpha = 0.0;
  double best_sse = std::numeric_limits<double>::infinity();
  for (int k = 0; k <= 200; ++k) {
    const double alpha = 0.05 * k;  // [0, 10]
    const double sse = fit_given_exponent(pts, alpha).sse;
    if (sse < best_sse) {
      best_sse = sse;
      best_alpha = alpha;
    }
  }
  double lo = std::max(0.0, best_alpha - 0.05);
  double hi = std::min(10.0, best_alpha + 0.05);
  const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = hi - gr * (hi - lo);
  double x2 = lo + gr * (hi - lo);
  double f1 = fit_given_exponent(pts, x1).sse;
  double f2 = fit_given_exponent(pts, x2).sse;
  for (int it = 0; it < 80; ++it) {
    if (f1 < f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - gr * (hi - lo);
      f1 = fit_given_exponent(pts, x1).sse;
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + gr * (hi - lo);
      f2 = fit_given_exponent(pts, x2).sse;
    }
  }
  const double alpha = 0.5 * (lo + hi);
  const auto solution = fit_given_exponent(pts, alpha);
  fit.exponent = alpha;
  fit.amplitude = solution.amplitude;
  fit.offset = solution.offset;
  fit.residual = std::sqrt(solution.sse / static_cast<double>(pts.size()));
  return fit;
}

std::optional<double> detect_crossover(const std::vector<std::pair<double, double>>& series_a,
                                       const std::vector<std::pair<double, double>>& series_b) {
  if (series_a.size() != series_b.size()) throw Error("crossover series need a common size grid");
  const std::size_t n = series_a.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (series_a[i].first != series_b[i].first) {
      throw Error("crossover series need a common size grid");
    }
  }
  // Longest suffix with b strictly below a.
  std::size_t start = n;
  for (std::size_t i = n; i-- > 0;) {
    if (series_b[i].second < series_a[i].second) {
      start = i;
    } else {
      break;
    }
  }
  if (start == n) return std::nullopt;
  return series_a[start].first;
}

LcuEstimate lcu_estimate(double terms, double lambda, double time,
                         std::optional<double> table_split, double epsilon) {
  if (terms <= 0.0 || lambda <= 0.0 || time <= 0.0 || epsilon <= 0.0) {
    throw Error("cost inputs must be positive");
  }
  LcuEstimate est;
  est.terms = terms;
  est.lambda = lambda;
  est.time = time;
  est.epsilon = epsilon;
  // Balanced lookup split minimizes L/g + g; kept continuous so the total
  // stays exactly proportional to sqrt(L) * lambda * t.
  est.table_split = table_split.value_or(std::sqrt(terms));
  if (est.table_split <= 0.0) throw Error("cost inputs must be positive");
  est.prepare_cost = terms / est.table_split + est.table_split;
  est.select_cost = std::sqrt(terms);
  est.total_cost = (est.prepare_cost + est.select_cost) * lambda * time;
  est.measurement_count = lambda * lambda / (epsilon * epsilon);
  return est;
}

}  // namespace dgblock
