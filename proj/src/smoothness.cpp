#include "bnsaga/smoothness.hpp"

#include <algorithm>
#include <numeric>
#include <ostream>
#include <string>
#include <vector>

#include "bnsaga/csv.hpp"
#include "bnsaga/errors.hpp"

namespace bnsaga {

double lambda_extreme_gram(const FeatureMatrix& a, Extreme which, const PowerIterationOptions& opts) {
  const Index d = a.rows();
  const Index n = a.cols();
  if (which == Extreme::max) {
    if (d <= n) {
      return power_lambda_max([&a](const Vector& x, Vector& y) { a.gram_apply(x, y); }, d, opts);
    }
    return power_lambda_max([&a](const Vector& x, Vector& y) { a.cogram_apply(x, y); }, n, opts);
  }

  if (d > n) return 0.0;
  double trace = 0.0;
  for (Index i = 0; i < n; ++i) trace += a.column_squared_norm(i);
  if (trace == 0.0) return 0.0;
  // lambda_min(M) = c - lambda_max(c I - M), c >= lambda_max(M)
  const double top = power_lambda_max(
      [&a, trace](const Vector& x, Vector& y) {
        a.gram_apply(x, y);
        y = trace * x - y;
      },
      d, opts);
  return std::max(0.0, trace - top);
}

SmoothnessProfile compute_profile(const GlmProblem& p) {
  SmoothnessProfile prof;
  prof.n = p.n();
  prof.d = p.d();
  prof.U = curvature_bound(p.loss);
  prof.lambda = p.lambda;
  prof.L_list.resize(static_cast<std::size_t>(p.n()));
  for (Index i = 0; i < p.n(); ++i) {
    prof.L_list[static_cast<std::size_t>(i)] = prof.U * p.data.features.column_squared_norm(i);
  }
  prof.L_max = *std::max_element(prof.L_list.begin(), prof.L_list.end());
  prof.L_bar = std::accumulate(prof.L_list.begin(), prof.L_list.end(), 0.0) /
               static_cast<double>(p.n());
  const double nd = static_cast<double>(p.n());
  prof.L_big = prof.L_max > 0.0
                   ? prof.U / nd * lambda_extreme_gram(p.data.features, Extreme::max)
                   : 0.0;
  if (p.loss == Loss::ridge) {
    prof.mu = prof.U / nd * lambda_extreme_gram(p.data.features, Extreme::min) + p.lambda;
  } else {
    if (p.lambda <= 0.0) {
      throw ValidationError("strong convexity unavailable: logistic loss needs lambda > 0");
    }
    prof.mu = p.lambda;
  }
  return prof;
}

double gathered_smoothness(const Matrix& columns, double U) {
  const Index b = columns.cols();
  const Index d = columns.rows();
  const Matrix gram = b <= d ? Matrix(columns.transpose() * columns) : Matrix(columns * columns.transpose());
  return U / static_cast<double>(b) * symmetric_lambda_max(gram);
}

double subset_smoothness(const GlmProblem& p, std::span<const Index> batch) {
  if (batch.empty()) throw std::invalid_argument("subset_smoothness: empty batch");
  std::vector<Index> sorted(batch.begin(), batch.end());
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw std::invalid_argument("subset_smoothness: duplicate indices in batch");
  }
  if (sorted.front() < 0 || sorted.back() >= p.n()) {
    throw std::out_of_range("subset_smoothness: index out of range");
  }
  Matrix cols;
  p.data.features.gather(batch, cols);
  return gathered_smoothness(cols, curvature_bound(p.loss));
}

void write_profile_csv_header(std::ostream& out) {
  csv::write_header(out, {"n", "d", "L_max", "L_bar", "L", "mu", "U", "lambda"});
}

void write_profile_csv_row(std::ostream& out, const SmoothnessProfile& prof) {
  csv::RowWriter(out) << static_cast<long long>(prof.n) << static_cast<long long>(prof.d)
                      << prof.L_max << prof.L_bar << prof.L_big << prof.mu << prof.U
                      << prof.lambda;
}

}  // namespace bnsaga
