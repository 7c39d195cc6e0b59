#pragma once

#include <iosfwd>
#include <span>
#include <vector>

#include "bnsaga/glm.hpp"
#include "bnsaga/linalg.hpp"

namespace bnsaga {

enum class Extreme { max, min };

/// lambda_max or lambda_min of A A^T.
///
/// The maximum runs on the smaller Gram side (A A^T when d <= n, else A^T A).
/// The minimum runs shifted power iteration on A A^T with shift trace(A A^T);
/// it is exactly 0 when d > n since A A^T is then rank deficient.
double lambda_extreme_gram(const FeatureMatrix& a, Extreme which,
                           const PowerIterationOptions& opts = {});

struct SmoothnessProfile {
  std::vector<double> L_list;  // L_i = U ||a_i||^2
  double L_max = 0.0;
  double L_bar = 0.0;
  double L_big = 0.0;  // (U/n) lambda_max(A A^T)
  double mu = 0.0;
  double U = 0.0;
  double lambda = 0.0;
  Index n = 0;
  Index d = 0;
};

SmoothnessProfile compute_profile(const GlmProblem& p);

/// (U/|B|) lambda_max(A_B A_B^T); B nonempty, indices valid and distinct.
double subset_smoothness(const GlmProblem& p, std::span<const Index> batch);

/// Same quantity on already gathered columns (d x |B|); no validation.
double gathered_smoothness(const Matrix& columns, double U);

void write_profile_csv_header(std::ostream& out);
void write_profile_csv_row(std::ostream& out, const SmoothnessProfile& prof);

}  // namespace bnsaga
