#pragma once

#include <cstdint>
#include <vector>

#include "bnsaga/dataset.hpp"

namespace bnsaga {

/// Finite set of symmetric d x d matrices sampled uniformly.
struct MatrixEnsemble {
  std::vector<Matrix> members;
  bool centered = false;
  double l_cap = 0.0;  // max over members of lambda_max

  Index dim() const { return members.empty() ? 0 : members.front().rows(); }
  Index size() const { return static_cast<Index>(members.size()); }
};

/// Subtracts the set mean from every member. Throws ValidationError on an
/// empty set, mismatched sizes, or asymmetry beyond 1e-12.
MatrixEnsemble center_ensemble(std::vector<Matrix> members);

/// m_draws * lambda_max(mean of X^2 over members).
double variance_statistic(const MatrixEnsemble& ens, Index m_draws);

/// sqrt(2 v log d) + L log d / 3, natural log.
double bernstein_expectation_bound(const MatrixEnsemble& ens, Index m_draws);

struct BernsteinReport {
  Index d = 0;
  Index set_size = 0;
  Index m_draws = 0;
  Index trials = 0;
  double empirical = 0.0;  // Monte-Carlo mean of lambda_max(S_Y)
  double std_error = 0.0;
  double bound = 0.0;
  bool pass = false;  // empirical <= bound + 3 * std_error
};

/// Monte-Carlo estimate of E lambda_max of a sum of m_draws members drawn
/// without replacement, against the matrix Bernstein expectation bound.
BernsteinReport bernstein_check(const MatrixEnsemble& ens, Index m_draws, Index trials,
                                std::uint64_t seed);

/// Ensemble {a_i a_i^T} centered, the setting the Bernstein smoothness bound is built on.
MatrixEnsemble outer_product_ensemble(const FeatureMatrix& a);

/// Random symmetric Gaussian members (centered).
MatrixEnsemble random_ensemble(Index d, Index size, std::uint64_t seed);

}  // namespace bnsaga
