#include "bnsaga/bernstein.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>

#include "bnsaga/errors.hpp"
#include "bnsaga/kernels.hpp"
#include "bnsaga/linalg.hpp"
#include "bnsaga/sampling.hpp"

namespace bnsaga {

namespace {

double max_member_eigenvalue(const std::vector<Matrix>& members) {
  double cap = -std::numeric_limits<double>::infinity();
  for (const auto& m : members) cap = std::max(cap, jacobi_lambda_max(m));
  return cap;
}

}  // namespace

MatrixEnsemble center_ensemble(std::vector<Matrix> members) {
  if (members.empty()) throw ValidationError("ensemble must have at least one member");
  const Index d = members.front().rows();
  Matrix mean = Matrix::Zero(d, d);
  for (std::size_t k = 0; k < members.size(); ++k) {
    const auto& m = members[k];
    if (m.rows() != d || m.cols() != d) {
      throw ValidationError("ensemble member " + std::to_string(k) + " is not " +
                            std::to_string(d) + "x" + std::to_string(d));
    }
    const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
    if ((m - m.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
      throw ValidationError("ensemble member " + std::to_string(k) + " is not symmetric");
    }
    mean += m;
  }
  mean /= static_cast<double>(members.size());
  for (auto& m : members) {
    m -= mean;
    m = 0.5 * (m + m.transpose()).eval();
  }
  MatrixEnsemble ens{std::move(members), true, 0.0};
  ens.l_cap = max_member_eigenvalue(ens.members);
  return ens;
}

double variance_statistic(const MatrixEnsemble& ens, Index m_draws) {
  const Index d = ens.dim();
  Matrix second = Matrix::Zero(d, d);
  for (const auto& m : ens.members) second.noalias() += m * m;
  second /= static_cast<double>(ens.size());
  return static_cast<double>(m_draws) * jacobi_lambda_max(second);
}

double bernstein_expectation_bound(const MatrixEnsemble& ens, Index m_draws) {
  const double log_d = std::log(static_cast<double>(ens.dim()));
  const double v = variance_statistic(ens, m_draws);
  return std::sqrt(2.0 * v * log_d) + ens.l_cap * log_d / 3.0;
}

BernsteinReport bernstein_check(const MatrixEnsemble& ens, Index m_draws, Index trials,
                                std::uint64_t seed) {
  if (m_draws < 1 || m_draws > ens.size()) {
    throw std::invalid_argument("m_draws must lie in [1, set size]");
  }
  if (trials < 1) throw std::invalid_argument("trials must be positive");

  const auto values = parallel::bernstein_trials(ens, m_draws, trials, seed);
  const double mean = pairwise_sum(values) / static_cast<double>(trials);
  std::vector<double> sq(values.size());
  for (std::size_t t = 0; t < values.size(); ++t) sq[t] = (values[t] - mean) * (values[t] - mean);
  const double var = trials > 1 ? pairwise_sum(sq) / static_cast<double>(trials - 1) : 0.0;

  BernsteinReport r;
  r.d = ens.dim();
  r.set_size = ens.size();
  r.m_draws = m_draws;
  r.trials = trials;
  r.empirical = mean;
  r.std_error = std::sqrt(var / static_cast<double>(trials));
  r.bound = bernstein_expectation_bound(ens, m_draws);
  r.pass = r.empirical <= r.bound + 3.0 * r.std_error;
  return r;
}

MatrixEnsemble outer_product_ensemble(const FeatureMatrix& a) {
  std::vector<Matrix> members;
  members.reserve(static_cast<std::size_t>(a.cols()));
  Vector col(a.rows());
  for (Index i = 0; i < a.cols(); ++i) {
    a.gather_column(i, col);
    members.emplace_back(col * col.transpose());
  }
  return center_ensemble(std::move(members));
}

MatrixEnsemble random_ensemble(Index d, Index size, std::uint64_t seed) {
  Rng rng = make_stream(seed, 7);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<Matrix> members;
  members.reserve(static_cast<std::size_t>(size));
  for (Index k = 0; k < size; ++k) {
    Matrix m(d, d);
    for (Index i = 0; i < d; ++i)
      for (Index j = 0; j <= i; ++j) m(i, j) = m(j, i) = normal(rng);
    members.push_back(std::move(m));
  }
  return center_ensemble(std::move(members));
}

}  // namespace bnsaga
