#include <numeric>

#include "bnsaga/kernels.hpp"
#include "bnsaga/linalg.hpp"
#include "bnsaga/sampling.hpp"
#include "bnsaga/smoothness.hpp"

namespace bnsaga {

double bernstein_trial(const MatrixEnsemble& ens, Index m_draws, std::uint64_t seed,
                       std::uint64_t trial, std::vector<Index>& perm, Matrix& sum) {
  const Index size = ens.size();
  // The full set of a centered ensemble sums to the zero matrix in any order.
  if (m_draws == size && ens.centered) return 0.0;

  Rng rng = make_stream(seed, trial);
  perm.resize(static_cast<std::size_t>(size));
  std::iota(perm.begin(), perm.end(), Index{0});
  sum.setZero(ens.dim(), ens.dim());
  for (Index k = 0; k < m_draws; ++k) {
    std::uniform_int_distribution<Index> pick(k, size - 1);
    std::swap(perm[static_cast<std::size_t>(k)], perm[static_cast<std::size_t>(pick(rng))]);
    sum += ens.members[static_cast<std::size_t>(perm[static_cast<std::size_t>(k)])];
  }
  return jacobi_lambda_max(sum);
}

namespace serial {

double loss_value(const GlmProblem& p, const Vector& w) { return bnsaga::loss_value(p, w); }

Vector full_gradient(const GlmProblem& p, const Vector& w) { return bnsaga::full_gradient(p, w); }

std::vector<double> subset_sums(const GlmProblem& p, Index b) {
  const Index n = p.n();
  const double U = curvature_bound(p.loss);
  std::vector<double> sums(static_cast<std::size_t>(n), 0.0);
  Combinations comb(n, b);
  Matrix cols(p.d(), b);
  Index changed = 0;
  do {
    const auto idx = comb.current();
    for (Index j = changed; j < b; ++j) {
      p.data.features.gather_column(idx[static_cast<std::size_t>(j)], cols.col(j));
    }
    const double lb = gathered_smoothness(cols, U);
    for (Index i : idx) sums[static_cast<std::size_t>(i)] += lb;
    changed = comb.next();
  } while (changed >= 0);
  return sums;
}

std::vector<double> bernstein_trials(const MatrixEnsemble& ens, Index m_draws, Index trials,
                                     std::uint64_t seed) {
  std::vector<double> out(static_cast<std::size_t>(trials));
  std::vector<Index> perm;
  Matrix sum;
  for (Index t = 0; t < trials; ++t) {
    out[static_cast<std::size_t>(t)] =
        bernstein_trial(ens, m_draws, seed, static_cast<std::uint64_t>(t), perm, sum);
  }
  return out;
}

}  // namespace serial
}  // namespace bnsaga
