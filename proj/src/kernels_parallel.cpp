#include <algorithm>

#include "bnsaga/kernels.hpp"
#include "bnsaga/linalg.hpp"
#include "bnsaga/sampling.hpp"
#include "bnsaga/smoothness.hpp"

namespace bnsaga::parallel {

namespace {

Index chunk_count(Index n) { return (n + kSampleChunk - 1) / kSampleChunk; }

}  // namespace

double loss_value(const GlmProblem& p, const Vector& w) {
  if (w.size() != p.d()) return bnsaga::loss_value(p, w);  // throws
  const Index chunks = chunk_count(p.n());
  std::vector<double> partial(static_cast<std::size_t>(chunks), 0.0);
#pragma omp parallel for schedule(static)
  for (Index c = 0; c < chunks; ++c) {
    const Index end = std::min(p.n(), (c + 1) * kSampleChunk);
    double acc = 0.0;
    for (Index i = c * kSampleChunk; i < end; ++i) {
      acc += phi(p.loss, p.data.features.dot(i, w), p.data.labels[i]);
    }
    partial[static_cast<std::size_t>(c)] = acc;
  }
  double total = 0.0;
  for (double v : partial) total += v;
  return total / static_cast<double>(p.n()) + 0.5 * p.lambda * w.squaredNorm();
}

Vector full_gradient(const GlmProblem& p, const Vector& w) {
  if (w.size() != p.d()) return bnsaga::full_gradient(p, w);  // throws
  const Index chunks = chunk_count(p.n());
  std::vector<Vector> partial(static_cast<std::size_t>(chunks));
#pragma omp parallel for schedule(static)
  for (Index c = 0; c < chunks; ++c) {
    Vector acc = Vector::Zero(p.d());
    const Index end = std::min(p.n(), (c + 1) * kSampleChunk);
    for (Index i = c * kSampleChunk; i < end; ++i) {
      const double s = phi_prime(p.loss, p.data.features.dot(i, w), p.data.labels[i]);
      p.data.features.add_column(i, s, acc);
    }
    partial[static_cast<std::size_t>(c)] = std::move(acc);
  }
  Vector g = Vector::Zero(p.d());
  for (const auto& v : partial) g += v;
  g /= static_cast<double>(p.n());
  g.noalias() += p.lambda * w;
  return g;
}

std::vector<double> subset_sums(const GlmProblem& p, Index b) {
  const Index n = p.n();
  const double U = curvature_bound(p.loss);
  const auto total = static_cast<std::uint64_t>(binomial(n, b));
  const auto chunks = static_cast<Index>((total + kSubsetChunk - 1) / kSubsetChunk);
  std::vector<std::vector<double>> partial(static_cast<std::size_t>(chunks));

#pragma omp parallel
  {
    Matrix cols(p.d(), b);
#pragma omp for schedule(dynamic, 1)
    for (Index c = 0; c < chunks; ++c) {
      const std::uint64_t first = static_cast<std::uint64_t>(c) * kSubsetChunk;
      const std::uint64_t count = std::min<std::uint64_t>(kSubsetChunk, total - first);
      std::vector<double> sums(static_cast<std::size_t>(n), 0.0);
      Combinations comb(n, b, first);
      Index changed = 0;
      for (std::uint64_t r = 0; r < count; ++r) {
        const auto idx = comb.current();
        for (Index j = changed; j < b; ++j) {
          p.data.features.gather_column(idx[static_cast<std::size_t>(j)], cols.col(j));
        }
        const double lb = gathered_smoothness(cols, U);
        for (Index i : idx) sums[static_cast<std::size_t>(i)] += lb;
        changed = comb.next();
      }
      partial[static_cast<std::size_t>(c)] = std::move(sums);
    }
  }

  std::vector<double> sums(static_cast<std::size_t>(n), 0.0);
  for (const auto& part : partial)
    for (std::size_t i = 0; i < sums.size(); ++i) sums[i] += part[i];
  return sums;
}

std::vector<double> bernstein_trials(const MatrixEnsemble& ens, Index m_draws, Index trials,
                                     std::uint64_t seed) {
  std::vector<double> out(static_cast<std::size_t>(trials));
#pragma omp parallel
  {
    std::vector<Index> perm;
    Matrix sum;
#pragma omp for schedule(static)
    for (Index t = 0; t < trials; ++t) {
      out[static_cast<std::size_t>(t)] =
          bernstein_trial(ens, m_draws, seed, static_cast<std::uint64_t>(t), perm, sum);
    }
  }
  return out;
}

}  // namespace bnsaga::parallel
