#include <omp.h>

#include <gtest/gtest.h>

#include "bnsaga/kernels.hpp"
#include "oracles.hpp"

using namespace bnsaga;

namespace {

class ThreadCount {
 public:
  explicit ThreadCount(int n) : saved_(omp_get_max_threads()) { omp_set_num_threads(n); }
  ~ThreadCount() { omp_set_num_threads(saved_); }

 private:
  int saved_;
};

}  // namespace

TEST(Kernels, LossAndGradientMatchSerial) {
  std::mt19937_64 rng(1);
  for (Loss loss : {Loss::ridge, Loss::logistic}) {
    const auto p = oracle::random_problem(rng, 700, 900, 5, 20, loss);
    const Vector w = oracle::random_matrix(p.d(), 1, rng);
    const double f = serial::loss_value(p, w);
    const Vector g = serial::full_gradient(p, w);
    for (int threads : {1, 2, 4}) {
      ThreadCount tc(threads);
      EXPECT_NEAR(parallel::loss_value(p, w), f, 1e-13 * std::abs(f));
      EXPECT_LT((parallel::full_gradient(p, w) - g).cwiseAbs().maxCoeff(), 1e-13);
    }
  }
}

TEST(Kernels, ParallelIsThreadCountInvariant) {
  std::mt19937_64 rng(2);
  const auto p = oracle::random_problem(rng, 1000, 1000, 8, 8, Loss::logistic);
  const Vector w = oracle::random_matrix(8, 1, rng);
  Vector g1, g3;
  double f1, f3;
  {
    ThreadCount tc(1);
    g1 = parallel::full_gradient(p, w);
    f1 = parallel::loss_value(p, w);
  }
  {
    ThreadCount tc(3);
    g3 = parallel::full_gradient(p, w);
    f3 = parallel::loss_value(p, w);
  }
  EXPECT_EQ(g1, g3);
  EXPECT_EQ(f1, f3);
}

TEST(Kernels, SubsetSumsMatchSerial) {
  std::mt19937_64 rng(3);
  for (int rep = 0; rep < 5; ++rep) {
    const auto p = oracle::random_problem(rng, 8, 14, 2, 6, Loss::ridge);
    for (Index b : {Index{1}, Index{3}, p.n() / 2, p.n()}) {
      const auto s = serial::subset_sums(p, b);
      for (int threads : {1, 3}) {
        ThreadCount tc(threads);
        const auto q = parallel::subset_sums(p, b);
        ASSERT_EQ(s.size(), q.size());
        for (std::size_t i = 0; i < s.size(); ++i) EXPECT_NEAR(s[i], q[i], 1e-10 * s[i]);
      }
    }
  }
}

TEST(Kernels, BernsteinTrialsIdentical) {
  const auto ens = random_ensemble(5, 17, 4);
  const auto s = serial::bernstein_trials(ens, 6, 3000, 9);
  for (int threads : {1, 4}) {
    ThreadCount tc(threads);
    EXPECT_EQ(parallel::bernstein_trials(ens, 6, 3000, 9), s);
  }
}
