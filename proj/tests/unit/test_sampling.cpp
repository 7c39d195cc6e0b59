#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include <gtest/gtest.h>

#include "bnsaga/sampling.hpp"

using namespace bnsaga;

TEST(Bnice, FullBatchIsEverything) {
  BniceSampler s(7, 7);
  Rng rng = make_stream(1);
  for (int t = 0; t < 10; ++t) {
    auto batch = s.draw(rng);
    std::set<Index> seen(batch.begin(), batch.end());
    EXPECT_EQ(seen.size(), 7u);
  }
}

TEST(Bnice, DistinctIndicesInRange) {
  BniceSampler s(20, 6);
  Rng rng = make_stream(2);
  for (int t = 0; t < 1000; ++t) {
    auto batch = s.draw(rng);
    ASSERT_EQ(batch.size(), 6u);
    std::set<Index> seen(batch.begin(), batch.end());
    EXPECT_EQ(seen.size(), 6u);
    EXPECT_GE(*seen.begin(), 0);
    EXPECT_LT(*seen.rbegin(), 20);
  }
}

TEST(Bnice, SingletonMarginals) {
  BniceSampler s(2, 1);
  Rng rng = make_stream(3);
  const int draws = 100000;
  int zeros = 0;
  for (int t = 0; t < draws; ++t) zeros += s.draw(rng)[0] == 0;
  const double sigma = std::sqrt(draws * 0.25);
  EXPECT_LT(std::abs(zeros - draws / 2.0), 3.0 * sigma);
}

TEST(Bnice, ChiSquareOverPairs) {
  BniceSampler s(4, 2);
  Rng rng = make_stream(4);
  const int draws = 60000;
  std::map<std::pair<Index, Index>, int> counts;
  for (int t = 0; t < draws; ++t) {
    auto batch = s.draw(rng);
    counts[{std::min(batch[0], batch[1]), std::max(batch[0], batch[1])}]++;
  }
  ASSERT_EQ(counts.size(), 6u);
  const double expected = draws / 6.0;
  double chi2 = 0.0;
  for (const auto& [pair, c] : counts) chi2 += (c - expected) * (c - expected) / expected;
  EXPECT_LT(chi2, 20.515);  // 0.999 quantile, 5 degrees of freedom
}

TEST(Bnice, RejectsBadSizes) {
  EXPECT_THROW(BniceSampler(3, 0), std::invalid_argument);
  EXPECT_THROW(BniceSampler(3, 4), std::invalid_argument);
}

TEST(Streams, DistinctAndReproducible) {
  Rng a = make_stream(5, 0), b = make_stream(5, 0), c = make_stream(5, 1), d = make_stream(6, 0);
  const auto x = a();
  EXPECT_EQ(x, b());
  EXPECT_NE(x, c());
  EXPECT_NE(x, d());
}

TEST(Binomial, Values) {
  EXPECT_EQ(binomial(5, 2), 10.0);
  EXPECT_EQ(binomial(24, 12), 2704156.0);
  EXPECT_EQ(binomial(7, 0), 1.0);
  EXPECT_EQ(binomial(7, 7), 1.0);
  EXPECT_EQ(binomial(3, 5), 0.0);
  EXPECT_TRUE(std::isinf(binomial(5000, 2500)));
}

TEST(Combinations, EnumeratesAllInOrder) {
  for (Index n = 1; n <= 8; ++n) {
    for (Index k = 1; k <= n; ++k) {
      Combinations c(n, k);
      std::vector<std::vector<Index>> all;
      do {
        all.emplace_back(c.current().begin(), c.current().end());
      } while (c.next() >= 0);
      EXPECT_EQ(static_cast<double>(all.size()), binomial(n, k));
      EXPECT_TRUE(std::is_sorted(all.begin(), all.end()));
      EXPECT_EQ(std::set<std::vector<Index>>(all.begin(), all.end()).size(), all.size());
    }
  }
}

TEST(Combinations, UnrankMatchesIteration) {
  const Index n = 9, k = 4;
  Combinations it(n, k);
  std::uint64_t rank = 0;
  do {
    Combinations direct(n, k, rank);
    ASSERT_TRUE(std::equal(it.current().begin(), it.current().end(), direct.current().begin()))
        << "rank " << rank;
    ++rank;
  } while (it.next() >= 0);
}

TEST(Combinations, NextReportsFirstChangedSlot) {
  Combinations c(5, 3);  // {0,1,2} -> {0,1,3}
  EXPECT_EQ(c.next(), 2);
  c.next();  // {0,1,4}
  EXPECT_EQ(c.next(), 1);  // {0,2,3}
}
