#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "bnsaga/dataset.hpp"

namespace bnsaga {

using Rng = std::mt19937_64;

/// Independent generator for (seed, stream). Distinct streams never share state,
/// so parallel runs and trials stay reproducible regardless of scheduling.
Rng make_stream(std::uint64_t seed, std::uint64_t stream = 0);

/// Uniform size-b subsets of {0..n-1} without replacement (b-nice sampling).
///
/// Keeps a permutation of [n] across draws and runs a partial Fisher-Yates
/// shuffle over its first b slots, so a draw costs O(b). Every b-subset is
/// equally likely whatever the current permutation is.
class BniceSampler {
 public:
  BniceSampler(Index n, Index b);

  /// The returned span is valid until the next call.
  std::span<const Index> draw(Rng& rng);

  Index n() const { return static_cast<Index>(perm_.size()); }
  Index b() const { return b_; }

 private:
  std::vector<Index> perm_;
  Index b_;
};

/// Binomial coefficient as a double (exact below 2^53, +inf on overflow).
double binomial(Index n, Index k);

/// Lexicographic k-combinations of {0..n-1}.
class Combinations {
 public:
  Combinations(Index n, Index k);
  /// Positions the iterator at the combination of the given lexicographic rank.
  Combinations(Index n, Index k, std::uint64_t rank);

  std::span<const Index> current() const { return idx_; }
  /// Advances; returns the first position that changed, or -1 when exhausted.
  Index next();

 private:
  Index n_;
  std::vector<Index> idx_;
};

}  // namespace bnsaga
