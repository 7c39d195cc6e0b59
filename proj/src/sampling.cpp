#include "bnsaga/sampling.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace bnsaga {

Rng make_stream(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32),
                    0x62u, 0x6e69u};
  return Rng(seq);
}

BniceSampler::BniceSampler(Index n, Index b) : perm_(static_cast<std::size_t>(n)), b_(b) {
  if (n <= 0 || b < 1 || b > n) {
    throw std::invalid_argument("b-nice sampling needs 1 <= b <= n");
  }
  std::iota(perm_.begin(), perm_.end(), Index{0});
}

std::span<const Index> BniceSampler::draw(Rng& rng) {
  const auto n = perm_.size();
  const auto b = static_cast<std::size_t>(b_);
  if (b < n) {
    for (std::size_t i = 0; i < b; ++i) {
      std::uniform_int_distribution<std::size_t> pick(i, n - 1);
      std::swap(perm_[i], perm_[pick(rng)]);
    }
  }
  return {perm_.data(), b};
}

double binomial(Index n, Index k) {
  if (k < 0 || k > n) return 0.0;
  k = std::min(k, n - k);
  double r = 1.0;
  for (Index i = 1; i <= k; ++i) {
    r = r * static_cast<double>(n - k + i) / static_cast<double>(i);
    if (!std::isfinite(r)) return std::numeric_limits<double>::infinity();
  }
  return std::round(r);
}

Combinations::Combinations(Index n, Index k) : n_(n), idx_(static_cast<std::size_t>(k)) {
  if (k < 1 || k > n) throw std::invalid_argument("combinations need 1 <= k <= n");
  std::iota(idx_.begin(), idx_.end(), Index{0});
}

Combinations::Combinations(Index n, Index k, std::uint64_t rank) : Combinations(n, k) {
  // Unrank in the lexicographic order: choose each position greedily.
  Index start = 0;
  for (Index pos = 0; pos < k; ++pos) {
    for (Index v = start; v < n; ++v) {
      const auto block = static_cast<std::uint64_t>(binomial(n - v - 1, k - pos - 1));
      if (rank < block) {
        idx_[static_cast<std::size_t>(pos)] = v;
        start = v + 1;
        break;
      }
      rank -= block;
    }
  }
}

Index Combinations::next() {
  const auto k = static_cast<Index>(idx_.size());
  Index pos = k - 1;
  while (pos >= 0 && idx_[static_cast<std::size_t>(pos)] == n_ - k + pos) --pos;
  if (pos < 0) return -1;
  ++idx_[static_cast<std::size_t>(pos)];
  for (Index j = pos + 1; j < k; ++j) {
    idx_[static_cast<std::size_t>(j)] = idx_[static_cast<std::size_t>(j - 1)] + 1;
  }
  return pos;
}

}  // namespace bnsaga
