#pragma once

// Data-parallel kernels. Every kernel has a serial reference in
// bnsaga::serial and an OpenMP version in bnsaga::parallel with the same
// contract. Parallel reductions combine fixed-size chunks in chunk order, so
// results do not depend on the thread count.

#include <cstdint>
#include <vector>

#include "bnsaga/bernstein.hpp"
#include "bnsaga/glm.hpp"

namespace bnsaga {

/// Samples per reduction chunk for loss / gradient kernels.
inline constexpr Index kSampleChunk = 256;
/// Subsets per chunk for the expected-smoothness enumeration.
inline constexpr std::uint64_t kSubsetChunk = 4096;

namespace serial {

double loss_value(const GlmProblem& p, const Vector& w);
Vector full_gradient(const GlmProblem& p, const Vector& w);

/// sums[i] = sum over b-subsets B containing i of L_B.
std::vector<double> subset_sums(const GlmProblem& p, Index b);

/// lambda_max(S_Y) for each trial; trial t draws from stream (seed, t).
std::vector<double> bernstein_trials(const MatrixEnsemble& ens, Index m_draws, Index trials,
                                     std::uint64_t seed);

}  // namespace serial

namespace parallel {

double loss_value(const GlmProblem& p, const Vector& w);
Vector full_gradient(const GlmProblem& p, const Vector& w);
std::vector<double> subset_sums(const GlmProblem& p, Index b);
std::vector<double> bernstein_trials(const MatrixEnsemble& ens, Index m_draws, Index trials,
                                     std::uint64_t seed);

}  // namespace parallel

/// lambda_max(S_Y) for one trial, shared by both kernel flavours.
double bernstein_trial(const MatrixEnsemble& ens, Index m_draws, std::uint64_t seed,
                       std::uint64_t trial, std::vector<Index>& perm, Matrix& sum);

}  // namespace bnsaga
