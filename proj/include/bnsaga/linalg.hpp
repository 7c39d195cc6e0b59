#pragma once

#include <cstdint>
#include <functional>
#include <span>

#include "bnsaga/dataset.hpp"

namespace bnsaga {

struct PowerIterationOptions {
  double tol = 1e-10;
  int max_iter = 50000;
  std::uint64_t seed = 0x5eed;
};

/// y = M x for a symmetric positive semidefinite operator M.
using SymmetricOperator = std::function<void(const Vector& x, Vector& y)>;

/// Largest eigenvalue of a PSD operator by power iteration.
///
/// Stops when the Rayleigh-quotient residual satisfies ||Mx - rho x|| <= tol * rho.
/// Throws NumericalError (carrying rho) after max_iter iterations.
double power_lambda_max(const SymmetricOperator& op, Index dim,
                        const PowerIterationOptions& opts = {});

/// All eigenvalues of a small symmetric matrix by cyclic Jacobi rotations,
/// ascending. Off-diagonal mass is driven below 1e-12 of the Frobenius norm.
Vector jacobi_eigenvalues(Matrix a);
double jacobi_lambda_max(const Matrix& a);

/// Largest eigenvalue of an explicit symmetric PSD matrix. Jacobi when the
/// side is at most kJacobiSideLimit, power iteration otherwise.
inline constexpr Index kJacobiSideLimit = 32;
double symmetric_lambda_max(const Matrix& a, const PowerIterationOptions& opts = {});

/// Pairwise (cascade) summation.
double pairwise_sum(std::span<const double> values);

}  // namespace bnsaga
