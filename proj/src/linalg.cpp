#include "bnsaga/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "bnsaga/errors.hpp"
#include "bnsaga/sampling.hpp"

namespace bnsaga {

double power_lambda_max(const SymmetricOperator& op, Index dim, const PowerIterationOptions& opts) {
  if (dim <= 0) return 0.0;
  Rng rng = make_stream(opts.seed, static_cast<std::uint64_t>(dim));
  std::normal_distribution<double> normal(0.0, 1.0);
  Vector x(dim);
  for (Index i = 0; i < dim; ++i) x[i] = std::abs(normal(rng)) + 0.1;
  x.normalize();

  Vector y(dim);
  double rho = 0.0;
  for (int it = 0; it < opts.max_iter; ++it) {
    op(x, y);
    rho = x.dot(y);
    const double ynorm = y.norm();
    if (ynorm == 0.0) return 0.0;
    const double residual = (y - rho * x).norm();
    if (residual <= opts.tol * std::abs(rho)) return rho;
    x = y / ynorm;
  }
  throw NumericalError("power iteration did not converge in " + std::to_string(opts.max_iter) +
                           " iterations",
                       rho);
}

Vector jacobi_eigenvalues(Matrix a) {
  const Index m = a.rows();
  if (a.cols() != m) throw DimensionError("jacobi_eigenvalues needs a square matrix");
  const double frob = a.norm();
  const double threshold = 1e-12 * frob;
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (Index p = 0; p < m; ++p)
      for (Index q = p + 1; q < m; ++q) off += a(p, q) * a(p, q);
    if (std::sqrt(2.0 * off) <= threshold) break;

    for (Index p = 0; p < m; ++p) {
      for (Index q = p + 1; q < m; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (Index k = 0; k < m; ++k) {
          const double akp = a(k, p);
          const double akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (Index k = 0; k < m; ++k) {
          const double apk = a(p, k);
          const double aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
      }
    }
  }
  Vector ev = a.diagonal();
  std::sort(ev.begin(), ev.end());
  return ev;
}

double jacobi_lambda_max(const Matrix& a) {
  if (a.size() == 0) return 0.0;
  if (a.rows() == 1) return a(0, 0);
  return jacobi_eigenvalues(a).maxCoeff();
}

double symmetric_lambda_max(const Matrix& a, const PowerIterationOptions& opts) {
  if (a.rows() <= kJacobiSideLimit) return jacobi_lambda_max(a);
  return power_lambda_max([&a](const Vector& x, Vector& y) { y.noalias() = a * x; }, a.rows(), opts);
}

double pairwise_sum(std::span<const double> values) {
  if (values.size() <= 8) {
    double acc = 0.0;
    for (double v : values) acc += v;
    return acc;
  }
  const auto half = values.size() / 2;
  return pairwise_sum(values.subspan(0, half)) + pairwise_sum(values.subspan(half));
}

}  // namespace bnsaga
