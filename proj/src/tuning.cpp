#include "bnsaga/tuning.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace bnsaga {

double batch_fraction(Index n, Index b) {
  if (n <= 1) return 0.0;
  return static_cast<double>(n - b) / static_cast<double>(n - 1);
}

double step_size(double cl, const SmoothnessProfile& prof, Index b) {
  const double bd = static_cast<double>(b);
  const double nd = static_cast<double>(prof.n);
  const double second = batch_fraction(prof.n, b) / bd * (prof.L_max + prof.lambda) +
                        prof.mu / 4.0 * nd / bd;
  return 0.25 / std::max(cl + prof.lambda, second);
}

double hofmann_step_size(const SmoothnessProfile& prof, Index b) {
  const double k = 4.0 * static_cast<double>(b) * prof.L_max / (static_cast<double>(prof.n) * prof.mu);
  return k / (2.0 * prof.L_max * (1.0 + k + std::sqrt(1.0 + k * k)));
}

double defazio_step_size(const SmoothnessProfile& prof) {
  return 1.0 / (3.0 * (static_cast<double>(prof.n) * prof.mu + prof.L_max));
}

Complexity complexity(double cl, const SmoothnessProfile& prof, Index b, double epsilon) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw std::invalid_argument("epsilon must lie in (0, 1)");
  const double bd = static_cast<double>(b);
  const double first = 4.0 * (cl + prof.lambda) / prof.mu;
  const double second = static_cast<double>(prof.n) / bd +
                        batch_fraction(prof.n, b) * 4.0 * (prof.L_max + prof.lambda) / (bd * prof.mu);
  const double k_iter = std::max(first, second) * std::log(1.0 / epsilon);
  return {k_iter, bd * k_iter};
}

ComplexityComponents complexity_components(const SmoothnessProfile& prof, Index b, BoundKind which) {
  const double nd = static_cast<double>(prof.n);
  const double bd = static_cast<double>(b);
  const double mu = prof.mu;
  const double lam = prof.lambda;
  if (prof.n == 1) {
    const double cl = which == BoundKind::simple ? prof.L_max
                                                 : (1.0 + 4.0 / 3.0 * std::log(static_cast<double>(prof.d))) * prof.L_max;
    return {4.0 * (cl + lam) / mu, 1.0};
  }
  const double den = mu * (nd - 1.0);
  const double h = -4.0 * (prof.L_max + lam) / den * bd +
                   nd * (1.0 + 4.0 * (prof.L_max + lam) / den);
  double g = 0.0;
  if (which == BoundKind::simple) {
    g = 4.0 * (nd * prof.L_bar - prof.L_max + (nd - 1.0) * lam) / den * bd +
        4.0 * nd * (prof.L_max - prof.L_bar) / den;
  } else {
    g = 4.0 * (2.0 * nd * prof.L_big - prof.L_max + (nd - 1.0) * lam) / den * bd +
        4.0 * nd * (prof.L_max - 2.0 * prof.L_big) / den +
        16.0 / (3.0 * mu) * std::log(static_cast<double>(prof.d)) * prof.L_max;
  }
  return {g, h};
}

namespace {

Index clamp_floor(double value, Index n) {
  if (!std::isfinite(value)) return value > 0 ? n : 1;
  const double f = std::floor(value);
  if (f < 1.0) return 1;
  if (f > static_cast<double>(n)) return n;
  return static_cast<Index>(f);
}

}  // namespace

Index optimal_b_simple(const SmoothnessProfile& prof) {
  if (prof.n <= 1) return 1;
  const double nd = static_cast<double>(prof.n);
  return clamp_floor(1.0 + prof.mu * (nd - 1.0) / (4.0 * (prof.L_bar + prof.lambda)), prof.n);
}

Index optimal_b_bernstein(const SmoothnessProfile& prof) {
  if (prof.n <= 1) return 1;
  const double nd = static_cast<double>(prof.n);
  const double log_d = std::log(static_cast<double>(prof.d));
  if (4.0 / 3.0 * (4.0 * prof.L_max / prof.mu) * log_d > nd) return 1;
  const double denom = 2.0 * prof.L_big + prof.lambda;
  const double value = 1.0 + prof.mu * (nd - 1.0) / (4.0 * denom) -
                       4.0 / 3.0 * log_d * (nd - 1.0) / nd * prof.L_max / denom;
  return clamp_floor(value, prof.n);
}

Index optimal_b_practical(const SmoothnessProfile& prof) {
  if (prof.n <= 1) return 1;
  const double nd = static_cast<double>(prof.n);
  return clamp_floor(1.0 + prof.mu * (nd - 1.0) / (4.0 * (prof.L_big + prof.lambda)), prof.n);
}

Index brute_force_optimal_b(const SmoothnessCurve& curve, const SmoothnessProfile& prof,
                            double epsilon) {
  if (curve.max_b() < prof.n) throw std::invalid_argument("curve does not cover b = 1..n");
  Index best = 1;
  double best_value = complexity(curve.at(1), prof, 1, epsilon).k_total;
  for (Index b = 2; b <= prof.n; ++b) {
    const double value = complexity(curve.at(b), prof, b, epsilon).k_total;
    if (value < best_value) {
      best = b;
      best_value = value;
    }
  }
  return best;
}

}  // namespace bnsaga
