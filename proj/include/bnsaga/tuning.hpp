#pragma once

#include <cmath>

#include "bnsaga/expsmooth.hpp"

namespace bnsaga {

/// Default target precision: log(1/eps) = 1, so complexities equal the bracketed max.
inline const double kDefaultEpsilon = std::exp(-1.0);

/// (n - b) / (n - 1), defined as 0 when n = 1.
double batch_fraction(Index n, Index b);

/// gamma = 1/4 / max{ cl + lambda, (1/b)((n-b)/(n-1))(L_max + lambda) + (mu/4)(n/b) }
double step_size(double cl, const SmoothnessProfile& prof, Index b);

/// K/(2 L_max (1 + K + sqrt(1 + K^2))) with K = 4 b L_max / (n mu).
double hofmann_step_size(const SmoothnessProfile& prof, Index b);

/// 1 / (3 (n mu + L_max)), for b = 1.
double defazio_step_size(const SmoothnessProfile& prof);

struct Complexity {
  double k_iter;
  double k_total;
};

Complexity complexity(double cl, const SmoothnessProfile& prof, Index b,
                      double epsilon = kDefaultEpsilon);

enum class BoundKind { simple, bernstein };

/// The two affine pieces of the total-complexity bound: K_total <= max{g, h} log(1/eps).
struct ComplexityComponents {
  double g;
  double h;
};

ComplexityComponents complexity_components(const SmoothnessProfile& prof, Index b,
                                           BoundKind which);

Index optimal_b_simple(const SmoothnessProfile& prof);
Index optimal_b_bernstein(const SmoothnessProfile& prof);
Index optimal_b_practical(const SmoothnessProfile& prof);

/// argmin over b of K_total evaluated from the curve; smallest b on ties.
Index brute_force_optimal_b(const SmoothnessCurve& curve, const SmoothnessProfile& prof,
                            double epsilon = kDefaultEpsilon);

}  // namespace bnsaga
