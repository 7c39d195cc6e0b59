#pragma once

#include <string_view>
#include <vector>

#include "bnsaga/smoothness.hpp"

namespace bnsaga {

inline constexpr double kDefaultExactCap = 1e6;

/// Expected smoothness of b-nice sampling by full enumeration:
///   (1 / C(n-1, b-1)) max_i sum_{|B| = b, i in B} L_B.
/// Throws IntractableError when C(n, b) > cap.
double exact_expected_smoothness(const GlmProblem& p, Index b, double cap = kDefaultExactCap);

double simple_bound(const SmoothnessProfile& prof, Index b);
/// Natural logarithm of d.
double bernstein_bound(const SmoothnessProfile& prof, Index b);
double practical_estimate(const SmoothnessProfile& prof, Index b);

enum class CurveKind { exact, simple, bernstein, practical };
std::string_view to_string(CurveKind kind);

struct SmoothnessCurve {
  CurveKind kind;
  std::vector<double> values;  // values[b - 1]

  double at(Index b) const { return values.at(static_cast<std::size_t>(b - 1)); }
  Index max_b() const { return static_cast<Index>(values.size()); }
};

/// Closed-form curve over b = 1..n.
SmoothnessCurve closed_form_curve(CurveKind kind, const SmoothnessProfile& prof);
/// Exact curve over b = 1..n; throws IntractableError if any b exceeds the cap.
SmoothnessCurve exact_curve(const GlmProblem& p, double cap = kDefaultExactCap);

}  // namespace bnsaga
