#include "bnsaga/expsmooth.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "bnsaga/errors.hpp"
#include "bnsaga/kernels.hpp"
#include "bnsaga/sampling.hpp"
#include "bnsaga/tuning.hpp"

namespace bnsaga {

namespace {

void check_batch(Index n, Index b) {
  if (b < 1 || b > n) {
    throw std::invalid_argument("batch size " + std::to_string(b) + " outside [1, " +
                                std::to_string(n) + "]");
  }
}

}  // namespace

double exact_expected_smoothness(const GlmProblem& p, Index b, double cap) {
  const Index n = p.n();
  check_batch(n, b);
  const double subsets = binomial(n, b);
  if (subsets > cap) {
    throw IntractableError("exact expected smoothness needs C(" + std::to_string(n) + ", " +
                           std::to_string(b) + ") = " + std::to_string(subsets) +
                           " subset eigenvalues, above the cap of " + std::to_string(cap) +
                           "; use the simple, Bernstein or practical estimates instead");
  }
  const auto sums = parallel::subset_sums(p, b);
  return *std::max_element(sums.begin(), sums.end()) / binomial(n - 1, b - 1);
}

double simple_bound(const SmoothnessProfile& prof, Index b) {
  const Index n = prof.n;
  check_batch(n, b);
  if (n == 1) return prof.L_max;
  const double nb = static_cast<double>(n) / static_cast<double>(b);
  const double lead = nb * static_cast<double>(b - 1) / static_cast<double>(n - 1);
  return lead * prof.L_bar + batch_fraction(n, b) / static_cast<double>(b) * prof.L_max;
}

double bernstein_bound(const SmoothnessProfile& prof, Index b) {
  const Index n = prof.n;
  check_batch(n, b);
  const double bd = static_cast<double>(b);
  const double log_d = std::log(static_cast<double>(prof.d));
  // A single sample is both endpoints; keep the b = 1 form.
  if (n == 1) return (1.0 + 4.0 / 3.0 * log_d) * prof.L_max;
  const double lead =
      2.0 * (bd - 1.0) / bd * static_cast<double>(n) / static_cast<double>(n - 1);
  return lead * prof.L_big + (batch_fraction(n, b) + 4.0 / 3.0 * log_d) / bd * prof.L_max;
}

double practical_estimate(const SmoothnessProfile& prof, Index b) {
  const Index n = prof.n;
  check_batch(n, b);
  if (n == 1) return prof.L_max;
  const double nb = static_cast<double>(n) / static_cast<double>(b);
  const double lead = nb * static_cast<double>(b - 1) / static_cast<double>(n - 1);
  return lead * prof.L_big + batch_fraction(n, b) / static_cast<double>(b) * prof.L_max;
}

std::string_view to_string(CurveKind kind) {
  switch (kind) {
    case CurveKind::exact: return "exact";
    case CurveKind::simple: return "simple";
    case CurveKind::bernstein: return "bernstein";
    case CurveKind::practical: return "practical";
  }
  return "?";
}

SmoothnessCurve closed_form_curve(CurveKind kind, const SmoothnessProfile& prof) {
  if (kind == CurveKind::exact) {
    throw std::invalid_argument("the exact curve needs the problem, use exact_curve");
  }
  SmoothnessCurve curve{kind, {}};
  curve.values.reserve(static_cast<std::size_t>(prof.n));
  for (Index b = 1; b <= prof.n; ++b) {
    switch (kind) {
      case CurveKind::simple: curve.values.push_back(simple_bound(prof, b)); break;
      case CurveKind::bernstein: curve.values.push_back(bernstein_bound(prof, b)); break;
      case CurveKind::practical: curve.values.push_back(practical_estimate(prof, b)); break;
      case CurveKind::exact: break;
    }
  }
  return curve;
}

SmoothnessCurve exact_curve(const GlmProblem& p, double cap) {
  SmoothnessCurve curve{CurveKind::exact, {}};
  for (Index b = 1; b <= p.n(); ++b) curve.values.push_back(exact_expected_smoothness(p, b, cap));
  return curve;
}

}  // namespace bnsaga
