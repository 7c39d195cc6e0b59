#pragma once

#include <string_view>

#include "bnsaga/dataset.hpp"

namespace bnsaga {

enum class Loss { ridge, logistic };

Loss parse_loss(std::string_view name);
std::string_view to_string(Loss loss);

/// f(w) = (1/n) sum_i phi_i(a_i^T w) + (lambda/2)||w||^2, with the
/// regularizer carried by every f_i.
struct GlmProblem {
  Dataset data;
  Loss loss = Loss::ridge;
  double lambda = 0.0;

  Index n() const { return data.n(); }
  Index d() const { return data.d(); }
};

/// Validates lambda >= 0 and, for logistic, labels in {-1, +1}.
GlmProblem make_problem(Dataset data, Loss loss, double lambda);

double phi(Loss loss, double z, double y);
double phi_prime(Loss loss, double z, double y);
double phi_second(Loss loss, double z, double y);

/// Upper bound U on phi''.
double curvature_bound(Loss loss);

double loss_value(const GlmProblem& p, const Vector& w);
Vector sample_gradient(const GlmProblem& p, Index i, const Vector& w);
/// Mean of the sample gradients, one accumulation pass.
Vector full_gradient(const GlmProblem& p, const Vector& w);

}  // namespace bnsaga
