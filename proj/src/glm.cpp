#include "bnsaga/glm.hpp"

#include <cmath>
#include <string>

#include "bnsaga/errors.hpp"

namespace bnsaga {

Loss parse_loss(std::string_view name) {
  if (name == "ridge") return Loss::ridge;
  if (name == "logistic") return Loss::logistic;
  throw std::invalid_argument("unknown loss '" + std::string(name) + "' (expected ridge|logistic)");
}

std::string_view to_string(Loss loss) { return loss == Loss::ridge ? "ridge" : "logistic"; }

GlmProblem make_problem(Dataset data, Loss loss, double lambda) {
  validate(data);
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) {
    throw ValidationError("lambda must be a finite nonnegative number");
  }
  if (loss == Loss::logistic) {
    for (Index i = 0; i < data.n(); ++i) {
      const double y = data.labels[i];
      if (y != 1.0 && y != -1.0) {
        throw ValidationError("logistic loss needs labels in {-1, +1}; sample " +
                              std::to_string(i + 1) + " has " + std::to_string(y));
      }
    }
  }
  return {std::move(data), loss, lambda};
}

namespace {

// log(1 + exp(t)) without overflow
double softplus(double t) { return std::max(t, 0.0) + std::log1p(std::exp(-std::abs(t))); }

}  // namespace

double phi(Loss loss, double z, double y) {
  if (loss == Loss::ridge) return 0.5 * (z - y) * (z - y);
  return softplus(-y * z);
}

double phi_prime(Loss loss, double z, double y) {
  if (loss == Loss::ridge) return z - y;
  // -y / (1 + exp(y z)), written so that exp never overflows
  const double t = y * z;
  if (t >= 0.0) {
    const double e = std::exp(-t);
    return -y * e / (1.0 + e);
  }
  return -y / (1.0 + std::exp(t));
}

double phi_second(Loss loss, double z, double y) {
  if (loss == Loss::ridge) return 1.0;
  const double t = y * z;
  const double e = std::exp(-std::abs(t));
  return e / ((1.0 + e) * (1.0 + e));
}

double curvature_bound(Loss loss) { return loss == Loss::ridge ? 1.0 : 0.25; }

namespace {

void check_dim(const GlmProblem& p, const Vector& w) {
  if (w.size() != p.d()) {
    throw DimensionError("w has length " + std::to_string(w.size()) + ", expected d = " +
                         std::to_string(p.d()));
  }
}

}  // namespace

double loss_value(const GlmProblem& p, const Vector& w) {
  check_dim(p, w);
  double acc = 0.0;
  for (Index i = 0; i < p.n(); ++i) acc += phi(p.loss, p.data.features.dot(i, w), p.data.labels[i]);
  return acc / static_cast<double>(p.n()) + 0.5 * p.lambda * w.squaredNorm();
}

Vector sample_gradient(const GlmProblem& p, Index i, const Vector& w) {
  check_dim(p, w);
  if (i < 0 || i >= p.n()) {
    throw std::out_of_range("sample index " + std::to_string(i) + " out of range [0, " +
                            std::to_string(p.n()) + ")");
  }
  Vector g = p.lambda * w;
  const double s = phi_prime(p.loss, p.data.features.dot(i, w), p.data.labels[i]);
  p.data.features.add_column(i, s, g);
  return g;
}

Vector full_gradient(const GlmProblem& p, const Vector& w) {
  check_dim(p, w);
  Vector g = Vector::Zero(p.d());
  for (Index i = 0; i < p.n(); ++i) {
    const double s = phi_prime(p.loss, p.data.features.dot(i, w), p.data.labels[i]);
    p.data.features.add_column(i, s, g);
  }
  g /= static_cast<double>(p.n());
  g.noalias() += p.lambda * w;
  return g;
}

}  // namespace bnsaga
