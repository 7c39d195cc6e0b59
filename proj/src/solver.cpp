#include "bnsaga/solver.hpp"

#include <charconv>
#include <chrono>
#include <cstdio>
#include <cmath>
#include <limits>
#include <string>

#include "bnsaga/errors.hpp"
#include "bnsaga/kernels.hpp"
#include "bnsaga/sampling.hpp"

namespace bnsaga {

StepPolicy parse_step_policy(std::string_view text) {
  if (text == "practical") return {StepRule::practical};
  if (text == "simple") return {StepRule::simple};
  if (text == "bernstein") return {StepRule::bernstein};
  if (text == "exact") return {StepRule::exact};
  if (text == "defazio") return {StepRule::defazio};
  if (text == "hofmann") return {StepRule::hofmann};
  if (text.starts_with("fixed:")) {
    const auto num = text.substr(6);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(num.data(), num.data() + num.size(), value);
    if (ec != std::errc() || ptr != num.data() + num.size() || !(value > 0.0) ||
        !std::isfinite(value)) {
      throw std::invalid_argument("fixed step size must be a positive number, got '" +
                                  std::string(num) + "'");
    }
    return StepPolicy::fixed(value);
  }
  throw std::invalid_argument("unknown step-size policy '" + std::string(text) + "'");
}

std::string to_string(const StepPolicy& policy) {
  switch (policy.rule) {
    case StepRule::practical: return "practical";
    case StepRule::simple: return "simple";
    case StepRule::bernstein: return "bernstein";
    case StepRule::exact: return "exact";
    case StepRule::defazio: return "defazio";
    case StepRule::hofmann: return "hofmann";
    case StepRule::fixed: {
      char buf[48];
      std::snprintf(buf, sizeof buf, "fixed:%.17g", policy.value);
      return buf;
    }
  }
  return "?";
}

JacobianMode parse_jacobian_mode(std::string_view text) {
  if (text == "dense") return JacobianMode::dense;
  if (text == "compact") return JacobianMode::compact;
  throw std::invalid_argument("unknown Jacobian mode '" + std::string(text) +
                              "' (expected dense|compact)");
}

std::string_view to_string(RunStatus status) {
  switch (status) {
    case RunStatus::converged: return "converged";
    case RunStatus::epoch_budget: return "epoch_budget";
    case RunStatus::diverged: return "diverged";
  }
  return "?";
}

// ---------------------------------------------------------------------------

SagaState::SagaState(const GlmProblem& p, JacobianMode mode_)
    : mode(mode_),
      w(Vector::Zero(p.d())),
      scalars(Vector::Zero(p.n())),
      u(Vector::Zero(p.d())),
      aux(p.d()),
      g(p.d()) {
  if (mode == JacobianMode::dense) columns = Matrix::Zero(p.d(), p.n());
}

StepOutcome saga_step(const GlmProblem& p, SagaState& state, std::span<const Index> batch,
                      double gamma) {
  const auto& a = p.data.features;
  state.aux.setZero();
  for (Index i : batch) {
    const double fresh = phi_prime(p.loss, a.dot(i, state.w), p.data.labels[i]);
    a.add_column(i, fresh - state.scalars[i], state.aux);
    state.scalars[i] = fresh;
    if (state.mode == JacobianMode::dense) {
      a.gather_column(i, state.columns.col(i));
      state.columns.col(i) *= fresh;
    }
  }
  const double b = static_cast<double>(batch.size());
  state.g = state.u + state.aux / b + p.lambda * state.w;
  state.u += state.aux / static_cast<double>(p.n());
  state.k += 1;
  state.grad_evals += static_cast<long long>(batch.size());
  if (!state.g.allFinite()) return StepOutcome::diverged;
  state.w -= gamma * state.g;
  return StepOutcome::ok;
}

double consistency_error(const GlmProblem& p, const SagaState& state) {
  Vector mean = Vector::Zero(p.d());
  if (state.mode == JacobianMode::dense) {
    mean = state.columns.rowwise().sum();
  } else {
    for (Index i = 0; i < p.n(); ++i) p.data.features.add_column(i, state.scalars[i], mean);
  }
  mean /= static_cast<double>(p.n());
  const double scale = std::max(1.0, state.u.cwiseAbs().maxCoeff());
  return (state.u - mean).cwiseAbs().maxCoeff() / scale;
}

// ---------------------------------------------------------------------------

ReferenceSolution compute_reference_solution(const GlmProblem& p, double tol, long long max_iter) {
  return compute_reference_solution(p, compute_profile(p), tol, max_iter);
}

ReferenceSolution compute_reference_solution(const GlmProblem& p, const SmoothnessProfile& prof,
                                             double tol, long long max_iter) {
  if (!(prof.mu > 0.0)) throw ValidationError("reference solution needs mu > 0");
  const double step = 1.0 / (prof.L_big + prof.lambda);
  ReferenceSolution ref;
  ref.w = Vector::Zero(p.d());
  for (; ref.iterations < max_iter; ++ref.iterations) {
    const Vector g = parallel::full_gradient(p, ref.w);
    ref.grad_inf_norm = g.cwiseAbs().maxCoeff();
    if (ref.grad_inf_norm <= tol) {
      ref.converged = true;
      break;
    }
    ref.w -= step * g;
  }
  if (!ref.converged) ref.grad_inf_norm = full_gradient(p, ref.w).cwiseAbs().maxCoeff();
  ref.f = loss_value(p, ref.w);
  return ref;
}

double resolve_step_size(const GlmProblem& p, const SmoothnessProfile& prof,
                         const SolverConfig& cfg) {
  const Index b = cfg.batch_size;
  switch (cfg.gamma.rule) {
    case StepRule::practical: return step_size(practical_estimate(prof, b), prof, b);
    case StepRule::simple: return step_size(simple_bound(prof, b), prof, b);
    case StepRule::bernstein: return step_size(bernstein_bound(prof, b), prof, b);
    case StepRule::exact:
      return step_size(exact_expected_smoothness(p, b, cfg.exact_cap), prof, b);
    case StepRule::defazio: return defazio_step_size(prof);
    case StepRule::hofmann: return hofmann_step_size(prof, b);
    case StepRule::fixed:
      if (!(cfg.gamma.value > 0.0)) throw std::invalid_argument("fixed step size must be positive");
      return cfg.gamma.value;
  }
  throw std::logic_error("unhandled step rule");
}

namespace {

void check_config(const GlmProblem& p, const SolverConfig& cfg) {
  if (cfg.batch_size < 1 || cfg.batch_size > p.n()) {
    throw std::invalid_argument("batch size " + std::to_string(cfg.batch_size) +
                                " outside [1, " + std::to_string(p.n()) + "]");
  }
  if (!(cfg.tol > 0.0 && cfg.tol < 1.0)) throw std::invalid_argument("tol must lie in (0, 1)");
  if (cfg.max_epochs < 1) throw std::invalid_argument("max_epochs must be positive");
  if (cfg.eval_period < 1) throw std::invalid_argument("eval_period must be positive");
}

}  // namespace

Trace run_saga(const GlmProblem& p, const SolverConfig& cfg, const ReferenceSolution& ref) {
  return run_saga(p, compute_profile(p), cfg, ref);
}

Trace run_saga(const GlmProblem& p, const SmoothnessProfile& prof, const SolverConfig& cfg,
               const ReferenceSolution& ref) {
  check_config(p, cfg);
  using clock = std::chrono::steady_clock;
  const auto start = clock::now();
  const auto elapsed = [&] {
    return cfg.record_time ? std::chrono::duration<double>(clock::now() - start).count() : 0.0;
  };

  Trace trace;
  trace.batch_size = cfg.batch_size;
  trace.gamma = resolve_step_size(p, prof, cfg);

  SagaState state(p, cfg.jacobian);
  BniceSampler sampler(p.n(), cfg.batch_size);
  Rng rng = make_stream(cfg.seed, cfg.stream);

  const double f0 = loss_value(p, state.w);
  const double gap0 = f0 - ref.f;
  const double blowup = 1e12 * std::max(std::abs(f0), std::numeric_limits<double>::min());
  const auto relative = [&](double f) { return gap0 > 0.0 ? (f - ref.f) / gap0 : 0.0; };

  trace.records.push_back({0, relative(f0), 0, 0.0});
  if (relative(f0) <= cfg.tol) {
    trace.status = RunStatus::converged;
  } else {
    const Index per_epoch = (p.n() + cfg.batch_size - 1) / cfg.batch_size;
    bool done = false;
    for (int epoch = 1; epoch <= cfg.max_epochs && !done; ++epoch) {
      for (Index it = 0; it < per_epoch; ++it) {
        if (saga_step(p, state, sampler.draw(rng), trace.gamma) == StepOutcome::diverged) {
          trace.status = RunStatus::diverged;
          done = true;
          break;
        }
      }
      if (done) break;
      if (epoch % cfg.eval_period != 0 && epoch != cfg.max_epochs) continue;

      const double f = loss_value(p, state.w);
      if (!std::isfinite(f) || f > blowup) {
        trace.status = RunStatus::diverged;
        break;
      }
      const double rel = relative(f);
      trace.records.push_back({epoch, rel, state.grad_evals, elapsed()});
      if (rel <= cfg.tol) {
        trace.status = RunStatus::converged;
        done = true;
      }
    }
  }

  trace.iterations = state.k;
  trace.grad_evals = state.grad_evals;
  trace.consistency_error = consistency_error(p, state);
  trace.w = state.w;
  return trace;
}

double unbiasedness_check(const GlmProblem& p, const Vector& w, const Matrix& jacobian, Index b,
                          double cap) {
  const Index n = p.n();
  if (jacobian.rows() != p.d() || jacobian.cols() != n) {
    throw DimensionError("Jacobian must be d x n");
  }
  if (b < 1 || b > n) throw std::invalid_argument("batch size outside [1, n]");
  const double subsets = binomial(n, b);
  if (subsets > cap) {
    throw IntractableError("unbiasedness check needs C(n, b) = " + std::to_string(subsets) +
                           " batches, above the cap of " + std::to_string(cap));
  }
  Matrix grads(p.d(), n);
  for (Index i = 0; i < n; ++i) grads.col(i) = sample_gradient(p, i, w);
  const Vector jmean = jacobian.rowwise().mean();

  Vector total = Vector::Zero(p.d());
  Combinations comb(n, b);
  do {
    Vector g = jmean;
    for (Index i : comb.current()) g += (grads.col(i) - jacobian.col(i)) / static_cast<double>(b);
    total += g;
  } while (comb.next() >= 0);
  total /= subsets;
  return (total - full_gradient(p, w)).cwiseAbs().maxCoeff();
}

}  // namespace bnsaga
