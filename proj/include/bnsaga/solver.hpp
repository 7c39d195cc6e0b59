#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "bnsaga/expsmooth.hpp"
#include "bnsaga/glm.hpp"
#include "bnsaga/tuning.hpp"

namespace bnsaga {

enum class StepRule { practical, simple, bernstein, exact, defazio, hofmann, fixed };

struct StepPolicy {
  StepRule rule = StepRule::practical;
  double value = 0.0;  // only for StepRule::fixed

  static StepPolicy fixed(double gamma) { return {StepRule::fixed, gamma}; }
};

/// "practical", "simple", "bernstein", "exact", "defazio", "hofmann", "fixed:<gamma>".
StepPolicy parse_step_policy(std::string_view text);
std::string to_string(const StepPolicy& policy);

enum class JacobianMode { dense, compact };
JacobianMode parse_jacobian_mode(std::string_view text);

enum class RunStatus { converged, epoch_budget, diverged };
std::string_view to_string(RunStatus status);

struct SolverConfig {
  Index batch_size = 1;
  StepPolicy gamma;
  int max_epochs = 500;
  double tol = 1e-4;
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;  // run id; (seed, stream) selects the RNG stream
  JacobianMode jacobian = JacobianMode::compact;
  int eval_period = 1;
  double exact_cap = kDefaultExactCap;
  bool record_time = true;
};

/// Iterate, Jacobian estimate and its running column mean.
///
/// The Jacobian holds only the data-fit part of each sample gradient,
/// phi_i'(a_i^T w) a_i; the regularizer gradient lambda*w is exact and added
/// to every step. Compact mode stores the n scalars phi_i'; dense mode also
/// materializes the d x n columns. Both modes follow identical arithmetic.
struct SagaState {
  SagaState(const GlmProblem& p, JacobianMode mode);

  JacobianMode mode;
  Vector w;
  Vector scalars;  // s_i, column i of J is s_i * a_i
  Matrix columns;  // dense mode only
  Vector u;        // (1/n) J e
  long long k = 0;
  long long grad_evals = 0;

  // scratch
  Vector aux;
  Vector g;
};

enum class StepOutcome { ok, diverged };

/// One b-nice SAGA step on the given batch (distinct indices).
StepOutcome saga_step(const GlmProblem& p, SagaState& state, std::span<const Index> batch,
                      double gamma);

/// max |u - (1/n) J e| / max(1, max |u|).
double consistency_error(const GlmProblem& p, const SagaState& state);

struct ReferenceSolution {
  Vector w;
  double f = 0.0;
  bool converged = false;
  long long iterations = 0;
  double grad_inf_norm = 0.0;
};

/// Full-gradient descent with step 1/(L + lambda) until ||grad f||_inf <= tol.
/// Returns the last iterate with converged = false when the budget runs out.
ReferenceSolution compute_reference_solution(const GlmProblem& p, double tol = 1e-12,
                                             long long max_iter = 1'000'000);
ReferenceSolution compute_reference_solution(const GlmProblem& p, const SmoothnessProfile& prof,
                                             double tol = 1e-12, long long max_iter = 1'000'000);

double resolve_step_size(const GlmProblem& p, const SmoothnessProfile& prof,
                         const SolverConfig& cfg);

struct TraceRecord {
  int epoch;
  double rel_subopt;
  long long grad_evals;
  double seconds;
};

struct Trace {
  std::vector<TraceRecord> records;
  RunStatus status = RunStatus::epoch_budget;
  double gamma = 0.0;
  Index batch_size = 0;
  long long iterations = 0;
  long long grad_evals = 0;
  double consistency_error = 0.0;
  Vector w;
};

/// Runs b-nice SAGA from w = 0, J = 0 until the relative suboptimality
/// (f(w) - f*)/(f(w0) - f*) drops to cfg.tol, checked every cfg.eval_period
/// epochs of ceil(n/b) iterations.
Trace run_saga(const GlmProblem& p, const SolverConfig& cfg, const ReferenceSolution& ref);
Trace run_saga(const GlmProblem& p, const SmoothnessProfile& prof, const SolverConfig& cfg,
               const ReferenceSolution& ref);

/// Averages the Alg. 1 gradient estimate
///   g_B = (1/n) J e + (1/b) sum_{i in B} (grad f_i(w) - J_{:i})
/// over every b-subset and returns ||mean - grad f(w)||_inf. J is d x n and
/// holds full sample gradients (regularizer included).
double unbiasedness_check(const GlmProblem& p, const Vector& w, const Matrix& jacobian, Index b,
                          double cap = 1e4);

}  // namespace bnsaga
