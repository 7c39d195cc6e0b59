// Acceptance suite: one PASS/FAIL line per criterion. Exit status is the
// number of failed criteria (capped at 125).

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "bnsaga/bernstein.hpp"
#include "bnsaga/cli.hpp"
#include "bnsaga/expsmooth.hpp"
#include "bnsaga/sampling.hpp"
#include "bnsaga/solver.hpp"
#include "bnsaga/tuning.hpp"
#include "oracles.hpp"

using namespace bnsaga;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& why) {
    if (!ok && pass) detail = why;
    pass = pass && ok;
  }
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

bool close_rel(double got, double want, double tol) {
  return std::abs(got - want) <= tol * std::max(std::abs(want), 1e-300);
}

std::vector<GlmProblem> small_random_problems(int count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<GlmProblem> out;
  for (int k = 0; k < count; ++k) {
    out.push_back(oracle::random_problem(rng, 1, 10, 1, 8, k % 2 ? Loss::logistic : Loss::ridge));
  }
  return out;
}

std::vector<GlmProblem> artificial24(double lambda) {
  return {
      make_problem(generate_artificial(ArtificialKind::uniform, 24, 50, 1), Loss::ridge, lambda),
      make_problem(generate_artificial(ArtificialKind::alone_eigval, 24, 24, 1), Loss::ridge, lambda),
      make_problem(generate_artificial(ArtificialKind::staircase_eigval, 24, 24, 1), Loss::ridge,
                   lambda),
  };
}

// 1
Outcome endpoint_identities() {
  Outcome o;
  auto problems = small_random_problems(50, 101);
  for (auto& p : artificial24(1e-3)) problems.push_back(std::move(p));
  int checked = 0;
  for (const auto& p : problems) {
    const auto prof = compute_profile(p);
    const Index n = p.n();
    const double ln_d = std::log(static_cast<double>(p.d()));
    const auto id = fmt("n=%ld d=%ld", static_cast<long>(n), static_cast<long>(p.d()));
    o.require(close_rel(exact_expected_smoothness(p, 1), prof.L_max, 1e-9), "exact(1) " + id);
    o.require(close_rel(exact_expected_smoothness(p, n), prof.L_big, 1e-9), "exact(n) " + id);
    o.require(close_rel(simple_bound(prof, 1), prof.L_max, 1e-9), "simple(1) " + id);
    o.require(close_rel(simple_bound(prof, n), prof.L_bar, 1e-9), "simple(n) " + id);
    o.require(close_rel(practical_estimate(prof, 1), prof.L_max, 1e-9), "practical(1) " + id);
    o.require(close_rel(practical_estimate(prof, n), prof.L_big, 1e-9), "practical(n) " + id);
    o.require(close_rel(bernstein_bound(prof, 1), (1 + 4.0 / 3.0 * ln_d) * prof.L_max, 1e-9),
              "bernstein(1) " + id);
    ++checked;
  }
  if (o.pass) o.detail = fmt("%d problems", checked);
  return o;
}

// 2
Outcome bound_dominance() {
  Outcome o;
  double worst = INFINITY;
  long long pairs = 0;
  for (const auto& p : small_random_problems(50, 202)) {
    const auto prof = compute_profile(p);
    for (Index b = 1; b <= p.n(); ++b) {
      const double exact = exact_expected_smoothness(p, b);
      const double scale = std::max(1.0, exact);
      const double s1 = (simple_bound(prof, b) - exact) / scale;
      const double s2 = (bernstein_bound(prof, b) - exact) / scale;
      worst = std::min({worst, s1, s2});
      o.require(s1 >= -1e-9, fmt("simple below exact at n=%ld b=%ld", long(p.n()), long(b)));
      o.require(s2 >= -1e-9, fmt("bernstein below exact at n=%ld b=%ld", long(p.n()), long(b)));
      ++pairs;
    }
  }
  if (o.pass) o.detail = fmt("%lld (problem, b) pairs, min relative slack %.3g", pairs, worst);
  return o;
}

// 3
Outcome practical_below_simple() {
  Outcome o;
  auto problems = small_random_problems(50, 303);
  for (double lambda : {1e-3, 1e-1}) {
    for (auto& p : artificial24(lambda)) {
      problems.push_back(p);
      auto scaled = p;
      scaled.data = standardize_features(p.data);
      problems.push_back(std::move(scaled));
      if (p.n() == p.d()) {
        auto rotated = p;
        rotated.data = rotate(p.data, 5);
        problems.push_back(std::move(rotated));
      }
    }
  }
  long long pairs = 0;
  for (const auto& p : problems) {
    const auto prof = compute_profile(p);
    for (Index b = 1; b <= p.n(); ++b) {
      const double prac = practical_estimate(prof, b), simple = simple_bound(prof, b);
      o.require(prac <= simple * (1 + 1e-12), fmt("practical > simple at n=%ld b=%ld", long(p.n()), long(b)));
      o.require(step_size(prac, prof, b) >= step_size(simple, prof, b) * (1 - 1e-12),
                fmt("gamma_practical < gamma_simple at b=%ld", long(b)));
      ++pairs;
    }
  }
  if (o.pass) o.detail = fmt("%zu datasets, %lld (dataset, b) pairs", problems.size(), pairs);
  return o;
}

// 4
Outcome closed_form_optimality() {
  Outcome o;
  const auto id24 = compute_profile(oracle::diagonal_problem(Vector::Ones(24), 100.0));
  const Index worked = brute_force_optimal_b(closed_form_curve(CurveKind::simple, id24), id24);
  o.require(worked == 6 && optimal_b_simple(id24) == 6,
            fmt("A=I_24, lambda=100: brute force %ld, closed form %ld", long(worked),
                long(optimal_b_simple(id24))));

  std::mt19937_64 rng(404);
  int mismatches = 0, nontrivial = 0;
  std::string first;
  for (int k = 0; k < 100; ++k) {
    auto p = oracle::random_problem(rng, 1, 64, 1, 10, Loss::ridge);
    p.lambda = std::pow(10.0, std::uniform_real_distribution<double>(-3.0, 3.0)(rng));
    const auto prof = compute_profile(p);
    const Index brute = brute_force_optimal_b(closed_form_curve(CurveKind::simple, prof), prof);
    const Index closed = optimal_b_simple(prof);
    nontrivial += closed > 1;
    if (brute != closed) {
      if (mismatches == 0) {
        const auto k_total = [&](Index b) {
          return complexity(simple_bound(prof, b), prof, b).k_total;
        };
        first = fmt("n=%ld lambda=%.4g: brute force %ld (K_total %.6g), closed form %ld "
                    "(K_total %.6g)",
                    long(p.n()), p.lambda, long(brute), k_total(brute), long(closed),
                    k_total(closed));
      }
      ++mismatches;
    }
  }
  o.require(mismatches == 0, fmt("%d/100 mismatches; first %s", mismatches, first.c_str()));
  if (o.pass) o.detail = fmt("100 random profiles (%d with b*>1) plus A=I_24", nontrivial);
  return o;
}

// 5
Outcome orthonormal_toy() {
  Outcome o;
  const auto p = oracle::orthonormal3();
  const auto prof = compute_profile(p);
  const double exact = exact_expected_smoothness(p, 2);
  o.require(std::abs(exact - 0.5) <= 1e-12, fmt("exact(2)=%.17g", exact));
  o.require(std::abs(practical_estimate(prof, 2) - 0.5) <= 1e-12, "practical(2) != 0.5");
  o.require(std::abs(simple_bound(prof, 2) - 1.0) <= 1e-12, "simple(2) != 1");
  if (o.pass) o.detail = "exact(2)=practical(2)=0.5, simple(2)=1";
  return o;
}

// 6
Outcome unbiasedness() {
  Outcome o;
  std::mt19937_64 rng(606);
  double worst = 0.0;
  int cases = 0;
  for (Index n = 1; n <= 8; ++n) {
    for (Loss loss : {Loss::ridge, Loss::logistic}) {
      const auto p = oracle::random_problem(rng, n, n, 1, 6, loss);
      const Vector w = oracle::random_matrix(p.d(), 1, rng);
      const Matrix j = oracle::random_matrix(p.d(), n, rng);
      for (Index b = 1; b <= n; ++b) {
        const double dev = unbiasedness_check(p, w, j, b);
        worst = std::max(worst, dev);
        o.require(dev <= 1e-12, fmt("n=%ld b=%ld deviation %.3g", long(n), long(b), dev));
        ++cases;
      }
    }
  }
  if (o.pass) o.detail = fmt("%d (problem, b) cases, max deviation %.3g", cases, worst);
  return o;
}

// 7
Outcome theory_settings_converge() {
  Outcome o;
  const auto p = make_problem(generate_artificial(ArtificialKind::staircase_eigval, 24, 24, 1),
                              Loss::ridge, 1e-3);
  const auto prof = compute_profile(p);
  const auto ref = compute_reference_solution(p, prof);
  SolverConfig cfg;
  cfg.batch_size = optimal_b_practical(prof);
  cfg.gamma = {StepRule::practical};
  cfg.tol = 1e-4;
  cfg.seed = 1;
  cfg.max_epochs = 1'000'000;
  cfg.record_time = false;
  const auto t = run_saga(p, prof, cfg, ref);
  const double cl = exact_expected_smoothness(p, cfg.batch_size);
  const double predicted = complexity(cl, prof, cfg.batch_size, 1e-4).k_total;
  o.require(t.status == RunStatus::converged, "did not converge");
  o.require(static_cast<double>(t.grad_evals) <= 3.0 * predicted,
            fmt("grad_evals %lld > 3 x %.1f", t.grad_evals, predicted));
  o.detail = fmt("b=%ld gamma=%.6g grad_evals=%lld, prediction %.1f (ratio %.3f)",
                 long(cfg.batch_size), t.gamma, t.grad_evals, predicted, t.grad_evals / predicted) +
             (o.pass ? "" : "; " + o.detail);
  return o;
}

// 8
Outcome gd_recovery() {
  Outcome o;
  std::mt19937_64 rng(808);
  double worst = 0.0;
  for (Loss loss : {Loss::ridge, Loss::logistic}) {
    const auto p = oracle::random_problem(rng, 12, 12, 5, 5, loss);
    const Matrix a = p.data.features.to_dense();
    const Vector& y = p.data.labels;
    const auto prof = compute_profile(p);
    const double gamma = step_size(prof.L_big, prof, p.n());

    Vector w = Vector::Zero(p.d());
    for (int k = 0; k < 20; ++k) {
      const Vector z = a.transpose() * w;
      Vector s(p.n());
      for (Index i = 0; i < p.n(); ++i) {
        s[i] = loss == Loss::ridge ? z[i] - y[i] : -y[i] / (1.0 + std::exp(y[i] * z[i]));
      }
      w -= gamma * (a * s / static_cast<double>(p.n()) + p.lambda * w);
    }

    SolverConfig cfg;
    cfg.batch_size = p.n();
    cfg.gamma = StepPolicy::fixed(gamma);
    cfg.max_epochs = 20;
    cfg.tol = 1e-300;
    cfg.record_time = false;
    const auto t = run_saga(p, prof, cfg, compute_reference_solution(p, prof));
    o.require(t.iterations == 20, "expected 20 iterations");
    const double dev = (t.w - w).cwiseAbs().maxCoeff();
    worst = std::max(worst, dev);
    o.require(dev <= 1e-12, fmt("%s deviation %.3g", std::string(to_string(loss)).c_str(), dev));
  }
  if (o.pass) o.detail = fmt("ridge and logistic, max coordinate deviation %.3g", worst);
  return o;
}

// 9
Outcome dense_compact_equality() {
  Outcome o;
  std::mt19937_64 rng(909);
  double worst = 0.0;
  for (Loss loss : {Loss::ridge, Loss::logistic}) {
    const auto p = oracle::random_problem(rng, 10, 10, 4, 4, loss);
    const auto prof = compute_profile(p);
    const double gamma = step_size(practical_estimate(prof, 3), prof, 3);
    SagaState dense(p, JacobianMode::dense), compact(p, JacobianMode::compact);
    BniceSampler sampler(p.n(), 3);
    Rng r = make_stream(9);
    for (int k = 0; k < 100; ++k) {
      const auto batch = sampler.draw(r);
      saga_step(p, dense, batch, gamma);
      saga_step(p, compact, batch, gamma);
      worst = std::max(worst, (dense.w - compact.w).cwiseAbs().maxCoeff());
    }
  }
  o.require(worst <= 1e-12, fmt("max deviation %.3g", worst));
  if (o.pass) o.detail = fmt("100 iterations each on ridge and logistic, max deviation %.3g", worst);
  return o;
}

// 10
Outcome bernstein_checker() {
  Outcome o;
  std::vector<Matrix> scalars;
  for (double v : {0.3, -2.0, 4.5, 1.0, 0.25}) scalars.push_back(Matrix::Constant(1, 1, v));
  const auto full = bernstein_check(center_ensemble(scalars), 5, 10000, 1);
  o.require(full.empirical == 0.0 && full.bound == 0.0 && full.pass,
            fmt("d=1 full draw: empirical %.3g bound %.3g", full.empirical, full.bound));

  Matrix pos = Matrix::Zero(2, 2);
  pos(0, 0) = 1.0;
  pos(1, 1) = -1.0;
  const auto pair = bernstein_check(center_ensemble({pos, Matrix(-pos)}), 1, 10000, 2);
  const double pair_bound = std::sqrt(2 * std::log(2.0)) + std::log(2.0) / 3;
  o.require(pair.empirical == 1.0 && pair.empirical <= 1.4086 &&
                std::abs(pair.bound - pair_bound) < 1e-15 && pair.pass,
            fmt("diag pair: empirical %.6f bound %.6f", pair.empirical, pair.bound));

  std::mt19937_64 rng(1010);
  int failures = 0;
  double worst_ratio = 0.0;
  for (int k = 0; k < 200; ++k) {
    const Index d = std::uniform_int_distribution<Index>(1, 8)(rng);
    const Index size = std::uniform_int_distribution<Index>(1, 30)(rng);
    const Index m = std::uniform_int_distribution<Index>(1, size)(rng);
    const auto r = bernstein_check(random_ensemble(d, size, rng()), m, 10000, rng());
    if (r.bound > 0) worst_ratio = std::max(worst_ratio, r.empirical / r.bound);
    if (!r.pass) {
      if (failures == 0) {
        o.require(false, fmt("d=%ld size=%ld m=%ld: empirical %.4g > bound %.4g + 3 x %.3g",
                             long(d), long(size), long(m), r.empirical, r.bound, r.std_error));
      }
      ++failures;
    }
  }
  if (failures) o.detail += fmt(" (%d/200 failed)", failures);
  if (o.pass) {
    o.detail = fmt("full draw 0=0, diag pair %.3f <= %.4f, 200/200 random ensembles pass "
                   "(max empirical/bound %.3f)",
                   pair.empirical, pair.bound, worst_ratio);
  }
  return o;
}

// 11
Outcome gradient_correctness() {
  Outcome o;
  std::mt19937_64 rng(1111);
  double worst = 0.0;
  int triples = 0;
  for (Loss loss : {Loss::ridge, Loss::logistic}) {
    for (int k = 0; k < 100; ++k) {
      const auto p = oracle::random_problem(rng, 2, 20, 1, 10, loss);
      const Matrix a = p.data.features.to_dense();
      const Vector w = oracle::random_matrix(p.d(), 1, rng);
      const Vector v = oracle::random_matrix(p.d(), 1, rng);
      const auto f = [&](double t) {
        return oracle::objective(a, p.data.labels, loss, p.lambda, w + t * v);
      };
      // Richardson-extrapolated central difference.
      const double h = 1e-3;
      const double d1 = (f(h) - f(-h)) / (2 * h);
      const double d2 = (f(h / 2) - f(-h / 2)) / h;
      const double fd = (4 * d2 - d1) / 3;
      const double analytic = full_gradient(p, w).dot(v);
      const double rel = std::abs(analytic - fd) / std::max({std::abs(fd), std::abs(analytic), 1e-8});
      worst = std::max(worst, rel);
      o.require(rel <= 1e-6, fmt("%s: analytic %.12g vs finite difference %.12g",
                                 std::string(to_string(loss)).c_str(), analytic, fd));
      ++triples;
    }
  }
  if (o.pass) o.detail = fmt("%d triples, max relative error %.3g", triples, worst);
  return o;
}

// 12
Outcome grid_regime_change() {
  Outcome o;
  const auto p = make_problem(generate_artificial(ArtificialKind::staircase_eigval, 24, 24, 1),
                              Loss::ridge, 0.1);
  const auto prof = compute_profile(p);
  const auto ref = compute_reference_solution(p, prof);
  const auto grid = cli::default_batch_grid(p.n());
  const Index b_prac = optimal_b_practical(prof);

  std::string table;
  long long best = -1, at_prac = -1, at_n = -1;
  auto measure = [&](Index b) {
    SolverConfig cfg;
    cfg.batch_size = b;
    cfg.gamma = {StepRule::practical};
    cfg.seed = 1;
    cfg.stream = static_cast<std::uint64_t>(b);
    cfg.max_epochs = 1'000'000;
    cfg.record_time = false;
    const auto t = run_saga(p, prof, cfg, ref);
    o.require(t.status == RunStatus::converged, fmt("b=%ld did not converge", long(b)));
    return t.grad_evals;
  };
  for (Index b : grid) {
    const long long evals = measure(b);
    table += fmt(" %ld:%lld", long(b), evals);
    if (best < 0 || evals < best) best = evals;
    if (b == b_prac) at_prac = evals;
    if (b == p.n()) at_n = evals;
  }
  if (at_prac < 0) {
    at_prac = measure(b_prac);
    best = std::min(best, at_prac);
  }
  const double r_prac = static_cast<double>(at_prac) / best;
  const double r_n = static_cast<double>(at_n) / best;
  o.require(r_prac <= 2.0, fmt("b_practical=%ld at %.2fx the minimum", long(b_prac), r_prac));
  o.require(r_n >= 3.0, fmt("b=n only %.2fx the minimum (need >= 3x)", r_n));
  o.detail = fmt("b_practical=%ld ratio %.2f, b=n ratio %.2f; grad_evals by b:", long(b_prac),
                 r_prac, r_n) +
             table + (o.pass ? "" : "; " + o.detail);
  return o;
}

struct Criterion {
  int id;
  const char* name;
  double limit_seconds;
  std::function<Outcome()> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "endpoint identities", 10, endpoint_identities},
      {2, "bound dominance", 30, bound_dominance},
      {3, "practical below simple", 60, practical_below_simple},
      {4, "closed-form optimal b", 60, closed_form_optimality},
      {5, "orthonormal toy", 60, orthonormal_toy},
      {6, "unbiasedness", 60, unbiasedness},
      {7, "convergence with theory settings", 60, theory_settings_converge},
      {8, "gradient descent recovery", 60, gd_recovery},
      {9, "dense/compact equality", 60, dense_compact_equality},
      {10, "Bernstein checker", 120, bernstein_checker},
      {11, "gradient correctness", 60, gradient_correctness},
      {12, "grid regime change", 300, grid_regime_change},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = c.run();
    } catch (const std::exception& e) {
      out.pass = false;
      out.detail = std::string("exception: ") + e.what();
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs > c.limit_seconds) {
      out.pass = false;
      out.detail += fmt(" (runtime %.1f s over the %.0f s limit)", secs, c.limit_seconds);
    }
    std::printf("[%s] %2d %-34s %7.2fs  %s\n", out.pass ? "PASS" : "FAIL", c.id, c.name, secs,
                out.detail.c_str());
    std::fflush(stdout);
    failed += !out.pass;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed,
              criteria.size());
  return std::min(failed, 125);
}
