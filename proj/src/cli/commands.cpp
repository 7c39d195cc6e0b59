#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bnsaga/bernstein.hpp"
#include "bnsaga/cli.hpp"
#include "bnsaga/csv.hpp"
#include "bnsaga/errors.hpp"
#include "bnsaga/expsmooth.hpp"
#include "bnsaga/sampling.hpp"
#include "bnsaga/smoothness.hpp"
#include "bnsaga/solver.hpp"
#include "bnsaga/tuning.hpp"

namespace bnsaga::cli {

namespace {

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, sep)) parts.push_back(item);
  return parts;
}

long long to_integer(const std::string& text, const char* what) {
  long long v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw UsageError(std::string("invalid ") + what + " '" + text + "'");
  }
  return v;
}

double to_real(const std::string& text, const char* what) {
  double v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw UsageError(std::string("invalid ") + what + " '" + text + "'");
  }
  return v;
}

void write_problem_meta(std::ostream& out, const GlmProblem& p, const SmoothnessProfile& prof) {
  csv::write_meta(out, "n", std::to_string(p.n()));
  csv::write_meta(out, "d", std::to_string(p.d()));
  csv::write_meta(out, "loss", to_string(p.loss));
  csv::write_meta(out, "lambda", p.lambda);
  csv::write_meta(out, "L_max", prof.L_max);
  csv::write_meta(out, "L_bar", prof.L_bar);
  csv::write_meta(out, "L", prof.L_big);
  csv::write_meta(out, "mu", prof.mu);
}

/// b = 1..n, or ~64 log-spaced sizes plus n once n exceeds 1000.
std::vector<Index> curve_batches(Index n) {
  std::vector<Index> bs;
  if (n <= 1000) {
    for (Index b = 1; b <= n; ++b) bs.push_back(b);
    return bs;
  }
  const int points = 64;
  for (int k = 0; k < points; ++k) {
    const double t = static_cast<double>(k) / (points - 1);
    bs.push_back(static_cast<Index>(std::llround(std::exp(t * std::log(static_cast<double>(n))))));
  }
  bs.push_back(n);
  std::sort(bs.begin(), bs.end());
  bs.erase(std::unique(bs.begin(), bs.end()), bs.end());
  return bs;
}

/// Exact curve value or nothing when the enumeration is over budget.
std::optional<double> try_exact(const GlmProblem& p, Index b, double cap, bool& warned,
                                std::ostream& err) {
  try {
    return exact_expected_smoothness(p, b, cap);
  } catch (const IntractableError& e) {
    if (!warned) {
      err << "warning: exact expected smoothness skipped where C(n, b) > " << cap
          << " (first at b = " << b << ")\n";
      warned = true;
    }
    return std::nullopt;
  }
}

Index resolve_batch(const RunSpec& spec, const SmoothnessProfile& prof) {
  const std::string& b = spec.batch;
  Index value = 0;
  if (b == "auto") {
    if (spec.gamma == "defazio") value = 1;
    else if (spec.gamma == "hofmann") value = std::min<Index>(20, prof.n);
    else value = optimal_b_practical(prof);
  } else if (b == "practical") {
    value = optimal_b_practical(prof);
  } else if (b == "simple") {
    value = optimal_b_simple(prof);
  } else if (b == "bernstein") {
    value = optimal_b_bernstein(prof);
  } else if (b == "n") {
    value = prof.n;
  } else {
    value = static_cast<Index>(to_integer(b, "batch size"));
  }
  if (value < 1 || value > prof.n) {
    throw UsageError("batch size " + std::to_string(value) + " outside [1, " +
                     std::to_string(prof.n) + "]");
  }
  return value;
}

/// CLI step-size policies. "hofmann" is the b = 20, gamma = 20/(n mu) preset;
/// "hofmann-k" is the K-based formula at the chosen b.
StepPolicy resolve_gamma(const RunSpec& spec, const SmoothnessProfile& prof, Index b) {
  if (spec.gamma == "hofmann") {
    return StepPolicy::fixed(static_cast<double>(b) / (static_cast<double>(prof.n) * prof.mu));
  }
  if (spec.gamma == "hofmann-k") return {StepRule::hofmann};
  try {
    return parse_step_policy(spec.gamma);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

SolverConfig make_config(const RunSpec& spec, Index b, StepPolicy gamma) {
  SolverConfig cfg;
  cfg.batch_size = b;
  cfg.gamma = gamma;
  cfg.max_epochs = spec.max_epochs;
  cfg.tol = spec.tol;
  cfg.seed = spec.seed;
  cfg.eval_period = spec.eval_period;
  cfg.exact_cap = spec.exact_cap;
  cfg.record_time = spec.timing;
  try {
    cfg.jacobian = parse_jacobian_mode(spec.jacobian);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  return cfg;
}

MatrixEnsemble ensemble_from_spec(const std::string& text, const RunSpec& spec,
                                  std::uint64_t seed) {
  if (text == "diag-pair") {
    Matrix a = Matrix::Zero(2, 2);
    a(0, 0) = 1.0;
    a(1, 1) = -1.0;
    return center_ensemble({a, Matrix(-a)});
  }
  if (text == "gram") return outer_product_ensemble(load_dataset(spec).features);
  if (text.starts_with("scalar:")) {
    std::vector<Matrix> members;
    for (const auto& tok : split(text.substr(7), ',')) {
      members.push_back(Matrix::Constant(1, 1, to_real(tok, "scalar member")));
    }
    return center_ensemble(std::move(members));
  }
  if (text.starts_with("random:")) {
    const auto parts = split(text.substr(7), ':');
    if (parts.size() != 2) throw UsageError("expected random:<d>:<size>");
    const auto d = to_integer(parts[0], "dimension");
    const auto size = to_integer(parts[1], "set size");
    if (d < 1 || size < 1) throw UsageError("random ensemble needs d >= 1 and size >= 1");
    return random_ensemble(d, size, seed);
  }
  throw UsageError("unknown ensemble '" + text +
                   "' (expected diag-pair | scalar:v1,v2,... | random:d:size | gram | sweep:count)");
}

void write_bernstein_row(std::ostream& out, const BernsteinReport& r) {
  csv::RowWriter(out) << static_cast<long long>(r.d) << static_cast<long long>(r.set_size)
                      << static_cast<long long>(r.m_draws) << static_cast<long long>(r.trials)
                      << r.empirical << r.bound << (r.pass ? "true" : "false");
}

}  // namespace

// ---------------------------------------------------------------------------

Dataset load_dataset(const RunSpec& spec) {
  if (spec.data_path.empty() == spec.gen.empty()) {
    throw UsageError("give exactly one of --data <file> or --gen kind:n[:d]");
  }
  Dataset ds;
  if (!spec.data_path.empty()) {
    try {
      ds = load_libsvm(spec.data_path);
    } catch (const ParseError& e) {
      throw UsageError(spec.data_path + ": " + e.what());
    } catch (const std::runtime_error& e) {
      throw UsageError(e.what());
    }
  } else {
    const auto parts = split(spec.gen, ':');
    if (parts.size() < 2 || parts.size() > 3) throw UsageError("expected --gen kind:n[:d]");
    ArtificialKind kind;
    try {
      kind = parse_artificial_kind(parts[0]);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
    const auto n = to_integer(parts[1], "n");
    const auto d = parts.size() == 3 ? to_integer(parts[2], "d") : n;
    try {
      ds = generate_artificial(kind, n, d, spec.seed);
    } catch (const DimensionError& e) {
      throw UsageError(e.what());
    }
  }
  if (spec.scale) ds = standardize_features(ds);
  if (spec.rotate) {
    try {
      ds = rotate(ds, spec.seed);
    } catch (const DimensionError& e) {
      throw UsageError(e.what());
    }
  }
  return ds;
}

GlmProblem load_problem(const RunSpec& spec) {
  Loss loss;
  try {
    loss = parse_loss(spec.loss);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  try {
    return make_problem(load_dataset(spec), loss, spec.lambda);
  } catch (const ValidationError& e) {
    throw UsageError(e.what());
  }
}

std::vector<Index> default_batch_grid(Index n) {
  std::vector<Index> grid;
  for (Index b = 1; b <= (Index{1} << 14) && b <= n; b *= 2) grid.push_back(b);
  if (grid.back() != n) grid.push_back(n);
  return grid;
}

int cmd_profile(const RunSpec& spec, std::ostream& out, std::ostream&) {
  const auto p = load_problem(spec);
  write_profile_csv_header(out);
  write_profile_csv_row(out, compute_profile(p));
  return kExitOk;
}

int cmd_bounds(const RunSpec& spec, std::ostream& out, std::ostream& err) {
  const auto p = load_problem(spec);
  const auto prof = compute_profile(p);
  write_problem_meta(out, p, prof);
  csv::write_header(out, {"b", "exact", "simple", "bernstein", "practical"});
  bool warned = false;
  for (Index b : curve_batches(p.n())) {
    csv::RowWriter(out) << static_cast<long long>(b) << try_exact(p, b, spec.exact_cap, warned, err)
                        << simple_bound(prof, b) << bernstein_bound(prof, b)
                        << practical_estimate(prof, b);
  }
  return kExitOk;
}

int cmd_stepsizes(const RunSpec& spec, std::ostream& out, std::ostream& err) {
  const auto p = load_problem(spec);
  const auto prof = compute_profile(p);
  write_problem_meta(out, p, prof);
  csv::write_header(out, {"b", "gamma_simple", "gamma_bernstein", "gamma_practical", "gamma_exact",
                          "gamma_hofmann"});
  bool warned = false;
  for (Index b : curve_batches(p.n())) {
    std::optional<double> exact_gamma;
    if (auto cl = try_exact(p, b, spec.exact_cap, warned, err)) exact_gamma = step_size(*cl, prof, b);
    csv::RowWriter(out) << static_cast<long long>(b) << step_size(simple_bound(prof, b), prof, b)
                        << step_size(bernstein_bound(prof, b), prof, b)
                        << step_size(practical_estimate(prof, b), prof, b) << exact_gamma
                        << hofmann_step_size(prof, b);
  }
  return kExitOk;
}

int cmd_complexity(const RunSpec& spec, std::ostream& out, std::ostream&) {
  const auto p = load_problem(spec);
  const auto prof = compute_profile(p);
  BoundKind which;
  if (spec.bound == "simple") which = BoundKind::simple;
  else if (spec.bound == "bernstein") which = BoundKind::bernstein;
  else throw UsageError("--bound must be simple or bernstein");
  if (!(spec.epsilon > 0.0 && spec.epsilon < 1.0)) throw UsageError("--epsilon must lie in (0, 1)");

  write_problem_meta(out, p, prof);
  csv::write_meta(out, "epsilon", spec.epsilon);
  csv::write_meta(out, "g", spec.bound);
  csv::write_meta(out, "b_simple", std::to_string(optimal_b_simple(prof)));
  csv::write_meta(out, "b_bernstein", std::to_string(optimal_b_bernstein(prof)));
  csv::write_meta(out, "b_practical", std::to_string(optimal_b_practical(prof)));
  csv::write_header(out, {"b", "Ktotal_simple", "Ktotal_bernstein", "Ktotal_practical", "g", "h"});
  const double log_term = std::log(1.0 / spec.epsilon);
  for (Index b : curve_batches(p.n())) {
    const auto gh = complexity_components(prof, b, which);
    csv::RowWriter(out) << static_cast<long long>(b)
                        << complexity(simple_bound(prof, b), prof, b, spec.epsilon).k_total
                        << complexity(bernstein_bound(prof, b), prof, b, spec.epsilon).k_total
                        << complexity(practical_estimate(prof, b), prof, b, spec.epsilon).k_total
                        << gh.g * log_term << gh.h * log_term;
  }
  return kExitOk;
}

int cmd_run(const RunSpec& spec, std::ostream& out, std::ostream& err) {
  const auto p = load_problem(spec);
  const auto prof = compute_profile(p);
  const Index b = resolve_batch(spec, prof);
  const auto cfg = make_config(spec, b, resolve_gamma(spec, prof, b));
  const auto ref = compute_reference_solution(p, prof);
  if (!ref.converged) {
    err << "warning: reference solution stopped at ||grad||_inf = " << ref.grad_inf_norm << "\n";
  }
  const auto trace = run_saga(p, prof, cfg, ref);

  write_problem_meta(out, p, prof);
  csv::write_meta(out, "gamma_policy", spec.gamma);
  csv::write_meta(out, "b", std::to_string(b));
  csv::write_meta(out, "gamma", trace.gamma);
  csv::write_meta(out, "tol", spec.tol);
  csv::write_meta(out, "Ktotal_pred_practical",
                  complexity(practical_estimate(prof, b), prof, b, spec.tol).k_total);
  csv::write_meta(out, "f_star", ref.f);
  csv::write_header(out, {"epoch", "rel_subopt", "grad_evals", "seconds"});
  for (const auto& r : trace.records) {
    csv::RowWriter(out) << r.epoch << r.rel_subopt << r.grad_evals << r.seconds;
  }
  err << "status=" << to_string(trace.status) << " b=" << b << " gamma=" << csv::format_real(trace.gamma)
      << " iterations=" << trace.iterations << " grad_evals=" << trace.grad_evals << "\n";
  return trace.status == RunStatus::converged ? kExitOk : kExitNotConverged;
}

int cmd_grid(const RunSpec& spec, std::ostream& out, std::ostream& err) {
  const auto p = load_problem(spec);
  const auto prof = compute_profile(p);
  std::vector<Index> grid;
  if (spec.grid.empty()) {
    grid = default_batch_grid(p.n());
  } else {
    for (long long b : spec.grid) {
      if (b < 1 || b > p.n()) {
        err << "warning: skipping grid point b = " << b << " outside [1, " << p.n() << "]\n";
        continue;
      }
      grid.push_back(static_cast<Index>(b));
    }
  }
  const auto ref = compute_reference_solution(p, prof);
  if (!ref.converged) {
    err << "warning: reference solution stopped at ||grad||_inf = " << ref.grad_inf_norm << "\n";
  }

  std::vector<Trace> traces(grid.size());
  std::vector<std::string> errors(grid.size());
  const auto rows = static_cast<long long>(grid.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (long long r = 0; r < rows; ++r) {
    try {
      auto cfg = make_config(spec, grid[static_cast<std::size_t>(r)], {StepRule::practical});
      cfg.stream = static_cast<std::uint64_t>(grid[static_cast<std::size_t>(r)]);
      cfg.record_time = false;
      traces[static_cast<std::size_t>(r)] = run_saga(p, prof, cfg, ref);
    } catch (const std::exception& e) {
      errors[static_cast<std::size_t>(r)] = e.what();
    }
  }
  for (const auto& e : errors) {
    if (!e.empty()) throw UsageError(e);
  }

  write_problem_meta(out, p, prof);
  csv::write_meta(out, "tol", spec.tol);
  csv::write_meta(out, "b_practical", std::to_string(optimal_b_practical(prof)));
  csv::write_header(out, {"b", "gamma", "grad_evals", "epochs", "Ktotal_pred", "status"});
  for (std::size_t r = 0; r < grid.size(); ++r) {
    const auto& t = traces[r];
    const Index b = grid[r];
    csv::RowWriter(out) << static_cast<long long>(b) << t.gamma << t.grad_evals
                        << t.records.back().epoch
                        << complexity(practical_estimate(prof, b), prof, b, spec.tol).k_total
                        << to_string(t.status);
  }
  return kExitOk;
}

int cmd_bernstein(const RunSpec& spec, std::ostream& out, std::ostream&) {
  if (spec.trials < 1) throw UsageError("--trials must be positive");
  csv::write_header(out, {"d", "set_size", "m_draws", "trials", "empirical", "bound", "pass"});
  bool all_pass = true;

  if (spec.ensemble.starts_with("sweep:")) {
    const auto count = to_integer(spec.ensemble.substr(6), "sweep count");
    Rng rng = make_stream(spec.seed, 0xb5);
    std::uniform_int_distribution<Index> dim(1, 8);
    std::uniform_int_distribution<Index> size(1, 30);
    for (long long k = 0; k < count; ++k) {
      const Index d = dim(rng);
      const Index m = size(rng);
      const Index draws = std::uniform_int_distribution<Index>(1, m)(rng);
      const auto ens = random_ensemble(d, m, spec.seed + static_cast<std::uint64_t>(k));
      const auto r = bernstein_check(ens, draws, spec.trials, spec.seed + static_cast<std::uint64_t>(k));
      all_pass = all_pass && r.pass;
      write_bernstein_row(out, r);
    }
    return all_pass ? kExitOk : kExitNotConverged;
  }

  const auto ens = ensemble_from_spec(spec.ensemble, spec, spec.seed);
  const long long draws = spec.m_draws == 0 ? ens.size() : spec.m_draws;
  if (draws < 1 || draws > ens.size()) throw UsageError("--m must lie in [1, set size]");
  const auto r = bernstein_check(ens, static_cast<Index>(draws), spec.trials, spec.seed);
  write_bernstein_row(out, r);
  return r.pass ? kExitOk : kExitNotConverged;
}

int cmd_gen(const RunSpec& spec, std::ostream& out, std::ostream&) {
  write_libsvm(out, load_dataset(spec));
  return kExitOk;
}

// ---------------------------------------------------------------------------

namespace {

void add_problem_options(CLI::App* cmd, RunSpec& spec) {
  cmd->add_option("--data", spec.data_path, "LIBSVM dataset file");
  cmd->add_option("--gen", spec.gen, "artificial dataset kind:n[:d] (uniform|alone|staircase)");
  cmd->add_flag("--scale", spec.scale, "standardize every feature");
  cmd->add_flag("--rotate", spec.rotate, "replace A by Q^T A Q (square A only)");
  cmd->add_option("--loss", spec.loss, "ridge|logistic");
  cmd->add_option("--lambda", spec.lambda, "regularization strength");
  cmd->add_option("--seed", spec.seed, "random seed");
}

void add_solver_options(CLI::App* cmd, RunSpec& spec) {
  cmd->add_option("--tol", spec.tol, "relative suboptimality target");
  cmd->add_option("--max-epochs", spec.max_epochs, "epoch budget");
  cmd->add_option("--eval-period", spec.eval_period, "epochs between suboptimality checks");
  cmd->add_option("--jacobian", spec.jacobian, "dense|compact");
  cmd->add_option("--exact-cap", spec.exact_cap, "enumeration budget for the exact constant");
}

}  // namespace

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Mini-batch SAGA with b-nice sampling and expected-smoothness step sizes"};
  app.require_subcommand(1);
  RunSpec spec;
  std::string out_path;

  auto* profile = app.add_subcommand("profile", "smoothness constants as one CSV row");
  auto* bounds = app.add_subcommand("bounds", "expected smoothness: exact and estimates per b");
  auto* steps = app.add_subcommand("stepsizes", "step sizes per b");
  auto* cplx = app.add_subcommand("complexity", "predicted total complexity per b");
  auto* runc = app.add_subcommand("run", "run b-nice SAGA and write its convergence trace");
  auto* grid = app.add_subcommand("grid", "empirical total complexity over a b grid");
  auto* bern = app.add_subcommand("bernstein", "Monte-Carlo matrix Bernstein check");
  auto* gen = app.add_subcommand("gen", "write an artificial dataset in LIBSVM format");

  for (auto* cmd : {profile, bounds, steps, cplx, runc, grid, gen}) add_problem_options(cmd, spec);
  for (auto* cmd : {bounds, steps, runc, grid}) add_solver_options(cmd, spec);
  for (auto* cmd : {profile, bounds, steps, cplx, runc, grid, bern, gen}) {
    cmd->add_option("--out", out_path, "output file (default standard output)");
  }
  cplx->add_option("--bound", spec.bound, "g component: simple|bernstein");
  cplx->add_option("--epsilon", spec.epsilon, "target precision");
  runc->add_option("--b", spec.batch, "auto|practical|simple|bernstein|n|<int>");
  runc->add_option("--gamma", spec.gamma,
                   "practical|simple|bernstein|exact|defazio|hofmann|hofmann-k|fixed:<value>");
  runc->add_flag("--timing,!--no-timing", spec.timing, "record wall-clock seconds");
  grid->add_option("--grid", spec.grid, "batch sizes")->delimiter(',');
  bern->add_option("--ensemble", spec.ensemble,
                   "diag-pair | scalar:v1,v2,... | random:d:size | gram | sweep:count");
  bern->add_option("--m", spec.m_draws, "members drawn per trial (default: all)");
  bern->add_option("--trials", spec.trials, "Monte-Carlo trials");
  bern->add_option("--seed", spec.seed, "random seed");
  bern->add_option("--data", spec.data_path, "dataset for the gram ensemble");
  bern->add_option("--gen", spec.gen, "artificial dataset for the gram ensemble");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  std::ofstream file;
  std::ostream* sink = &out;
  if (!out_path.empty()) {
    file.open(out_path);
    if (!file) {
      err << "error: cannot write '" << out_path << "'\n";
      return kExitUsage;
    }
    sink = &file;
  }

  try {
    if (*profile) return cmd_profile(spec, *sink, err);
    if (*bounds) return cmd_bounds(spec, *sink, err);
    if (*steps) return cmd_stepsizes(spec, *sink, err);
    if (*cplx) return cmd_complexity(spec, *sink, err);
    if (*runc) return cmd_run(spec, *sink, err);
    if (*grid) return cmd_grid(spec, *sink, err);
    if (*bern) return cmd_bernstein(spec, *sink, err);
    if (*gen) return cmd_gen(spec, *sink, err);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace bnsaga::cli
