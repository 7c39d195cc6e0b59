#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "bnsaga/glm.hpp"

namespace bnsaga::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitNotConverged = 1;
inline constexpr int kExitUsage = 2;

/// Bad flags, unreadable input, unwritable output. Maps to exit code 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunSpec {
  // dataset
  std::string data_path;
  std::string gen;  // kind:n[:d]
  bool scale = false;
  bool rotate = false;
  std::string loss = "ridge";
  double lambda = 1e-3;

  // solver
  std::string batch = "auto";  // auto | practical | simple | bernstein | n | <int>
  std::string gamma = "practical";
  double tol = 1e-4;
  std::uint64_t seed = 1;
  int max_epochs = 500;
  int eval_period = 1;
  std::string jacobian = "compact";
  bool timing = true;
  std::vector<long long> grid;

  // curves
  double exact_cap = 1e6;
  std::string bound = "simple";
  double epsilon = 0.36787944117144233;  // e^-1

  // bernstein checker
  std::string ensemble = "random:4:20";
  long long m_draws = 0;  // 0 = whole set
  long long trials = 10000;
};

GlmProblem load_problem(const RunSpec& spec);
Dataset load_dataset(const RunSpec& spec);

int cmd_profile(const RunSpec& spec, std::ostream& out, std::ostream& err);
int cmd_bounds(const RunSpec& spec, std::ostream& out, std::ostream& err);
int cmd_stepsizes(const RunSpec& spec, std::ostream& out, std::ostream& err);
int cmd_complexity(const RunSpec& spec, std::ostream& out, std::ostream& err);
int cmd_run(const RunSpec& spec, std::ostream& out, std::ostream& err);
int cmd_grid(const RunSpec& spec, std::ostream& out, std::ostream& err);
int cmd_bernstein(const RunSpec& spec, std::ostream& out, std::ostream& err);
int cmd_gen(const RunSpec& spec, std::ostream& out, std::ostream& err);

/// b grid {2^i, i = 0..14} restricted to [1, n], plus n.
std::vector<Index> default_batch_grid(Index n);

/// Full command-line entry point; returns the process exit code.
int run(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace bnsaga::cli
