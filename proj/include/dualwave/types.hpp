#pragma once

#include <Eigen/Dense>

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace dualwave {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

// Sampled wave profile on an explicit x-grid. `f` is the full field; the
// far-field value `u_inf` and the wave speed `c` ride along as metadata.
// Profiles produced by the dual solvers are in the reduced scaling (c = -1/2);
// rescale_profile() maps them to any other speed.
struct WaveProfile {
  Vector x;
  Vector f;
  double u_inf = 0.0;
  double c = -0.5;

  Vector w() const { return f.array() - u_inf; }
};

struct SolverReport {
  bool converged = false;
  std::string status;
  int iterations = 0;
  int resets = 0;
  std::vector<double> residual_history;
  std::vector<double> alpha_history;
  double final_residual = 0.0;
  double wall_time_sec = 0.0;
};

struct InvalidInput : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct InvalidGrid : InvalidInput {
  using InvalidInput::InvalidInput;
};

struct SingularOperator : std::runtime_error {
  SingularOperator(const std::string& msg, int mode_) : std::runtime_error(msg), mode(mode_) {}
  int mode;
};

struct DtpSingular : std::runtime_error {
  DtpSingular(const std::string& msg, double where) : std::runtime_error(msg), x(where) {}
  double x;
};

struct DomainViolation : std::runtime_error {
  DomainViolation(const std::string& msg, std::vector<int> idx)
      : std::runtime_error(msg), indices(std::move(idx)) {}
  std::vector<int> indices;
};

struct DivergenceError : std::runtime_error {
  DivergenceError(const std::string& msg, int step_) : std::runtime_error(msg), step(step_) {}
  int step;
};

struct DegenerateIterate : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct LinearSolveFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct TooFewCrossings : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace dualwave
