#pragma once

#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace arkc {

using RhsFn = std::function<void(std::span<const double>, std::span<double>)>;
using RhoFn = std::function<double(std::span<const double>)>;

/// Autonomous ODE system with the right-hand side split into a stiff
/// diffusion part F_D and a non-stiff advection-reaction part F_A:
///   y' = F_D(y) + F_A(y).
/// An empty f_advection_reaction means F_A is identically zero. The rho_*
/// members are optional spectral-radius hints for the Jacobian of each part;
/// when absent the adaptive driver falls back to nonlinear power iteration.
struct SplitOdeProblem {
  int dimension = 0;
  RhsFn f_diffusion;
  RhsFn f_advection_reaction;
  RhoFn rho_diffusion;
  RhoFn rho_advection;
  bool jacobian_constant = false;  // true: spectral radii estimated once

  bool has_advection() const { return static_cast<bool>(f_advection_reaction); }
};

/// Thrown when a stage produces a non-finite component. stage -1 marks the
/// ARKC correction term, 0/1 the first two stages, j >= 2 the recurrence.
struct DivergenceError : std::runtime_error {
  explicit DivergenceError(int stage_index, long step_index = -1)
      : std::runtime_error("divergence detected at stage " + std::to_string(stage_index) +
                           (step_index >= 0 ? " of step " + std::to_string(step_index) : "")),
        stage(stage_index),
        step(step_index) {}
  int stage = 0;
  long step = -1;
};

struct StageCapExceeded : std::runtime_error {
  StageCapExceeded() : std::runtime_error("stage cap exceeded") {}
};

/// One attempted step of the adaptive driver, kept for diagnosis.
struct StepRecord {
  double t = 0.0;
  double h = 0.0;
  int s = 0;
  double eta = 0.0;
  double err_norm = 0.0;
  bool accepted = false;
};

struct IntegrationReport {
  long steps_accepted = 0;
  long steps_rejected = 0;
  long fd_evals = 0;
  long fa_evals = 0;
  int s_max = 0;
  double final_time = 0.0;
  std::vector<double> final_state;
  bool complete = true;       // false when the max_steps guard tripped
  bool rho_converged = true;  // false if any power iteration hit its cap
  std::vector<StepRecord> trace;
  std::vector<std::pair<double, std::vector<double>>> trajectory_samples;
};

}  // namespace arkc
