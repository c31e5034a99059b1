#pragma once

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "arkc/damping.hpp"
#include "arkc/integrators.hpp"

namespace arkc {

struct AdaptiveConfig {
  double atol = 1e-4;
  double rtol = 1e-4;
  double h_init = 1e-3;
  double t_start = 0.0;
  double t_end = 1.0;
  long max_steps = 100000;
  double safety = 0.8;
  double h_shrink_limit = 0.1;   // step-ratio clamp, lower bound
  double h_growth_limit = 10.0;  // step-ratio clamp, upper bound
  int rho_refresh_interval = 25; // accepted steps between spectral refreshes (nonlinear)
  double forced_eta = 0.0;       // > 0: bypass the damping table (comparison runs)
  int sample_count = 0;          // > 0: keep a thinned trajectory in the report
  unsigned seed = 0x9e3779b9u;   // power-iteration start vector
  long force_reject_step = -1;   // testing aid: scale the error estimate of this
                                 // accepted-step index by 10, once
};

/// Per-(s, eta) constants of the embedded local-error estimator
///   Est = C (12 (y_n - y_{n+1}) + 6 h (F_D(y_n) + F_A(y_n) + F_D(y_{n+1}) + F_A(y_{n+1})))
/// with C = 1/6 - c2 + (1/2 - c1) zeta - zeta/6, plus the controller memory.
struct ErrorEstimatorState {
  double zeta = 1.0;  // 0 when F_A is absent
  double c1 = 0.0;
  double c2 = 0.0;
  double big_c = 0.0;
  double prev_err_norm = -1.0;  // < 0: no usable history
  double prev_h = -1.0;

  void refresh(const ArkcCoefficients& coeffs);
  void clear_history() {
    prev_err_norm = -1.0;
    prev_h = -1.0;
  }
};

/// Smallest stage count in [2, 500] (with its table damping) whose real-axis
/// stability interval (1+w0)/w2 exceeds h*rho_d; nullopt if s = 500 is still
/// insufficient, in which case the driver must reduce h.
std::optional<std::pair<int, double>> select_stages(double h, double rho_d, double rho_ratio);

/// Same search with a fixed damping value instead of the table lookup.
std::optional<int> select_stages_fixed_eta(double h, double rho_d, double eta);

enum class RhsPart { diffusion, advection };

struct SpectralRadiusEstimate {
  double rho = 0.0;
  std::vector<double> eigvec;
  bool converged = true;
  long evals = 0;  // right-hand-side evaluations spent
};

/// Spectral radius of the Jacobian of one part of the split right-hand side.
/// Uses the problem's hint when available; otherwise nonlinear power iteration
/// on directional difference quotients (at most 50 iterations, 1% convergence,
/// result inflated by 1.05, or by 1.2 with converged = false on a cap-out).
SpectralRadiusEstimate estimate_spectral_radius(const SplitOdeProblem& problem,
                                                std::span<const double> y, RhsPart which,
                                                const std::vector<double>* previous_eigvec,
                                                unsigned seed = 0x9e3779b9u);

/// Weighted RMS norm of the embedded error estimate; accept the step iff the
/// result is <= 1. fa_prev/fa_next may be empty when F_A is absent.
double estimate_error(std::span<const double> y_prev, std::span<const double> y_next, double h,
                      std::span<const double> fd_prev, std::span<const double> fa_prev,
                      std::span<const double> fd_next, std::span<const double> fa_next,
                      const ErrorEstimatorState& est, double atol, double rtol);

/// Next step size from the weighted error norm: accepted steps use the
/// predictive two-step rule when history exists, rejections the basic rule;
/// the ratio is clamped to [shrink, growth] and scaled by safety. Updates the
/// controller memory held in est.
double propose_step(double err_norm, double h, ErrorEstimatorState& est, double safety = 0.8,
                    double shrink = 0.1, double growth = 10.0);

/// Fully adaptive ARKC integration: per-step spectral-radius refresh, damping
/// table lookup, stage selection, embedded error estimate and accept/reject
/// step control.
IntegrationReport integrate_adaptive(const SplitOdeProblem& problem, std::span<const double> y0,
                                     const AdaptiveConfig& config);

}  // namespace arkc
