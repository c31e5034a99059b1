#pragma once

#include <complex>
#include <iosfwd>
#include <span>
#include <vector>

#include "arkc/ode_problem.hpp"

namespace arkc {

/// Periodic 1D advection-diffusion u_t + a u_x = u_xx on [0, 1], discretized
/// with second-order central differences on N cells (u_0 identified with
/// u_N). Initial data sin(2 pi x).
struct LinearAdvectionDiffusion1D {
  int n_cells = 0;
  double advection = 0.0;
  double dx = 0.0;
  SplitOdeProblem ode;

  std::vector<double> initial_state() const;
  /// Eigenvalue of the discrete operator for Fourier mode k:
  /// 2/dx^2 (cos(2 k pi dx) - 1) - i a/dx sin(2 k pi dx).
  std::complex<double> eigenvalue(int k) const;
  double rho_diffusion_exact() const;
  double rho_advection_exact() const;
};

/// a = 0 builds a pure-diffusion problem with F_A absent.
LinearAdvectionDiffusion1D build_linear_ad(int n_cells, double advection);

/// Periodic 1D Burgers equation with a nonlinear reaction term,
/// u_t + 10 u u_x = u_xx + sin(u^2), N cells, initial data 1 + sin(2 pi x).
struct BurgersReaction1D {
  int n_cells = 0;
  double dx = 0.0;
  SplitOdeProblem ode;

  std::vector<double> initial_state() const;
};

BurgersReaction1D build_burgers(int n_cells);

/// Exact solution of the discretized linear problem at time t via Fourier
/// diagonalization of the circulant operator.
std::vector<double> fourier_reference(const LinearAdvectionDiffusion1D& problem,
                                      std::span<const double> y0, double t);

/// High-order reference trajectory from an adaptive embedded Dormand-Prince
/// 5(4) pair run at tolerance tol. Throws std::runtime_error when the step
/// count explodes past max_steps.
std::vector<double> rk5_reference(const SplitOdeProblem& problem, std::span<const double> y0,
                                  double t_start, double t_end, double tol,
                                  long max_steps = 50000000);

/// Reference solution for the Burgers benchmark; requires tight_tol <= 1e-10.
std::vector<double> reference_solution(const BurgersReaction1D& problem,
                                       std::span<const double> y0, double t_end,
                                       double tight_tol);

/// Grid/value pairs as CSV (x, u).
void write_state_csv(std::span<const double> state, double dx, std::ostream& out);

/// sin(pi x) and cos(pi x) with exact reduction at half-integer x; used by the
/// discrete eigenvalue formulas and the Fourier oracle.
double sin_pi(double x);
double cos_pi(double x);

}  // namespace arkc
