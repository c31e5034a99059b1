#pragma once

#include <span>
#include <string_view>
#include <vector>

#include "arkc/coefficients.hpp"
#include "arkc/ode_problem.hpp"

namespace arkc {

enum class Scheme { cheb1, rkc, ad1, arkc };

const char* scheme_name(Scheme scheme);
Scheme scheme_from_name(std::string_view name);

/// Scratch buffers for the one-step maps. The stage recurrence itself rotates
/// the three K buffers in place; the ARKC correction G and the cached F_D
/// values persist for the duration of one step.
///
/// fd_at_y0/fa_at_y0 may be pre-filled by the caller (f_at_y0_valid = true)
/// to reuse right-hand-side values already evaluated at y0, e.g. the error
/// estimator's evaluations from the previous accepted step.
struct StepWorkspace {
  std::vector<double> k_prev2, k_prev1, k_curr;
  std::vector<double> k0;
  std::vector<double> g;
  std::vector<double> fd_at_y0, fa_at_y0, fd_at_k0;
  std::vector<double> tmp, tmp2;
  long fd_evals = 0;
  long fa_evals = 0;
  bool f_at_y0_valid = false;

  void resize(int n);
  void reset_counters() {
    fd_evals = 0;
    fa_evals = 0;
  }
};

/// First-order Chebyshev step on f = F_D + F_A; exactly s evaluations of f.
void step_cheb1(const SplitOdeProblem& problem, std::span<const double> y0, double h,
                const Cheb1Coefficients& coeffs, StepWorkspace& ws, std::span<double> y1);

/// Second-order RKC step on f = F_D + F_A; s evaluations of f (f(K_0) cached).
void step_rkc(const SplitOdeProblem& problem, std::span<const double> y0, double h,
              const ArkcCoefficients& coeffs, StepWorkspace& ws, std::span<double> y1);

/// First-order advection-diffusion step: s evaluations of F_D and one of F_A.
void step_ad1(const SplitOdeProblem& problem, std::span<const double> y0, double h,
              const Cheb1Coefficients& coeffs, StepWorkspace& ws, std::span<double> y1);

/// Second-order partitioned ARKC step: s+2 evaluations of F_D and 3 of F_A
/// (one fewer F_D and none of F_A when the cached values at y0 are reused or
/// F_A is absent). With F_A absent the correction G vanishes and the map
/// reduces to step_rkc.
void step_arkc(const SplitOdeProblem& problem, std::span<const double> y0, double h,
               const ArkcCoefficients& coeffs, StepWorkspace& ws, std::span<double> y1);

/// Repeat the chosen one-step map with h = (t_end - t_start)/n_steps.
/// Divergence errors propagate annotated with the failing step index.
IntegrationReport integrate_fixed(const SplitOdeProblem& problem, std::span<const double> y0,
                                  double t_start, double t_end, long n_steps, Scheme scheme,
                                  int s, double eta);

}  // namespace arkc
