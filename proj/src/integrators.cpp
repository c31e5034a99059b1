#include "arkc/integrators.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace arkc {

namespace {

bool all_finite(std::span<const double> v) {
  for (double x : v)
    if (!std::isfinite(x)) return false;
  return true;
}

}  // namespace

const char* scheme_name(Scheme scheme) {
  switch (scheme) {
    case Scheme::cheb1: return "cheb1";
    case Scheme::rkc: return "rkc";
    case Scheme::ad1: return "ad1";
    case Scheme::arkc: return "arkc";
  }
  return "?";
}

Scheme scheme_from_name(std::string_view name) {
  if (name == "cheb1") return Scheme::cheb1;
  if (name == "rkc") return Scheme::rkc;
  if (name == "ad1") return Scheme::ad1;
  if (name == "arkc") return Scheme::arkc;
  throw std::invalid_argument("unknown scheme: " + std::string(name));
}

void StepWorkspace::resize(int n) {
  const auto sz = static_cast<std::size_t>(n);
  if (k_prev2.size() == sz) return;
  k_prev2.assign(sz, 0.0);
  k_prev1.assign(sz, 0.0);
  k_curr.assign(sz, 0.0);
  k0.assign(sz, 0.0);
  g.assign(sz, 0.0);
  fd_at_y0.assign(sz, 0.0);
  fa_at_y0.assign(sz, 0.0);
  fd_at_k0.assign(sz, 0.0);
  tmp.assign(sz, 0.0);
  tmp2.assign(sz, 0.0);
  f_at_y0_valid = false;
}

void step_cheb1(const SplitOdeProblem& problem, std::span<const double> y0, double h,
                const Cheb1Coefficients& c, StepWorkspace& ws, std::span<double> y1) {
  const int n = problem.dimension;
  ws.resize(n);
  auto eval_f = [&](std::span<const double> y, std::span<double> out) {
    problem.f_diffusion(y, out);
    ++ws.fd_evals;
    if (problem.has_advection()) {
      problem.f_advection_reaction(y, ws.tmp2);
      ++ws.fa_evals;
      for (int i = 0; i < n; ++i) out[i] += ws.tmp2[i];
    }
  };

  auto& kpp = ws.k_prev2;
  auto& kp = ws.k_prev1;
  auto& kc = ws.k_curr;
  std::copy(y0.begin(), y0.end(), kpp.begin());
  eval_f(y0, ws.tmp);
  for (int i = 0; i < n; ++i) kp[i] = y0[i] + c.mu[1] * h * ws.tmp[i];
  if (!all_finite(kp)) throw DivergenceError(1);

  for (int j = 2; j <= c.s; ++j) {
    eval_f(kp, ws.tmp);
    const double mu = c.mu[j], nu = c.nu[j];
    for (int i = 0; i < n; ++i)
      kc[i] = mu * h * ws.tmp[i] + nu * kp[i] + (1.0 - nu) * kpp[i];
    if (!all_finite(kc)) throw DivergenceError(j);
    std::swap(kpp, kp);
    std::swap(kp, kc);
  }
  std::copy(kp.begin(), kp.end(), y1.begin());
}

void step_rkc(const SplitOdeProblem& problem, std::span<const double> y0, double h,
              const ArkcCoefficients& c, StepWorkspace& ws, std::span<double> y1) {
  const int n = problem.dimension;
  ws.resize(n);
  auto eval_f = [&](std::span<const double> y, std::span<double> out) {
    problem.f_diffusion(y, out);
    ++ws.fd_evals;
    if (problem.has_advection()) {
      problem.f_advection_reaction(y, ws.tmp2);
      ++ws.fa_evals;
      for (int i = 0; i < n; ++i) out[i] += ws.tmp2[i];
    }
  };

  auto& f0 = ws.g;  // f(K_0), cached over all stages
  eval_f(y0, f0);
  auto& kpp = ws.k_prev2;
  auto& kp = ws.k_prev1;
  auto& kc = ws.k_curr;
  std::copy(y0.begin(), y0.end(), kpp.begin());
  for (int i = 0; i < n; ++i) kp[i] = y0[i] + h * c.b1 * c.omega2 * f0[i];
  if (!all_finite(kp)) throw DivergenceError(1);

  for (int j = 2; j <= c.s; ++j) {
    eval_f(kp, ws.tmp);
    const double mu = c.mu[j], nu = c.nu[j], ka = c.kappa[j];
    const double a_prev = c.a[j - 1];
    const double w = 1.0 - nu - ka;
    for (int i = 0; i < n; ++i)
      kc[i] = mu * h * (ws.tmp[i] - a_prev * f0[i]) + nu * kp[i] + ka * kpp[i] + w * y0[i];
    if (!all_finite(kc)) throw DivergenceError(j);
    std::swap(kpp, kp);
    std::swap(kp, kc);
  }
  std::copy(kp.begin(), kp.end(), y1.begin());
}

void step_ad1(const SplitOdeProblem& problem, std::span<const double> y0, double h,
              const Cheb1Coefficients& c, StepWorkspace& ws, std::span<double> y1) {
  const int n = problem.dimension;
  ws.resize(n);

  auto& kpp = ws.k_prev2;
  auto& kp = ws.k_prev1;
  auto& kc = ws.k_curr;
  std::copy(y0.begin(), y0.end(), kpp.begin());

  // K_1 = y0 + mu_1 h F_D(y0 + nu1 h F_A(y0)) + kappa1 h F_A(y0)
  if (problem.has_advection()) {
    problem.f_advection_reaction(y0, ws.fa_at_y0);
    ++ws.fa_evals;
    for (int i = 0; i < n; ++i) ws.tmp[i] = y0[i] + c.nu1 * h * ws.fa_at_y0[i];
    problem.f_diffusion(ws.tmp, ws.tmp2);
    ++ws.fd_evals;
    for (int i = 0; i < n; ++i)
      kp[i] = y0[i] + c.mu[1] * h * ws.tmp2[i] + c.kappa1 * h * ws.fa_at_y0[i];
  } else {
    problem.f_diffusion(y0, ws.tmp2);
    ++ws.fd_evals;
    for (int i = 0; i < n; ++i) kp[i] = y0[i] + c.mu[1] * h * ws.tmp2[i];
  }
  if (!all_finite(kp)) throw DivergenceError(1);

  for (int j = 2; j <= c.s; ++j) {
    problem.f_diffusion(kp, ws.tmp2);
    ++ws.fd_evals;
    const double mu = c.mu[j], nu = c.nu[j];
    for (int i = 0; i < n; ++i)
      kc[i] = mu * h * ws.tmp2[i] + nu * kp[i] + (1.0 - nu) * kpp[i];
    if (!all_finite(kc)) throw DivergenceError(j);
    std::swap(kpp, kp);
    std::swap(kp, kc);
  }
  std::copy(kp.begin(), kp.end(), y1.begin());
}

void step_arkc(const SplitOdeProblem& problem, std::span<const double> y0, double h,
               const ArkcCoefficients& c, StepWorkspace& ws, std::span<double> y1) {
  const int n = problem.dimension;
  ws.resize(n);
  const double w2 = c.omega2;

  if (!ws.f_at_y0_valid) {
    problem.f_diffusion(y0, ws.fd_at_y0);
    ++ws.fd_evals;
    if (problem.has_advection()) {
      problem.f_advection_reaction(y0, ws.fa_at_y0);
      ++ws.fa_evals;
    }
    ws.f_at_y0_valid = true;
  }

  auto& kpp = ws.k_prev2;
  auto& kp = ws.k_prev1;
  auto& kc = ws.k_curr;

  if (problem.has_advection()) {
    // G = h F_A(y0 + h/2 F_A(y0 + w2/2 h F_D(y0)) + h/2 F_D(y0))
    //   + h F_D(y0 + (w2-1)/2 h F_A(y0)) - h F_D(y0)
    for (int i = 0; i < n; ++i) ws.tmp[i] = y0[i] + 0.5 * w2 * h * ws.fd_at_y0[i];
    problem.f_advection_reaction(ws.tmp, ws.tmp2);
    ++ws.fa_evals;
    for (int i = 0; i < n; ++i)
      ws.tmp[i] = y0[i] + 0.5 * h * ws.tmp2[i] + 0.5 * h * ws.fd_at_y0[i];
    problem.f_advection_reaction(ws.tmp, ws.tmp2);
    ++ws.fa_evals;
    for (int i = 0; i < n; ++i) ws.tmp[i] = y0[i] + 0.5 * (w2 - 1.0) * h * ws.fa_at_y0[i];
    problem.f_diffusion(ws.tmp, ws.g);
    ++ws.fd_evals;
    for (int i = 0; i < n; ++i)
      ws.g[i] = h * ws.tmp2[i] + h * ws.g[i] - h * ws.fd_at_y0[i];
    if (!all_finite(ws.g)) throw DivergenceError(-1);

    for (int i = 0; i < n; ++i) ws.k0[i] = y0[i] + 0.5 * w2 * ws.g[i];
    problem.f_diffusion(ws.k0, ws.fd_at_k0);
    ++ws.fd_evals;
    for (int i = 0; i < n; ++i)
      kp[i] = ws.k0[i] + c.b1 * w2 * h * ws.fd_at_y0[i] + c.alpha * ws.g[i];
  } else {
    // F_A == 0: G vanishes exactly, K_0 = y0, and the map is plain RKC.
    std::copy(y0.begin(), y0.end(), ws.k0.begin());
    std::copy(ws.fd_at_y0.begin(), ws.fd_at_y0.end(), ws.fd_at_k0.begin());
    for (int i = 0; i < n; ++i) kp[i] = y0[i] + c.b1 * w2 * h * ws.fd_at_y0[i];
  }
  if (!all_finite(ws.k0)) throw DivergenceError(0);
  if (!all_finite(kp)) throw DivergenceError(1);

  std::copy(ws.k0.begin(), ws.k0.end(), kpp.begin());
  for (int j = 2; j <= c.s; ++j) {
    problem.f_diffusion(kp, ws.tmp);
    ++ws.fd_evals;
    const double mu = c.mu[j], nu = c.nu[j], ka = c.kappa[j];
    const double one_minus_a = 1.0 - c.a[j - 1];
    const double w = 1.0 - nu - ka;
    for (int i = 0; i < n; ++i)
      kc[i] = mu * h * (ws.tmp[i] - ws.fd_at_k0[i] + one_minus_a * ws.fd_at_y0[i]) +
              nu * kp[i] + ka * kpp[i] + w * ws.k0[i];
    if (!all_finite(kc)) throw DivergenceError(j);
    std::swap(kpp, kp);
    std::swap(kp, kc);
  }
  std::copy(kp.begin(), kp.end(), y1.begin());
}

IntegrationReport integrate_fixed(const SplitOdeProblem& problem, std::span<const double> y0,
                                  double t_start, double t_end, long n_steps, Scheme scheme,
                                  int s, double eta) {
  if (n_steps < 1) throw std::invalid_argument("integrate_fixed: need n_steps >= 1");
  const int n = problem.dimension;
  const double h = (t_end - t_start) / static_cast<double>(n_steps);

  IntegrationReport report;
  report.s_max = s;
  std::vector<double> y(y0.begin(), y0.end()), ynext(n);
  StepWorkspace ws;
  ws.resize(n);

  Cheb1Coefficients c1;
  ArkcCoefficients c2;
  if (scheme == Scheme::cheb1 || scheme == Scheme::ad1)
    c1 = cheb1_coefficients(s, eta);
  else
    c2 = arkc_coefficients(s, eta);

  for (long k = 0; k < n_steps; ++k) {
    ws.f_at_y0_valid = false;
    try {
      switch (scheme) {
        case Scheme::cheb1: step_cheb1(problem, y, h, c1, ws, ynext); break;
        case Scheme::rkc: step_rkc(problem, y, h, c2, ws, ynext); break;
        case Scheme::ad1: step_ad1(problem, y, h, c1, ws, ynext); break;
        case Scheme::arkc: step_arkc(problem, y, h, c2, ws, ynext); break;
      }
    } catch (const DivergenceError& e) {
      throw DivergenceError(e.stage, k);
    }
    y.swap(ynext);
    ++report.steps_accepted;
  }
  report.fd_evals = ws.fd_evals;
  report.fa_evals = ws.fa_evals;
  report.final_time = t_end;
  report.final_state = std::move(y);
  return report;
}

}  // namespace arkc
