#include "arkc/adaptive.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "arkc/chebyshev.hpp"

namespace arkc {

namespace {

double l2_norm(std::span<const double> v) {
  double sum = 0.0;
  for (double x : v) sum += x * x;
  return std::sqrt(sum);
}

// Real-axis stability interval length (1+w0)/w2 for given (s, eta).
double real_axis_length(int s, double eta) {
  const double w0 = 1.0 + eta / (static_cast<double>(s) * s);
  const ChebEval t = cheb_first_kind(s, w0);
  return (1.0 + w0) * t.second_deriv / t.first_deriv;
}

}  // namespace

void ErrorEstimatorState::refresh(const ArkcCoefficients& coeffs) {
  c1 = coeffs.c1;
  c2 = coeffs.c2;
  big_c = 1.0 / 6.0 - c2 + (0.5 - c1) * zeta - zeta / 6.0;
}

std::optional<std::pair<int, double>> select_stages(double h, double rho_d, double rho_ratio) {
  if (!(rho_d >= 0.0)) throw std::invalid_argument("select_stages: rho_d must be >= 0");
  const double target = h * rho_d;
  // No damping value shortens the interval below what eta -> 0 allows
  // (about 0.667 s^2), so counts below sqrt(target/0.67) cannot cover it.
  int s_begin = 2;
  if (target > 0.0) {
    const int guess = static_cast<int>(std::floor(std::sqrt(target / 0.67)));
    s_begin = std::clamp(guess, 2, kStageCap);
  }
  for (int s = s_begin; s <= kStageCap; ++s) {
    const double eta = select_damping(rho_ratio, s);
    if (real_axis_length(s, eta) > target) return std::make_pair(s, eta);
  }
  return std::nullopt;
}

std::optional<int> select_stages_fixed_eta(double h, double rho_d, double eta) {
  const double target = h * rho_d;
  for (int s = 2; s <= kStageCap; ++s)
    if (real_axis_length(s, eta) > target) return s;
  return std::nullopt;
}

SpectralRadiusEstimate estimate_spectral_radius(const SplitOdeProblem& problem,
                                                std::span<const double> y, RhsPart which,
                                                const std::vector<double>* previous_eigvec,
                                                unsigned seed) {
  const RhoFn& hint =
      which == RhsPart::diffusion ? problem.rho_diffusion : problem.rho_advection;
  if (hint) return {hint(y), {}, true, 0};

  const RhsFn& rhs =
      which == RhsPart::diffusion ? problem.f_diffusion : problem.f_advection_reaction;
  if (!rhs) return {0.0, {}, true, 0};

  const int n = problem.dimension;
  SpectralRadiusEstimate out;
  std::vector<double> f0(n), v(n), w(n), yp(n);
  rhs(y, f0);
  ++out.evals;

  if (previous_eigvec && static_cast<int>(previous_eigvec->size()) == n) {
    v = *previous_eigvec;
  } else {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    for (double& x : v) x = dist(rng);
  }
  double vn = l2_norm(v);
  if (vn == 0.0) {
    v.assign(n, 1.0);
    vn = std::sqrt(static_cast<double>(n));
  }
  for (double& x : v) x /= vn;

  const double eps = std::sqrt(std::numeric_limits<double>::epsilon()) * (1.0 + l2_norm(y));
  double rho_prev = -1.0;
  for (int it = 0; it < 50; ++it) {
    for (int i = 0; i < n; ++i) yp[i] = y[i] + eps * v[i];
    rhs(yp, w);
    ++out.evals;
    for (int i = 0; i < n; ++i) w[i] = (w[i] - f0[i]) / eps;
    const double rho = l2_norm(w);
    if (rho == 0.0) {
      out.rho = 0.0;
      out.eigvec = v;
      return out;
    }
    if (rho_prev >= 0.0 && std::abs(rho - rho_prev) < 0.01 * rho) {
      out.rho = 1.05 * rho;
      for (int i = 0; i < n; ++i) w[i] /= rho;
      out.eigvec = std::move(w);
      return out;
    }
    rho_prev = rho;
    for (int i = 0; i < n; ++i) v[i] = w[i] / rho;
  }
  out.rho = 1.2 * rho_prev;
  out.eigvec = std::move(v);
  out.converged = false;
  return out;
}

double estimate_error(std::span<const double> y_prev, std::span<const double> y_next, double h,
                      std::span<const double> fd_prev, std::span<const double> fa_prev,
                      std::span<const double> fd_next, std::span<const double> fa_next,
                      const ErrorEstimatorState& est, double atol, double rtol) {
  const std::size_t n = y_prev.size();
  const bool with_fa = !fa_prev.empty();
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double fsum = fd_prev[i] + fd_next[i];
    if (with_fa) fsum += fa_prev[i] + fa_next[i];
    const double est_i = est.big_c * (12.0 * (y_prev[i] - y_next[i]) + 6.0 * h * fsum);
    const double w = atol + rtol * std::max(std::abs(y_prev[i]), std::abs(y_next[i]));
    const double r = est_i / w;
    sum += r * r;
  }
  const double norm = std::sqrt(sum / static_cast<double>(n));
  return std::isfinite(norm) ? norm : std::numeric_limits<double>::infinity();
}

double propose_step(double err_norm, double h, ErrorEstimatorState& est, double safety,
                    double shrink, double growth) {
  if (!(err_norm >= 0.0)) err_norm = std::numeric_limits<double>::infinity();
  double fac;
  if (err_norm <= 1.0) {
    if (err_norm < 1e-30) {
      fac = growth;
    } else {
      fac = safety * std::cbrt(1.0 / err_norm);
      if (est.prev_err_norm > 0.0 && est.prev_h > 0.0) {
        // Predictive rule: safety * (h/h_prev) * err_prev^{1/3} / err^{2/3},
        // capped by the basic factor.
        fac = std::min(fac, safety * (h / est.prev_h) *
                                std::cbrt(est.prev_err_norm / (err_norm * err_norm)));
      }
    }
    fac = std::clamp(fac, shrink, growth);
    est.prev_err_norm = std::max(err_norm, 1e-10);
    est.prev_h = h;
  } else {
    fac = std::isfinite(err_norm) ? std::clamp(safety * std::cbrt(1.0 / err_norm), shrink, growth)
                                  : shrink;
    est.clear_history();
  }
  return h * fac;
}

IntegrationReport integrate_adaptive(const SplitOdeProblem& problem, std::span<const double> y0,
                                     const AdaptiveConfig& config) {
  if (!(config.atol > 0.0) || !(config.rtol > 0.0))
    throw std::invalid_argument("integrate_adaptive: tolerances must be > 0");
  if (!(config.h_init > 0.0)) throw std::invalid_argument("integrate_adaptive: h_init must be > 0");
  if (!(config.t_end >= config.t_start))
    throw std::invalid_argument("integrate_adaptive: t_end must be >= t_start");
  if (!problem.f_diffusion) throw std::invalid_argument("integrate_adaptive: missing F_D");

  const int n = problem.dimension;
  const double span = config.t_end - config.t_start;
  const bool with_fa = problem.has_advection();

  IntegrationReport report;
  std::vector<double> y(y0.begin(), y0.end());
  if (span == 0.0) {
    report.final_state = std::move(y);
    report.final_time = config.t_start;
    return report;
  }

  StepWorkspace ws;
  ws.resize(n);
  CoefficientCache cache;
  std::vector<double> ynext(n), fd_next(n), fa_next(with_fa ? n : 0);

  problem.f_diffusion(y, ws.fd_at_y0);
  ++report.fd_evals;
  if (with_fa) {
    problem.f_advection_reaction(y, ws.fa_at_y0);
    ++report.fa_evals;
  }
  ws.f_at_y0_valid = true;

  // Hinted spectral radii are a formula evaluation, so nonlinear problems
  // refresh them every accepted step; power iteration runs on the interval
  // schedule (and after rejections).
  const bool cheap_rho =
      static_cast<bool>(problem.rho_diffusion) && (!with_fa || problem.rho_advection);
  double rho_d = 0.0, rho_a = 0.0;
  std::vector<double> eigvec_d, eigvec_a;
  auto refresh_rho = [&] {
    SpectralRadiusEstimate ed =
        estimate_spectral_radius(problem, y, RhsPart::diffusion, &eigvec_d, config.seed);
    rho_d = ed.rho;
    if (!ed.eigvec.empty()) eigvec_d = std::move(ed.eigvec);
    if (!ed.converged) report.rho_converged = false;
    report.fd_evals += ed.evals;
    if (with_fa) {
      SpectralRadiusEstimate ea =
          estimate_spectral_radius(problem, y, RhsPart::advection, &eigvec_a, config.seed + 1);
      rho_a = ea.rho;
      if (!ea.eigvec.empty()) eigvec_a = std::move(ea.eigvec);
      if (!ea.converged) report.rho_converged = false;
      report.fa_evals += ea.evals;
    }
  };
  refresh_rho();

  ErrorEstimatorState est;
  est.zeta = with_fa ? 1.0 : 0.0;

  double t = config.t_start;
  double h = std::min(config.h_init, config.t_end - t);
  const double t_tiny = 1e-14 * std::max(std::abs(config.t_end), 1.0);
  int current_s = 0;
  double current_eta = -1.0;
  int accepted_since_refresh = 0;
  bool reject_injected = false;
  long guard = 0;

  while (config.t_end - t > t_tiny) {
    if (report.steps_accepted + report.steps_rejected >= config.max_steps ||
        ++guard > 4 * config.max_steps) {
      report.complete = false;
      break;
    }

    const double ratio = (with_fa && rho_d > 0.0) ? rho_a / std::sqrt(rho_d) : 0.0;
    int s = 0;
    double eta = 0.0;
    if (config.forced_eta > 0.0) {
      auto sel = select_stages_fixed_eta(h, rho_d, config.forced_eta);
      if (!sel) {
        h *= 0.5;
        continue;
      }
      s = *sel;
      eta = config.forced_eta;
    } else {
      auto sel = select_stages(h, rho_d, ratio);
      if (!sel) {
        h *= 0.5;
        continue;
      }
      std::tie(s, eta) = *sel;
    }

    auto coeffs = cache.arkc(s, eta);
    if (s != current_s || eta != current_eta) {
      est.refresh(*coeffs);
      current_s = s;
      current_eta = eta;
    }

    ws.reset_counters();
    bool diverged = false;
    try {
      step_arkc(problem, y, h, *coeffs, ws, ynext);
    } catch (const DivergenceError&) {
      diverged = true;
    }
    report.fd_evals += ws.fd_evals;
    report.fa_evals += ws.fa_evals;

    double err;
    if (diverged) {
      err = std::numeric_limits<double>::infinity();
    } else {
      problem.f_diffusion(ynext, fd_next);
      ++report.fd_evals;
      if (with_fa) {
        problem.f_advection_reaction(ynext, fa_next);
        ++report.fa_evals;
      }
      err = estimate_error(y, ynext, h, ws.fd_at_y0,
                           with_fa ? std::span<const double>(ws.fa_at_y0)
                                   : std::span<const double>(),
                           fd_next,
                           with_fa ? std::span<const double>(fa_next) : std::span<const double>(),
                           est, config.atol, config.rtol);
      if (report.steps_accepted == config.force_reject_step && !reject_injected) {
        err *= 10.0;
        reject_injected = true;
      }
    }

    report.trace.push_back({t, h, s, eta, err, err <= 1.0});

    if (err <= 1.0) {
      t += h;
      y.swap(ynext);
      ws.fd_at_y0.swap(fd_next);
      if (with_fa) ws.fa_at_y0.swap(fa_next);
      ws.f_at_y0_valid = true;
      ++report.steps_accepted;
      report.s_max = std::max(report.s_max, s);
      if (config.sample_count > 0) {
        report.trajectory_samples.emplace_back(t, y);
        if (report.trajectory_samples.size() > 2 * static_cast<std::size_t>(config.sample_count)) {
          // Thin: keep every other sample.
          std::vector<std::pair<double, std::vector<double>>> kept;
          for (std::size_t i = 1; i < report.trajectory_samples.size(); i += 2)
            kept.push_back(std::move(report.trajectory_samples[i]));
          report.trajectory_samples = std::move(kept);
        }
      }
      if (!problem.jacobian_constant &&
          (cheap_rho || ++accepted_since_refresh >= config.rho_refresh_interval)) {
        refresh_rho();
        accepted_since_refresh = 0;
      }
      const double h_new = propose_step(err, h, est, config.safety, config.h_shrink_limit,
                                        config.h_growth_limit);
      h = std::min(h_new, config.t_end - t);
    } else {
      ++report.steps_rejected;
      // The ratio band is kept across retries; state is unchanged so only a
      // hint-free nonlinear problem gains anything from a refresh.
      if (!problem.jacobian_constant) {
        refresh_rho();
        accepted_since_refresh = 0;
      }
      double h_new;
      if (diverged) {
        h_new = 0.5 * h;
        est.clear_history();
      } else {
        h_new = propose_step(err, h, est, config.safety, config.h_shrink_limit,
                             config.h_growth_limit);
      }
      h = std::min(h_new, config.t_end - t);
    }
  }

  report.final_time = t;
  report.final_state = std::move(y);
  return report;
}

}  // namespace arkc
