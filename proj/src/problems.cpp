#include "arkc/problems.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace arkc {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

}  // namespace

double sin_pi(double x) {
  double r = std::fmod(x, 2.0);
  if (r > 1.0)
    r -= 2.0;
  else if (r < -1.0)
    r += 2.0;
  if (r > 0.5)
    r = 1.0 - r;
  else if (r < -0.5)
    r = -1.0 - r;
  return std::sin(kPi * r);
}

double cos_pi(double x) { return sin_pi(x + 0.5); }

std::vector<double> LinearAdvectionDiffusion1D::initial_state() const {
  std::vector<double> u(n_cells);
  for (int k = 0; k < n_cells; ++k) u[k] = sin_pi(2.0 * k / n_cells);
  return u;
}

std::complex<double> LinearAdvectionDiffusion1D::eigenvalue(int k) const {
  const double frac = 2.0 * k / n_cells;
  const double inv_dx2 = static_cast<double>(n_cells) * n_cells;
  const double re = 2.0 * inv_dx2 * (cos_pi(frac) - 1.0);
  const double im = -advection * n_cells * sin_pi(frac);
  return {re, im};
}

double LinearAdvectionDiffusion1D::rho_diffusion_exact() const {
  double m = 0.0;
  for (int k = 1; k <= n_cells; ++k) m = std::max(m, -eigenvalue(k).real());
  return m;
}

double LinearAdvectionDiffusion1D::rho_advection_exact() const {
  double m = 0.0;
  for (int k = 1; k <= n_cells; ++k) m = std::max(m, std::abs(eigenvalue(k).imag()));
  return m;
}

LinearAdvectionDiffusion1D build_linear_ad(int n_cells, double advection) {
  if (n_cells < 4) throw std::invalid_argument("build_linear_ad: need at least 4 cells");
  if (!(advection >= 0.0)) throw std::invalid_argument("build_linear_ad: advection must be >= 0");

  LinearAdvectionDiffusion1D p;
  p.n_cells = n_cells;
  p.advection = advection;
  p.dx = 1.0 / n_cells;

  const int n = n_cells;
  const double inv_dx2 = static_cast<double>(n) * n;
  p.ode.dimension = n;
  p.ode.jacobian_constant = true;
  p.ode.f_diffusion = [n, inv_dx2](std::span<const double> u, std::span<double> out) {
    for (int k = 0; k < n; ++k) {
      const double up = u[k + 1 == n ? 0 : k + 1];
      const double um = u[k == 0 ? n - 1 : k - 1];
      out[k] = (up - 2.0 * u[k] + um) * inv_dx2;
    }
  };
  if (advection > 0.0) {
    const double half_inv_dx = 0.5 * advection * n;
    p.ode.f_advection_reaction = [n, half_inv_dx](std::span<const double> u,
                                                  std::span<double> out) {
      for (int k = 0; k < n; ++k) {
        const double up = u[k + 1 == n ? 0 : k + 1];
        const double um = u[k == 0 ? n - 1 : k - 1];
        out[k] = -half_inv_dx * (up - um);
      }
    };
  }
  const double rho_d = p.rho_diffusion_exact();
  p.ode.rho_diffusion = [rho_d](std::span<const double>) { return rho_d; };
  if (advection > 0.0) {
    const double rho_a = p.rho_advection_exact();
    p.ode.rho_advection = [rho_a](std::span<const double>) { return rho_a; };
  }
  return p;
}

std::vector<double> BurgersReaction1D::initial_state() const {
  std::vector<double> u(n_cells);
  for (int k = 0; k < n_cells; ++k) u[k] = 1.0 + sin_pi(2.0 * k / n_cells);
  return u;
}

BurgersReaction1D build_burgers(int n_cells) {
  if (n_cells < 4) throw std::invalid_argument("build_burgers: need at least 4 cells");

  BurgersReaction1D p;
  p.n_cells = n_cells;
  p.dx = 1.0 / n_cells;

  const int n = n_cells;
  const double inv_dx2 = static_cast<double>(n) * n;
  const double half_inv_dx = 0.5 * n;
  p.ode.dimension = n;
  p.ode.f_diffusion = [n, inv_dx2](std::span<const double> u, std::span<double> out) {
    for (int k = 0; k < n; ++k) {
      const double up = u[k + 1 == n ? 0 : k + 1];
      const double um = u[k == 0 ? n - 1 : k - 1];
      out[k] = (up - 2.0 * u[k] + um) * inv_dx2;
    }
  };
  p.ode.f_advection_reaction = [n, half_inv_dx](std::span<const double> u,
                                                std::span<double> out) {
    for (int k = 0; k < n; ++k) {
      const double up = u[k + 1 == n ? 0 : k + 1];
      const double um = u[k == 0 ? n - 1 : k - 1];
      out[k] = -10.0 * u[k] * half_inv_dx * (up - um) + std::sin(u[k] * u[k]);
    }
  };
  p.ode.rho_diffusion = [inv_dx2](std::span<const double>) { return 4.0 * inv_dx2; };
  p.ode.rho_advection = [n](std::span<const double> u) {
    double m = 0.0;
    for (double x : u) m = std::max(m, std::abs(x));
    return 10.0 * m * n;
  };
  return p;
}

std::vector<double> fourier_reference(const LinearAdvectionDiffusion1D& problem,
                                      std::span<const double> y0, double t) {
  const int n = problem.n_cells;
  std::vector<std::complex<double>> hat(n);
  for (int m = 0; m < n; ++m) {
    std::complex<double> acc = 0.0;
    for (int k = 0; k < n; ++k) {
      const double frac = 2.0 * ((static_cast<long>(m) * k) % n) / n;
      acc += y0[k] * std::complex<double>(cos_pi(frac), -sin_pi(frac));
    }
    const std::complex<double> lam = problem.eigenvalue(m);
    hat[m] = acc * std::exp(lam * t);
  }
  std::vector<double> y(n);
  for (int k = 0; k < n; ++k) {
    std::complex<double> acc = 0.0;
    for (int m = 0; m < n; ++m) {
      const double frac = 2.0 * ((static_cast<long>(m) * k) % n) / n;
      acc += hat[m] * std::complex<double>(cos_pi(frac), sin_pi(frac));
    }
    y[k] = acc.real() / n;
  }
  return y;
}

std::vector<double> rk5_reference(const SplitOdeProblem& problem, std::span<const double> y0,
                                  double t_start, double t_end, double tol, long max_steps) {
  const int n = problem.dimension;
  const bool with_fa = problem.has_advection();
  auto eval_f = [&](std::span<const double> y, std::span<double> out,
                    std::span<double> scratch) {
    problem.f_diffusion(y, out);
    if (with_fa) {
      problem.f_advection_reaction(y, scratch);
      for (int i = 0; i < n; ++i) out[i] += scratch[i];
    }
  };

  // Dormand-Prince 5(4), FSAL.
  constexpr double a21 = 1.0 / 5;
  constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
  constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                   a54 = -212.0 / 729;
  constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                   a64 = 49.0 / 176, a65 = -5103.0 / 18656;
  constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                   b6 = 11.0 / 84;
  constexpr double e1 = b1 - 5179.0 / 57600, e3 = b3 - 7571.0 / 16695, e4 = b4 - 393.0 / 640,
                   e5 = b5 + 92097.0 / 339200, e6 = b6 - 187.0 / 2100, e7 = -1.0 / 40;

  std::vector<double> y(y0.begin(), y0.end()), yt(n), y5(n), scratch(n);
  std::vector<double> k1(n), k2(n), k3(n), k4(n), k5(n), k6(n), k7(n);

  double t = t_start;
  double h = std::max((t_end - t_start) * 1e-6, 1e-12);
  eval_f(y, k1, scratch);
  long steps = 0;
  while (t < t_end * (1.0 - 1e-15) || (t_end <= 0.0 && t < t_end)) {
    if (++steps > max_steps)
      throw std::runtime_error("rk5_reference: reference unattainable at this stiffness");
    h = std::min(h, t_end - t);

    for (int i = 0; i < n; ++i) yt[i] = y[i] + h * a21 * k1[i];
    eval_f(yt, k2, scratch);
    for (int i = 0; i < n; ++i) yt[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
    eval_f(yt, k3, scratch);
    for (int i = 0; i < n; ++i) yt[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
    eval_f(yt, k4, scratch);
    for (int i = 0; i < n; ++i)
      yt[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
    eval_f(yt, k5, scratch);
    for (int i = 0; i < n; ++i)
      yt[i] = y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
    eval_f(yt, k6, scratch);
    for (int i = 0; i < n; ++i)
      y5[i] = y[i] + h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] + b6 * k6[i]);
    eval_f(y5, k7, scratch);

    double sum = 0.0;
    for (int i = 0; i < n; ++i) {
      const double err_i = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] +
                                e6 * k6[i] + e7 * k7[i]);
      const double w = tol + tol * std::max(std::abs(y[i]), std::abs(y5[i]));
      const double r = err_i / w;
      sum += r * r;
    }
    double err = std::sqrt(sum / n);
    if (!std::isfinite(err)) err = std::numeric_limits<double>::infinity();

    if (err <= 1.0) {
      t += h;
      y.swap(y5);
      k1.swap(k7);  // FSAL
    }
    const double fac = std::isfinite(err)
                           ? std::clamp(0.9 * std::pow(std::max(err, 1e-30), -0.2), 0.2, 5.0)
                           : 0.2;
    h *= fac;
  }
  return y;
}

std::vector<double> reference_solution(const BurgersReaction1D& problem,
                                       std::span<const double> y0, double t_end,
                                       double tight_tol) {
  if (!(tight_tol <= 1e-10))
    throw std::invalid_argument("reference_solution: tight_tol must be <= 1e-10");
  return rk5_reference(problem.ode, y0, 0.0, t_end, tight_tol);
}

void write_state_csv(std::span<const double> state, double dx, std::ostream& out) {
  out << "x,u\n";
  out.precision(15);
  for (std::size_t k = 0; k < state.size(); ++k) out << k * dx << ',' << state[k] << '\n';
}

}  // namespace arkc
