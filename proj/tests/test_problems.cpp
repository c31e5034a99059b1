#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>
#include <sstream>

#include "arkc/adaptive.hpp"
#include "arkc/problems.hpp"
#include "test_util.hpp"

using namespace arkc;
using test::linf_diff;

namespace {

// Dense matrix exponential by scaling and squaring with a Taylor series;
// brute-force oracle for small instances, independent of the Fourier path.
std::vector<double> expm_apply(const std::vector<double>& matrix, int n,
                               const std::vector<double>& y0, double t) {
  std::vector<double> a(matrix);
  for (double& v : a) v *= t;
  double norm = 0.0;
  for (int i = 0; i < n; ++i) {
    double row = 0.0;
    for (int j = 0; j < n; ++j) row += std::abs(a[i * n + j]);
    norm = std::max(norm, row);
  }
  int squarings = 0;
  while (norm > 0.5) {
    norm *= 0.5;
    ++squarings;
    for (double& v : a) v *= 0.5;
  }
  std::vector<double> e(n * n, 0.0), term(n * n, 0.0), next(n * n);
  for (int i = 0; i < n; ++i) e[i * n + i] = term[i * n + i] = 1.0;
  for (int k = 1; k <= 24; ++k) {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        double sum = 0.0;
        for (int m = 0; m < n; ++m) sum += term[i * n + m] * a[m * n + j];
        next[i * n + j] = sum / k;
      }
    term = next;
    for (int i = 0; i < n * n; ++i) e[i] += term[i];
  }
  for (int r = 0; r < squarings; ++r) {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        double sum = 0.0;
        for (int m = 0; m < n; ++m) sum += e[i * n + m] * e[m * n + j];
        next[i * n + j] = sum;
      }
    e = next;
  }
  std::vector<double> y(n, 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) y[i] += e[i * n + j] * y0[j];
  return y;
}

}  // namespace

TEST_CASE("discrete eigenvalues match the closed form") {
  auto prob = build_linear_ad(150, 3.0);
  for (int k = 1; k <= 150; ++k) {
    const std::complex<double> lam = prob.eigenvalue(k);
    const double re = 2.0 * 150.0 * 150.0 * (std::cos(2.0 * k * 3.141592653589793 / 150.0) - 1.0);
    const double im = -3.0 * 150.0 * std::sin(2.0 * k * 3.141592653589793 / 150.0);
    CHECK(lam.real() == doctest::Approx(re).epsilon(1e-9));
    CHECK(std::abs(lam.imag() - im) <= 1e-9 * 450.0);
  }
  // The mid-spectrum mode is exactly -4 N^2 with a vanishing imaginary part.
  const std::complex<double> mid = prob.eigenvalue(75);
  CHECK(mid.real() == -90000.0);
  CHECK(mid.imag() == 0.0);
}

TEST_CASE("periodic differences vanish on constants") {
  auto prob = build_linear_ad(32, 2.0);
  std::vector<double> u(32, 3.7), fd(32), fa(32);
  prob.ode.f_diffusion(u, fd);
  prob.ode.f_advection_reaction(u, fa);
  for (int i = 0; i < 32; ++i) {
    CHECK(fd[i] == 0.0);
    CHECK(fa[i] == 0.0);
  }
}

TEST_CASE("pure diffusion omits the advection field") {
  auto prob = build_linear_ad(32, 0.0);
  CHECK_FALSE(prob.ode.has_advection());
}

TEST_CASE("periodic operators have zero mean") {
  std::mt19937 rng(9);
  std::uniform_real_distribution<double> state(-1.0, 1.0);
  auto prob = build_linear_ad(64, 5.0);
  std::vector<double> u(64), fd(64), fa(64);
  for (int rep = 0; rep < 10; ++rep) {
    for (double& v : u) v = state(rng);
    prob.ode.f_diffusion(u, fd);
    prob.ode.f_advection_reaction(u, fa);
    double mean_d = 0.0, mean_a = 0.0;
    for (int i = 0; i < 64; ++i) {
      mean_d += fd[i];
      mean_a += fa[i];
    }
    CHECK(std::abs(mean_d / 64.0) <= 1e-12 * 64.0 * 64.0);  // scaled by 1/dx^2
    CHECK(std::abs(mean_a / 64.0) <= 1e-12 * 64.0);
  }
}

TEST_CASE("spectral hints dominate the eigenvalues") {
  auto prob = build_linear_ad(150, 7.0);
  const auto y0 = prob.initial_state();
  const double rho_d = prob.ode.rho_diffusion(y0);
  const double rho_a = prob.ode.rho_advection(y0);
  for (int k = 1; k <= 150; ++k) {
    const auto lam = prob.eigenvalue(k);
    CHECK(-lam.real() <= rho_d * (1.0 + 1e-14));
    CHECK(std::abs(lam.imag()) <= rho_a * (1.0 + 1e-14));
  }
}

TEST_CASE("fourier oracle agrees with the dense matrix exponential") {
  const int n = 16;
  auto prob = build_linear_ad(n, 2.5);
  // Assemble the dense operator column by column.
  std::vector<double> matrix(n * n), unit(n, 0.0), fd(n), fa(n);
  for (int j = 0; j < n; ++j) {
    unit.assign(n, 0.0);
    unit[j] = 1.0;
    prob.ode.f_diffusion(unit, fd);
    prob.ode.f_advection_reaction(unit, fa);
    for (int i = 0; i < n; ++i) matrix[i * n + j] = fd[i] + fa[i];
  }
  std::mt19937 rng(31);
  std::uniform_real_distribution<double> state(-1.0, 1.0);
  std::vector<double> y0(n);
  for (double& v : y0) v = state(rng);
  const double t = 3e-3;
  const auto dense = expm_apply(matrix, n, y0, t);
  const auto fourier = fourier_reference(prob, y0, t);
  CHECK(linf_diff(dense, fourier) <= 1e-9);
}

TEST_CASE("pure heat decay of the initial mode") {
  auto prob = build_linear_ad(100, 0.0);
  const auto y0 = prob.initial_state();
  const double t = 0.01;
  const auto ref = fourier_reference(prob, y0, t);
  const auto lam = prob.eigenvalue(1);
  for (int k = 0; k < 100; ++k) {
    const double expected = std::exp(lam.real() * t) * sin_pi(2.0 * k / 100.0);
    CHECK(ref[k] == doctest::Approx(expected).epsilon(1e-11));
  }
}

TEST_CASE("advected mode rotates and decays") {
  auto prob = build_linear_ad(100, 4.0);
  const auto y0 = prob.initial_state();
  const double t = 0.02;
  const auto ref = fourier_reference(prob, y0, t);
  const auto lam = prob.eigenvalue(1);
  for (int k = 0; k < 100; ++k) {
    const double phase = 2.0 * 3.141592653589793 * k / 100.0 + lam.imag() * t;
    const double expected = std::exp(lam.real() * t) * std::sin(phase);
    CHECK(ref[k] == doctest::Approx(expected).epsilon(1e-10));
  }
}

TEST_CASE("burgers field values") {
  auto prob = build_burgers(100);
  CHECK(prob.dx == doctest::Approx(1e-2).epsilon(1e-15));
  std::vector<double> u(100, 0.0), fd(100), fa(100);
  prob.ode.f_diffusion(u, fd);
  prob.ode.f_advection_reaction(u, fa);
  for (int i = 0; i < 100; ++i) {
    CHECK(fd[i] == 0.0);
    CHECK(fa[i] == 0.0);
  }
  u.assign(100, 1.0);
  prob.ode.f_advection_reaction(u, fa);
  for (int i = 0; i < 100; ++i) CHECK(fa[i] == doctest::Approx(std::sin(1.0)).epsilon(1e-15));
}

TEST_CASE("burgers Peclet ratio starts high and drifts") {
  auto prob = build_burgers(100);
  const auto y0 = prob.initial_state();
  const double rho_d = prob.ode.rho_diffusion(y0);
  const double ratio0 = prob.ode.rho_advection(y0) / std::sqrt(rho_d);
  CHECK(2.0 * ratio0 > 10.0);  // Peclet proxy above 10 at early times

  const auto late = rk5_reference(prob.ode, y0, 0.0, 0.5, 1e-8);
  const double ratio1 = prob.ode.rho_advection(late) / std::sqrt(rho_d);
  CHECK(std::abs(ratio0 - ratio1) > 0.05 * ratio0);  // visibly non-constant
}

TEST_CASE("reference solver is self-consistent") {
  auto prob = build_burgers(100);
  const auto y0 = prob.initial_state();
  const auto a = reference_solution(prob, y0, 0.5, 1e-10);
  const auto b = rk5_reference(prob.ode, y0, 0.0, 0.5, 1e-11);
  CHECK(linf_diff(a, b) <= 100.0 * 1e-10);
  CHECK_THROWS_AS(reference_solution(prob, y0, 0.5, 1e-6), std::invalid_argument);
}

TEST_CASE("reference solver reports an unattainable budget") {
  auto prob = build_burgers(100);
  const auto y0 = prob.initial_state();
  CHECK_THROWS_AS(rk5_reference(prob.ode, y0, 0.0, 0.5, 1e-11, 50), std::runtime_error);
}

TEST_CASE("state serialization") {
  std::vector<double> u{0.5, -1.0, 0.25};
  std::ostringstream out;
  write_state_csv(u, 0.25, out);
  CHECK(out.str() == "x,u\n0,0.5\n0.25,-1\n0.5,0.25\n");
}
