#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>

#include "arkc/chebyshev.hpp"
#include "arkc/damping.hpp"
#include "arkc/integrators.hpp"
#include "arkc/stability.hpp"
#include "test_util.hpp"

using namespace arkc;
using test::linf;
using test::linf_diff;
using test::realized_amplification;
using test::split_linear_test;

namespace {

// Random periodic heat chain: pure diffusion with random symmetric negative
// coupling, used for the reduction property.
SplitOdeProblem random_diffusion_chain(int n, std::mt19937& rng, bool zero_advection_fn) {
  std::uniform_real_distribution<double> coupling(0.5, 2.0);
  std::vector<double> k(n);
  for (double& v : k) v = coupling(rng);
  SplitOdeProblem p;
  p.dimension = n;
  p.f_diffusion = [n, k](std::span<const double> y, std::span<double> out) {
    for (int i = 0; i < n; ++i) {
      const double up = y[i + 1 == n ? 0 : i + 1];
      const double um = y[i == 0 ? n - 1 : i - 1];
      out[i] = k[i] * (up - 2.0 * y[i] + um);
    }
  };
  if (zero_advection_fn) {
    p.f_advection_reaction = [](std::span<const double>, std::span<double> out) {
      for (double& v : out) v = 0.0;
    };
  }
  return p;
}

}  // namespace

TEST_CASE("cheb1 with one stage is explicit Euler") {
  SplitOdeProblem p = split_linear_test(-1.0, 0.0);
  const Cheb1Coefficients c = cheb1_coefficients(1, 0.05);
  StepWorkspace ws;
  std::vector<double> y0{1.0, -2.0}, y1(2);
  step_cheb1(p, y0, 0.1, c, ws, y1);
  CHECK(y1[0] == doctest::Approx(0.9).epsilon(1e-15));
  CHECK(y1[1] == doctest::Approx(-1.8).epsilon(1e-15));
}

TEST_CASE("zero field fixes every scheme") {
  SplitOdeProblem p;
  p.dimension = 3;
  p.f_diffusion = [](std::span<const double>, std::span<double> out) {
    for (double& v : out) v = 0.0;
  };
  std::vector<double> y0{1.0, -0.5, 3.25}, y1(3);
  StepWorkspace ws;
  // The stage combinations nu*K + (1-nu)*K round per stage, so the fixed
  // point holds to a few ulp rather than bitwise.
  const double ulp_slack = 1e-14 * linf(y0);
  for (int s : {1, 5, 20}) {
    step_cheb1(p, y0, 0.3, cheb1_coefficients(s, 0.05), ws, y1);
    CHECK(linf_diff(y1, y0) <= ulp_slack);
    step_ad1(p, y0, 0.3, cheb1_coefficients(s, 0.05), ws, y1);
    CHECK(linf_diff(y1, y0) <= ulp_slack);
  }
  for (int s : {2, 5, 20}) {
    ws.f_at_y0_valid = false;
    step_rkc(p, y0, 0.3, arkc_coefficients(s, 0.15), ws, y1);
    CHECK(linf_diff(y1, y0) <= ulp_slack);
    ws.f_at_y0_valid = false;
    step_arkc(p, y0, 0.3, arkc_coefficients(s, 0.15), ws, y1);
    CHECK(linf_diff(y1, y0) <= ulp_slack);
  }
}

TEST_CASE("cheb1 amplification is the shifted Chebyshev ratio") {
  const int s = 10;
  const double eta = 0.05, lambda = -5.0, h = 2.0;
  const Cheb1Coefficients c = cheb1_coefficients(s, eta);
  const std::complex<double> amp = realized_amplification(Scheme::cheb1, h * lambda, 0.0, s, eta);
  const double expected =
      cheb_first_kind(s, c.omega0 + c.omega1 * h * lambda).value / cheb_first_kind(s, c.omega0).value;
  CHECK(std::abs(amp.real() - expected) <= 1e-12);
  CHECK(std::abs(amp.imag()) <= 1e-14);
}

TEST_CASE("rkc amplification is the Bakker-corrected polynomial") {
  const int s = 5;
  const double eta = 0.15, lambda = -10.0, h = 0.05;
  const ArkcCoefficients c = arkc_coefficients(s, eta);
  const std::complex<double> amp = realized_amplification(Scheme::rkc, h * lambda, 0.0, s, eta);
  const double expected = c.a[s] + c.b[s] * cheb_first_kind(s, c.omega0 + c.omega2 * h * lambda).value;
  CHECK(std::abs(amp.real() - expected) <= 1e-12);
}

TEST_CASE("ad1 equals cheb1 when advection is absent") {
  SplitOdeProblem p = split_linear_test(-3.0, 0.0);
  const Cheb1Coefficients c = cheb1_coefficients(7, 0.05);
  StepWorkspace ws1, ws2;
  std::vector<double> y0{0.4, 1.7}, a(2), b(2);
  step_cheb1(p, y0, 0.2, c, ws1, a);
  step_ad1(p, y0, 0.2, c, ws2, b);
  CHECK(linf_diff(a, b) <= 1e-15);
}

TEST_CASE("ad1 amplification matches the first-order polynomial") {
  for (int s : {3, 10}) {
    for (double fp : {0.2, 0.8}) {
      for (double fq : {0.0, 0.5, 1.0}) {
        const Cheb1Coefficients c = cheb1_coefficients(s, 0.05);
        const double p = -fp * 2.0 / c.omega1;
        const double q = fq * std::sqrt(-2.0 * p);
        const std::complex<double> amp = realized_amplification(Scheme::ad1, p, q, s, 0.05);
        const PolyEval poly = eval_R1(p, q, s, 0.05);
        CHECK(std::abs(amp - poly.value) <= 1e-12);
      }
    }
  }
}

TEST_CASE("ad1 cost: s diffusion evaluations, one advection evaluation") {
  SplitOdeProblem p = split_linear_test(-2.0, 0.5);
  StepWorkspace ws;
  std::vector<double> y0{1.0, 0.0}, y1(2);
  step_ad1(p, y0, 0.05, cheb1_coefficients(10, 0.05), ws, y1);
  CHECK(ws.fd_evals == 10);
  CHECK(ws.fa_evals == 1);
}

TEST_CASE("arkc equals rkc on a ten-cell heat chain") {
  std::mt19937 rng(314);
  SplitOdeProblem p = random_diffusion_chain(10, rng, false);
  std::uniform_real_distribution<double> state(-1.0, 1.0);
  std::vector<double> y0(10), a(10), b(10);
  for (double& v : y0) v = state(rng);
  const ArkcCoefficients c = arkc_coefficients(8, 0.15);
  StepWorkspace ws1, ws2;
  step_rkc(p, y0, 1e-3, c, ws1, a);
  step_arkc(p, y0, 1e-3, c, ws2, b);
  CHECK(linf_diff(a, b) <= 1e-14);
}

TEST_CASE("arkc reduces to rkc without advection") {
  std::mt19937 rng(2024);
  std::uniform_real_distribution<double> state(-1.0, 1.0);
  std::uniform_int_distribution<int> dim(1, 12), stages(2, 25);
  std::uniform_real_distribution<double> damping(0.15, 10.0);
  for (int rep = 0; rep < 100; ++rep) {
    const int n = dim(rng);
    // Half the cases omit F_A entirely, half provide an explicit zero field.
    SplitOdeProblem p = random_diffusion_chain(n, rng, rep % 2 == 0);
    std::vector<double> y0(n), a(n), b(n);
    for (double& v : y0) v = state(rng);
    const int s = stages(rng);
    const ArkcCoefficients c = arkc_coefficients(s, damping(rng));
    const double h = 0.05 / (s * s);
    StepWorkspace ws1, ws2;
    step_rkc(p, y0, h, c, ws1, a);
    step_arkc(p, y0, h, c, ws2, b);
    REQUIRE(linf_diff(a, b) <= 1e-13 * (1.0 + linf(y0)));
  }
}

TEST_CASE("arkc amplification matches the second-order polynomial") {
  for (int s : {2, 5, 13}) {
    for (double eta : {0.15, 3.0}) {
      const ArkcCoefficients c = arkc_coefficients(s, eta);
      for (double fp : {0.1, 0.6, 0.95}) {
        const double p = -fp * c.real_axis_length();
        const double q = 0.4 * std::sqrt(-p);
        const std::complex<double> amp = realized_amplification(Scheme::arkc, p, q, s, eta);
        const PolyEval poly = eval_R2(p, q, s, eta);
        CHECK(std::abs(amp - poly.value) <= 1e-11);
      }
    }
  }
}

TEST_CASE("arkc cost: s+2 diffusion and 3 advection evaluations") {
  SplitOdeProblem p = split_linear_test(-2.0, 0.5);
  for (int s : {2, 5, 13}) {
    StepWorkspace ws;
    std::vector<double> y0{1.0, 0.0}, y1(2);
    step_arkc(p, y0, 0.01, arkc_coefficients(s, 1.0), ws, y1);
    CHECK(ws.fd_evals == s + 2);
    CHECK(ws.fa_evals == 3);
  }
  // Cached right-hand sides at y0 save one evaluation of each part.
  {
    StepWorkspace ws;
    std::vector<double> y0{1.0, 0.0}, y1(2);
    ws.resize(2);
    p.f_diffusion(y0, ws.fd_at_y0);
    p.f_advection_reaction(y0, ws.fa_at_y0);
    ws.f_at_y0_valid = true;
    step_arkc(p, y0, 0.01, arkc_coefficients(13, 1.0), ws, y1);
    CHECK(ws.fd_evals == 14);
    CHECK(ws.fa_evals == 2);
  }
}

TEST_CASE("one step is linear in the state for linear problems") {
  SplitOdeProblem p = split_linear_test(-4.0, 1.5);
  const ArkcCoefficients c = arkc_coefficients(6, 1.0);
  StepWorkspace ws;
  std::vector<double> u{0.3, -1.1}, v{2.0, 0.7}, w(2), su(2), sv(2), sw(2);
  const double alpha = 1.7, beta = -0.6;
  for (int i = 0; i < 2; ++i) w[i] = alpha * u[i] + beta * v[i];
  ws.f_at_y0_valid = false;
  step_arkc(p, u, 0.05, c, ws, su);
  ws.f_at_y0_valid = false;
  step_arkc(p, v, 0.05, c, ws, sv);
  ws.f_at_y0_valid = false;
  step_arkc(p, w, 0.05, c, ws, sw);
  for (int i = 0; i < 2; ++i)
    CHECK(std::abs(sw[i] - (alpha * su[i] + beta * sv[i])) <= 1e-12 * (1.0 + std::abs(sw[i])));
}

TEST_CASE("realized amplification stays contractive inside the scanned region") {
  std::mt19937 rng(77);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int s : {5, 13, 20}) {
    const double eta = select_damping(0.5, s);
    const ArkcCoefficients c = arkc_coefficients(s, eta);
    const double pmax = c.real_axis_length();
    int tested = 0;
    while (tested < 200) {
      const double p = -unit(rng) * pmax;
      const double q = unit(rng) * 0.5 * std::sqrt(-p);
      if (eval_R2(p, q, s, eta).modulus > 1.0) continue;  // sample inside the region only
      ++tested;
      const std::complex<double> amp = realized_amplification(Scheme::arkc, p, q, s, eta);
      CHECK(std::abs(amp) <= 1.0 + 1e-9);
    }
  }
}

TEST_CASE("divergence carries the stage index") {
  SplitOdeProblem p = split_linear_test(1e155, 0.0);  // growth overflows within a few stages
  StepWorkspace ws;
  std::vector<double> y0{1.0, 1.0}, y1(2);
  try {
    step_cheb1(p, y0, 1e160, cheb1_coefficients(8, 0.05), ws, y1);
    FAIL("expected divergence");
  } catch (const DivergenceError& e) {
    CHECK(e.stage >= 1);
    CHECK(std::string(e.what()).find("divergence detected") != std::string::npos);
  }
}

TEST_CASE("fixed-step loop reduces to a single step and accumulates counters") {
  SplitOdeProblem p = split_linear_test(-2.0, 0.5);
  std::vector<double> y0{1.0, 0.0}, y1(2);
  StepWorkspace ws;
  step_arkc(p, y0, 0.125, arkc_coefficients(4, 0.5), ws, y1);
  const IntegrationReport rep = integrate_fixed(p, y0, 0.0, 0.125, 1, Scheme::arkc, 4, 0.5);
  CHECK(linf_diff(rep.final_state, y1) == 0.0);
  CHECK(rep.fd_evals == 6);
  CHECK(rep.fa_evals == 3);

  const IntegrationReport rep8 = integrate_fixed(p, y0, 0.0, 1.0, 8, Scheme::arkc, 4, 0.5);
  CHECK(rep8.steps_accepted == 8);
  CHECK(rep8.fd_evals == 8 * 6);
  CHECK(rep8.fa_evals == 8 * 3);
}

TEST_CASE("fixed-step divergence reports the failing step") {
  SplitOdeProblem p = split_linear_test(1e155, 0.0);
  std::vector<double> y0{1.0, 1.0};
  try {
    integrate_fixed(p, y0, 0.0, 1e170, 4, Scheme::cheb1, 3, 0.05);
    FAIL("expected divergence");
  } catch (const DivergenceError& e) {
    CHECK(e.step >= 0);
  }
}
