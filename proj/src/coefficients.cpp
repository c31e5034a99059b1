#include "arkc/coefficients.hpp"

#include <cmath>
#include <stdexcept>

#include "arkc/chebyshev.hpp"

namespace arkc {

Cheb1Coefficients cheb1_coefficients(int s, double eta) {
  if (s < 1) throw std::invalid_argument("cheb1_coefficients: stage count must be >= 1");
  if (!(eta > 0.0)) throw std::invalid_argument("cheb1_coefficients: damping must be > 0");

  Cheb1Coefficients c;
  c.s = s;
  c.eta = eta;
  c.omega0 = 1.0 + eta / (static_cast<double>(s) * static_cast<double>(s));
  const ChebEval ts = cheb_first_kind(s, c.omega0);
  c.omega1 = ts.value / ts.first_deriv;

  c.mu.assign(s + 1, 0.0);
  c.nu.assign(s + 1, 0.0);
  c.mu[1] = c.omega1 / c.omega0;
  double tpp = 1.0, tp = c.omega0;  // T_{j-2}, T_{j-1} at omega0
  for (int j = 2; j <= s; ++j) {
    const double tj = 2.0 * c.omega0 * tp - tpp;
    c.mu[j] = 2.0 * c.omega1 * tp / tj;
    c.nu[j] = 2.0 * c.omega0 * tp / tj;
    tpp = tp;
    tp = tj;
  }
  c.nu1 = 0.5 * s * c.omega1;
  c.kappa1 = s * c.omega1 / c.omega0;
  return c;
}

ArkcCoefficients arkc_coefficients(int s, double eta) {
  if (s < 2) throw std::invalid_argument("arkc_coefficients: stage count must be >= 2");
  if (!(eta > 0.0)) throw std::invalid_argument("arkc_coefficients: damping must be > 0");

  ArkcCoefficients c;
  c.s = s;
  c.eta = eta;
  c.omega0 = 1.0 + eta / (static_cast<double>(s) * static_cast<double>(s));

  c.a.assign(s + 1, 0.0);
  c.b.assign(s + 1, 0.0);
  c.mu.assign(s + 1, 0.0);
  c.nu.assign(s + 1, 0.0);
  c.kappa.assign(s + 1, 0.0);

  // One pass of the value/derivative recurrences fills b_j and a_j for j >= 2.
  const double w0 = c.omega0;
  double vpp = 1.0, vp = w0;  // T_{j-2}, T_{j-1}
  double dpp = 0.0, dp = 1.0;
  double spp = 0.0, sp = 0.0;
  for (int j = 2; j <= s; ++j) {
    const double v = 2.0 * w0 * vp - vpp;
    const double d = 2.0 * vp + 2.0 * w0 * dp - dpp;
    const double sd = 4.0 * dp + 2.0 * w0 * sp - spp;
    c.b[j] = sd / (d * d);
    c.a[j] = 1.0 - c.b[j] * v;
    vpp = vp;
    vp = v;
    dpp = dp;
    dp = d;
    spp = sp;
    sp = sd;
  }
  c.omega2 = dp / sp;  // T_s'/T_s''

  c.b[0] = c.b[1] = c.b[2];
  c.a[0] = 1.0 - c.b[0];        // T_0 = 1
  c.a[1] = 1.0 - c.b[1] * w0;   // T_1 = omega0
  c.b1 = c.b[1];

  for (int j = 2; j <= s; ++j) {
    c.mu[j] = 2.0 * c.b[j] * c.omega2 / c.b[j - 1];
    c.nu[j] = 2.0 * c.b[j] * w0 / c.b[j - 1];
    c.kappa[j] = -c.b[j] / c.b[j - 2];
  }
  c.alpha = (1.0 - 0.5 * c.omega2) * c.b1 * s * c.omega2;

  const ChebEval us1 = cheb_second_kind(s - 1, w0);
  c.c1 = 0.5 * c.omega2 * (1.0 - 0.5 * c.omega2) *
         (1.0 + c.omega2 * us1.second_deriv / us1.value);
  c.c2 = s * c.b[s] * us1.second_deriv * c.omega2 * c.omega2 * c.omega2 / 6.0;
  return c;
}

int rkc_stage_count(double h_times_rho) {
  if (!(h_times_rho >= 0.0))
    throw std::invalid_argument("rkc_stage_count: h*rho must be >= 0");
  long s = std::lround(std::sqrt((h_times_rho + 1.5) / 0.65) + 0.5);
  if (s < 2) s = 2;
  while (0.65 * static_cast<double>(s) * static_cast<double>(s) < h_times_rho) ++s;
  return static_cast<int>(s);
}

std::array<double, 6> order_condition_gammas(const ArkcCoefficients& c) {
  const double w2 = c.omega2;
  const double seed2 = 0.5 * w2;                 // gamma_2 at stage 0 (from K_0 = y_0 + w2/2 G)
  const double seed4 = 0.25 * w2 * (w2 - 1.0);   // gamma_4 at stage 0
  const double seed56 = 0.25 * w2;               // gamma_5, gamma_6 at stage 0
  const double g21 = c.alpha + seed2;            // gamma_2 at stage 1

  double g1pp = 0.0, g1p = c.b1 * w2;
  double g2pp = seed2, g2p = g21;
  double g3pp = 0.0, g3p = 0.0;
  double g4pp = seed4, g4p = 0.5 * g21 * (w2 - 1.0);
  double g5pp = seed56, g5p = 0.5 * g21;
  double g6pp = seed56, g6p = 0.5 * g21;

  for (int j = 2; j <= c.s; ++j) {
    const double mu = c.mu[j], nu = c.nu[j], ka = c.kappa[j];
    const double w = 1.0 - nu - ka;
    const double g1 = mu * (1.0 - c.a[j - 1]) + nu * g1p + ka * g1pp;
    const double g2 = nu * g2p + ka * g2pp + w * seed2;
    const double g3 = mu * g1p + nu * g3p + ka * g3pp;
    const double g4 = mu * (g2p - seed2) + nu * g4p + ka * g4pp + w * seed4;
    const double g5 = nu * g5p + ka * g5pp + w * seed56;
    const double g6 = nu * g6p + ka * g6pp + w * seed56;
    g1pp = g1p; g1p = g1;
    g2pp = g2p; g2p = g2;
    g3pp = g3p; g3p = g3;
    g4pp = g4p; g4p = g4;
    g5pp = g5p; g5p = g5;
    g6pp = g6p; g6p = g6;
  }
  return {g1p, g2p, g3p, g4p, g5p, g6p};
}

std::shared_ptr<const ArkcCoefficients> CoefficientCache::arkc(int s, double eta) {
  const std::pair<int, double> key{s, eta};
  std::lock_guard<std::mutex> lock(mutex_);
  if (auto it = arkc_.find(key); it != arkc_.end()) return it->second;
  if (arkc_.size() >= kMaxEntries) arkc_.clear();
  auto ptr = std::make_shared<const ArkcCoefficients>(arkc_coefficients(s, eta));
  arkc_.emplace(key, ptr);
  return ptr;
}

std::shared_ptr<const Cheb1Coefficients> CoefficientCache::cheb1(int s, double eta) {
  const std::pair<int, double> key{s, eta};
  std::lock_guard<std::mutex> lock(mutex_);
  if (auto it = cheb1_.find(key); it != cheb1_.end()) return it->second;
  if (cheb1_.size() >= kMaxEntries) cheb1_.clear();
  auto ptr = std::make_shared<const Cheb1Coefficients>(cheb1_coefficients(s, eta));
  cheb1_.emplace(key, ptr);
  return ptr;
}

}  // namespace arkc
