#pragma once

#include <array>
#include <map>
#include <memory>
#include <mutex>
#include <utility>
#include <vector>

namespace arkc {

/// Coefficients of the damped first-order Chebyshev recurrence, plus the
/// first-stage coefficients nu1/kappa1 used by the first-order
/// advection-diffusion scheme.
///
/// omega0 = 1 + eta/s^2, omega1 = T_s(omega0)/T_s'(omega0), mu_1 = omega1/omega0,
/// mu_j = 2 omega1 T_{j-1}(omega0)/T_j(omega0), nu_j = 2 omega0 T_{j-1}/T_j.
/// The K_{j-2} stage weight is 1 - nu_j.
struct Cheb1Coefficients {
  int s = 0;
  double eta = 0.0;
  double omega0 = 0.0;
  double omega1 = 0.0;
  std::vector<double> mu;  // mu[j] for j = 1..s; mu[0] unused
  std::vector<double> nu;  // nu[j] for j = 2..s; nu[0], nu[1] unused
  double nu1 = 0.0;        // s*omega1/2
  double kappa1 = 0.0;     // s*omega1/omega0

  /// Length of the real-axis stability interval [-L, 0], L = (1+omega0)/omega1.
  double real_axis_length() const { return (1.0 + omega0) / omega1; }
};

/// Bakker-corrected second-order coefficient set shared by the RKC and ARKC
/// one-step maps, with the ARKC correction weight alpha and the leading
/// local-error constants c1 (the p^2 q Taylor coefficient) and c2 (p^3).
struct ArkcCoefficients {
  int s = 0;
  double eta = 0.0;
  double omega0 = 0.0;  // 1 + eta/s^2
  double omega2 = 0.0;  // T_s'(omega0)/T_s''(omega0)
  std::vector<double> a;      // a[j] = 1 - b[j] T_j(omega0), j = 0..s
  std::vector<double> b;      // b[j] = T_j''(omega0)/T_j'(omega0)^2 for j >= 2; b0 = b1 = b2
  std::vector<double> mu;     // 2 b_j omega2 / b_{j-1},  j = 2..s
  std::vector<double> nu;     // 2 b_j omega0 / b_{j-1},  j = 2..s
  std::vector<double> kappa;  // -b_j / b_{j-2},          j = 2..s
  double b1 = 0.0;
  double alpha = 0.0;  // (1 - omega2/2) b1 s omega2
  double c1 = 0.0;
  double c2 = 0.0;

  /// Length of the real-axis stability interval [-L, 0], L = (1+omega0)/omega2.
  double real_axis_length() const { return (1.0 + omega0) / omega2; }
};

/// Generate the first-order Chebyshev coefficient set. Throws
/// std::invalid_argument for s < 1 or eta <= 0.
Cheb1Coefficients cheb1_coefficients(int s, double eta);

/// Generate the second-order RKC/ARKC coefficient set. Throws
/// std::invalid_argument for s < 2 or eta <= 0.
ArkcCoefficients arkc_coefficients(int s, double eta);

/// Stage count for the second-order family given h times the spectral radius:
/// round(sqrt((h*rho + 1.5)/0.65) + 0.5), clamped to >= 2 and bumped until
/// 0.65 s^2 covers h*rho.
int rkc_stage_count(double h_times_rho);

/// End values {gamma_1 .. gamma_6} of the six order-condition recurrences run
/// over the stages of a coefficient set. A second-order set yields
/// {1, 1, 1/2, 1/2, 1/2, 1/2}.
std::array<double, 6> order_condition_gammas(const ArkcCoefficients& c);

/// Bounded thread-safe memo for coefficient sets keyed by (s, eta). The
/// adaptive driver changes (s, eta) per step; regeneration is O(s) so the
/// cache is simply cleared when it grows past its bound.
class CoefficientCache {
 public:
  std::shared_ptr<const ArkcCoefficients> arkc(int s, double eta);
  std::shared_ptr<const Cheb1Coefficients> cheb1(int s, double eta);

 private:
  static constexpr std::size_t kMaxEntries = 256;
  std::mutex mutex_;
  std::map<std::pair<int, double>, std::shared_ptr<const ArkcCoefficients>> arkc_;
  std::map<std::pair<int, double>, std::shared_ptr<const Cheb1Coefficients>> cheb1_;
};

}  // namespace arkc
