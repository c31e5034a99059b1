#include "arkc/chebyshev.hpp"

#include <stdexcept>

namespace arkc {

namespace {

// Shared forward recurrence for both polynomial kinds. v1/d1 are the value
// and derivative of the degree-1 member (x,1 for T; 2x,2 for U). Only the two
// trailing terms of each quantity are kept.
ChebEval forward_recurrence(int degree, double x, double v1, double d1) {
  if (degree == 0) return {1.0, 0.0, 0.0};
  double vpp = 1.0, vp = v1;
  double dpp = 0.0, dp = d1;
  double spp = 0.0, sp = 0.0;
  for (int j = 2; j <= degree; ++j) {
    const double v = 2.0 * x * vp - vpp;
    const double d = 2.0 * vp + 2.0 * x * dp - dpp;
    const double s = 4.0 * dp + 2.0 * x * sp - spp;
    vpp = vp;
    vp = v;
    dpp = dp;
    dp = d;
    spp = sp;
    sp = s;
  }
  return {vp, dp, sp};
}

}  // namespace

ChebEval cheb_first_kind(int degree, double x) {
  if (degree < 0) throw std::invalid_argument("cheb_first_kind: degree must be >= 0");
  return forward_recurrence(degree, x, x, 1.0);
}

ChebEval cheb_second_kind(int degree, double x) {
  if (degree < 0) throw std::invalid_argument("cheb_second_kind: degree must be >= 0");
  return forward_recurrence(degree, x, 2.0 * x, 2.0);
}

}  // namespace arkc
