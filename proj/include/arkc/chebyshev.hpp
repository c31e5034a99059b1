#pragma once

namespace arkc {

/// Value and first two derivatives of a Chebyshev polynomial at one point.
struct ChebEval {
  double value = 0.0;
  double first_deriv = 0.0;
  double second_deriv = 0.0;
};

/// First-kind Chebyshev polynomial T_j evaluated by the three-term recurrence
/// T_j = 2x T_{j-1} - T_{j-2} together with its differentiated forms.
/// Valid for any real x, in particular arguments slightly above 1 as used by
/// the damped stabilized schemes.
ChebEval cheb_first_kind(int degree, double x);

/// Second-kind Chebyshev polynomial U_j, same recurrence with U_1 = 2x.
ChebEval cheb_second_kind(int degree, double x);

}  // namespace arkc
