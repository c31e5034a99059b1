#pragma once

#include <complex>
#include <functional>
#include <iosfwd>
#include <vector>

#include "arkc/integrators.hpp"

namespace arkc {

/// Stability polynomial value at one point of the (p, q) plane, p = h*lambda
/// on the real (diffusion) axis and q = h*mu on the imaginary (advection) axis.
struct PolyEval {
  std::complex<double> value;
  double modulus = 0.0;
};

/// First-order polynomial R(p,q) = A(p) + B(p) i q with
/// A = T_s(w0 + w1 p)/T_s(w0), B = U_{s-1}(w0 + w1 p)/U_{s-1}(w0) (1 + w1 p/2).
PolyEval eval_R1(double p, double q, int s, double eta);

/// Second-order polynomial R2(p,q) = A2(p) + B2(p)(i q - q^2/2) with
/// A2 = a_s + b_s T_s(w0 + w2 p),
/// B2 = (w2/2 + (1 - w2/2) U_{s-1}(w0 + w2 p)/U_{s-1}(w0)) (1 + w2 p/2).
PolyEval eval_R2(double p, double q, int s, double eta);

struct GridSpec {
  int p_points = 800;
  int q_points = 400;
  double p_min = 0.0;  // 0: default to -0.7 s^2 (arkc) or -2.1 s^2 (ad1)
  double q_max = 0.0;  // 0: default to s
};

/// Rasterized |R| over the (p, q) plane plus inscribed-ellipse metrics.
/// d_s is the p-extent of the widest origin-anchored axis-aligned ellipse
/// contained in {|R| <= 1} and a_s its q-semi-axis: the ellipse is
/// {p = -(d_s/2)(1 - cos t), q = a_s sin t}.
struct StabilityScan {
  Scheme scheme = Scheme::arkc;
  int s = 0;
  double eta = 0.0;
  double p_min = 0.0, p_max = 0.0;
  double q_min = 0.0, q_max = 0.0;
  int p_points = 0, q_points = 0;
  std::vector<double> modulus;  // row-major: modulus[iq * p_points + ip]
  double d_s = 0.0;
  double a_s = 0.0;
  bool degenerate = false;  // no stable p < 0 found

  double at(int iq, int ip) const { return modulus[static_cast<std::size_t>(iq) * p_points + ip]; }
};

/// Scan the stability region of the first-order (ad1) or second-order (arkc)
/// scheme. Requires at least a 100x100 grid.
StabilityScan scan_region(Scheme scheme, int s, double eta, const GridSpec& grid = {});

/// True iff |R2(p, c sqrt(-p))| stays within 1 + 1e-9 for 2000 samples of p
/// over the real-axis stability interval [-(1+w0)/w2, 0].
bool verify_table_entry(double curve_c, int s, double eta);

void write_scan_csv(const StabilityScan& scan, std::ostream& out);
void write_scan_metrics_json(const StabilityScan& scan, std::ostream& out);

namespace detail {

struct EllipseMetrics {
  double extent = 0.0;  // p-extent of the inscribed ellipse (= d_s)
  double height = 0.0;  // q-semi-axis (= a_s)
  bool degenerate = false;
};

/// Largest origin-anchored inscribed ellipse for a stability-modulus field.
/// probe_limit bounds the real-axis search, q_cap the height search.
EllipseMetrics inscribed_ellipse(const std::function<double(double, double)>& modulus,
                                 double probe_limit, double q_cap);

}  // namespace detail

}  // namespace arkc
