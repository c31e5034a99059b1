#include "arkc/stability.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>

#include <json.hpp>

#include "arkc/chebyshev.hpp"

namespace arkc {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

struct R1Evaluator {
  int s;
  double w0, w1, ts0, us0;

  R1Evaluator(int s_, double eta) : s(s_) {
    if (s < 1) throw std::invalid_argument("eval_R1: stage count must be >= 1");
    if (!(eta > 0.0)) throw std::invalid_argument("eval_R1: damping must be > 0");
    w0 = 1.0 + eta / (static_cast<double>(s) * s);
    const ChebEval t = cheb_first_kind(s, w0);
    ts0 = t.value;
    w1 = t.value / t.first_deriv;
    us0 = cheb_second_kind(s - 1, w0).value;
  }

  std::complex<double> value(double p, double q) const {
    const double x = w0 + w1 * p;
    const double A = cheb_first_kind(s, x).value / ts0;
    const double B = cheb_second_kind(s - 1, x).value / us0 * (1.0 + 0.5 * w1 * p);
    return {A, B * q};
  }
};

struct R2Evaluator {
  int s;
  double w0, w2, as, bs, us0;

  R2Evaluator(int s_, double eta) : s(s_) {
    if (s < 2) throw std::invalid_argument("eval_R2: stage count must be >= 2");
    if (!(eta > 0.0)) throw std::invalid_argument("eval_R2: damping must be > 0");
    w0 = 1.0 + eta / (static_cast<double>(s) * s);
    const ChebEval t = cheb_first_kind(s, w0);
    bs = t.second_deriv / (t.first_deriv * t.first_deriv);
    as = 1.0 - bs * t.value;
    w2 = t.first_deriv / t.second_deriv;
    us0 = cheb_second_kind(s - 1, w0).value;
  }

  std::complex<double> value(double p, double q) const {
    const double x = w0 + w2 * p;
    const double A2 = as + bs * cheb_first_kind(s, x).value;
    const double B2 = (0.5 * w2 + (1.0 - 0.5 * w2) * cheb_second_kind(s - 1, x).value / us0) *
                      (1.0 + 0.5 * w2 * p);
    return {A2 - 0.5 * B2 * q * q, B2 * q};
  }
};

}  // namespace

PolyEval eval_R1(double p, double q, int s, double eta) {
  const R1Evaluator r(s, eta);
  const std::complex<double> v = r.value(p, q);
  return {v, std::abs(v)};
}

PolyEval eval_R2(double p, double q, int s, double eta) {
  const R2Evaluator r(s, eta);
  const std::complex<double> v = r.value(p, q);
  return {v, std::abs(v)};
}

namespace detail {

EllipseMetrics inscribed_ellipse(const std::function<double(double, double)>& modulus,
                                 double probe_limit, double q_cap) {
  constexpr double kTol = 1e-9;
  constexpr int kProbe = 4000;

  // Real-axis extent: first |R(p,0)| > 1 crossing when walking left from 0.
  double lo = 0.0, hi = 0.0;
  bool violated = false;
  for (int i = 1; i <= kProbe; ++i) {
    const double p = probe_limit * i / kProbe;
    if (!(modulus(-p, 0.0) <= 1.0)) {
      hi = p;
      lo = probe_limit * (i - 1) / kProbe;
      violated = true;
      break;
    }
  }
  double ell = probe_limit;
  if (violated) {
    if (lo == 0.0) {
      // Nothing stable on the first probe; look for any stable point closer in.
      bool any_stable = false;
      for (int i = 1; i < 100; ++i) {
        const double p = hi * i / 100.0;
        if (modulus(-p, 0.0) <= 1.0) {
          any_stable = true;
          lo = p;
          break;
        }
      }
      if (!any_stable) return {0.0, 0.0, true};
    }
    for (int it = 0; it < 100 && (hi - lo) > 1e-13 * hi; ++it) {
      const double mid = 0.5 * (lo + hi);
      (modulus(-mid, 0.0) <= 1.0 ? lo : hi) = mid;
    }
    ell = lo;  // stable side of the crossing
  }
  if (!(ell > 0.0)) return {0.0, 0.0, true};

  // Ellipse {p = -(d/2)(1 - cos t), q = a sin t} containment test. The first
  // 1% of the interval next to the origin is the order sliver that the
  // real-axis stability statements also except; containment is not required
  // there.
  constexpr double kOriginSliver = 0.01;
  auto fits = [&](double d, double a) {
    constexpr int kArc = 1024;
    for (int k = 1; k < kArc; ++k) {
      const double th = kPi * k / kArc;
      const double pe = -0.5 * d * (1.0 - std::cos(th));
      if (pe > -kOriginSliver * ell) continue;
      const double qe = a * std::sin(th);
      if (!(modulus(pe, qe) <= 1.0 + kTol)) return false;
    }
    return true;
  };
  auto max_height = [&](double d) {
    if (!fits(d, 0.0)) return 0.0;
    double alo = 0.0, ahi = q_cap;
    if (fits(d, ahi)) return ahi;
    for (int it = 0; it < 60 && (ahi - alo) > 1e-10 * q_cap; ++it) {
      const double am = 0.5 * (alo + ahi);
      (fits(d, am) ? alo : ahi) = am;
    }
    return alo;
  };

  // The widest ellipse spans the whole real-axis interval; report its height.
  // A whisker-thin inset keeps the left tip off the exact |R| = 1 crossing.
  const double d_s = ell * (1.0 - 1e-7);
  const double a_s = max_height(d_s);
  return {ell, a_s, false};
}

}  // namespace detail

StabilityScan scan_region(Scheme scheme, int s, double eta, const GridSpec& grid) {
  if (scheme != Scheme::ad1 && scheme != Scheme::arkc)
    throw std::invalid_argument("scan_region: scheme must be ad1 or arkc");
  if (grid.p_points < 100 || grid.q_points < 100)
    throw std::invalid_argument("scan_region: grid resolution must be at least 100x100");

  const double s2 = static_cast<double>(s) * s;
  StabilityScan scan;
  scan.scheme = scheme;
  scan.s = s;
  scan.eta = eta;
  scan.p_min = grid.p_min != 0.0 ? grid.p_min : (scheme == Scheme::ad1 ? -2.1 * s2 : -0.7 * s2);
  scan.p_max = 0.0;
  scan.q_max = grid.q_max != 0.0 ? grid.q_max : static_cast<double>(s);
  scan.q_min = -scan.q_max;
  scan.p_points = grid.p_points;
  scan.q_points = grid.q_points;

  std::function<double(double, double)> modulus;
  if (scheme == Scheme::ad1) {
    R1Evaluator r(s, eta);
    modulus = [r](double p, double q) { return std::abs(r.value(p, q)); };
  } else {
    R2Evaluator r(s, eta);
    modulus = [r](double p, double q) { return std::abs(r.value(p, q)); };
  }

  scan.modulus.resize(static_cast<std::size_t>(scan.p_points) * scan.q_points);
  for (int iq = 0; iq < scan.q_points; ++iq) {
    const double q = scan.q_min + (scan.q_max - scan.q_min) * iq / (scan.q_points - 1);
    for (int ip = 0; ip < scan.p_points; ++ip) {
      const double p = scan.p_min + (scan.p_max - scan.p_min) * ip / (scan.p_points - 1);
      scan.modulus[static_cast<std::size_t>(iq) * scan.p_points + ip] = modulus(p, q);
    }
  }

  const double probe_limit = (scheme == Scheme::ad1 ? 2.2 : 0.75) * s2;
  const detail::EllipseMetrics m = detail::inscribed_ellipse(modulus, probe_limit, 3.0 * s);
  scan.d_s = m.extent;
  scan.a_s = m.height;
  scan.degenerate = m.degenerate;
  return scan;
}

bool verify_table_entry(double curve_c, int s, double eta) {
  const R2Evaluator r(s, eta);
  const double pmax = (1.0 + r.w0) / r.w2;
  constexpr int kSamples = 2000;
  for (int i = 1; i <= kSamples; ++i) {
    const double p = -pmax * i / kSamples;
    const double q = curve_c * std::sqrt(-p);
    if (!(std::abs(r.value(p, q)) <= 1.0 + 1e-9)) return false;
  }
  return true;
}

void write_scan_csv(const StabilityScan& scan, std::ostream& out) {
  out << "p,q,modulus\n";
  out.precision(12);
  for (int iq = 0; iq < scan.q_points; ++iq) {
    const double q = scan.q_min + (scan.q_max - scan.q_min) * iq / (scan.q_points - 1);
    for (int ip = 0; ip < scan.p_points; ++ip) {
      const double p = scan.p_min + (scan.p_max - scan.p_min) * ip / (scan.p_points - 1);
      out << p << ',' << q << ',' << scan.at(iq, ip) << '\n';
    }
  }
}

void write_scan_metrics_json(const StabilityScan& scan, std::ostream& out) {
  nlohmann::json j{
      {"scheme", scheme_name(scan.scheme)}, {"s", scan.s},       {"eta", scan.eta},
      {"d_s", scan.d_s},                    {"a_s", scan.a_s},   {"degenerate", scan.degenerate},
  };
  out << j.dump(2) << '\n';
}

}  // namespace arkc
