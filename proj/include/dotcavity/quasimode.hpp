#pragma once

// Low-frequency dephasing of a slowly pulsed coupling, for a bare line and
// for a line filtered by the resonator quasimode (Lorentzian of half width
// omega0/Q).
//
// Conventions: f(t) = int e^{i w t} f~(w) dw, so f~(w) = (1/2pi) int f(t)
// e^{-i w t} dt, with w angular. QuasimodeSpec::omega0 is an ordinary
// frequency in Hz; integrals run over angular frequency. The common
// prefactor of the two integrals is set to 1.

#include <complex>
#include <vector>

namespace dotcavity {

class PulseEnvelope {
 public:
  enum class Kind { gaussian, raised_cosine, tabulated };

  // exp(-(t - center)^2 / 2 sigma^2) cos(2 pi carrier (t - center)).
  static PulseEnvelope gaussian(double sigma, double carrier = 0.0, double center = 0.0);
  // (1 + cos(pi (t - center) / half_width)) / 2 on |t - center| <= half_width,
  // times the same carrier factor.
  static PulseEnvelope raised_cosine(double half_width, double carrier = 0.0,
                                     double center = 0.0);
  // Piecewise-linear f through (t_i, f_i); times strictly increasing, first
  // and last value zero.
  static PulseEnvelope tabulated(std::vector<double> times, std::vector<double> values);

  Kind kind() const { return kind_; }
  double value(double t) const;
  // f~(w), w angular.
  std::complex<double> transform(double omega) const;
  // Angular carrier frequency (0 for tabulated envelopes).
  double carrier() const { return carrier_; }
  // Spectral width in rad/s: 1/sigma (gaussian), pi/half_width (raised
  // cosine), sqrt(int f'^2 / int f^2) (tabulated).
  double bandwidth() const;
  // Spacing of the lobes of |f~|^2 in rad/s: 1/sigma, pi/half_width, 2 pi/span.
  double spectral_resolution() const;
  // Upper bound on int_omega^inf |f~(w)|^2 dw; +inf when omega is too close
  // to the carrier for the bound to hold.
  double spectral_tail(double omega) const;

 private:
  Kind kind_ = Kind::gaussian;
  double width_ = 0.0;
  double carrier_ = 0.0;
  double center_ = 0.0;
  std::vector<double> times_;
  std::vector<double> values_;
};

struct QuasimodeSpec {
  double omega0 = 0.0;   // Hz
  double quality = 0.0;  // Q > 1

  void validate() const;
};

// F(w) = Q w0^2 / (Q^2 (w - w0)^2 + w0^2); w in the same units as omega0.
double quasimode_spectrum(const QuasimodeSpec& spec, double omega);

struct QuadratureOptions {
  double rel_tol = 1e-8;
  // Multiply the filtered integrand by w/w0 (the amplitude factor of the
  // quasimode weights). Off by default.
  bool amplitude_weighting = false;
};

struct DephasingIntegrals {
  double kappa_a;  // int_0^inf |g0 f~|^2 dw
  double kappa_b;  // int_0^inf F |g0 f~|^2 dw
  double error_a;
  double error_b;
  long panels;
};

// Adaptive Gauss-Kronrod, marching outward from w = 0 in pieces no wider
// than the envelope's spectral resolution and split at the carrier +- 3
// bandwidths and at w0 (1 +- 5^j / Q). The march stops once
// the analytic tail bound is below rel_tol / 1000 of both integrals; the
// bound is added to the error. Throws SolverError when the quadrature does
// not converge or more than 1e-6 of either integral lies beyond carrier +
// 100 bandwidths (envelope transform decays too slowly).
DephasingIntegrals dephasing_integrals(const PulseEnvelope& env, const QuasimodeSpec& spec,
                                       double g0, const QuadratureOptions& opt = {});

// kappa_b / kappa_a.
double suppression_ratio(const PulseEnvelope& env, const QuasimodeSpec& spec,
                         const QuadratureOptions& opt = {});

}  // namespace dotcavity
