#pragma once

// Randomized property suites. Each returns a report instead of asserting so
// that both the gtest wrapper and the acceptance runner can use them.

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <string>

#include "dotcavity/constants.hpp"
#include "dotcavity/device_model.hpp"
#include "dotcavity/error.hpp"
#include "dotcavity/maser.hpp"
#include "dotcavity/quasimode.hpp"
#include "dotcavity/raman.hpp"

namespace dotcavity::testing {

struct PropertyReport {
  std::string name;
  int cases = 0;
  int failures = 0;
  double worst = 0.0;  // largest normalised violation seen
  std::string first_failure;

  bool passed() const { return cases > 0 && failures == 0; }
  std::string summary() const {
    std::ostringstream s;
    s << name << ": " << cases - failures << "/" << cases << " ok, worst " << worst;
    if (!first_failure.empty()) s << " (" << first_failure << ")";
    return s.str();
  }
  void record(double violation, double limit, const std::string& what) {
    worst = std::max(worst, violation);
    if (!(violation <= limit)) {
      ++failures;
      if (first_failure.empty()) first_failure = what;
    }
  }
};

class Sampler {
 public:
  explicit Sampler(unsigned long seed) : rng_(seed) {}
  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  double log_uniform(double lo, double hi) {
    return std::pow(10.0, uniform(std::log10(lo), std::log10(hi)));
  }
  bool coin() { return uniform(0.0, 1.0) < 0.5; }

  MaserConfig maser() {
    MaserConfig cfg;
    const double omega = log_uniform(1e9, 1e11);
    const double ratio = uniform(-4.0, 4.0);  // Delta / T
    const double t = omega / std::sqrt(4.0 + ratio * ratio);
    cfg.dot = {t, ratio * t};
    cfg.g0 = log_uniform(1e6, 1e9);
    cfg.pump_source = log_uniform(1e6, 1e12);
    cfg.pump_drain = coin() ? cfg.pump_source : log_uniform(1e6, 1e12);
    cfg.relaxation = log_uniform(1e5, 1e10);
    cfg.dephasing = 0.5 * cfg.relaxation + log_uniform(1e6, 1e11);
    cfg.detuning = coin() ? 0.0 : uniform(-1e9, 1e9);
    cfg.photon_loss = log_uniform(1e3, 1e8);
    return cfg;
  }

  RamanConfig raman() {
    const double omega = log_uniform(5e9, 1e11);
    const double ratio = uniform(-2.0, 2.0);
    const double t = omega / std::sqrt(4.0 + ratio * ratio);
    const double gamma_s = log_uniform(1e4, 1e7);
    const double kappa = log_uniform(1e4, 1e7);
    const double gamma_d = std::max(gamma_s, kappa) * uniform(0.01, 1.0);
    return RamanConfig::matched({t, ratio * t}, log_uniform(1e7, 2e9), log_uniform(1e7, 2e9),
                                log_uniform(1e8, 5e9), log_uniform(1e8, 3e10),
                                log_uniform(1e7, 1e10), gamma_s, kappa, gamma_d);
  }

 private:
  std::mt19937_64 rng_;
};

inline MaserConfig scaled(MaserConfig c, double s) {
  c.dot.tunnel *= s;
  c.dot.detuning *= s;
  c.g0 *= s;
  c.pump_source *= s;
  c.pump_drain *= s;
  c.relaxation *= s;
  c.dephasing *= s;
  c.detuning *= s;
  c.photon_loss *= s;
  return c;
}

inline RamanConfig scaled(RamanConfig c, double s) {
  c.dot.tunnel *= s;
  c.dot.detuning *= s;
  c.g0 *= s;
  c.esr_beta *= s;
  c.spin_split_delta *= s;
  c.esr_freq_nu *= s;
  c.detuning_eps *= s;
  c.gamma_c *= s;
  c.gamma_s *= s;
  c.kappa *= s;
  c.gamma_d *= s;
  return c;
}

// The 2x2 transform built from the eigenbasis amplitudes is orthogonal and
// diagonalises the dot Hamiltonian with eigenvalues +-Omega/2.
inline PropertyReport eigenbasis_orthonormality(int cases, unsigned long seed = 1) {
  PropertyReport r{"eigenbasis orthonormality"};
  Sampler s(seed);
  for (int i = 0; i < cases; ++i, ++r.cases) {
    const double scale = s.log_uniform(1e-3, 1e12);
    const DotParams dot{scale * s.uniform(0.0, 1.0), scale * s.uniform(-1.0, 1.0)};
    const Eigenbasis e = eigenbasis(dot);
    const double a = e.amp_plus_left, b = e.amp_plus_right;
    // |+> = (a, b), |-> = (b, -a) in the (L, R) basis.
    const double norm_err = std::max(std::abs(a * a + b * b - 1.0), 0.0);
    const double h11 = 0.5 * dot.detuning, h12 = dot.tunnel, h22 = -0.5 * dot.detuning;
    const double e_plus = a * a * h11 + 2 * a * b * h12 + b * b * h22;
    const double e_minus = b * b * h11 - 2 * a * b * h12 + a * a * h22;
    const double offdiag = a * b * h11 + (b * b - a * a) * h12 - a * b * h22;
    const double spectrum_err =
        (std::abs(std::abs(e_plus - e_minus) - e.splitting) + std::abs(offdiag)) / e.splitting;
    std::ostringstream what;
    what << "T=" << dot.tunnel << " Delta=" << dot.detuning;
    r.record(std::max(norm_err, spectrum_err), 1e-14, what.str());
    // Omega grows with |T| and |Delta|.
    const DotParams bigger{dot.tunnel * 1.01 + 1e-30, dot.detuning * 1.01};
    r.record(bigger.splitting() > dot.splitting() ? 0.0 : 1.0, 0.0, "Omega not monotone");
  }
  return r;
}

// Closed-form growth rate against G * inversion(steady_state) - kappa.
inline PropertyReport growth_identity(int cases, unsigned long seed = 2) {
  PropertyReport r{"closed-form vs compositional growth"};
  Sampler s(seed);
  for (int i = 0; i < cases; ++i, ++r.cases) {
    const MaserConfig cfg = s.maser();
    const double alpha = s.coin() ? 0.0 : s.log_uniform(1e-3, 1e4);
    const double a = field_growth_rate(cfg, alpha);
    const double b = field_growth_rate_compositional(cfg, alpha);
    const double scale = cfg.emission_rate() + cfg.photon_loss;
    std::ostringstream what;
    what << "closed " << a << " vs compositional " << b;
    r.record(std::abs(a - b) / scale, 1e-9, what.str());
  }
  return r;
}

// Scaling every rate and frequency by a common factor (2 pi included) keeps
// the sign of the small-signal growth and the steady photon number.
inline PropertyReport threshold_homogeneity(int cases, unsigned long seed = 3) {
  PropertyReport r{"threshold condition homogeneity"};
  Sampler s(seed);
  for (int i = 0; i < cases; ++i, ++r.cases) {
    const MaserConfig cfg = s.maser();
    const double factor = s.coin() ? kTwoPi : s.log_uniform(1e-3, 1e3);
    const MaserConfig big = scaled(cfg, factor);
    const double g1 = field_growth_rate(cfg, 0.0);
    const double g2 = field_growth_rate(big, 0.0);
    const double n1 = steady_photon_number(cfg).n_photons;
    const double n2 = steady_photon_number(big).n_photons;
    double violation = 0.0;
    // Growth itself is homogeneous of degree one.
    violation = std::max(violation, std::abs(g2 - factor * g1) /
                                        (factor * (cfg.emission_rate() + cfg.photon_loss)));
    if ((g1 > 0.0) != (g2 > 0.0) && std::abs(g1) > 1e-9 * cfg.photon_loss) violation = 1.0;
    violation = std::max(violation, std::abs(n1 - n2) / std::max(1.0, n1));
    // Gain at alpha = 0 requires Delta Gamma_R > gamma_r Omega.
    if (g1 > -cfg.photon_loss &&
        !(cfg.dot.detuning * cfg.pump_drain > cfg.relaxation * cfg.dot.splitting())) {
      violation = 1.0;
    }
    std::ostringstream what;
    what << "factor " << factor << ": growth " << g1 << " -> " << g2 << ", n " << n1 << " -> "
         << n2;
    r.record(violation, 1e-9, what.str());
  }
  return r;
}

// p_error is homogeneous of degree zero; the closed form matches the
// general expression at the optimum; chi and gamma_eff fall with eps.
inline PropertyReport transfer_error_homogeneity(int cases, unsigned long seed = 4) {
  PropertyReport r{"p_error homogeneity"};
  Sampler s(seed);
  for (int i = 0; i < cases; ++i, ++r.cases) {
    const RamanConfig cfg = s.raman();
    const double factor = s.coin() ? kTwoPi : s.log_uniform(1e-3, 1e3);
    const RamanConfig big = scaled(cfg, factor);
    const double p1 = transfer_error(cfg, false);
    const double p2 = transfer_error(big, false);
    const double c1 = transfer_error(cfg, true);
    const double c2 = transfer_error(big, true);
    double violation = std::max(std::abs(p1 - p2) / p1, std::abs(c1 - c2) / c1);
    RamanConfig far = cfg;
    far.detuning_eps *= 2.0;
    far.esr_freq_nu = far.dot.splitting() - far.spin_split_delta - far.detuning_eps;
    if (!(std::abs(effective_coupling(far).chi) < std::abs(effective_coupling(cfg).chi)) ||
        !(effective_dephasing(far) < effective_dephasing(cfg))) {
      violation = 1.0;
    }
    std::ostringstream what;
    what << "factor " << factor << ": p " << p1 << " -> " << p2 << ", closed " << c1 << " -> "
         << c2;
    r.record(violation, 1e-9, what.str());
    const double at_opt = transfer_error_at(cfg, optimal_detuning(cfg));
    r.record(std::abs(at_opt - c1) / c1, 1e-2, "closed form vs tau (gamma_eff + gamma_D)");
  }
  return r;
}

// Halving the quadrature tolerance moves each integral by less than the
// error estimates.
inline PropertyReport quadrature_convergence(int cases, unsigned long seed = 5) {
  PropertyReport r{"quadrature convergence"};
  Sampler s(seed);
  for (int i = 0; i < cases; ++i, ++r.cases) {
    const double omega0 = s.log_uniform(1e9, 1e11);
    const QuasimodeSpec spec{omega0, s.log_uniform(10.0, 1e5)};
    const double w0 = kTwoPi * omega0;
    const double width = s.log_uniform(1.0, 1e5) / w0;
    const double carrier = s.coin() ? 0.0 : s.uniform(0.0, 2.0) * omega0;
    const PulseEnvelope env = s.coin() ? PulseEnvelope::gaussian(width, carrier)
                                       : PulseEnvelope::raised_cosine(3.0 * width, carrier);
    QuadratureOptions loose;
    loose.rel_tol = s.log_uniform(1e-9, 1e-6);
    QuadratureOptions tight = loose;
    tight.rel_tol = 0.5 * loose.rel_tol;
    std::ostringstream what;
    what << "omega0=" << omega0 << " Q=" << spec.quality << " width=" << width
         << " carrier=" << carrier << " tol=" << loose.rel_tol;
    try {
      const DephasingIntegrals a = dephasing_integrals(env, spec, 1.0, loose);
      const DephasingIntegrals b = dephasing_integrals(env, spec, 1.0, tight);
      const double floor = 1e-14;
      const double va = std::abs(a.kappa_a - b.kappa_a) /
                        (a.error_a + b.error_a + floor * a.kappa_a);
      const double vb = std::abs(a.kappa_b - b.kappa_b) /
                        (a.error_b + b.error_b + floor * a.kappa_b);
      r.record(std::max(va, vb), 1.0, what.str());
    } catch (const Error& e) {
      r.record(1e300, 1.0, what.str() + ": " + e.what());
    }
  }
  return r;
}

}  // namespace dotcavity::testing
