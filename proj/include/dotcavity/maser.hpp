#pragma once

// Semiclassical double-dot micro-maser: charge density matrix in the
// {|+>, |->} eigenbasis (slowly varying frame) driven by a coherent
// resonator field of real amplitude alpha.
//
// Units: g0, delta_omega and the dot parameters are ordinary frequencies
// (Hz) and enter the equations of motion as 2*pi*f. Pump, drain, decay,
// dephasing and photon-loss rates are inverse lifetimes (1/s). Growth
// rates come back in 1/s.

#include <complex>
#include <optional>
#include <vector>

#include "dotcavity/device_model.hpp"
#include "dotcavity/ode.hpp"

namespace dotcavity {

struct MaserConfig {
  double pump_source = 0.0;  // Gamma_L
  double pump_drain = 0.0;   // Gamma_R
  double relaxation = 0.0;   // gamma_r, |+> -> |-> inelastic
  double dephasing = 0.0;    // gamma_c
  double detuning = 0.0;     // delta_omega = Omega - omega0, Hz
  double photon_loss = 0.0;  // kappa, field amplitude decay
  DotParams dot;
  double g0 = 0.0;  // Hz

  // gamma_tot = (gamma_r + Gamma_R) / 2 + gamma_c
  double coherence_decay() const;
  // 2 pi g0 T / Omega, rad/s
  double mode_coupling() const;
  // G = g^2 gamma_tot / (gamma_tot^2 + (2 pi delta_omega)^2), 1/s
  double emission_rate() const;
  void validate() const;

  MaserConfig with_pump(double gamma) const;
};

struct ChargeDensityMatrix {
  double pp = 0.0;
  double mm = 0.0;
  std::complex<double> pm{0.0, 0.0};

  double occupation() const { return pp + mm; }
  double inversion() const { return pp - mm; }
  // Populations in [0, 1], occupation <= 1 and |rho+-|^2 <= rho++ rho--,
  // each to within `tol`.
  bool is_physical(double tol = 1e-9) const;
};

struct MaserState {
  ChargeDensityMatrix rho;
  double alpha = 0.0;
  double time = 0.0;
};

struct MaserDerivative {
  double d_pp;
  double d_mm;
  std::complex<double> d_pm;
  double d_alpha;
};

MaserDerivative eom_rhs(const MaserState& state, const MaserConfig& cfg);

// Fixed point of the density-matrix equations at fixed alpha, by direct
// 4x4 solve. Throws SolverError for a singular system.
ChargeDensityMatrix steady_state(const MaserConfig& cfg, double alpha);

// alpha'/alpha from the closed-form field equation (includes -kappa).
double field_growth_rate(const MaserConfig& cfg, double alpha);
// Same quantity assembled as G * inversion(steady_state(cfg, alpha)) - kappa.
double field_growth_rate_compositional(const MaserConfig& cfg, double alpha);

struct ThresholdOptions {
  double gamma_min = 1e3;
  double gamma_max = 1e12;
  int points_per_decade = 20;
  double rel_tol = 1e-6;
};

// Smallest Gamma = Gamma_L = Gamma_R with positive small-signal growth;
// std::nullopt when growth stays <= 0 over the whole search range.
std::optional<double> threshold_pump(const MaserConfig& cfg, const ThresholdOptions& opt = {});

struct PhotonNumber {
  double n_photons;  // alpha_ss^2
  double alpha_ss;
};

// Positive root of the field equation, 0 below threshold, +inf for a
// lossless cavity above threshold.
PhotonNumber steady_photon_number(const MaserConfig& cfg);

struct OutputPower {
  double watts;
  double photon_flux;  // 1/s
};

// P = kappa n h f.
OutputPower output_power(double n_photons, double kappa, double freq);

struct TimeEvolveOptions {
  double sample_interval = 0.0;  // 0 stores only the initial and final states
  double max_step = std::numeric_limits<double>::infinity();
  double rel_tol = 1e-8;
  double abs_tol = 1e-12;
  double invariant_tol = 1e-9;
};

// Integrates eom_rhs from `initial` for t_end seconds. Samples land on
// multiples of sample_interval plus the end point. The trace and positivity
// invariants are checked after every accepted step; a violation or a step
// size underflow throws SolverError naming the time.
std::vector<MaserState> time_evolve(const MaserState& initial, const MaserConfig& cfg,
                                    double t_end, const TimeEvolveOptions& opt = {});

}  // namespace dotcavity
