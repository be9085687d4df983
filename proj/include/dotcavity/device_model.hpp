#pragma once

// Double dot + transmission-line resonator parameters and the coupling
// constants derived from them. Every frequency here is an ordinary
// frequency in Hz.

namespace dotcavity {

struct DotParams {
  double tunnel = 0.0;    // T
  double detuning = 0.0;  // Delta; > 0 means the left dot sits higher

  // Omega = sqrt(4 T^2 + Delta^2).
  double splitting() const;
  void validate() const;
};

struct Eigenbasis {
  double splitting;       // Omega
  double mixing_angle;    // phi with tan(phi) = -2T / (Omega + Delta)
  double amp_plus_left;   // <L|+> = sin(phi)
  double amp_plus_right;  // <R|+> = cos(phi)
};

// Throws InvalidInput("zero splitting") when T = Delta = 0.
Eigenbasis eigenbasis(const DotParams& dot);

// Eigenstate weights entering the lead pump and drain terms of the rate
// equations: electrons enter |+> from the source with weight upper and |->
// with weight lower; the drain sees |+> with weight lower, |-> with upper.
struct LeadWeights {
  double upper;  // (Omega + Delta) / (2 Omega)
  double lower;  // (Omega - Delta) / (2 Omega)
};
LeadWeights lead_weights(const DotParams& dot);

struct ResonatorSpec {
  double length = 0.0;          // l, m
  double cap_per_length = 0.0;  // C0, F/m
  double impedance = 0.0;       // Z0, ohm
  double quality = 0.0;         // Q
  double photon_loss = 0.0;     // kappa, 1/s

  // f_n = (n + 1) / (2 l C0 Z0), i.e. omega_n = k_n / (C0 Z0) over 2 pi.
  double mode_frequency(int n) const;
  double total_capacitance() const { return length * cap_per_length; }
  void validate() const;

  // A resonator whose fundamental sits at `fundamental` Hz for the given
  // impedance and capacitance per length.
  static ResonatorSpec with_fundamental(double fundamental, double impedance,
                                        double cap_per_length, double quality);
};

struct CouplingSpec {
  double cap_coupling = 0.0;  // C_c, F
  double cap_dot = 0.0;       // C_d, F

  // upsilon = C_c / (C_c + C_d)
  double lever_arm() const;
  void validate() const;

  static CouplingSpec from_lever_arm(double lever, double total_capacitance = 1e-15);
};

// g0 = omega0 * upsilon * sqrt(2 Z0 / R_Q), same units as omega0.
double coupling_g0(double mode_freq, double lever_arm, double impedance);
double coupling_g0(const ResonatorSpec& res, const CouplingSpec& cpl, double mode_freq);

struct ModeCouplings {
  double transverse;    // g_x
  double longitudinal;  // g_z
};

// g_x = g0 (T/Omega) sqrt(f_n/f_0), g_z = g0 (Delta/2 Omega) sqrt(f_n/f_0).
ModeCouplings mode_couplings(const DotParams& dot, double g0, double mode_freq,
                             double fundamental);

// hbar g0 / Delta E = sqrt(R_Q / (2 Z0)) / upsilon.
double static_coupling_ratio(const CouplingSpec& cpl, const ResonatorSpec& res);
double static_coupling_ratio(double lever_arm, double impedance);

// Zero-point voltage sqrt(h f / (l C0)) at the resonator end.
double voltage_rms(const ResonatorSpec& res, double mode_freq);
double voltage_rms(double total_capacitance, double mode_freq);

}  // namespace dotcavity
