#pragma once

// Far-detuned Raman transfer between a spin state and a resonator photon
// through a virtually occupied charge state.
//
// All inputs are the bare numbers of the worked example: frequencies in Hz,
// rates in 1/s, combined without factors of 2 pi (tau = pi / (2 chi)).

#include <array>

#include "dotcavity/device_model.hpp"

namespace dotcavity {

struct RamanConfig {
  DotParams dot;
  double g0 = 0.0;                // Hz
  double esr_beta = 0.0;          // local ESR Rabi amplitude, Hz
  double spin_split_delta = 0.0;  // Zeeman splitting, Hz
  double esr_freq_nu = 0.0;       // ESR drive frequency, Hz
  double detuning_eps = 0.0;      // Omega - delta - nu, Hz
  double gamma_c = 0.0;           // charge dephasing, 1/s
  double gamma_s = 0.0;           // spin dephasing, 1/s
  double kappa = 0.0;             // photon loss, 1/s
  double gamma_d = 0.0;           // metastable decoherence, 1/s

  // Checks rates >= 0, eps != 0, the two-photon resonance
  // Omega - delta - nu = eps and gamma_D <= max(gamma_s, kappa).
  void validate() const;

  // Fills in nu from the resonance condition and validates.
  static RamanConfig matched(const DotParams& dot, double g0, double beta, double delta,
                             double eps, double gamma_c, double gamma_s, double kappa,
                             double gamma_d);
};

// delta = 6.2 GHz/T * B_z.
double gaas_spin_splitting(double field_tesla);

struct EffectiveCoupling {
  double chi;            // (T/Omega)^2 g0 beta / eps
  double transfer_time;  // pi / (2 chi); +inf when chi = 0
};

EffectiveCoupling effective_coupling(const RamanConfig& cfg);

// (T/Omega)^2 (beta^2 + g0^2) gamma_c / (2 eps^2).
double effective_dephasing(const RamanConfig& cfg);

// (T/Omega) sqrt(gamma_c (beta^2 + g0^2) / (2 gamma_D)); throws InvalidInput
// when gamma_D = 0.
double optimal_detuning(const RamanConfig& cfg);

// at_optimum: closed-form minimum over eps,
//   sqrt(gamma_c gamma_D) (pi Omega / (g0 T)) sqrt((beta^2 + g0^2) / (2 beta^2)).
// Otherwise tau (gamma_eff + gamma_D) at the configured eps.
double transfer_error(const RamanConfig& cfg, bool at_optimum);

// tau (gamma_eff + gamma_D) with eps replaced by `eps` (nu kept matched).
double transfer_error_at(const RamanConfig& cfg, double eps);

struct RwaCheck {
  bool ok;
  // beta / |nu - delta|, beta / |Omega + delta - nu|, chi / delta
  std::array<double, 3> margins;
};

// ok when every margin is below 0.1. Never throws.
RwaCheck validate_rwa(const RamanConfig& cfg);

}  // namespace dotcavity
