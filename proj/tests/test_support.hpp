#pragma once

// Shared fixtures: the reference configurations the Python oracles in
// tests/oracles were run with.

#include <cmath>

#include "dotcavity/maser.hpp"

namespace dotcavity::testing {

// T = 1 Hz, Delta = 2 Hz keeps Delta/T = 2 with the oracle's raw numbers.
inline MaserConfig oracle_maser(double gamma, double g0, double kappa, double gamma_r = 1e8,
                                double gamma_c = 1e9) {
  MaserConfig cfg;
  cfg.pump_source = gamma;
  cfg.pump_drain = gamma;
  cfg.relaxation = gamma_r;
  cfg.dephasing = gamma_c;
  cfg.photon_loss = kappa;
  cfg.dot = {1.0, 2.0};
  cfg.g0 = g0;
  return cfg;
}

// Reference maser rates at physical dot scale (Omega = 30 GHz, Delta/T = 2).
inline MaserConfig fig3_maser(double gamma, double g0, double kappa) {
  MaserConfig cfg = oracle_maser(gamma, g0, kappa);
  const double omega = 30e9;
  cfg.dot = {omega / std::sqrt(8.0), 2.0 * omega / std::sqrt(8.0)};
  return cfg;
}

// The Lindblad oracle quotes the mode coupling g = g0 T / Omega directly.
inline MaserConfig lindblad_oracle_maser(double g, double kappa, double gamma) {
  return oracle_maser(gamma, g * std::sqrt(8.0), kappa, 1e6, 10e6);
}

inline double rel_diff(double a, double b) {
  return std::abs(a - b) / std::max(std::abs(a), std::abs(b));
}

}  // namespace dotcavity::testing
