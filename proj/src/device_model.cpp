#include "dotcavity/device_model.hpp"

#include <cmath>
#include <string>

#include "dotcavity/constants.hpp"
#include "dotcavity/error.hpp"

namespace dotcavity {

namespace {

void require(bool condition, const char* message) {
  if (!condition) throw InvalidInput(message);
}

}  // namespace

double DotParams::splitting() const { return std::hypot(2.0 * tunnel, detuning); }

void DotParams::validate() const {
  require(std::isfinite(tunnel) && std::isfinite(detuning), "dot parameters must be finite");
  require(tunnel >= 0.0, "tunnel coupling must be non-negative");
}

Eigenbasis eigenbasis(const DotParams& dot) {
  dot.validate();
  const double omega = dot.splitting();
  if (omega == 0.0) throw InvalidInput("zero splitting: mixing angle undefined");
  // sin^2 = (Omega - Delta) / 2 Omega and cos^2 = (Omega + Delta) / 2 Omega
  // follow from tan(phi) = -2T / (Omega + Delta); sin(phi) carries the sign.
  const double sin_phi = -std::sqrt(std::max(0.0, (omega - dot.detuning) / (2.0 * omega)));
  const double cos_phi = std::sqrt(std::max(0.0, (omega + dot.detuning) / (2.0 * omega)));
  const double norm = std::hypot(sin_phi, cos_phi);
  return {omega, std::atan2(sin_phi, cos_phi), sin_phi / norm, cos_phi / norm};
}

LeadWeights lead_weights(const DotParams& dot) {
  dot.validate();
  const double omega = dot.splitting();
  if (omega == 0.0) throw InvalidInput("zero splitting: lead weights undefined");
  return {(omega + dot.detuning) / (2.0 * omega), (omega - dot.detuning) / (2.0 * omega)};
}

double ResonatorSpec::mode_frequency(int n) const {
  require(n >= 0, "mode index must be non-negative");
  return (n + 1) / (2.0 * length * cap_per_length * impedance);
}

void ResonatorSpec::validate() const {
  require(length > 0.0, "resonator length must be positive");
  require(cap_per_length > 0.0, "capacitance per length must be positive");
  require(impedance > 0.0, "impedance must be positive");
  require(quality > 1.0, "quality factor must exceed 1");
  require(photon_loss > 0.0, "photon loss rate must be positive");
}

ResonatorSpec ResonatorSpec::with_fundamental(double fundamental, double impedance,
                                              double cap_per_length, double quality) {
  require(fundamental > 0.0, "fundamental frequency must be positive");
  ResonatorSpec res;
  res.impedance = impedance;
  res.cap_per_length = cap_per_length;
  res.length = 1.0 / (2.0 * fundamental * cap_per_length * impedance);
  res.quality = quality;
  res.photon_loss = kTwoPi * fundamental / quality;
  return res;
}

double CouplingSpec::lever_arm() const { return cap_coupling / (cap_coupling + cap_dot); }

void CouplingSpec::validate() const {
  require(cap_coupling > 0.0 && cap_dot > 0.0, "capacitances must be positive");
}

CouplingSpec CouplingSpec::from_lever_arm(double lever, double total_capacitance) {
  require(lever > 0.0 && lever < 1.0, "lever arm must lie in (0, 1)");
  return {lever * total_capacitance, (1.0 - lever) * total_capacitance};
}

double coupling_g0(double mode_freq, double lever_arm, double impedance) {
  require(mode_freq > 0.0, "mode frequency must be positive");
  require(impedance > 0.0, "impedance must be positive");
  require(lever_arm >= 0.0 && lever_arm < 1.0, "lever arm must lie in [0, 1)");
  return mode_freq * lever_arm * std::sqrt(2.0 * impedance / kResistanceQuantum);
}

double coupling_g0(const ResonatorSpec& res, const CouplingSpec& cpl, double mode_freq) {
  cpl.validate();
  return coupling_g0(mode_freq, cpl.lever_arm(), res.impedance);
}

ModeCouplings mode_couplings(const DotParams& dot, double g0, double mode_freq,
                             double fundamental) {
  dot.validate();
  const double omega = dot.splitting();
  if (omega == 0.0) throw InvalidInput("zero splitting: couplings undefined");
  require(fundamental > 0.0, "fundamental frequency must be positive");
  require(mode_freq >= 0.0, "mode frequency must be non-negative");
  const double scale = g0 * std::sqrt(mode_freq / fundamental) / omega;
  return {scale * dot.tunnel, scale * dot.detuning / 2.0};
}

double static_coupling_ratio(double lever_arm, double impedance) {
  if (lever_arm == 0.0) throw InvalidInput("zero lever arm: static coupling ratio diverges");
  require(impedance > 0.0, "impedance must be positive");
  return std::sqrt(kResistanceQuantum / (2.0 * impedance)) / lever_arm;
}

double static_coupling_ratio(const CouplingSpec& cpl, const ResonatorSpec& res) {
  return static_coupling_ratio(cpl.lever_arm(), res.impedance);
}

double voltage_rms(double total_capacitance, double mode_freq) {
  require(total_capacitance > 0.0, "resonator capacitance must be positive");
  require(mode_freq >= 0.0, "mode frequency must be non-negative");
  return std::sqrt(kPlanck * mode_freq / total_capacitance);
}

double voltage_rms(const ResonatorSpec& res, double mode_freq) {
  return voltage_rms(res.total_capacitance(), mode_freq);
}

}  // namespace dotcavity
