#include "dotcavity/raman.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "dotcavity/constants.hpp"
#include "dotcavity/error.hpp"

namespace dotcavity {

namespace {

void require(bool condition, const char* message) {
  if (!condition) throw InvalidInput(message);
}

double mixing_ratio(const DotParams& dot) {
  const double omega = dot.splitting();
  if (omega == 0.0) throw InvalidInput("zero splitting");
  return dot.tunnel / omega;
}

}  // namespace

void RamanConfig::validate() const {
  dot.validate();
  const double omega = dot.splitting();
  require(omega > 0.0, "zero splitting");
  for (double v : {g0, esr_beta, spin_split_delta, esr_freq_nu, detuning_eps}) {
    require(std::isfinite(v), "Raman frequencies must be finite");
  }
  for (double r : {gamma_c, gamma_s, kappa, gamma_d}) {
    require(std::isfinite(r) && r >= 0.0, "Raman rates must be finite and non-negative");
  }
  require(detuning_eps != 0.0, "eps = 0: the dispersive model needs a nonzero detuning");
  const double mismatch = omega - spin_split_delta - esr_freq_nu - detuning_eps;
  require(std::abs(mismatch) <= 1e-9 * omega,
          "two-photon resonance violated: Omega - delta - nu must equal eps");
  require(gamma_d <= std::max(gamma_s, kappa) * (1.0 + 1e-12),
          "gamma_D must not exceed max(gamma_s, kappa)");
}

RamanConfig RamanConfig::matched(const DotParams& dot, double g0, double beta, double delta,
                                 double eps, double gamma_c, double gamma_s, double kappa,
                                 double gamma_d) {
  RamanConfig cfg;
  cfg.dot = dot;
  cfg.g0 = g0;
  cfg.esr_beta = beta;
  cfg.spin_split_delta = delta;
  cfg.detuning_eps = eps;
  cfg.esr_freq_nu = dot.splitting() - delta - eps;
  cfg.gamma_c = gamma_c;
  cfg.gamma_s = gamma_s;
  cfg.kappa = kappa;
  cfg.gamma_d = gamma_d;
  cfg.validate();
  return cfg;
}

double gaas_spin_splitting(double field_tesla) {
  return kGaAsSpinSplittingPerTesla * field_tesla;
}

EffectiveCoupling effective_coupling(const RamanConfig& cfg) {
  const double r = mixing_ratio(cfg.dot);
  require(cfg.detuning_eps != 0.0, "eps = 0: the dispersive model needs a nonzero detuning");
  const double chi = r * r * cfg.g0 * cfg.esr_beta / cfg.detuning_eps;
  const double tau = chi == 0.0 ? std::numeric_limits<double>::infinity()
                                : kPi / (2.0 * std::abs(chi));
  return {chi, tau};
}

double effective_dephasing(const RamanConfig& cfg) {
  const double r = mixing_ratio(cfg.dot);
  require(cfg.detuning_eps != 0.0, "eps = 0: the dispersive model needs a nonzero detuning");
  const double eps = cfg.detuning_eps;
  return r * r * (cfg.esr_beta * cfg.esr_beta + cfg.g0 * cfg.g0) * cfg.gamma_c / (2.0 * eps * eps);
}

double optimal_detuning(const RamanConfig& cfg) {
  const double r = mixing_ratio(cfg.dot);
  if (cfg.gamma_d <= 0.0) throw InvalidInput("gamma_D = 0: optimum diverges");
  require(cfg.gamma_c > 0.0, "gamma_c must be positive for a finite optimum");
  const double b2 = cfg.esr_beta * cfg.esr_beta + cfg.g0 * cfg.g0;
  return r * std::sqrt(cfg.gamma_c * b2 / (2.0 * cfg.gamma_d));
}

double transfer_error_at(const RamanConfig& cfg, double eps) {
  RamanConfig shifted = cfg;
  shifted.detuning_eps = eps;
  shifted.esr_freq_nu = cfg.dot.splitting() - cfg.spin_split_delta - eps;
  const EffectiveCoupling c = effective_coupling(shifted);
  if (c.chi == 0.0) throw InvalidInput("chi = 0: no transfer");
  return c.transfer_time * (effective_dephasing(shifted) + shifted.gamma_d);
}

double transfer_error(const RamanConfig& cfg, bool at_optimum) {
  if (!at_optimum) return transfer_error_at(cfg, cfg.detuning_eps);
  const double omega = cfg.dot.splitting();
  require(omega > 0.0, "zero splitting");
  if (cfg.g0 == 0.0 || cfg.esr_beta == 0.0 || cfg.dot.tunnel == 0.0) {
    throw InvalidInput("chi = 0: no transfer");
  }
  const double b2 = cfg.esr_beta * cfg.esr_beta + cfg.g0 * cfg.g0;
  return std::sqrt(cfg.gamma_c * cfg.gamma_d) * (kPi * omega / (cfg.g0 * cfg.dot.tunnel)) *
         std::sqrt(b2 / (2.0 * cfg.esr_beta * cfg.esr_beta));
}

RwaCheck validate_rwa(const RamanConfig& cfg) {
  const double inf = std::numeric_limits<double>::infinity();
  const auto ratio = [inf](double num, double den) {
    num = std::abs(num);
    den = std::abs(den);
    if (den == 0.0) return num == 0.0 ? 0.0 : inf;
    return num / den;
  };
  const double omega = cfg.dot.splitting();
  double chi = inf;
  if (omega > 0.0 && cfg.detuning_eps != 0.0) {
    const double r = cfg.dot.tunnel / omega;
    chi = r * r * cfg.g0 * cfg.esr_beta / cfg.detuning_eps;
  }
  RwaCheck out{};
  out.margins = {ratio(cfg.esr_beta, cfg.esr_freq_nu - cfg.spin_split_delta),
                 ratio(cfg.esr_beta, omega + cfg.spin_split_delta - cfg.esr_freq_nu),
                 ratio(chi, cfg.spin_split_delta)};
  out.ok = std::all_of(out.margins.begin(), out.margins.end(),
                       [](double m) { return std::isfinite(m) && m < 0.1; });
  return out;
}

}  // namespace dotcavity
