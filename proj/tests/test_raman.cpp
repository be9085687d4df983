#include <gtest/gtest.h>

#include <cmath>

#include "dotcavity/constants.hpp"
#include "dotcavity/error.hpp"
#include "dotcavity/raman.hpp"

using namespace dotcavity;

namespace {

RamanConfig worked_example(double eps = 15e9) {
  return RamanConfig::matched({25e9, 0.0}, 870e6, 1e9, 0.5e9, eps, 1e9, 1e6, 1e6, 1e6);
}

}  // namespace

TEST(RamanConfig, ResonanceEnforced) {
  RamanConfig cfg = worked_example();
  EXPECT_NEAR(cfg.esr_freq_nu, 50e9 - 0.5e9 - 15e9, 1.0);
  cfg.esr_freq_nu += 1e6;
  EXPECT_THROW(cfg.validate(), InvalidInput);
}

TEST(RamanConfig, RejectsBadInputs) {
  EXPECT_THROW(worked_example(0.0), InvalidInput);
  EXPECT_THROW(RamanConfig::matched({25e9, 0.0}, 870e6, 1e9, 0.5e9, 15e9, 1e9, 1e6, 1e6, 2e6),
               InvalidInput);
  EXPECT_THROW(RamanConfig::matched({25e9, 0.0}, 870e6, 1e9, 0.5e9, 15e9, -1.0, 1e6, 1e6, 1e6),
               InvalidInput);
}

TEST(SpinSplitting, GaAsFactor) {
  EXPECT_NEAR(gaas_spin_splitting(15e-3), 93e6, 1.0);
}

TEST(EffectiveCoupling, WorkedExample) {
  const EffectiveCoupling c = effective_coupling(worked_example());
  EXPECT_NEAR(c.chi, 14.5e6, 0.05 * 14.5e6);
  EXPECT_NEAR(c.transfer_time, 108e-9, 0.15 * 108e-9);
  EXPECT_NEAR(c.transfer_time, kPi / (2 * c.chi), 1e-20);
}

TEST(EffectiveCoupling, Scalings) {
  RamanConfig cfg = worked_example();
  cfg.esr_beta = 0.0;
  EXPECT_EQ(effective_coupling(cfg).chi, 0.0);
  EXPECT_TRUE(std::isinf(effective_coupling(cfg).transfer_time));
  EXPECT_NEAR(effective_coupling(worked_example(30e9)).chi,
              0.5 * effective_coupling(worked_example()).chi, 1e-6);
}

TEST(EffectiveDephasing, SymmetricDrive) {
  RamanConfig cfg = worked_example();
  cfg.esr_beta = cfg.g0;
  const double r = 0.5;
  EXPECT_NEAR(effective_dephasing(cfg),
              r * r * cfg.g0 * cfg.g0 * cfg.gamma_c / (cfg.detuning_eps * cfg.detuning_eps),
              1e-9);
  EXPECT_LT(effective_dephasing(worked_example(1e15)) / effective_dephasing(worked_example()), 1e-9);
}

TEST(OptimalDetuning, WorkedExample) {
  EXPECT_NEAR(optimal_detuning(worked_example()), 14.8e9, 0.05 * 14.8e9);
}

TEST(OptimalDetuning, Identities) {
  // gamma_c = 2 gamma_D and beta^2 + g0^2 = (Omega/T)^2 X^2 give eps_opt = X.
  const double x = 3e9;
  const double g0 = 1e9;
  const double beta = std::sqrt(4.0 * x * x - g0 * g0);
  const RamanConfig cfg =
      RamanConfig::matched({25e9, 0.0}, g0, beta, 0.5e9, 15e9, 2e6, 1e6, 1e6, 1e6);
  EXPECT_NEAR(optimal_detuning(cfg), x, 1e-6 * x);

  RamanConfig quad = worked_example();
  const double base = optimal_detuning(quad);
  quad.gamma_d *= 4.0;
  quad.gamma_s = quad.kappa = quad.gamma_d;
  EXPECT_NEAR(optimal_detuning(quad), 0.5 * base, 1e-6 * base);
}

TEST(OptimalDetuning, ZeroGammaDRejected) {
  RamanConfig cfg = worked_example();
  cfg.gamma_d = 0.0;
  EXPECT_THROW(optimal_detuning(cfg), InvalidInput);
}

TEST(TransferError, WorkedExampleBothPaths) {
  RamanConfig cfg = worked_example();
  const double closed = transfer_error(cfg, true);
  EXPECT_NEAR(closed, 0.21, 0.15 * 0.21);
  cfg = worked_example(optimal_detuning(cfg));
  EXPECT_NEAR(transfer_error(cfg, false), closed, 0.01 * closed);
}

TEST(TransferError, Limits) {
  RamanConfig cfg = worked_example();
  cfg.gamma_c = 1e-6;
  cfg.gamma_d = 1e-9;
  EXPECT_LT(transfer_error(cfg, true), 1e-6);

  cfg = worked_example();
  cfg.esr_beta = 1e6 * cfg.g0;
  const double limit = std::sqrt(cfg.gamma_c * cfg.gamma_d) * kPi * 50e9 / (cfg.g0 * 25e9) /
                       std::sqrt(2.0);
  EXPECT_NEAR(transfer_error(cfg, true), limit, 1e-6 * limit);

  cfg = worked_example();
  cfg.esr_beta = 0.0;
  EXPECT_THROW(transfer_error(cfg, false), InvalidInput);
  EXPECT_THROW(transfer_error(cfg, true), InvalidInput);
}

TEST(TransferError, ScanMinimumAtOptimum) {
  const RamanConfig cfg = worked_example();
  const double eps_opt = optimal_detuning(cfg);
  double best_eps = 0.0, best = 1e300;
  const int n = 4001;
  for (int i = 0; i < n; ++i) {
    const double eps = eps_opt * std::pow(10.0, -1.0 + 2.0 * i / (n - 1));
    const double p = transfer_error_at(cfg, eps);
    if (p < best) {
      best = p;
      best_eps = eps;
    }
  }
  EXPECT_NEAR(best_eps, eps_opt, 0.01 * eps_opt);
  EXPECT_NEAR(best, transfer_error(cfg, true), 1e-3 * best);
}

TEST(Rwa, WorkedExampleIsSafe) {
  const RwaCheck r = validate_rwa(worked_example(optimal_detuning(worked_example())));
  EXPECT_TRUE(r.ok);
  for (double m : r.margins) EXPECT_LT(m, 0.1);
}

TEST(Rwa, MarginalCases) {
  RamanConfig cfg = worked_example();
  cfg.esr_beta = std::abs(cfg.esr_freq_nu - cfg.spin_split_delta);
  RwaCheck r = validate_rwa(cfg);
  EXPECT_NEAR(r.margins[0], 1.0, 1e-12);
  EXPECT_FALSE(r.ok);

  // chi = 15 MHz against a 15 mT Zeeman splitting.
  cfg = worked_example();
  cfg.spin_split_delta = gaas_spin_splitting(15e-3);
  cfg.esr_beta = 15e6 * cfg.detuning_eps / (0.25 * cfg.g0);
  r = validate_rwa(cfg);
  EXPECT_NEAR(r.margins[2], 0.16, 0.01);
  EXPECT_FALSE(r.ok);
}

TEST(Rwa, NeverThrows) {
  RamanConfig cfg;
  EXPECT_NO_THROW(validate_rwa(cfg));
  EXPECT_FALSE(validate_rwa(cfg).ok);
}
