#include <gtest/gtest.h>

#include <cmath>

#include "dotcavity/constants.hpp"
#include "dotcavity/error.hpp"
#include "dotcavity/quasimode.hpp"

using namespace dotcavity;

namespace {

constexpr double kOmega0 = 50e9;
const double kW0 = kTwoPi * kOmega0;

PulseEnvelope slow_gaussian(double sigma_w0 = 1e4, double center = 0.0) {
  return PulseEnvelope::gaussian(sigma_w0 / kW0, 0.0, center);
}

}  // namespace

TEST(Spectrum, FilterShape) {
  const QuasimodeSpec spec{kOmega0, 1e3};
  EXPECT_NEAR(quasimode_spectrum(spec, kOmega0), 1e3, 1e-9);
  EXPECT_NEAR(quasimode_spectrum(spec, 0.0), 1e3 / (1e6 + 1), 1e-15);
  EXPECT_NEAR(quasimode_spectrum(spec, kOmega0 * (1 + 1e-3)), 500.0, 1e-9);
  EXPECT_NEAR(quasimode_spectrum(spec, kOmega0 * (1 - 1e-3)), 500.0, 1e-9);
  EXPECT_THROW(quasimode_spectrum(spec, -1.0), InvalidInput);
  EXPECT_THROW(quasimode_spectrum({kOmega0, 1.0}, 1.0), InvalidInput);
}

TEST(Envelope, GaussianTransformNormalisation) {
  // f(0) = int f~ dw over the whole line.
  const PulseEnvelope env = PulseEnvelope::gaussian(2e-9);
  const double sigma_w = 1.0 / 2e-9;
  double sum = 0.0;
  const int n = 4000;
  const double h = 20.0 * sigma_w / n;
  for (int i = -n / 2; i <= n / 2; ++i) sum += h * env.transform(i * h).real();
  EXPECT_NEAR(sum, env.value(0.0), 1e-9);
}

TEST(Envelope, TabulatedMatchesRaisedCosineApproximately) {
  const double half = 1e-9;
  std::vector<double> t, f;
  const int n = 2001;
  for (int i = 0; i < n; ++i) {
    const double s = -half + 2.0 * half * i / (n - 1);
    t.push_back(s);
    f.push_back(i == 0 || i == n - 1 ? 0.0 : 0.5 * (1 + std::cos(kPi * s / half)));
  }
  const PulseEnvelope tab = PulseEnvelope::tabulated(t, f);
  const PulseEnvelope rc = PulseEnvelope::raised_cosine(half);
  for (double w : {0.0, 1e8, 1e9, 3e9, 1e10}) {
    EXPECT_NEAR(std::abs(tab.transform(w) - rc.transform(w)), 0.0, 1e-6 * std::abs(rc.transform(0)));
  }
  // rms bandwidth of the raised cosine is pi / (sqrt 3 half_width).
  EXPECT_NEAR(tab.bandwidth(), kPi / (std::sqrt(3.0) * half), 1e-3 * rc.bandwidth());
}

TEST(Envelope, RejectsBadTables) {
  EXPECT_THROW(PulseEnvelope::tabulated({0, 1, 2}, {0, 1}), InvalidInput);
  EXPECT_THROW(PulseEnvelope::tabulated({0, 1, 2}, {0, 1, 0.5}), InvalidInput);
  EXPECT_THROW(PulseEnvelope::tabulated({0, 2, 1}, {0, 1, 0}), InvalidInput);
  EXPECT_THROW(PulseEnvelope::gaussian(0.0), InvalidInput);
}

TEST(Suppression, SlowGaussianOneOverQ) {
  EXPECT_NEAR(suppression_ratio(slow_gaussian(), {kOmega0, 1e3}), 1e-3, 0.02e-3);
  EXPECT_NEAR(suppression_ratio(slow_gaussian(), {kOmega0, 1e3}), 0.0010001118526942413, 1e-10);
  EXPECT_NEAR(suppression_ratio(slow_gaussian(), {kOmega0, 10.0}), 0.09902096389774337, 1e-8);
  EXPECT_NEAR(suppression_ratio(slow_gaussian(), {kOmega0, 1e5}), 1.000112852818944e-05, 1e-12);
}

TEST(Suppression, NarrowBandOnResonance) {
  const PulseEnvelope env = PulseEnvelope::gaussian(1e6 / kW0, kOmega0);
  EXPECT_NEAR(suppression_ratio(env, {kOmega0, 1e3}), 999.9995000007498, 1e-6);
}

TEST(Suppression, RisesWithBandwidth) {
  double previous = 0.0;
  for (double sw : {1e4, 1e3, 1e2, 10.0}) {
    const double r = suppression_ratio(slow_gaussian(sw), {kOmega0, 1e3});
    EXPECT_GT(r, previous);
    previous = r;
  }
  EXPECT_GT(previous, 1.01e-3);
}

TEST(Integrals, ScaleAsCouplingSquared) {
  const QuasimodeSpec spec{kOmega0, 1e3};
  const DephasingIntegrals a = dephasing_integrals(slow_gaussian(), spec, 1.0);
  const DephasingIntegrals b = dephasing_integrals(slow_gaussian(), spec, 3.0);
  EXPECT_NEAR(b.kappa_a, 9.0 * a.kappa_a, 1e-8 * b.kappa_a);
  EXPECT_NEAR(b.kappa_b, 9.0 * a.kappa_b, 1e-8 * b.kappa_b);
  EXPECT_NEAR(b.kappa_b / b.kappa_a, a.kappa_b / a.kappa_a, 1e-8 * a.kappa_b / a.kappa_a);
}

TEST(Integrals, TimeShiftInvariant) {
  const QuasimodeSpec spec{kOmega0, 1e3};
  const DephasingIntegrals a = dephasing_integrals(slow_gaussian(), spec, 1.0);
  const DephasingIntegrals b = dephasing_integrals(slow_gaussian(1e4, 7e-6), spec, 1.0);
  EXPECT_NEAR(b.kappa_a, a.kappa_a, 1e-8 * a.kappa_a);
  EXPECT_NEAR(b.kappa_b, a.kappa_b, 1e-8 * a.kappa_b);
}

TEST(Integrals, BoundedByFilterPeak) {
  for (double q : {10.0, 1e3, 1e5}) {
    const QuasimodeSpec spec{kOmega0, q};
    for (const PulseEnvelope& env : {slow_gaussian(), PulseEnvelope::gaussian(1e6 / kW0, kOmega0),
                                     PulseEnvelope::raised_cosine(1e-8)}) {
      const DephasingIntegrals k = dephasing_integrals(env, spec, 1.0);
      EXPECT_GE(k.kappa_a, 0.0);
      EXPECT_GE(k.kappa_b, 0.0);
      EXPECT_LE(k.kappa_b, q * k.kappa_a * (1 + 1e-8));
    }
  }
}

TEST(Integrals, AmplitudeWeightingStrengthensSuppression) {
  QuadratureOptions opt;
  opt.amplitude_weighting = true;
  const double weighted = suppression_ratio(slow_gaussian(), {kOmega0, 1e3}, opt);
  EXPECT_LT(weighted, 1e-4);
}

TEST(Integrals, SlowlyDecayingSpectrumRejected) {
  // Nearly square pulse: |f~|^2 ~ w^-2 far beyond 100 bandwidths.
  const double rise = 5e-15;
  const PulseEnvelope box =
      PulseEnvelope::tabulated({-5e-10 - rise, -5e-10, 5e-10, 5e-10 + rise}, {0.0, 1.0, 1.0, 0.0});
  EXPECT_THROW(dephasing_integrals(box, {kOmega0, 1e3}, 1.0), SolverError);
}

TEST(Integrals, TighterToleranceWithinErrorEstimate) {
  const QuasimodeSpec spec{kOmega0, 1e3};
  QuadratureOptions loose;
  loose.rel_tol = 1e-6;
  QuadratureOptions tight;
  tight.rel_tol = 5e-7;
  const DephasingIntegrals a = dephasing_integrals(PulseEnvelope::raised_cosine(3e-9), spec, 1.0, loose);
  const DephasingIntegrals b = dephasing_integrals(PulseEnvelope::raised_cosine(3e-9), spec, 1.0, tight);
  EXPECT_LE(std::abs(a.kappa_a - b.kappa_a), a.error_a + b.error_a + 1e-15 * a.kappa_a);
  EXPECT_LE(std::abs(a.kappa_b - b.kappa_b), a.error_b + b.error_b + 1e-15 * a.kappa_b);
}
