#include <gtest/gtest.h>

#include "property_checks.hpp"

using namespace dotcavity::testing;

constexpr int kCases = 1000;

TEST(Properties, EigenbasisOrthonormality) {
  const PropertyReport r = eigenbasis_orthonormality(kCases);
  EXPECT_TRUE(r.passed()) << r.summary();
}

TEST(Properties, GrowthIdentity) {
  const PropertyReport r = growth_identity(kCases);
  EXPECT_TRUE(r.passed()) << r.summary();
}

TEST(Properties, ThresholdHomogeneity) {
  const PropertyReport r = threshold_homogeneity(kCases);
  EXPECT_TRUE(r.passed()) << r.summary();
}

TEST(Properties, TransferErrorHomogeneity) {
  const PropertyReport r = transfer_error_homogeneity(kCases);
  EXPECT_TRUE(r.passed()) << r.summary();
}

TEST(Properties, QuadratureConvergence) {
  const PropertyReport r = quadrature_convergence(kCases);
  EXPECT_TRUE(r.passed()) << r.summary();
}
