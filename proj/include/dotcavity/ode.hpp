#pragma once

// Embedded Runge-Kutta 5(4) integrator (Dormand-Prince coefficients) with
// PI step-size control. State is any Eigen column vector, real or complex.

#include <Eigen/Core>
#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "dotcavity/error.hpp"

namespace dotcavity {

struct OdeOptions {
  double rel_tol = 1e-8;
  double abs_tol = 1e-12;
  double max_step = std::numeric_limits<double>::infinity();
  double initial_step = 0.0;  // 0 picks one from the derivative scale
  long max_steps = 50'000'000;
};

struct OdeStats {
  long accepted = 0;
  long rejected = 0;
  long rhs_calls = 0;
  double last_step = 0.0;
};

namespace detail {

struct DormandPrince {
  static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
  static constexpr double a21 = 1.0 / 5;
  static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
  static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                          a54 = -212.0 / 729;
  static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                          a64 = 49.0 / 176, a65 = -5103.0 / 18656;
  static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                          b5 = -2187.0 / 6784, b6 = 11.0 / 84;
  // b - b_hat
  static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                          e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;
};

template <class Vec>
double error_norm(const Vec& err, const Vec& y0, const Vec& y1, const OdeOptions& opt) {
  double sum = 0.0;
  const auto n = err.size();
  for (Eigen::Index i = 0; i < n; ++i) {
    const double scale =
        opt.abs_tol + opt.rel_tol * std::max(std::abs(y0[i]), std::abs(y1[i]));
    const double r = std::abs(err[i]) / scale;
    sum += r * r;
  }
  return n > 0 ? std::sqrt(sum / static_cast<double>(n)) : 0.0;
}

}  // namespace detail

// Integrates dy/dt = rhs(t, y) from t0 to t1 in place. `on_step(t, y)` runs
// after every accepted step and may throw to abort. Throws SolverError when
// the step size underflows.
template <class Vec, class Rhs, class Observer>
OdeStats integrate_dp45(Rhs&& rhs, Vec& y, double t0, double t1, const OdeOptions& opt,
                        Observer&& on_step, double* step_hint = nullptr) {
  using DP = detail::DormandPrince;
  OdeStats stats;
  if (t1 <= t0) return stats;

  Vec k1 = rhs(t0, y);
  ++stats.rhs_calls;
  double h = (step_hint && *step_hint > 0.0) ? *step_hint : opt.initial_step;
  if (h <= 0.0) {
    const double d0 = detail::error_norm(y, y, y, opt);
    const double d1 = detail::error_norm(k1, y, y, opt);
    h = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 * (t1 - t0) : 0.01 * d0 / d1;
  }
  h = std::min({h, opt.max_step, t1 - t0});

  double t = t0;
  double err_prev = 1e-4;
  Vec k2, k3, k4, k5, k6, k7, y_new, tmp;
  while (t < t1) {
    if (stats.accepted + stats.rejected >= opt.max_steps) {
      std::ostringstream msg;
      msg << "integrator exceeded " << opt.max_steps << " steps at t=" << t;
      throw SolverError(msg.str());
    }
    const double h_floor = 1e-14 * std::max(std::abs(t), std::abs(t1 - t0));
    if (h < h_floor) {
      std::ostringstream msg;
      msg << "step size underflow at t=" << t << " (h=" << h << ")";
      throw SolverError(msg.str());
    }
    const bool last = t + h >= t1;
    const double h_full = h;
    if (last) h = t1 - t;

    tmp = y + h * DP::a21 * k1;
    k2 = rhs(t + DP::c2 * h, tmp);
    tmp = y + h * (DP::a31 * k1 + DP::a32 * k2);
    k3 = rhs(t + DP::c3 * h, tmp);
    tmp = y + h * (DP::a41 * k1 + DP::a42 * k2 + DP::a43 * k3);
    k4 = rhs(t + DP::c4 * h, tmp);
    tmp = y + h * (DP::a51 * k1 + DP::a52 * k2 + DP::a53 * k3 + DP::a54 * k4);
    k5 = rhs(t + DP::c5 * h, tmp);
    tmp = y + h * (DP::a61 * k1 + DP::a62 * k2 + DP::a63 * k3 + DP::a64 * k4 + DP::a65 * k5);
    k6 = rhs(t + h, tmp);
    y_new = y + h * (DP::b1 * k1 + DP::b3 * k3 + DP::b4 * k4 + DP::b5 * k5 + DP::b6 * k6);
    k7 = rhs(t + h, y_new);
    stats.rhs_calls += 6;

    tmp = h * (DP::e1 * k1 + DP::e3 * k3 + DP::e4 * k4 + DP::e5 * k5 + DP::e6 * k6 +
               DP::e7 * k7);
    const double err = detail::error_norm(tmp, y, y_new, opt);

    if (err <= 1.0 && std::isfinite(err)) {
      t = last ? t1 : t + h;
      y.swap(y_new);
      k1.swap(k7);
      ++stats.accepted;
      stats.last_step = h;
      on_step(t, static_cast<const Vec&>(y));
      // PI controller (Hairer-Wanner), exponents 0.7/5 and 0.4/5.
      double factor = err == 0.0 ? 5.0
                                 : 0.9 * std::pow(err, -0.14) * std::pow(err_prev, 0.08);
      factor = std::clamp(factor, 0.2, 5.0);
      err_prev = std::max(err, 1e-4);
      h = std::min(std::max(h, last ? h_full : h) * factor, opt.max_step);
    } else {
      ++stats.rejected;
      const double factor =
          std::isfinite(err) ? std::max(0.2, 0.9 * std::pow(err, -0.2)) : 0.1;
      h *= factor;
    }
  }
  if (step_hint) *step_hint = h;
  return stats;
}

template <class Vec, class Rhs>
OdeStats integrate_dp45(Rhs&& rhs, Vec& y, double t0, double t1, const OdeOptions& opt) {
  return integrate_dp45(std::forward<Rhs>(rhs), y, t0, t1, opt, [](double, const Vec&) {});
}

}  // namespace dotcavity
