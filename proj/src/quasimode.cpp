#include "dotcavity/quasimode.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <limits>
#include <sstream>

#include "dotcavity/constants.hpp"
#include "dotcavity/error.hpp"

namespace dotcavity {

namespace {

using Complex = std::complex<double>;

void require(bool condition, const char* message) {
  if (!condition) throw InvalidInput(message);
}

// pi^2 sin(x) / (x (pi^2 - x^2)): transform of the raised cosine, scaled.
double raised_cosine_shape(double x) {
  x = std::abs(x);
  if (x < 1e-4) return 1.0 - x * x * (1.0 / 6.0 - 1.0 / (kPi * kPi));
  const double y = kPi - x;
  if (std::abs(y) < 1e-4) {
    const double sinc_y = 1.0 - y * y / 6.0;
    return kPi * kPi * sinc_y / (x * (kPi + x));
  }
  return kPi * kPi * std::sin(x) / (x * (kPi * kPi - x * x));
}

}  // namespace

PulseEnvelope PulseEnvelope::gaussian(double sigma, double carrier, double center) {
  require(std::isfinite(sigma) && sigma > 0.0, "gaussian width must be positive");
  require(std::isfinite(carrier) && carrier >= 0.0, "carrier must be finite and >= 0");
  require(std::isfinite(center), "pulse center must be finite");
  PulseEnvelope env;
  env.kind_ = Kind::gaussian;
  env.width_ = sigma;
  env.carrier_ = kTwoPi * carrier;
  env.center_ = center;
  return env;
}

PulseEnvelope PulseEnvelope::raised_cosine(double half_width, double carrier, double center) {
  require(std::isfinite(half_width) && half_width > 0.0, "raised-cosine width must be positive");
  require(std::isfinite(carrier) && carrier >= 0.0, "carrier must be finite and >= 0");
  require(std::isfinite(center), "pulse center must be finite");
  PulseEnvelope env;
  env.kind_ = Kind::raised_cosine;
  env.width_ = half_width;
  env.carrier_ = kTwoPi * carrier;
  env.center_ = center;
  return env;
}

PulseEnvelope PulseEnvelope::tabulated(std::vector<double> times, std::vector<double> values) {
  require(times.size() == values.size(), "tabulated envelope: times and values differ in length");
  require(times.size() >= 3, "tabulated envelope needs at least three samples");
  for (std::size_t i = 0; i < times.size(); ++i) {
    require(std::isfinite(times[i]) && std::isfinite(values[i]),
            "tabulated envelope samples must be finite");
    if (i > 0) require(times[i] > times[i - 1], "tabulated times must be strictly increasing");
  }
  require(values.front() == 0.0 && values.back() == 0.0,
          "tabulated envelope must start and end at zero");
  PulseEnvelope env;
  env.kind_ = Kind::tabulated;
  env.center_ = 0.5 * (times.front() + times.back());
  env.times_ = std::move(times);
  env.values_ = std::move(values);
  return env;
}

double PulseEnvelope::value(double t) const {
  const double s = t - center_;
  switch (kind_) {
    case Kind::gaussian:
      return std::exp(-0.5 * s * s / (width_ * width_)) * std::cos(carrier_ * s);
    case Kind::raised_cosine:
      if (std::abs(s) > width_) return 0.0;
      return 0.5 * (1.0 + std::cos(kPi * s / width_)) * std::cos(carrier_ * s);
    case Kind::tabulated: {
      if (t <= times_.front() || t >= times_.back()) return 0.0;
      const auto it = std::upper_bound(times_.begin(), times_.end(), t);
      const std::size_t i = static_cast<std::size_t>(it - times_.begin());
      const double frac = (t - times_[i - 1]) / (times_[i] - times_[i - 1]);
      return values_[i - 1] + frac * (values_[i] - values_[i - 1]);
    }
  }
  return 0.0;
}

std::complex<double> PulseEnvelope::transform(double omega) const {
  const Complex phase = std::polar(1.0, -omega * center_);
  switch (kind_) {
    case Kind::gaussian: {
      const auto bare = [this](double w) {
        return width_ / std::sqrt(kTwoPi) * std::exp(-0.5 * w * w * width_ * width_);
      };
      return phase * 0.5 * (bare(omega - carrier_) + bare(omega + carrier_));
    }
    case Kind::raised_cosine: {
      const auto bare = [this](double w) {
        return width_ * raised_cosine_shape(w * width_) / kTwoPi;
      };
      return phase * 0.5 * (bare(omega - carrier_) + bare(omega + carrier_));
    }
    case Kind::tabulated: {
      const std::size_t n = times_.size();
      double half_span = 0.5 * (times_.back() - times_.front());
      Complex sum(0.0, 0.0);
      if (std::abs(omega) * half_span < 0.5) {
        // Taylor series in omega from the exact moments of each segment.
        constexpr int kTerms = 24;
        double moments[kTerms] = {};
        for (std::size_t i = 0; i + 1 < n; ++i) {
          const double a = times_[i] - center_;
          const double b = times_[i + 1] - center_;
          const double fa = values_[i];
          const double slope = (values_[i + 1] - values_[i]) / (b - a);
          double ak1 = a, bk1 = b;      // a^{k+1}, b^{k+1}
          double ak2 = a * a, bk2 = b * b;
          for (int k = 0; k < kTerms; ++k) {
            const double p1 = (bk1 - ak1) / (k + 1);
            const double p2 = (bk2 - ak2) / (k + 2);
            moments[k] += (fa - slope * a) * p1 + slope * p2;
            ak1 *= a; bk1 *= b; ak2 *= a; bk2 *= b;
          }
        }
        Complex term(1.0, 0.0);
        for (int k = 0; k < kTerms; ++k) {
          sum += term * moments[k];
          term *= Complex(0.0, -omega) / static_cast<double>(k + 1);
        }
      } else {
        // f'' is a train of slope jumps; F = -(1/w^2) sum ds_i e^{-i w t_i}.
        double prev_slope = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
          const double slope = i + 1 < n ? (values_[i + 1] - values_[i]) / (times_[i + 1] - times_[i])
                                         : 0.0;
          sum -= (slope - prev_slope) * std::polar(1.0, -omega * (times_[i] - center_));
          prev_slope = slope;
        }
        sum /= omega * omega;
      }
      return phase * sum / kTwoPi;
    }
  }
  return 0.0;
}

double PulseEnvelope::bandwidth() const {
  switch (kind_) {
    case Kind::gaussian:
      return 1.0 / width_;
    case Kind::raised_cosine:
      return kPi / width_;
    case Kind::tabulated: {
      double slope2 = 0.0;
      double value2 = 0.0;
      for (std::size_t i = 0; i + 1 < times_.size(); ++i) {
        const double dt = times_[i + 1] - times_[i];
        const double fa = values_[i];
        const double fb = values_[i + 1];
        slope2 += (fb - fa) * (fb - fa) / dt;
        value2 += dt * (fa * fa + fa * fb + fb * fb) / 3.0;
      }
      if (value2 == 0.0) throw InvalidInput("tabulated envelope is identically zero");
      return std::sqrt(slope2 / value2);
    }
  }
  return 0.0;
}

double PulseEnvelope::spectral_resolution() const {
  switch (kind_) {
    case Kind::gaussian:
      return 1.0 / width_;
    case Kind::raised_cosine:
      return kPi / width_;
    case Kind::tabulated:
      return kTwoPi / (times_.back() - times_.front());
  }
  return 0.0;
}

double PulseEnvelope::spectral_tail(double omega) const {
  const double inf = std::numeric_limits<double>::infinity();
  const double u = omega - carrier_;
  if (!(u > 0.0)) return inf;
  // Both carrier images are bounded by the one at omega - carrier.
  switch (kind_) {
    case Kind::gaussian:
      return width_ / (4.0 * std::sqrt(kPi)) * std::erfc(u * width_);
    case Kind::raised_cosine: {
      // |shape(x)| <= pi^2 / (x (x^2 - pi^2)) <= (4/3) pi^2 / x^3 for x >= 2 pi.
      const double x = u * width_;
      if (x < 2.0 * kPi) return inf;
      const double c = width_ / kTwoPi * (4.0 / 3.0) * kPi * kPi;
      return c * c / (5.0 * width_ * std::pow(x, 5));
    }
    case Kind::tabulated: {
      // |f~| <= sum |ds| / (2 pi w^2).
      double jumps = 0.0, prev = 0.0;
      for (std::size_t i = 0; i < times_.size(); ++i) {
        const double slope = i + 1 < times_.size()
                                 ? (values_[i + 1] - values_[i]) / (times_[i + 1] - times_[i])
                                 : 0.0;
        jumps += std::abs(slope - prev);
        prev = slope;
      }
      return jumps * jumps / (12.0 * kPi * kPi * omega * omega * omega);
    }
  }
  return inf;
}

void QuasimodeSpec::validate() const {
  require(std::isfinite(omega0) && omega0 > 0.0, "omega0 must be positive");
  require(std::isfinite(quality) && quality > 1.0, "Q must exceed 1");
}

double quasimode_spectrum(const QuasimodeSpec& spec, double omega) {
  spec.validate();
  require(omega >= 0.0, "omega must be non-negative");
  const double q = spec.quality;
  const double w0 = spec.omega0;
  const double d = omega - w0;
  return q * w0 * w0 / (q * q * d * d + w0 * w0);
}

DephasingIntegrals dephasing_integrals(const PulseEnvelope& env, const QuasimodeSpec& spec,
                                       double g0, const QuadratureOptions& opt) {
  spec.validate();
  require(std::isfinite(g0), "g0 must be finite");
  require(opt.rel_tol > 0.0 && opt.rel_tol < 1.0, "quadrature tolerance must be in (0, 1)");
  const double w0 = kTwoPi * spec.omega0;
  const double q = spec.quality;
  const double center = env.carrier();
  const double bw = env.bandwidth();
  const double tail_start = center + 100.0 * bw;

  std::vector<double> points{center - 3.0 * bw, center, center + 3.0 * bw, tail_start, w0};
  // Lorentzian flanks on a log ladder: w0 (1 +- 5^j / Q).
  for (double k = 1.0; k < 4.0 * q; k *= 5.0) {
    points.push_back(w0 * (1 - k / q));
    points.push_back(w0 * (1 + k / q));
  }
  std::erase_if(points, [](double p) { return !(p > 0.0); });
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  const double core_end = center + 3.0 * bw;

  const double g2 = g0 * g0;
  const auto filter = [&](double w) {
    const double d = w - w0;
    const double f = q * w0 * w0 / (q * q * d * d + w0 * w0);
    return opt.amplitude_weighting ? f * w / w0 : f;
  };
  // max of the filter over [w, inf); it decreases past w0 (1 + 1/Q).
  const auto filter_sup = [&](double w) {
    return w < w0 * (1.0 + 1.0 / q) ? 1.01 * q : filter(w);
  };
  const auto weight_a = [&](double w) { return g2 * std::norm(env.transform(w)); };
  const auto weight_b = [&](double w) { return filter(w) * weight_a(w); };

  using Kronrod = boost::math::quadrature::gauss_kronrod<double, 15>;
  constexpr unsigned kMaxDepth = 15;
  constexpr long kMaxPieces = 2'000'000;
  const double step = env.spectral_resolution();
  const double negligible = 1e-3 * opt.rel_tol;
  DephasingIntegrals out{0.0, 0.0, 0.0, 0.0, 0};
  double l1_a = 0.0, l1_b = 0.0, tail_a = 0.0, tail_b = 0.0;
  const auto too_slow = [&] {
    std::ostringstream msg;
    msg << "envelope spectrum decays too slowly: fraction beyond " << tail_start
        << " rad/s is " << tail_a / out.kappa_a << " (bare), " << tail_b / out.kappa_b
        << " (filtered)";
    return SolverError(msg.str());
  };

  double x = 0.0;
  std::size_t next_point = 0;
  while (true) {
    if (x >= core_end) {
      const double bound_a = g2 * env.spectral_tail(x);
      const double bound_b = filter_sup(x) * bound_a;
      if (bound_a <= negligible * out.kappa_a && bound_b <= negligible * out.kappa_b) {
        out.error_a += bound_a;
        out.error_b += bound_b;
        tail_a += x >= tail_start ? bound_a : 0.0;
        tail_b += x >= tail_start ? bound_b : 0.0;
        break;
      }
    }
    if (out.panels >= kMaxPieces) throw SolverError("quadrature exceeded its panel budget");
    while (next_point < points.size() && points[next_point] <= x) ++next_point;
    double b = x + step;
    if (next_point < points.size()) b = std::min(b, points[next_point]);

    double err_a = 0.0, err_b = 0.0, abs_a = 0.0, abs_b = 0.0;
    const double va = Kronrod::integrate(weight_a, x, b, kMaxDepth, opt.rel_tol, &err_a, &abs_a);
    const double vb = Kronrod::integrate(weight_b, x, b, kMaxDepth, opt.rel_tol, &err_b, &abs_b);
    if (!std::isfinite(va) || !std::isfinite(vb)) {
      std::ostringstream msg;
      msg << "quadrature produced a non-finite value on [" << x << ", " << b << "] rad/s";
      throw SolverError(msg.str());
    }
    out.kappa_a += va;
    out.kappa_b += vb;
    out.error_a += err_a;
    out.error_b += err_b;
    l1_a += abs_a;
    l1_b += abs_b;
    ++out.panels;
    if (x >= tail_start) {
      tail_a += va;
      tail_b += vb;
      // Further pieces only raise the fraction.
      if (tail_a > 1e-6 * out.kappa_a || tail_b > 1e-6 * out.kappa_b) throw too_slow();
    }
    x = b;
  }

  if (out.error_a > opt.rel_tol * l1_a || out.error_b > opt.rel_tol * l1_b) {
    std::ostringstream msg;
    msg << "quadrature did not converge to rel_tol " << opt.rel_tol << " (kappa_a error "
        << out.error_a / std::max(l1_a, 1e-300) << ", kappa_b error "
        << out.error_b / std::max(l1_b, 1e-300) << ")";
    throw SolverError(msg.str());
  }
  if (tail_a > 1e-6 * out.kappa_a || tail_b > 1e-6 * out.kappa_b) throw too_slow();
  return out;
}

double suppression_ratio(const PulseEnvelope& env, const QuasimodeSpec& spec,
                         const QuadratureOptions& opt) {
  const DephasingIntegrals k = dephasing_integrals(env, spec, 1.0, opt);
  if (!(k.kappa_a > 0.0)) throw SolverError("envelope carries no spectral weight");
  return k.kappa_b / k.kappa_a;
}

}  // namespace dotcavity
