#include "dotcavity/maser.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <sstream>

#include "dotcavity/constants.hpp"
#include "dotcavity/error.hpp"

namespace dotcavity {

namespace {

using State5 = Eigen::Matrix<double, 5, 1>;

void require(bool condition, const char* message) {
  if (!condition) throw InvalidInput(message);
}

State5 pack(const MaserState& s) {
  State5 y;
  y << s.rho.pp, s.rho.mm, s.rho.pm.real(), s.rho.pm.imag(), s.alpha;
  return y;
}

MaserState unpack(const State5& y, double t) {
  return {{y[0], y[1], {y[2], y[3]}}, y[4], t};
}

// Numerator and alpha-independent denominator of the closed-form growth
// rate, plus the coefficient of alpha^2 in the denominator.
struct GrowthTerms {
  double numerator;
  double denominator0;
  double alpha2_coefficient;
};

GrowthTerms growth_terms(const MaserConfig& cfg) {
  const double omega = cfg.dot.splitting();
  const double t = cfg.dot.tunnel;
  const double delta = cfg.dot.detuning;
  const double gl = cfg.pump_source;
  const double gr_drain = cfg.pump_drain;
  const double relax = cfg.relaxation;
  const double emission = cfg.emission_rate();

  const double numerator = 2.0 * emission * omega * gl * (delta * gr_drain - relax * omega);
  const double denominator0 = (gr_drain + 2.0 * gl) * (omega * omega * relax + 2.0 * t * t * gr_drain) +
                              delta * gr_drain * (2.0 * delta * gl + omega * relax);
  const double alpha2 = (gr_drain + 2.0 * gl) * omega * omega * 4.0 * emission;
  return {numerator, denominator0, alpha2};
}

}  // namespace

double MaserConfig::coherence_decay() const {
  return 0.5 * (relaxation + pump_drain) + dephasing;
}

double MaserConfig::mode_coupling() const {
  return kTwoPi * g0 * dot.tunnel / dot.splitting();
}

double MaserConfig::emission_rate() const {
  const double g = mode_coupling();
  const double decay = coherence_decay();
  const double w = kTwoPi * detuning;
  return g * g * decay / (decay * decay + w * w);
}

void MaserConfig::validate() const {
  dot.validate();
  require(dot.splitting() > 0.0, "zero splitting");
  for (double rate : {pump_source, pump_drain, relaxation, dephasing, photon_loss}) {
    require(std::isfinite(rate) && rate >= 0.0, "rates must be finite and non-negative");
  }
  require(std::isfinite(g0) && g0 >= 0.0, "g0 must be finite and non-negative");
  require(std::isfinite(detuning), "detuning must be finite");
  require(dephasing >= 0.5 * relaxation, "gamma_c must be at least gamma_r / 2");
}

MaserConfig MaserConfig::with_pump(double gamma) const {
  MaserConfig out = *this;
  out.pump_source = gamma;
  out.pump_drain = gamma;
  return out;
}

bool ChargeDensityMatrix::is_physical(double tol) const {
  if (!(std::isfinite(pp) && std::isfinite(mm) && std::isfinite(pm.real()) &&
        std::isfinite(pm.imag()))) {
    return false;
  }
  if (pp < -tol || mm < -tol || pp > 1.0 + tol || mm > 1.0 + tol) return false;
  if (occupation() > 1.0 + tol || occupation() < -tol) return false;
  return std::norm(pm) <= pp * mm + tol;
}

MaserDerivative eom_rhs(const MaserState& state, const MaserConfig& cfg) {
  const LeadWeights w = lead_weights(cfg.dot);
  const double g = cfg.mode_coupling();
  const double decay = cfg.coherence_decay();
  const double dw = kTwoPi * cfg.detuning;
  const auto& rho = state.rho;
  const double a = state.alpha;
  const double empty = 1.0 - rho.pp - rho.mm;

  // i alpha g (rho+- - rho-+) = -2 alpha g Im(rho+-)
  const double exchange = -2.0 * a * g * rho.pm.imag();
  MaserDerivative d;
  d.d_pp = exchange - (cfg.relaxation + cfg.pump_drain * w.lower) * rho.pp +
           cfg.pump_source * w.upper * empty;
  d.d_mm = -exchange - cfg.pump_drain * w.upper * rho.mm + cfg.relaxation * rho.pp +
           cfg.pump_source * w.lower * empty;
  d.d_pm = -std::complex<double>(decay, dw) * rho.pm +
           std::complex<double>(0.0, a * g * rho.inversion());
  d.d_alpha = g * rho.pm.imag() - cfg.photon_loss * a;
  return d;
}

ChargeDensityMatrix steady_state(const MaserConfig& cfg, double alpha) {
  cfg.validate();
  require(std::isfinite(alpha), "alpha must be finite");
  require(cfg.pump_source > 0.0 || cfg.pump_drain > 0.0, "at least one lead must be open");
  const LeadWeights w = lead_weights(cfg.dot);
  const double ag = alpha * cfg.mode_coupling();
  const double decay = cfg.coherence_decay();
  const double dw = kTwoPi * cfg.detuning;
  const double gl = cfg.pump_source;
  const double gr = cfg.pump_drain;
  const double relax = cfg.relaxation;

  // Unknowns (rho++, rho--, Re rho+-, Im rho+-).
  Eigen::Matrix4d a;
  a << -(relax + gr * w.lower) - gl * w.upper, -gl * w.upper, 0.0, -2.0 * ag,
       relax - gl * w.lower, -gr * w.upper - gl * w.lower, 0.0, 2.0 * ag,
       0.0, 0.0, -decay, dw,
       ag, -ag, -dw, -decay;
  Eigen::Vector4d b(-gl * w.upper, -gl * w.lower, 0.0, 0.0);

  // Rows carry rates of very different size; equilibrate before the rank test.
  Eigen::Vector4d row_scale = a.rowwise().lpNorm<Eigen::Infinity>();
  for (int i = 0; i < 4; ++i) {
    if (row_scale[i] == 0.0) throw SolverError("singular steady-state system (all rates zero)");
    a.row(i) /= row_scale[i];
    b[i] /= row_scale[i];
  }
  Eigen::FullPivLU<Eigen::Matrix4d> lu(a);
  lu.setThreshold(1e-12);
  if (!lu.isInvertible()) throw SolverError("singular steady-state system");
  const Eigen::Vector4d x = lu.solve(b);
  return {x[0], x[1], {x[2], x[3]}};
}

double field_growth_rate(const MaserConfig& cfg, double alpha) {
  cfg.validate();
  require(cfg.pump_source > 0.0 || cfg.pump_drain > 0.0, "at least one lead must be open");
  const GrowthTerms terms = growth_terms(cfg);
  const double denominator = terms.denominator0 + terms.alpha2_coefficient * alpha * alpha;
  if (denominator == 0.0) throw SolverError("degenerate growth-rate denominator");
  return terms.numerator / denominator - cfg.photon_loss;
}

double field_growth_rate_compositional(const MaserConfig& cfg, double alpha) {
  const ChargeDensityMatrix rho = steady_state(cfg, alpha);
  return cfg.emission_rate() * rho.inversion() - cfg.photon_loss;
}

std::optional<double> threshold_pump(const MaserConfig& cfg, const ThresholdOptions& opt) {
  require(opt.gamma_min > 0.0 && opt.gamma_max > opt.gamma_min, "invalid threshold search range");
  require(opt.points_per_decade > 0, "points_per_decade must be positive");
  const auto growth = [&](double gamma) { return field_growth_rate(cfg.with_pump(gamma), 0.0); };

  const double log_min = std::log10(opt.gamma_min);
  const double log_max = std::log10(opt.gamma_max);
  const int steps = static_cast<int>(std::ceil((log_max - log_min) * opt.points_per_decade));
  double lo = std::numeric_limits<double>::quiet_NaN();
  double hi = lo;
  for (int k = 0; k <= steps; ++k) {
    const double lg = std::min(log_min + static_cast<double>(k) / opt.points_per_decade, log_max);
    if (growth(std::pow(10.0, lg)) > 0.0) {
      if (k == 0) return opt.gamma_min;
      lo = log_min + static_cast<double>(k - 1) / opt.points_per_decade;
      hi = lg;
      break;
    }
  }
  if (std::isnan(hi)) return std::nullopt;

  // Bisect in log space; hi always has positive growth.
  const double log_tol = std::log10(1.0 + opt.rel_tol);
  while (hi - lo > log_tol) {
    const double mid = 0.5 * (lo + hi);
    if (growth(std::pow(10.0, mid)) > 0.0) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return std::pow(10.0, hi);
}

PhotonNumber steady_photon_number(const MaserConfig& cfg) {
  cfg.validate();
  require(cfg.pump_source > 0.0 || cfg.pump_drain > 0.0, "at least one lead must be open");
  const GrowthTerms terms = growth_terms(cfg);
  const double kappa = cfg.photon_loss;
  // N / (D0 + c alpha^2) = kappa  =>  alpha^2 = (N - kappa D0) / (kappa c)
  const double excess = terms.numerator - kappa * terms.denominator0;
  if (!(excess > 0.0) || terms.alpha2_coefficient <= 0.0) return {0.0, 0.0};
  if (kappa == 0.0) {
    const double inf = std::numeric_limits<double>::infinity();
    return {inf, inf};
  }
  const double n = excess / (kappa * terms.alpha2_coefficient);
  return {n, std::sqrt(n)};
}

OutputPower output_power(double n_photons, double kappa, double freq) {
  require(n_photons >= 0.0 && kappa >= 0.0 && freq >= 0.0,
          "output power inputs must be non-negative");
  const double flux = kappa * n_photons;
  return {flux * kPlanck * freq, flux};
}

std::vector<MaserState> time_evolve(const MaserState& initial, const MaserConfig& cfg,
                                    double t_end, const TimeEvolveOptions& opt) {
  cfg.validate();
  require(t_end > 0.0, "t_end must be positive");
  require(initial.alpha >= 0.0 && std::isfinite(initial.alpha), "alpha must be finite and >= 0");
  require(opt.sample_interval >= 0.0, "sample interval must be non-negative");
  if (!initial.rho.is_physical(opt.invariant_tol)) {
    throw InvalidInput("initial density matrix is not physical");
  }

  const auto rhs = [&cfg](double, const State5& y) {
    const MaserDerivative d = eom_rhs(unpack(y, 0.0), cfg);
    State5 dy;
    dy << d.d_pp, d.d_mm, d.d_pm.real(), d.d_pm.imag(), d.d_alpha;
    return dy;
  };
  const double t0 = initial.time;
  const auto check = [&](double t, const State5& y) {
    const ChargeDensityMatrix rho{y[0], y[1], {y[2], y[3]}};
    if (!rho.is_physical(opt.invariant_tol) || !std::isfinite(y[4])) {
      std::ostringstream msg;
      msg << "density-matrix invariant violated at t=" << t;
      throw SolverError(msg.str());
    }
  };

  OdeOptions ode;
  ode.rel_tol = opt.rel_tol;
  ode.abs_tol = opt.abs_tol;
  ode.max_step = opt.max_step;

  std::vector<MaserState> trajectory{initial};
  State5 y = pack(initial);
  double hint = 0.0;
  if (opt.sample_interval <= 0.0) {
    integrate_dp45(rhs, y, t0, t0 + t_end, ode, check, &hint);
    trajectory.push_back(unpack(y, t0 + t_end));
    return trajectory;
  }
  const long samples = static_cast<long>(std::ceil(t_end / opt.sample_interval - 1e-12));
  double t = t0;
  for (long k = 1; k <= samples; ++k) {
    const double next = k == samples ? t0 + t_end
                                     : t0 + static_cast<double>(k) * opt.sample_interval;
    integrate_dp45(rhs, y, t, next, ode, check, &hint);
    t = next;
    trajectory.push_back(unpack(y, t));
  }
  return trajectory;
}

}  // namespace dotcavity
