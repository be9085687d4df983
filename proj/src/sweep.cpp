#include "dotcavity/sweep.hpp"

#include <omp.h>

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <cstring>

#include "dotcavity/error.hpp"

namespace dotcavity {

int worker_count() {
  const char* env = std::getenv("DOTCAVITY_WORKERS");
  if (env == nullptr || *env == '\0') return omp_get_max_threads();
  int n = 0;
  const char* end = env + std::strlen(env);
  const auto [ptr, ec] = std::from_chars(env, end, n);
  if (ec != std::errc() || ptr != end || n < 1) {
    throw ConfigError(std::string("DOTCAVITY_WORKERS must be a positive integer, got '") + env +
                      "'");
  }
  return n;
}

std::vector<double> sweep_points(double start, double stop, int points, bool log_scale) {
  if (points < 1) throw InvalidInput("a sweep needs at least one point");
  if (!std::isfinite(start) || !std::isfinite(stop)) throw InvalidInput("sweep bounds must be finite");
  if (log_scale && (start <= 0.0 || stop <= 0.0)) {
    throw InvalidInput("log sweep bounds must be positive");
  }
  std::vector<double> out(static_cast<std::size_t>(points));
  if (points == 1) {
    out[0] = start;
    return out;
  }
  const double a = log_scale ? std::log10(start) : start;
  const double b = log_scale ? std::log10(stop) : stop;
  for (int i = 0; i < points; ++i) {
    const double u = a + (b - a) * static_cast<double>(i) / (points - 1);
    out[static_cast<std::size_t>(i)] = log_scale ? std::pow(10.0, u) : u;
  }
  // Land exactly on the requested end points.
  out.front() = start;
  out.back() = stop;
  return out;
}

std::vector<std::optional<double>> threshold_grid(const MaserConfig& base,
                                                  const std::vector<double>& g0s,
                                                  const std::vector<double>& kappas,
                                                  const ThresholdOptions& opt, Execution exec) {
  const std::size_t nk = kappas.size();
  return evaluate_grid<std::optional<double>>(
      g0s.size() * nk,
      [&](std::size_t i) {
        MaserConfig cfg = base;
        cfg.g0 = g0s[i / nk];
        cfg.photon_loss = kappas[i % nk];
        return threshold_pump(cfg, opt);
      },
      exec);
}

std::vector<PhotonNumber> photon_sweep(const MaserConfig& base, const std::vector<double>& gammas,
                                       Execution exec) {
  return evaluate_grid<PhotonNumber>(
      gammas.size(),
      [&](std::size_t i) { return steady_photon_number(base.with_pump(gammas[i])); }, exec);
}

std::vector<double> suppression_sweep(const PulseEnvelope& env, double omega0,
                                      const std::vector<double>& qualities,
                                      const QuadratureOptions& opt, Execution exec) {
  return evaluate_grid<double>(
      qualities.size(),
      [&](std::size_t i) { return suppression_ratio(env, {omega0, qualities[i]}, opt); }, exec);
}

std::vector<OracleReport> oracle_grid(const std::vector<MaserConfig>& configs,
                                      const HilbertSpec& spec, Execution exec) {
  return evaluate_grid<OracleReport>(
      configs.size(), [&](std::size_t i) { return compare_semiclassical(configs[i], spec); },
      exec);
}

}  // namespace dotcavity
