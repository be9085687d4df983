#pragma once

// Parameter sweeps over independent points. Every kernel takes an
// Execution flag: serial runs the points in order on the calling thread
// (the reference path), parallel spreads them over an OpenMP team whose
// size comes from DOTCAVITY_WORKERS. Results are stored by point index, so
// both paths return identical vectors.

#include <cstddef>
#include <exception>
#include <optional>
#include <vector>

#include "dotcavity/lindblad.hpp"
#include "dotcavity/maser.hpp"
#include "dotcavity/quasimode.hpp"

namespace dotcavity {

enum class Execution { serial, parallel };

// DOTCAVITY_WORKERS if set (positive integer, else ConfigError), otherwise
// the OpenMP default.
int worker_count();

// out[i] = f(i) for i in [0, n). The exception of the lowest failing index
// is rethrown after all workers have joined.
template <class R, class F>
std::vector<R> evaluate_grid(std::size_t n, F&& f, Execution exec) {
  std::vector<R> out(n);
  if (exec == Execution::serial || n < 2) {
    for (std::size_t i = 0; i < n; ++i) out[i] = f(i);
    return out;
  }
  std::vector<std::exception_ptr> errors(n);
  const long count = static_cast<long>(n);
  const int workers = worker_count();
#pragma omp parallel for schedule(dynamic) num_threads(workers)
  for (long i = 0; i < count; ++i) {
    try {
      out[static_cast<std::size_t>(i)] = f(static_cast<std::size_t>(i));
    } catch (...) {
      errors[static_cast<std::size_t>(i)] = std::current_exception();
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

// n points from start to stop, evenly spaced (log: evenly in log10).
std::vector<double> sweep_points(double start, double stop, int points, bool log_scale);

// Threshold pump for every (g0, kappa) pair, row-major over g0.
std::vector<std::optional<double>> threshold_grid(const MaserConfig& base,
                                                  const std::vector<double>& g0s,
                                                  const std::vector<double>& kappas,
                                                  const ThresholdOptions& opt, Execution exec);

// Steady photon number at Gamma_L = Gamma_R = gamma for every gamma.
std::vector<PhotonNumber> photon_sweep(const MaserConfig& base, const std::vector<double>& gammas,
                                       Execution exec);

// kappa_b / kappa_a for each quality factor at fixed envelope and omega0.
std::vector<double> suppression_sweep(const PulseEnvelope& env, double omega0,
                                      const std::vector<double>& qualities,
                                      const QuadratureOptions& opt, Execution exec);

// Quantum/semiclassical comparison for each configuration.
std::vector<OracleReport> oracle_grid(const std::vector<MaserConfig>& configs,
                                      const HilbertSpec& spec, Execution exec);

}  // namespace dotcavity
