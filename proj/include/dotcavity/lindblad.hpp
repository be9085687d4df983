#pragma once

// Pumped Jaynes-Cummings master equation on {empty, +, -} x Fock(0..n-1),
// written in the frame rotating at the resonator frequency. Serves as a
// brute-force check of the semiclassical maser at small photon number.
//
// Units follow maser.hpp: g and delta_omega in Hz (entering as 2*pi*f),
// channel rates in 1/s.

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <complex>
#include <vector>

#include "dotcavity/maser.hpp"

namespace dotcavity {

using Complex = std::complex<double>;
using SparseMatrixC = Eigen::SparseMatrix<Complex>;

struct HilbertSpec {
  static constexpr int kMaxDimension = 512;

  int n_fock = 2;

  int dimension() const { return 3 * n_fock; }
  // Basis index of |level, n>; levels 0 = empty, 1 = plus, 2 = minus.
  int index(int level, int photons) const { return level * n_fock + photons; }
  void validate() const;
};

struct LindbladChannels {
  double pump_plus = 0.0;     // empty -> |+>
  double pump_minus = 0.0;    // empty -> |->
  double drain_plus = 0.0;    // |+> -> empty
  double drain_minus = 0.0;   // |-> -> empty
  double relax = 0.0;         // |+> -> |->
  double pure_dephase = 0.0;  // coherence decay added by sqrt(rate/2) Sigma_z
  double photon_loss = 0.0;   // field amplitude decay; jump operator sqrt(2 rate) a

  void validate() const;

  // Channels whose population flows and coherence decay reproduce the
  // semiclassical rate equations term by term.
  static LindbladChannels from_maser(const MaserConfig& cfg);
};

struct Operators {
  SparseMatrixC a;
  SparseMatrixC sigma_plus;  // |+><-| on the charge sector
  SparseMatrixC sigma_z;     // |+><+| - |-><-|
  SparseMatrixC number;      // a^dagger a
};

Operators build_operators(const HilbertSpec& spec);

class Liouvillian {
 public:
  Liouvillian(HilbertSpec spec, SparseMatrixC hamiltonian, std::vector<SparseMatrixC> jumps);

  const HilbertSpec& spec() const { return spec_; }
  const SparseMatrixC& matrix() const { return matrix_; }
  const SparseMatrixC& hamiltonian() const { return hamiltonian_; }
  const std::vector<SparseMatrixC>& jumps() const { return jumps_; }
  // Largest |entry| of the superoperator; sets the tolerance scale.
  double scale() const { return scale_; }

  // L[rho] through the vectorized superoperator.
  Eigen::MatrixXcd apply(const Eigen::MatrixXcd& rho) const;
  // L[rho] evaluated from the operators directly, -i[H, rho] + sum D[L] rho.
  Eigen::MatrixXcd apply_direct(const Eigen::MatrixXcd& rho) const;

  // max_j |sum_i tr_i L_ij| / scale; zero for a trace-preserving generator.
  double trace_defect() const;
  // ||L[rho]^dagger - L[rho]|| / (scale ||rho||) for a fixed pseudo-random
  // Hermitian rho.
  double hermiticity_defect() const;

 private:
  HilbertSpec spec_;
  SparseMatrixC hamiltonian_;
  std::vector<SparseMatrixC> jumps_;
  SparseMatrixC matrix_;
  double scale_ = 0.0;
};

// H = 2 pi [delta_omega Sigma_z / 2 + g (a^dagger Sigma_- + a Sigma_+)] plus
// the dissipators of `ch`. Rejects 3 n_fock > 512 and generators that fail
// the structural trace/hermiticity checks at 1e-12.
Liouvillian build_liouvillian(const HilbertSpec& spec, const LindbladChannels& ch, double g,
                              double delta_omega);

// Null vector of L normalised to unit trace. Throws SolverError when the
// null space is not one-dimensional to working precision or the result is
// not a valid density matrix (eigenvalues below -1e-9).
Eigen::MatrixXcd steady_state_density(const Liouvillian& liouvillian);

struct Observables {
  double n_photons;
  double inversion;       // <Sigma_z>
  double occupation;      // population of the charged levels
  Complex coherence;      // <a Sigma_+>
  Complex field;          // <a>
  Complex polarization;   // <Sigma_+>
  double top_fock_population;
  double trace;
};

Observables measure(const HilbertSpec& spec, const Eigen::MatrixXcd& rho);
double min_eigenvalue(const Eigen::MatrixXcd& rho);

struct DensitySample {
  double time;
  Observables observables;
  double hermiticity_defect;  // ||rho - rho^dagger||_max
  double min_eigenvalue;
};

// Integrates drho/dt = L[rho] with the adaptive 5(4) integrator; samples at
// multiples of sample_interval plus the end point.
std::vector<DensitySample> evolve_density(const Liouvillian& liouvillian,
                                          const Eigen::MatrixXcd& rho0, double t_end,
                                          double sample_interval, const OdeOptions& opt = {});

Eigen::MatrixXcd fock_state(const HilbertSpec& spec, int level, int photons);

// The charge-sector equations with the resonator replaced by a fixed real
// amplitude alpha (no photon loss), i.e. the generator that the
// semiclassical equations are supposed to reproduce.
MaserDerivative classical_field_rhs(const LindbladChannels& ch, double g, double delta_omega,
                                    double alpha, const ChargeDensityMatrix& rho);

struct OracleReport {
  double n_quantum;
  double n_semiclassical;
  // |n_q - n_sc| / max(1, n_q, n_sc); absolute below one photon.
  double relative_gap;
  // |<a Sigma_+> - <a><Sigma_+>|
  double factorization_error;
  double inversion_quantum;
  double top_fock_population;
  int n_fock_used;
  bool truncation_limited;
};

// Solves the master equation at the configuration's rates, doubling the Fock
// truncation from spec.n_fock until the top Fock population drops below
// 1e-6 (or the 512-dimension cap is reached, which sets truncation_limited).
OracleReport compare_semiclassical(const MaserConfig& cfg, const HilbertSpec& spec);

}  // namespace dotcavity
