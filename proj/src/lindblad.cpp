#include "dotcavity/lindblad.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SparseLU>
#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "dotcavity/constants.hpp"
#include "dotcavity/error.hpp"

namespace dotcavity {

namespace {

using Triplet = Eigen::Triplet<Complex>;

constexpr int kEmpty = 0;
constexpr int kPlus = 1;
constexpr int kMinus = 2;

SparseMatrixC identity(int n) {
  SparseMatrixC id(n, n);
  id.setIdentity();
  return id;
}

SparseMatrixC kron(const SparseMatrixC& a, const SparseMatrixC& b) {
  std::vector<Triplet> entries;
  entries.reserve(static_cast<std::size_t>(a.nonZeros() * b.nonZeros()));
  for (int ja = 0; ja < a.outerSize(); ++ja) {
    for (SparseMatrixC::InnerIterator ea(a, ja); ea; ++ea) {
      for (int jb = 0; jb < b.outerSize(); ++jb) {
        for (SparseMatrixC::InnerIterator eb(b, jb); eb; ++eb) {
          entries.emplace_back(static_cast<int>(ea.row() * b.rows() + eb.row()),
                               static_cast<int>(ja * b.cols() + jb), ea.value() * eb.value());
        }
      }
    }
  }
  SparseMatrixC out(a.rows() * b.rows(), a.cols() * b.cols());
  out.setFromTriplets(entries.begin(), entries.end());
  return out;
}

// |to><from| on the charge sector, identity on the photons.
SparseMatrixC charge_transition(const HilbertSpec& spec, int to, int from) {
  std::vector<Triplet> entries;
  for (int n = 0; n < spec.n_fock; ++n) {
    entries.emplace_back(spec.index(to, n), spec.index(from, n), 1.0);
  }
  SparseMatrixC out(spec.dimension(), spec.dimension());
  out.setFromTriplets(entries.begin(), entries.end());
  return out;
}

SparseMatrixC superoperator(const SparseMatrixC& h, const std::vector<SparseMatrixC>& jumps) {
  const int d = static_cast<int>(h.rows());
  const SparseMatrixC id = identity(d);
  const Complex minus_i(0.0, -1.0);
  SparseMatrixC h_t = h.transpose();
  SparseMatrixC out = minus_i * (kron(id, h) - kron(h_t, id));
  for (const auto& l : jumps) {
    const SparseMatrixC ldl = l.adjoint() * l;
    const SparseMatrixC ldl_t = ldl.transpose();
    const SparseMatrixC l_conj = l.conjugate();
    out += kron(l_conj, l);
    out -= 0.5 * kron(id, ldl);
    out -= 0.5 * kron(ldl_t, id);
  }
  out.prune(Complex(0.0, 0.0));
  out.makeCompressed();
  return out;
}

Eigen::MatrixXcd dense_lindblad(const Eigen::MatrixXcd& h, const std::vector<Eigen::MatrixXcd>& jumps,
                                const Eigen::MatrixXcd& rho) {
  const Complex minus_i(0.0, -1.0);
  Eigen::MatrixXcd out = minus_i * (h * rho - rho * h);
  for (const auto& l : jumps) {
    const Eigen::MatrixXcd ldl = l.adjoint() * l;
    out += l * rho * l.adjoint() - 0.5 * (ldl * rho + rho * ldl);
  }
  return out;
}

void require(bool condition, const char* message) {
  if (!condition) throw InvalidInput(message);
}

}  // namespace

void HilbertSpec::validate() const {
  require(n_fock >= 2, "Fock truncation must keep at least two photon states");
  if (dimension() > kMaxDimension) {
    std::ostringstream msg;
    msg << "Hilbert dimension " << dimension() << " exceeds the cap of " << kMaxDimension;
    throw InvalidInput(msg.str());
  }
}

void LindbladChannels::validate() const {
  for (double r : {pump_plus, pump_minus, drain_plus, drain_minus, relax, pure_dephase,
                   photon_loss}) {
    require(std::isfinite(r) && r >= 0.0, "channel rates must be finite and non-negative");
  }
}

LindbladChannels LindbladChannels::from_maser(const MaserConfig& cfg) {
  cfg.validate();
  const LeadWeights w = lead_weights(cfg.dot);
  LindbladChannels ch;
  ch.pump_plus = cfg.pump_source * w.upper;
  ch.pump_minus = cfg.pump_source * w.lower;
  ch.drain_plus = cfg.pump_drain * w.lower;
  ch.drain_minus = cfg.pump_drain * w.upper;
  ch.relax = cfg.relaxation;
  ch.pure_dephase = cfg.dephasing;
  ch.photon_loss = cfg.photon_loss;
  return ch;
}

Operators build_operators(const HilbertSpec& spec) {
  spec.validate();
  Operators ops;
  std::vector<Triplet> entries;
  for (int n = 1; n < spec.n_fock; ++n) entries.emplace_back(n - 1, n, std::sqrt(double(n)));
  SparseMatrixC a_fock(spec.n_fock, spec.n_fock);
  a_fock.setFromTriplets(entries.begin(), entries.end());
  ops.a = kron(identity(3), a_fock);
  ops.sigma_plus = charge_transition(spec, kPlus, kMinus);
  ops.sigma_z = charge_transition(spec, kPlus, kPlus) - charge_transition(spec, kMinus, kMinus);
  ops.number = ops.a.adjoint() * ops.a;
  return ops;
}

Liouvillian::Liouvillian(HilbertSpec spec, SparseMatrixC hamiltonian,
                         std::vector<SparseMatrixC> jumps)
    : spec_(spec), hamiltonian_(std::move(hamiltonian)), jumps_(std::move(jumps)) {
  matrix_ = superoperator(hamiltonian_, jumps_);
  for (int j = 0; j < matrix_.outerSize(); ++j) {
    for (SparseMatrixC::InnerIterator it(matrix_, j); it; ++it) {
      scale_ = std::max(scale_, std::abs(it.value()));
    }
  }
  if (scale_ == 0.0) scale_ = 1.0;
}

Eigen::MatrixXcd Liouvillian::apply(const Eigen::MatrixXcd& rho) const {
  const int d = spec_.dimension();
  Eigen::VectorXcd v = Eigen::Map<const Eigen::VectorXcd>(rho.data(), d * d);
  Eigen::VectorXcd out = matrix_ * v;
  return Eigen::Map<Eigen::MatrixXcd>(out.data(), d, d);
}

Eigen::MatrixXcd Liouvillian::apply_direct(const Eigen::MatrixXcd& rho) const {
  std::vector<Eigen::MatrixXcd> dense_jumps;
  dense_jumps.reserve(jumps_.size());
  for (const auto& l : jumps_) dense_jumps.emplace_back(Eigen::MatrixXcd(l));
  return dense_lindblad(Eigen::MatrixXcd(hamiltonian_), dense_jumps, rho);
}

double Liouvillian::trace_defect() const {
  const int d = spec_.dimension();
  double worst = 0.0;
  for (int j = 0; j < matrix_.outerSize(); ++j) {
    Complex sum(0.0, 0.0);
    for (SparseMatrixC::InnerIterator it(matrix_, j); it; ++it) {
      if (it.row() % (d + 1) == 0) sum += it.value();
    }
    worst = std::max(worst, std::abs(sum));
  }
  return worst / scale_;
}

double Liouvillian::hermiticity_defect() const {
  const int d = spec_.dimension();
  std::mt19937_64 rng(0x5eed);
  std::normal_distribution<double> normal;
  Eigen::MatrixXcd m(d, d);
  for (int j = 0; j < d; ++j) {
    for (int i = 0; i < d; ++i) m(i, j) = Complex(normal(rng), normal(rng));
  }
  const Eigen::MatrixXcd rho = 0.5 * (m + m.adjoint());
  const Eigen::MatrixXcd out = apply(rho);
  return (out - out.adjoint()).cwiseAbs().maxCoeff() / (scale_ * rho.cwiseAbs().maxCoeff());
}

Liouvillian build_liouvillian(const HilbertSpec& spec, const LindbladChannels& ch, double g,
                              double delta_omega) {
  spec.validate();
  ch.validate();
  require(std::isfinite(g) && std::isfinite(delta_omega), "g and delta_omega must be finite");
  const Operators ops = build_operators(spec);
  const SparseMatrixC sigma_minus = ops.sigma_plus.adjoint();
  const SparseMatrixC a_dag = ops.a.adjoint();
  SparseMatrixC h = kTwoPi * (0.5 * delta_omega * ops.sigma_z +
                              g * (SparseMatrixC(a_dag * sigma_minus) +
                                   SparseMatrixC(ops.a * ops.sigma_plus)));

  std::vector<SparseMatrixC> jumps;
  const auto add = [&jumps](double rate, const SparseMatrixC& op) {
    if (rate > 0.0) jumps.emplace_back(std::sqrt(rate) * op);
  };
  add(ch.pump_plus, charge_transition(spec, kPlus, kEmpty));
  add(ch.pump_minus, charge_transition(spec, kMinus, kEmpty));
  add(ch.drain_plus, charge_transition(spec, kEmpty, kPlus));
  add(ch.drain_minus, charge_transition(spec, kEmpty, kMinus));
  add(ch.relax, charge_transition(spec, kMinus, kPlus));
  add(0.5 * ch.pure_dephase, ops.sigma_z);
  add(2.0 * ch.photon_loss, ops.a);

  Liouvillian out(spec, std::move(h), std::move(jumps));
  if (out.trace_defect() > 1e-12) throw SolverError("Liouvillian is not trace preserving");
  if (out.hermiticity_defect() > 1e-12) {
    throw SolverError("Liouvillian does not preserve hermiticity");
  }
  return out;
}

double min_eigenvalue(const Eigen::MatrixXcd& rho) {
  const Eigen::MatrixXcd herm = 0.5 * (rho + rho.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(herm, Eigen::EigenvaluesOnly);
  return eig.eigenvalues().minCoeff();
}

Eigen::MatrixXcd steady_state_density(const Liouvillian& liouvillian) {
  const int d = liouvillian.spec().dimension();
  const int n = d * d;
  const double scale = liouvillian.scale();
  const SparseMatrixC& l = liouvillian.matrix();

  // The (0,0) population equation is redundant under trace preservation;
  // replace it by the trace constraint.
  std::vector<Triplet> entries;
  entries.reserve(static_cast<std::size_t>(l.nonZeros() + d));
  for (int j = 0; j < l.outerSize(); ++j) {
    for (SparseMatrixC::InnerIterator it(l, j); it; ++it) {
      if (it.row() != 0) entries.emplace_back(static_cast<int>(it.row()), j, it.value());
    }
  }
  for (int i = 0; i < d; ++i) entries.emplace_back(0, i * d + i, scale);
  SparseMatrixC bordered(n, n);
  bordered.setFromTriplets(entries.begin(), entries.end());
  bordered.makeCompressed();

  Eigen::SparseLU<SparseMatrixC, Eigen::COLAMDOrdering<int>> lu;
  lu.compute(bordered);
  if (lu.info() != Eigen::Success) {
    throw SolverError("steady state: null space is not one-dimensional (factorization failed)");
  }

  // Smallest singular value of the bordered system by inverse iteration on
  // B^H B; a second null vector of L shows up as a near-zero value here.
  {
    std::mt19937_64 rng(0xfeed);
    std::normal_distribution<double> normal;
    Eigen::VectorXcd v(n);
    for (int i = 0; i < n; ++i) v[i] = Complex(normal(rng), normal(rng));
    v.normalize();
    double growth = 0.0;
    for (int iter = 0; iter < 12; ++iter) {
      const Eigen::VectorXcd w = lu.adjoint().solve(v);
      Eigen::VectorXcd z = lu.solve(w);
      growth = z.norm();
      if (!std::isfinite(growth) || growth == 0.0) break;
      v = z / growth;
    }
    const double sigma_min = std::isfinite(growth) && growth > 0.0 ? 1.0 / std::sqrt(growth) : 0.0;
    if (sigma_min < 1e-10 * scale) {
      std::ostringstream msg;
      msg << "steady state: ill-conditioned null space (sigma_min/scale = "
          << sigma_min / scale << ")";
      throw SolverError(msg.str());
    }
  }

  Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(n);
  rhs[0] = scale;
  const Eigen::VectorXcd x = lu.solve(rhs);
  if (!x.allFinite()) throw SolverError("steady state: non-finite solution");

  const Eigen::VectorXcd residual = l * x;
  if (residual.cwiseAbs().maxCoeff() > 1e-8 * scale * x.cwiseAbs().maxCoeff()) {
    throw SolverError("steady state: residual too large");
  }

  Eigen::MatrixXcd rho = Eigen::Map<const Eigen::MatrixXcd>(x.data(), d, d);
  rho = 0.5 * (rho + rho.adjoint()).eval();
  rho /= rho.trace().real();
  const double lowest = min_eigenvalue(rho);
  if (lowest < -1e-9) {
    std::ostringstream msg;
    msg << "steady state is not positive semidefinite (min eigenvalue " << lowest << ")";
    throw SolverError(msg.str());
  }
  return rho;
}

Observables measure(const HilbertSpec& spec, const Eigen::MatrixXcd& rho) {
  const Operators ops = build_operators(spec);
  const auto expect = [&rho](const SparseMatrixC& op) { return (op * rho).trace(); };
  Observables obs{};
  obs.n_photons = expect(ops.number).real();
  obs.inversion = expect(ops.sigma_z).real();
  obs.coherence = expect(SparseMatrixC(ops.a * ops.sigma_plus));
  obs.field = expect(ops.a);
  obs.polarization = expect(ops.sigma_plus);
  obs.trace = rho.trace().real();
  double top = 0.0;
  double charged = 0.0;
  for (int level = 0; level < 3; ++level) {
    top += rho(spec.index(level, spec.n_fock - 1), spec.index(level, spec.n_fock - 1)).real();
    if (level != kEmpty) {
      for (int n = 0; n < spec.n_fock; ++n) {
        charged += rho(spec.index(level, n), spec.index(level, n)).real();
      }
    }
  }
  obs.top_fock_population = top;
  obs.occupation = charged;
  return obs;
}

Eigen::MatrixXcd fock_state(const HilbertSpec& spec, int level, int photons) {
  spec.validate();
  require(level >= 0 && level < 3, "level must be 0 (empty), 1 (plus) or 2 (minus)");
  require(photons >= 0 && photons < spec.n_fock, "photon number outside the truncation");
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(spec.dimension(), spec.dimension());
  rho(spec.index(level, photons), spec.index(level, photons)) = 1.0;
  return rho;
}

std::vector<DensitySample> evolve_density(const Liouvillian& liouvillian,
                                          const Eigen::MatrixXcd& rho0, double t_end,
                                          double sample_interval, const OdeOptions& opt) {
  require(t_end > 0.0, "t_end must be positive");
  require(sample_interval > 0.0, "sample interval must be positive");
  const HilbertSpec& spec = liouvillian.spec();
  const int d = spec.dimension();
  require(rho0.rows() == d && rho0.cols() == d, "initial state has the wrong dimension");

  const SparseMatrixC& l = liouvillian.matrix();
  const auto rhs = [&l](double, const Eigen::VectorXcd& y) -> Eigen::VectorXcd { return l * y; };
  const auto sample = [&](double t, const Eigen::VectorXcd& y) {
    const Eigen::MatrixXcd rho = Eigen::Map<const Eigen::MatrixXcd>(y.data(), d, d);
    return DensitySample{t, measure(spec, rho), (rho - rho.adjoint()).cwiseAbs().maxCoeff(),
                         min_eigenvalue(rho)};
  };

  Eigen::VectorXcd y = Eigen::Map<const Eigen::VectorXcd>(rho0.data(), d * d);
  std::vector<DensitySample> out{sample(0.0, y)};
  const long samples = static_cast<long>(std::ceil(t_end / sample_interval - 1e-12));
  double t = 0.0;
  double hint = 0.0;
  for (long k = 1; k <= samples; ++k) {
    const double next = k == samples ? t_end : static_cast<double>(k) * sample_interval;
    integrate_dp45(rhs, y, t, next, opt, [](double, const Eigen::VectorXcd&) {}, &hint);
    t = next;
    out.push_back(sample(t, y));
  }
  return out;
}

MaserDerivative classical_field_rhs(const LindbladChannels& ch, double g, double delta_omega,
                                    double alpha, const ChargeDensityMatrix& rho) {
  ch.validate();
  const auto ket_bra = [](int to, int from) {
    Eigen::Matrix3cd m = Eigen::Matrix3cd::Zero();
    m(to, from) = 1.0;
    return m;
  };
  const Eigen::Matrix3cd sz = ket_bra(kPlus, kPlus) - ket_bra(kMinus, kMinus);
  const Eigen::Matrix3cd sx = ket_bra(kPlus, kMinus) + ket_bra(kMinus, kPlus);
  const Eigen::MatrixXcd h = kTwoPi * (0.5 * delta_omega * sz + g * alpha * sx);

  std::vector<Eigen::MatrixXcd> jumps{
      std::sqrt(ch.pump_plus) * ket_bra(kPlus, kEmpty),
      std::sqrt(ch.pump_minus) * ket_bra(kMinus, kEmpty),
      std::sqrt(ch.drain_plus) * ket_bra(kEmpty, kPlus),
      std::sqrt(ch.drain_minus) * ket_bra(kEmpty, kMinus),
      std::sqrt(ch.relax) * ket_bra(kMinus, kPlus),
      std::sqrt(0.5 * ch.pure_dephase) * sz,
  };

  Eigen::MatrixXcd r = Eigen::MatrixXcd::Zero(3, 3);
  r(kEmpty, kEmpty) = 1.0 - rho.pp - rho.mm;
  r(kPlus, kPlus) = rho.pp;
  r(kMinus, kMinus) = rho.mm;
  r(kPlus, kMinus) = rho.pm;
  r(kMinus, kPlus) = std::conj(rho.pm);
  const Eigen::MatrixXcd dr = dense_lindblad(h, jumps, r);
  return {dr(kPlus, kPlus).real(), dr(kMinus, kMinus).real(), dr(kPlus, kMinus), 0.0};
}

OracleReport compare_semiclassical(const MaserConfig& cfg, const HilbertSpec& spec) {
  spec.validate();
  const LindbladChannels ch = LindbladChannels::from_maser(cfg);
  const double g = cfg.g0 * cfg.dot.tunnel / cfg.dot.splitting();
  const double n_sc = steady_photon_number(cfg).n_photons;

  HilbertSpec current = spec;
  const int max_fock = HilbertSpec::kMaxDimension / 3;
  while (true) {
    const Liouvillian l = build_liouvillian(current, ch, g, cfg.detuning);
    const Eigen::MatrixXcd rho = steady_state_density(l);
    const Observables obs = measure(current, rho);
    const bool adequate = obs.top_fock_population < 1e-6;
    if (adequate || current.n_fock >= max_fock) {
      OracleReport report{};
      report.n_quantum = obs.n_photons;
      report.n_semiclassical = n_sc;
      report.relative_gap =
          std::abs(obs.n_photons - n_sc) / std::max({1.0, obs.n_photons, n_sc});
      report.factorization_error = std::abs(obs.coherence - obs.field * obs.polarization);
      report.inversion_quantum = obs.inversion;
      report.top_fock_population = obs.top_fock_population;
      report.n_fock_used = current.n_fock;
      report.truncation_limited = !adequate;
      return report;
    }
    current.n_fock = std::min(2 * current.n_fock, max_fock);
  }
}

}  // namespace dotcavity
