#include "dotcavity/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>

#include "dotcavity/constants.hpp"
#include "dotcavity/device_model.hpp"
#include "dotcavity/error.hpp"
#include "dotcavity/lindblad.hpp"
#include "dotcavity/quasimode.hpp"

namespace dotcavity {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct Display {
  std::string unit;
  double divisor;
};

Display display_for(const std::string& experiment, const std::string& name) {
  static const std::map<std::string, Display> special{
      {"g0", {"MHz", 1e6}},       {"delta_omega", {"MHz", 1e6}}, {"pump", {"GHz", 1e9}},
      {"pump_drain", {"GHz", 1e9}}, {"width", {"ns", 1e-9}},
  };
  const auto it = special.find(name);
  if (it != special.end()) return it->second;
  switch (key_spec(experiment, name).kind) {
    case Kind::frequency: return {"GHz", 1e9};
    case Kind::rate: return {"1/s", 1.0};
    case Kind::time: return {"s", 1.0};
    case Kind::capacitance: return {"fF", 1e-15};
    case Kind::resistance: return {"ohm", 1.0};
    case Kind::length: return {"m", 1.0};
    case Kind::field: return {"T", 1.0};
    default: return {"", 1.0};
  }
}

Column input_column(const std::string& experiment, const std::string& name) {
  return {name, display_for(experiment, name).unit};
}

double shown(const std::string& experiment, const std::string& name, double value) {
  return value / display_for(experiment, name).divisor;
}

template <class F>
void as_config_error(F&& f) {
  try {
    f();
  } catch (const InvalidInput& e) {
    throw ConfigError(e.what());
  }
}

PulseEnvelope envelope(const ExperimentConfig& p) {
  const double width = p.number("width");
  const double carrier = p.number("carrier");
  if (p.choice("envelope") == "raised-cosine") return PulseEnvelope::raised_cosine(width, carrier);
  return PulseEnvelope::gaussian(width, carrier);
}

ThresholdOptions threshold_options(const ExperimentConfig& p) {
  ThresholdOptions opt;
  opt.gamma_min = p.number("gamma_min");
  opt.gamma_max = p.number("gamma_max");
  opt.points_per_decade = static_cast<int>(p.number("points_per_decade"));
  opt.rel_tol = p.number("rel_tol");
  return opt;
}

std::string lifetime_label(double kappa) {
  char buf[48];
  if (kappa <= 0.0) return "(kappa=0)";
  std::snprintf(buf, sizeof buf, "(1/kappa=%gus)", 1e6 / kappa);
  return buf;
}

std::vector<double> coupling_row(const ExperimentConfig& p) {
  const double f = p.number("mode_frequency");
  const double z0 = p.number("impedance");
  double lever = 0.0;
  if (p.has("lever_arm")) {
    lever = p.number("lever_arm");
  } else {
    CouplingSpec cpl{p.number("cap_coupling"), p.number("cap_dot")};
    cpl.validate();
    lever = cpl.lever_arm();
  }
  const double g0 = coupling_g0(f, lever, z0);
  std::vector<double> row{shown("coupling", "mode_frequency", f), lever, z0, g0 / 1e6,
                          static_coupling_ratio(lever, z0)};
  if (p.has("tunnel")) {
    const ModeCouplings mc = mode_couplings({p.number("tunnel"), p.number("bias")}, g0, f, f);
    row.push_back(mc.transverse / 1e6);
    row.push_back(mc.longitudinal / 1e6);
  }
  if (p.has("resonator_capacitance")) {
    row.push_back(voltage_rms(p.number("resonator_capacitance"), f) / 1e-6);
  }
  return row;
}

void check_point(const ExperimentConfig& p) {
  const std::string& e = p.experiment;
  if (e == "coupling") {
    coupling_row(p);
  } else if (e == "raman") {
    raman_config(p);
  } else if (e == "quasimode") {
    QuasimodeSpec{p.number("omega0"), p.number("quality")}.validate();
    envelope(p).bandwidth();
    const double tol = p.number("rel_tol");
    if (!(tol > 0.0 && tol < 1.0)) throw InvalidInput("rel_tol must lie in (0, 1)");
  } else {
    const MaserConfig m = maser_config(p);
    m.validate();
    if (e == "maser-threshold") {
      const ThresholdOptions opt = threshold_options(p);
      if (!(opt.gamma_min > 0.0 && opt.gamma_max > opt.gamma_min)) {
        throw InvalidInput("need 0 < gamma_min < gamma_max");
      }
      if (opt.points_per_decade < 1) throw InvalidInput("points_per_decade must be >= 1");
      if (!(opt.rel_tol > 0.0 && opt.rel_tol < 1.0)) {
        throw InvalidInput("rel_tol must lie in (0, 1)");
      }
      for (double k : p.list("photon_loss")) {
        if (!(k >= 0.0)) throw InvalidInput("photon_loss must be non-negative");
      }
      return;
    }
    if (!(m.pump_source > 0.0)) throw InvalidInput("pump must be positive");
    if (e == "maser-sweep" && !(m.dot.splitting() - m.detuning > 0.0)) {
      throw InvalidInput("resonator frequency splitting - delta_omega must be positive");
    }
    if (e == "maser-dynamics") {
      const double t_end = p.number("t_end");
      const double dt = p.number("sample_interval");
      if (!(t_end > 0.0 && dt > 0.0)) throw InvalidInput("t_end and sample_interval must be > 0");
      if (t_end / dt > 1e6) throw InvalidInput("more than 1e6 samples requested");
      if (!(p.number("initial_alpha") >= 0.0)) throw InvalidInput("initial_alpha must be >= 0");
      const double tol = p.number("rel_tol");
      if (!(tol > 0.0 && tol < 1.0)) throw InvalidInput("rel_tol must lie in (0, 1)");
    }
    if (e == "maser-oracle") {
      HilbertSpec{static_cast<int>(p.number("n_fock"))}.validate();
    }
  }
}

void run_coupling(const std::vector<ExperimentConfig>& points, RunResult& res, Execution exec) {
  const ExperimentConfig& first = points.front();
  auto& cols = res.table.columns;
  cols = {input_column("coupling", "mode_frequency"), {"lever_arm", ""},
          {"impedance", "ohm"}, {"g0", "MHz"}, {"static_ratio", ""}};
  if (first.has("tunnel") || (first.sweep && first.sweep->parameter == "tunnel")) {
    cols.push_back({"g_x", "MHz"});
    cols.push_back({"g_z", "MHz"});
  }
  if (first.has("resonator_capacitance") ||
      (first.sweep && first.sweep->parameter == "resonator_capacitance")) {
    cols.push_back({"v_rms", "uV"});
  }
  res.table.rows = evaluate_grid<std::vector<double>>(
      points.size(), [&](std::size_t i) { return coupling_row(points[i]); }, exec);
  res.plot.title = "Coupling constant";
  res.plot.y_columns = {3};
}

void run_threshold(const std::vector<ExperimentConfig>& points, RunResult& res, Execution exec) {
  const std::vector<double> kappas = points.front().list("photon_loss");
  const std::size_t nk = kappas.size();
  const auto results = evaluate_grid<std::optional<double>>(
      points.size() * nk,
      [&](std::size_t i) {
        MaserConfig m = maser_config(points[i / nk]);
        m.photon_loss = kappas[i % nk];
        return threshold_pump(m, threshold_options(points[i / nk]));
      },
      exec);
  auto& cols = res.table.columns;
  cols = {{"g0", "MHz"}};
  for (double k : kappas) cols.push_back({"pump_th" + lifetime_label(k), "GHz"});
  for (double k : kappas) cols.push_back({"current_th" + lifetime_label(k), "pA"});
  for (std::size_t p = 0; p < points.size(); ++p) {
    std::vector<double> row{points[p].number("g0") / 1e6};
    for (std::size_t k = 0; k < nk; ++k) {
      const auto& th = results[p * nk + k];
      row.push_back(th ? *th / 1e9 : kNaN);
    }
    for (std::size_t k = 0; k < nk; ++k) {
      const auto& th = results[p * nk + k];
      row.push_back(th ? *th * kElementaryCharge / 1e-12 : kNaN);
    }
    res.table.add_row(std::move(row));
  }
  res.plot.title = "Maser threshold pump rate";
  for (std::size_t k = 0; k < nk; ++k) res.plot.y_columns.push_back(1 + k);
  res.plot.x_log = true;
  res.plot.y_log = true;
  res.plot.skip_missing = true;
}

void run_photon_sweep(const std::vector<ExperimentConfig>& points, RunResult& res,
                      Execution exec) {
  res.table.columns = {{"pump", "GHz"},         {"n_photons", ""},      {"alpha_ss", ""},
                       {"inversion", ""},       {"small_signal_gain", "1/s"},
                       {"output_power", "fW"},  {"photon_flux", "1/s"}};
  res.table.rows = evaluate_grid<std::vector<double>>(
      points.size(),
      [&](std::size_t i) {
        const MaserConfig m = maser_config(points[i]);
        const PhotonNumber n = steady_photon_number(m);
        const double inversion =
            std::isfinite(n.alpha_ss) ? steady_state(m, n.alpha_ss).inversion() : kNaN;
        const double freq = m.dot.splitting() - m.detuning;
        const OutputPower p = std::isfinite(n.n_photons)
                                  ? output_power(n.n_photons, m.photon_loss, freq)
                                  : OutputPower{kNaN, kNaN};
        return std::vector<double>{m.pump_source / 1e9, n.n_photons, n.alpha_ss, inversion,
                                   field_growth_rate(m, 0.0), p.watts / 1e-15, p.photon_flux};
      },
      exec);
  res.plot.title = "Steady photon number";
  res.plot.y_columns = {1};
  res.plot.x_log = true;
}

void run_dynamics(const ExperimentConfig& p, RunResult& res) {
  const MaserConfig m = maser_config(p);
  MaserState initial;
  initial.alpha = p.number("initial_alpha");
  TimeEvolveOptions opt;
  opt.sample_interval = p.number("sample_interval");
  opt.rel_tol = p.number("rel_tol");
  const auto traj = time_evolve(initial, m, p.number("t_end"), opt);
  res.table.columns = {{"time", "us"},   {"alpha", ""},     {"n_photons", ""}, {"rho_pp", ""},
                       {"rho_mm", ""},    {"inversion", ""}, {"im_rho_pm", ""}};
  for (const auto& s : traj) {
    res.table.add_row({s.time / 1e-6, s.alpha, s.alpha * s.alpha, s.rho.pp, s.rho.mm,
                       s.rho.inversion(), s.rho.pm.imag()});
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", steady_photon_number(m).n_photons);
  res.table.metadata.emplace_back("steady_photon_number", buf);
  res.plot.title = "Field build-up";
  res.plot.y_columns = {2};
}

void run_oracle(const std::vector<ExperimentConfig>& points, RunResult& res, Execution exec) {
  std::vector<MaserConfig> configs;
  for (const auto& p : points) configs.push_back(maser_config(p));
  const HilbertSpec spec{static_cast<int>(points.front().number("n_fock"))};
  const auto reports = oracle_grid(configs, spec, exec);
  res.table.columns = {{"pump", "GHz"},
                       {"n_quantum", ""},
                       {"n_semiclassical", ""},
                       {"relative_gap", ""},
                       {"factorization_error", ""},
                       {"inversion_quantum", ""},
                       {"top_fock_population", ""},
                       {"n_fock_used", ""},
                       {"truncation_limited", ""}};
  for (std::size_t i = 0; i < reports.size(); ++i) {
    const auto& r = reports[i];
    res.table.add_row({configs[i].pump_source / 1e9, r.n_quantum, r.n_semiclassical,
                       r.relative_gap, r.factorization_error, r.inversion_quantum,
                       r.top_fock_population, static_cast<double>(r.n_fock_used),
                       r.truncation_limited ? 1.0 : 0.0});
  }
  res.plot.title = "Quantum vs semiclassical photon number";
  res.plot.y_columns = {1, 2};
}

void run_raman(const std::vector<ExperimentConfig>& points, RunResult& res, Execution exec) {
  res.table.columns = {{"detuning_eps", "GHz"}, {"eps_opt", "GHz"},   {"chi", "MHz"},
                       {"tau", "ns"},           {"gamma_eff", "1/s"}, {"p_error", ""},
                       {"p_error_opt", ""},     {"rwa_margin_esr", ""},
                       {"rwa_margin_sum", ""},  {"rwa_margin_dispersive", ""},
                       {"rwa_ok", ""}};
  res.table.rows = evaluate_grid<std::vector<double>>(
      points.size(),
      [&](std::size_t i) {
        const RamanConfig r = raman_config(points[i]);
        const EffectiveCoupling c = effective_coupling(r);
        const RwaCheck rwa = validate_rwa(r);
        const double eps_opt = r.gamma_d > 0.0 ? optimal_detuning(r) : kNaN;
        const double p_opt = r.gamma_d > 0.0 ? transfer_error(r, true) : kNaN;
        return std::vector<double>{r.detuning_eps / 1e9, eps_opt / 1e9, c.chi / 1e6,
                                   c.transfer_time / 1e-9, effective_dephasing(r),
                                   transfer_error(r, false), p_opt, rwa.margins[0],
                                   rwa.margins[1], rwa.margins[2], rwa.ok ? 1.0 : 0.0};
      },
      exec);
  res.plot.title = "Raman transfer error";
  res.plot.y_columns = {5};
  res.plot.allow_single_point = true;
}

void run_quasimode(const std::vector<ExperimentConfig>& points, RunResult& res,
                   Execution exec) {
  res.table.columns = {{"quality", ""}, {"ratio", ""},   {"ratio_times_q", ""},
                       {"kappa_a", ""}, {"kappa_b", ""}, {"bandwidth_over_omega0", ""}};
  res.table.rows = evaluate_grid<std::vector<double>>(
      points.size(),
      [&](std::size_t i) {
        const ExperimentConfig& p = points[i];
        const PulseEnvelope env = envelope(p);
        const QuasimodeSpec spec{p.number("omega0"), p.number("quality")};
        QuadratureOptions opt;
        opt.rel_tol = p.number("rel_tol");
        opt.amplitude_weighting = p.choice("amplitude_weighting") == "yes";
        const DephasingIntegrals k = dephasing_integrals(env, spec, p.number("g0"), opt);
        if (!(k.kappa_a > 0.0)) throw SolverError("envelope carries no spectral weight");
        const double ratio = k.kappa_b / k.kappa_a;
        return std::vector<double>{spec.quality, ratio, ratio * spec.quality, k.kappa_a,
                                   k.kappa_b, env.bandwidth() / (kTwoPi * spec.omega0)};
      },
      exec);
  res.plot.title = "Quasimode dephasing suppression";
  res.plot.y_columns = {1};
  res.plot.x_log = true;
  res.plot.y_log = true;
}

const std::map<std::string, std::string>& presets() {
  static const std::map<std::string, std::string> p{
      {"fig3a",
       "# Threshold pump rate (and current e*Gamma) versus g0 for three cavity\n"
       "# lifetimes; Omega = 30 GHz with Delta = 2T.\n"
       "experiment = maser-threshold\n"
       "tunnel = 10.606601717798213 GHz\n"
       "bias = 21.213203435596427 GHz\n"
       "delta_omega = 0 Hz\n"
       "relaxation = 10 ns\n"
       "dephasing = 1 ns\n"
       "photon_loss = 0.1 us, 1 us, 10 us\n"
       "sweep.parameter = g0\n"
       "sweep.start = 30 MHz\n"
       "sweep.stop = 300 MHz\n"
       "sweep.points = 21\n"
       "sweep.scale = log\n"},
      {"fig3b",
       "# Steady photon number versus pump rate Gamma_L = Gamma_R.\n"
       "experiment = maser-sweep\n"
       "tunnel = 10.606601717798213 GHz\n"
       "bias = 21.213203435596427 GHz\n"
       "delta_omega = 0 Hz\n"
       "g0 = 100 MHz\n"
       "relaxation = 10 ns\n"
       "dephasing = 1 ns\n"
       "photon_loss = 1 us\n"
       "sweep.parameter = pump\n"
       "sweep.start = 0.05 GHz\n"
       "sweep.stop = 200 GHz\n"
       "sweep.points = 97\n"
       "sweep.scale = log\n"},
      {"raman-example",
       "# Spin-photon Raman transfer at the optimal detuning.\n"
       "experiment = raman\n"
       "tunnel = 25 GHz\n"
       "bias = 0 Hz\n"
       "g0 = 870 MHz\n"
       "esr_beta = 1 GHz\n"
       "spin_splitting = 0.5 GHz\n"
       "gamma_c = 1 ns\n"
       "gamma_s = 1 us\n"
       "kappa = 1 us\n"
       "gamma_d = 1 us\n"},
      {"quasimode-ratio",
       "# kappa_b / kappa_a versus Q for a slow gaussian (sigma * omega0 = 1e4).\n"
       "experiment = quasimode\n"
       "omega0 = 50 GHz\n"
       "envelope = gaussian\n"
       "width = 31.830988618379067 ns\n"
       "sweep.parameter = quality\n"
       "sweep.start = 100\n"
       "sweep.stop = 100000\n"
       "sweep.points = 13\n"
       "sweep.scale = log\n"},
  };
  return p;
}

}  // namespace

MaserConfig maser_config(const ExperimentConfig& p) {
  MaserConfig m;
  m.dot = {p.number("tunnel"), p.number("bias")};
  m.detuning = p.number("delta_omega");
  m.g0 = p.number("g0");
  m.relaxation = p.number("relaxation");
  m.dephasing = p.number("dephasing");
  const auto& kappa = p.list("photon_loss");
  m.photon_loss = kappa.empty() ? 0.0 : kappa.front();
  if (p.has("pump")) {
    m.pump_source = p.number("pump");
    m.pump_drain = p.has("pump_drain") ? p.number("pump_drain") : m.pump_source;
  }
  return m;
}

RamanConfig raman_config(const ExperimentConfig& p) {
  const DotParams dot{p.number("tunnel"), p.number("bias")};
  const double delta = p.has("spin_splitting") ? p.number("spin_splitting")
                                               : gaas_spin_splitting(p.number("field"));
  RamanConfig probe;
  probe.dot = dot;
  probe.g0 = p.number("g0");
  probe.esr_beta = p.number("esr_beta");
  probe.gamma_c = p.number("gamma_c");
  probe.gamma_d = p.number("gamma_d");
  const double eps = p.has("detuning_eps") ? p.number("detuning_eps") : optimal_detuning(probe);
  return RamanConfig::matched(dot, probe.g0, probe.esr_beta, delta, eps, probe.gamma_c,
                              p.number("gamma_s"), p.number("kappa"), probe.gamma_d);
}

std::vector<ExperimentConfig> expand_sweep(const ExperimentConfig& cfg) {
  if (!cfg.sweep) return {cfg};
  const auto& s = *cfg.sweep;
  std::vector<ExperimentConfig> out;
  for (double v : sweep_points(s.start, s.stop, s.points, s.log_scale)) {
    ExperimentConfig p = cfg;
    p.sweep.reset();
    p.numbers[s.parameter] = {v};
    out.push_back(std::move(p));
  }
  return out;
}

void check_experiment(const ExperimentConfig& cfg) {
  if (cfg.experiment == "maser-dynamics" && cfg.sweep) {
    throw ConfigError("maser-dynamics does not take a sweep block");
  }
  as_config_error([&] {
    for (const auto& p : expand_sweep(cfg)) check_point(p);
  });
}

RunResult run_experiment(const ExperimentConfig& cfg, Execution exec) {
  check_experiment(cfg);
  const auto points = expand_sweep(cfg);
  RunResult res;
  const std::string& e = cfg.experiment;
  if (e == "coupling") {
    run_coupling(points, res, exec);
  } else if (e == "maser-threshold") {
    run_threshold(points, res, exec);
  } else if (e == "maser-sweep") {
    run_photon_sweep(points, res, exec);
  } else if (e == "maser-dynamics") {
    run_dynamics(cfg, res);
  } else if (e == "maser-oracle") {
    run_oracle(points, res, exec);
  } else if (e == "raman") {
    run_raman(points, res, exec);
  } else if (e == "quasimode") {
    run_quasimode(points, res, exec);
  } else {
    throw ConfigError("unknown experiment '" + e + "'");
  }

  if (cfg.sweep) {
    const std::string& param = cfg.sweep->parameter;
    std::size_t index = 0;
    bool found = false;
    for (; index < res.table.columns.size(); ++index) {
      if (res.table.columns[index].name == param) {
        found = true;
        break;
      }
    }
    if (!found) {
      res.table.columns.insert(res.table.columns.begin(), input_column(e, param));
      for (std::size_t i = 0; i < points.size(); ++i) {
        res.table.rows[i].insert(res.table.rows[i].begin(),
                                 shown(e, param, points[i].number(param)));
      }
      for (auto& y : res.plot.y_columns) ++y;
      index = 0;
    }
    res.plot.x_column = index;
    res.plot.x_log = cfg.sweep->log_scale;
  }
  if (!cfg.plot.x_scale.empty()) res.plot.x_log = cfg.plot.x_scale == "log";
  if (!cfg.plot.y_scale.empty()) res.plot.y_log = cfg.plot.y_scale == "log";

  auto& meta = res.table.metadata;
  meta.insert(meta.begin(), {{"tool", std::string("dotcavity ") + DOTCAVITY_VERSION},
                             {"experiment", e},
                             {"config", canonical_text(cfg)}});
  return res;
}

std::vector<std::string> preset_names() {
  std::vector<std::string> out;
  for (const auto& [name, text] : presets()) out.push_back(name);
  return out;
}

const std::string& preset_text(const std::string& name) {
  const auto it = presets().find(name);
  if (it == presets().end()) {
    std::string names;
    for (const auto& n : preset_names()) names += (names.empty() ? "" : ", ") + n;
    throw ConfigError("unknown preset '" + name + "' (available: " + names + ")");
  }
  return it->second;
}

ExperimentConfig preset_config(const std::string& name) {
  return parse_config(preset_text(name));
}

}  // namespace dotcavity
