#include "dotcavity/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "dotcavity/error.hpp"

namespace dotcavity {

namespace {

struct Unit {
  const char* name;
  double scale;
};

const std::vector<Unit>& units_for(Kind kind) {
  static const std::vector<Unit> frequency{
      {"Hz", 1.0}, {"kHz", 1e3}, {"MHz", 1e6}, {"GHz", 1e9}, {"THz", 1e12}};
  static const std::vector<Unit> time{{"s", 1.0},    {"ms", 1e-3},  {"us", 1e-6},
                                      {"µs", 1e-6}, {"ns", 1e-9}, {"ps", 1e-12},
                                      {"fs", 1e-15}};
  static const std::vector<Unit> capacitance{
      {"F", 1.0}, {"nF", 1e-9}, {"pF", 1e-12}, {"fF", 1e-15}, {"aF", 1e-18}};
  static const std::vector<Unit> resistance{{"ohm", 1.0}, {"kohm", 1e3}, {"Mohm", 1e6}};
  static const std::vector<Unit> length{
      {"m", 1.0}, {"cm", 1e-2}, {"mm", 1e-3}, {"um", 1e-6}, {"nm", 1e-9}};
  static const std::vector<Unit> field{{"T", 1.0}, {"mT", 1e-3}};
  static const std::vector<Unit> none;
  switch (kind) {
    case Kind::frequency: return frequency;
    case Kind::time: return time;
    case Kind::capacitance: return capacitance;
    case Kind::resistance: return resistance;
    case Kind::length: return length;
    case Kind::field: return field;
    default: return none;
  }
}

const char* kind_name(Kind kind) {
  switch (kind) {
    case Kind::frequency: return "frequency";
    case Kind::rate: return "rate";
    case Kind::time: return "time";
    case Kind::capacitance: return "capacitance";
    case Kind::resistance: return "resistance";
    case Kind::length: return "length";
    case Kind::field: return "field";
    case Kind::dimensionless: return "dimensionless";
    case Kind::integer: return "integer";
    case Kind::choice: return "choice";
  }
  return "?";
}

std::string unit_list(Kind kind) {
  if (kind == Kind::rate) return "1/s, a frequency unit, or a lifetime (s, ms, us, ns, ps)";
  std::string out;
  for (const auto& u : units_for(kind)) {
    if (!out.empty()) out += ", ";
    out += u.name;
  }
  return out;
}

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

KeySpec key(std::string name, Kind kind, bool required, std::string def, std::string doc,
            bool sweepable = true) {
  KeySpec k;
  k.name = std::move(name);
  k.kind = kind;
  k.required = required;
  k.default_value = std::move(def);
  k.sweepable = sweepable && kind != Kind::choice && kind != Kind::integer;
  k.doc = std::move(doc);
  return k;
}

KeySpec choice(std::string name, std::vector<std::string> choices, std::string def,
               std::string doc) {
  KeySpec k = key(std::move(name), Kind::choice, false, std::move(def), std::move(doc), false);
  k.choices = std::move(choices);
  return k;
}

std::vector<KeySpec> maser_keys(bool with_pump) {
  std::vector<KeySpec> keys{
      key("tunnel", Kind::frequency, true, "", "interdot tunnel coupling T"),
      key("bias", Kind::frequency, true, "", "interdot level detuning Delta"),
      key("delta_omega", Kind::frequency, false, "0 Hz",
          "charge splitting minus resonator frequency"),
      key("g0", Kind::frequency, true, "", "bare dot-resonator coupling"),
      key("relaxation", Kind::rate, true, "", "inelastic |+> -> |-> rate gamma_r"),
      key("dephasing", Kind::rate, true, "", "charge dephasing gamma_c (>= gamma_r / 2)"),
      key("photon_loss", Kind::rate, true, "", "resonator field decay kappa"),
  };
  if (with_pump) {
    keys.push_back(key("pump", Kind::rate, true, "", "lead tunnelling rate Gamma_L = Gamma_R"));
    keys.push_back(key("pump_drain", Kind::rate, false, "",
                       "drain rate Gamma_R when it differs from pump"));
  }
  return keys;
}

std::map<std::string, std::vector<KeySpec>> build_schemas() {
  std::map<std::string, std::vector<KeySpec>> s;

  s["coupling"] = {
      key("mode_frequency", Kind::frequency, true, "", "resonator mode frequency"),
      key("impedance", Kind::resistance, true, "", "line impedance Z0"),
      key("lever_arm", Kind::dimensionless, false, "",
          "C_c / (C_c + C_d); alternative to cap_coupling + cap_dot"),
      key("cap_coupling", Kind::capacitance, false, "", "dot-resonator capacitance C_c"),
      key("cap_dot", Kind::capacitance, false, "", "remaining dot capacitance C_d"),
      key("tunnel", Kind::frequency, false, "",
          "tunnel coupling T; enables the transverse/longitudinal split"),
      key("bias", Kind::frequency, false, "0 Hz", "level detuning Delta"),
      key("resonator_capacitance", Kind::capacitance, false, "",
          "total line capacitance l C0; enables the zero-point voltage"),
  };

  auto threshold = maser_keys(false);
  for (auto& k : threshold) {
    if (k.name == "photon_loss") {
      k.list = true;
      k.sweepable = false;
      k.doc = "resonator field decay kappa; comma-separated list gives one curve each";
    }
  }
  threshold.push_back(key("gamma_min", Kind::rate, false, "1000 1/s", "threshold search floor",
                          false));
  threshold.push_back(key("gamma_max", Kind::rate, false, "1e12 1/s",
                          "threshold search ceiling", false));
  threshold.push_back(key("points_per_decade", Kind::integer, false, "20",
                          "coarse scan density before bisection"));
  threshold.push_back(key("rel_tol", Kind::dimensionless, false, "1e-6",
                          "relative bisection tolerance", false));
  s["maser-threshold"] = threshold;

  s["maser-sweep"] = maser_keys(true);

  auto dynamics = maser_keys(true);
  for (auto& k : dynamics) k.sweepable = false;
  dynamics.push_back(key("t_end", Kind::time, true, "", "integration time", false));
  dynamics.push_back(key("sample_interval", Kind::time, true, "", "output spacing", false));
  dynamics.push_back(key("initial_alpha", Kind::dimensionless, false, "1",
                         "initial field amplitude (dot starts empty)", false));
  dynamics.push_back(key("rel_tol", Kind::dimensionless, false, "1e-8",
                         "integrator relative tolerance", false));
  s["maser-dynamics"] = dynamics;

  auto oracle = maser_keys(true);
  oracle.push_back(key("n_fock", Kind::integer, false, "8",
                       "initial Fock truncation; doubled until adequate"));
  s["maser-oracle"] = oracle;

  s["raman"] = {
      key("tunnel", Kind::frequency, true, "", "tunnel coupling T"),
      key("bias", Kind::frequency, false, "0 Hz", "level detuning Delta"),
      key("g0", Kind::frequency, true, "", "bare dot-resonator coupling"),
      key("esr_beta", Kind::frequency, true, "", "local ESR Rabi amplitude beta"),
      key("spin_splitting", Kind::frequency, false, "", "Zeeman splitting delta"),
      key("field", Kind::field, false, "",
          "B_z; sets delta = 6.2 GHz/T * B_z when spin_splitting is absent"),
      key("detuning_eps", Kind::frequency, false, "",
          "eps = Omega - delta - nu; defaults to the optimum"),
      key("gamma_c", Kind::rate, true, "", "charge dephasing"),
      key("gamma_s", Kind::rate, true, "", "spin dephasing"),
      key("kappa", Kind::rate, false, "0 1/s", "photon loss"),
      key("gamma_d", Kind::rate, true, "", "metastable decoherence (<= max(gamma_s, kappa))"),
  };

  s["quasimode"] = {
      key("omega0", Kind::frequency, true, "", "resonator frequency"),
      key("quality", Kind::dimensionless, true, "", "quality factor Q"),
      choice("envelope", {"gaussian", "raised-cosine"}, "gaussian", "pulse shape"),
      key("width", Kind::time, true, "", "gaussian sigma or raised-cosine half width"),
      key("carrier", Kind::frequency, false, "0 Hz", "pulse carrier frequency"),
      key("g0", Kind::frequency, false, "1 Hz", "coupling scale of kappa_a and kappa_b"),
      key("rel_tol", Kind::dimensionless, false, "1e-8", "quadrature relative tolerance", false),
      choice("amplitude_weighting", {"no", "yes"}, "no",
             "multiply the filtered integrand by omega/omega0"),
  };
  return s;
}

const std::map<std::string, std::vector<KeySpec>>& schemas() {
  static const auto s = build_schemas();
  return s;
}

double parse_number(std::string_view text, std::string_view* rest) {
  const std::string t = trim(text);
  double v = 0.0;
  const char* begin = t.data();
  if (!t.empty() && t[0] == '+') ++begin;
  const auto [ptr, ec] = std::from_chars(begin, t.data() + t.size(), v);
  if (ec != std::errc() || !std::isfinite(v)) {
    throw ConfigError("expected a number, got '" + t + "'");
  }
  const std::size_t used = static_cast<std::size_t>(ptr - t.data());
  const std::size_t offset = text.find_first_not_of(" \t\r");
  *rest = text.substr(offset + used);
  return v;
}

std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> out;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(trim(item));
  return out;
}

struct Entry {
  std::string value;
  int line;
};

}  // namespace

std::string base_unit(Kind kind) {
  switch (kind) {
    case Kind::frequency: return "Hz";
    case Kind::rate: return "1/s";
    case Kind::time: return "s";
    case Kind::capacitance: return "F";
    case Kind::resistance: return "ohm";
    case Kind::length: return "m";
    case Kind::field: return "T";
    default: return "";
  }
}

double parse_quantity(std::string_view text, Kind kind) {
  std::string_view rest;
  const double v = parse_number(text, &rest);
  const std::string unit = trim(rest);
  switch (kind) {
    case Kind::dimensionless:
    case Kind::integer:
      if (!unit.empty()) throw ConfigError("unexpected unit '" + unit + "' on a " +
                                           kind_name(kind) + " value");
      if (kind == Kind::integer &&
          (v != std::floor(v) || std::abs(v) > 2147483647.0)) {
        throw ConfigError("expected an integer, got '" + trim(text) + "'");
      }
      return v;
    case Kind::choice:
      throw ConfigError("choice values are not numeric");
    case Kind::rate: {
      if (unit.empty()) throw ConfigError("missing unit; use " + unit_list(kind));
      if (unit == "1/s" || unit == "/s") return v;
      for (const auto& u : units_for(Kind::frequency)) {
        if (unit == u.name) return v * u.scale;
      }
      for (const auto& u : units_for(Kind::time)) {
        if (unit == u.name) {
          if (v <= 0.0) throw ConfigError("a lifetime must be positive");
          return 1.0 / (v * u.scale);
        }
      }
      throw ConfigError("unit '" + unit + "' is not a rate; use " + unit_list(kind));
    }
    default: {
      if (unit.empty()) {
        throw ConfigError(std::string("missing unit on a ") + kind_name(kind) + " value; use " +
                          unit_list(kind));
      }
      for (const auto& u : units_for(kind)) {
        if (unit == u.name) return v * u.scale;
      }
      throw ConfigError("unit '" + unit + "' is not a " + kind_name(kind) + " unit; use " +
                        unit_list(kind));
    }
  }
}

bool ExperimentConfig::has(const std::string& key) const {
  return numbers.count(key) > 0 || choices.count(key) > 0;
}

double ExperimentConfig::number(const std::string& key) const {
  const auto it = numbers.find(key);
  if (it == numbers.end() || it->second.empty()) throw ConfigError("missing value for '" + key + "'");
  if (it->second.size() != 1) throw ConfigError("'" + key + "' holds a list, expected one value");
  return it->second.front();
}

const std::vector<double>& ExperimentConfig::list(const std::string& key) const {
  const auto it = numbers.find(key);
  if (it == numbers.end()) throw ConfigError("missing value for '" + key + "'");
  return it->second;
}

const std::string& ExperimentConfig::choice(const std::string& key) const {
  const auto it = choices.find(key);
  if (it == choices.end()) throw ConfigError("missing value for '" + key + "'");
  return it->second;
}

std::vector<std::string> experiment_names() {
  std::vector<std::string> out;
  for (const auto& [name, keys] : schemas()) out.push_back(name);
  return out;
}

const std::vector<KeySpec>& experiment_schema(const std::string& experiment) {
  const auto it = schemas().find(experiment);
  if (it == schemas().end()) {
    std::string names;
    for (const auto& n : experiment_names()) names += (names.empty() ? "" : ", ") + n;
    throw ConfigError("unknown experiment '" + experiment + "' (expected one of " + names + ")");
  }
  return it->second;
}

const KeySpec& key_spec(const std::string& experiment, const std::string& name) {
  for (const auto& k : experiment_schema(experiment)) {
    if (k.name == name) return k;
  }
  throw ConfigError("unknown key '" + name + "' for experiment '" + experiment + "'");
}

ExperimentConfig parse_config(std::string_view text) {
  std::map<std::string, Entry> entries;
  std::vector<std::string> order;
  {
    std::istringstream in{std::string(text)};
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
      ++line;
      const auto hash = raw.find('#');
      const std::string body = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
      if (body.empty()) continue;
      const auto eq = body.find('=');
      if (eq == std::string::npos) throw ConfigError("expected 'key = value'", line);
      const std::string k = trim(body.substr(0, eq));
      const std::string v = trim(body.substr(eq + 1));
      if (k.empty()) throw ConfigError("missing key before '='", line);
      if (v.empty()) throw ConfigError("missing value for '" + k + "'", line);
      if (entries.count(k)) {
        throw ConfigError("duplicate key '" + k + "' (first set on line " +
                          std::to_string(entries[k].line) + ")", line);
      }
      entries[k] = {v, line};
      order.push_back(k);
    }
  }

  ExperimentConfig cfg;
  const auto exp = entries.find("experiment");
  if (exp == entries.end()) throw ConfigError("missing required key 'experiment'");
  try {
    experiment_schema(exp->second.value);
  } catch (const ConfigError& e) {
    throw ConfigError(e.what(), exp->second.line);
  }
  cfg.experiment = exp->second.value;
  const auto& schema = experiment_schema(cfg.experiment);

  std::map<std::string, Entry> sweep_entries;
  for (const auto& k : order) {
    const Entry& e = entries[k];
    if (k == "experiment") continue;
    try {
      if (k.rfind("sweep.", 0) == 0) {
        static const std::set<std::string> allowed{"sweep.parameter", "sweep.start", "sweep.stop",
                                                   "sweep.points", "sweep.scale"};
        if (!allowed.count(k)) throw ConfigError("unknown sweep field '" + k + "'");
        sweep_entries[k] = e;
      } else if (k == "output.path") {
        cfg.output.path = e.value;
      } else if (k == "output.format") {
        if (e.value != "csv" && e.value != "json") {
          throw ConfigError("output.format must be csv or json, got '" + e.value + "'");
        }
        cfg.output.format = e.value;
      } else if (k == "output.plot") {
        if (e.value != "none" && e.value != "svg") {
          throw ConfigError("output.plot must be none or svg, got '" + e.value + "'");
        }
        cfg.output.plot = e.value == "svg";
      } else if (k == "plot.x_scale" || k == "plot.y_scale") {
        if (e.value != "linear" && e.value != "log") {
          throw ConfigError(k + " must be linear or log, got '" + e.value + "'");
        }
        (k == "plot.x_scale" ? cfg.plot.x_scale : cfg.plot.y_scale) = e.value;
      } else {
        const KeySpec& spec = key_spec(cfg.experiment, k);
        if (spec.kind == Kind::choice) {
          if (std::find(spec.choices.begin(), spec.choices.end(), e.value) == spec.choices.end()) {
            std::string opts;
            for (const auto& c : spec.choices) opts += (opts.empty() ? "" : ", ") + c;
            throw ConfigError("'" + k + "' must be one of " + opts + ", got '" + e.value + "'");
          }
          cfg.choices[k] = e.value;
        } else {
          const auto items = split_list(e.value);
          if (items.size() > 1 && !spec.list) {
            throw ConfigError("'" + k + "' takes a single value, not a list");
          }
          std::vector<double> values;
          for (const auto& item : items) {
            try {
              values.push_back(parse_quantity(item, spec.kind));
            } catch (const ConfigError& inner) {
              throw ConfigError("'" + k + "': " + inner.what());
            }
          }
          cfg.numbers[k] = values;
        }
      }
    } catch (const ConfigError& err) {
      if (err.line() > 0) throw;
      throw ConfigError(err.what(), e.line);
    }
  }

  if (!sweep_entries.empty()) {
    const int first_line = std::min_element(sweep_entries.begin(), sweep_entries.end(),
                                            [](const auto& a, const auto& b) {
                                              return a.second.line < b.second.line;
                                            })->second.line;
    for (const char* field : {"sweep.parameter", "sweep.start", "sweep.stop", "sweep.points"}) {
      if (!sweep_entries.count(field)) {
        throw ConfigError(std::string("sweep block is missing '") + field + "'", first_line);
      }
    }
    SweepSpec sweep;
    const Entry& param = sweep_entries["sweep.parameter"];
    sweep.parameter = param.value;
    const KeySpec* spec = nullptr;
    try {
      spec = &key_spec(cfg.experiment, sweep.parameter);
    } catch (const ConfigError& e) {
      throw ConfigError(e.what(), param.line);
    }
    if (!spec->sweepable) {
      throw ConfigError("'" + sweep.parameter + "' cannot be swept in experiment '" +
                        cfg.experiment + "'", param.line);
    }
    if (entries.count(sweep.parameter)) {
      throw ConfigError("'" + sweep.parameter + "' is both set and swept",
                        entries[sweep.parameter].line);
    }
    const auto parse_field = [&](const char* field, Kind kind) {
      const Entry& e = sweep_entries[field];
      try {
        return parse_quantity(e.value, kind);
      } catch (const ConfigError& err) {
        throw ConfigError(std::string(field) + ": " + err.what(), e.line);
      }
    };
    sweep.start = parse_field("sweep.start", spec->kind);
    sweep.stop = parse_field("sweep.stop", spec->kind);
    const double points = parse_field("sweep.points", Kind::integer);
    if (points < 1) throw ConfigError("sweep.points must be >= 1", sweep_entries["sweep.points"].line);
    sweep.points = static_cast<int>(points);
    if (sweep_entries.count("sweep.scale")) {
      const Entry& e = sweep_entries["sweep.scale"];
      if (e.value != "linear" && e.value != "log") {
        throw ConfigError("sweep.scale must be linear or log, got '" + e.value + "'", e.line);
      }
      sweep.log_scale = e.value == "log";
    }
    if (sweep.log_scale && (sweep.start <= 0.0 || sweep.stop <= 0.0)) {
      throw ConfigError("log sweep bounds must be positive", first_line);
    }
    cfg.sweep = sweep;
  }

  for (const auto& spec : schema) {
    if (cfg.has(spec.name) || (cfg.sweep && cfg.sweep->parameter == spec.name)) continue;
    if (!spec.default_value.empty()) {
      if (spec.kind == Kind::choice) {
        cfg.choices[spec.name] = spec.default_value;
      } else {
        cfg.numbers[spec.name] = {parse_quantity(spec.default_value, spec.kind)};
      }
    } else if (spec.required) {
      throw ConfigError("missing required key '" + spec.name + "' for experiment '" +
                        cfg.experiment + "'");
    }
  }

  const auto present = [&](const char* k) {
    return cfg.has(k) || (cfg.sweep && cfg.sweep->parameter == k);
  };
  const auto line_of = [&](const char* k) { return entries.count(k) ? entries[k].line : 0; };
  if (cfg.experiment == "coupling") {
    const bool lever = present("lever_arm");
    const bool caps = present("cap_coupling") || present("cap_dot");
    if (lever && caps) {
      throw ConfigError("give either lever_arm or cap_coupling + cap_dot, not both",
                        line_of("lever_arm"));
    }
    if (!lever && !(present("cap_coupling") && present("cap_dot"))) {
      throw ConfigError("coupling needs lever_arm or both cap_coupling and cap_dot");
    }
  } else if (cfg.experiment == "raman") {
    const bool split = present("spin_splitting");
    const bool field = present("field");
    if (split == field) {
      throw ConfigError("raman needs exactly one of spin_splitting or field",
                        std::max(line_of("spin_splitting"), line_of("field")));
    }
  }
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str());
}

std::string canonical_text(const ExperimentConfig& cfg) {
  std::ostringstream out;
  out << "experiment = " << cfg.experiment << '\n';
  for (const auto& spec : experiment_schema(cfg.experiment)) {
    if (spec.kind == Kind::choice) {
      const auto it = cfg.choices.find(spec.name);
      if (it != cfg.choices.end()) out << spec.name << " = " << it->second << '\n';
      continue;
    }
    const auto it = cfg.numbers.find(spec.name);
    if (it == cfg.numbers.end()) continue;
    out << spec.name << " = ";
    const std::string unit = base_unit(spec.kind);
    for (std::size_t i = 0; i < it->second.size(); ++i) {
      if (i > 0) out << ", ";
      out << format_number(it->second[i]);
      if (!unit.empty()) out << ' ' << unit;
    }
    out << '\n';
  }
  if (cfg.sweep) {
    const auto& s = *cfg.sweep;
    const std::string unit = base_unit(key_spec(cfg.experiment, s.parameter).kind);
    const std::string suffix = unit.empty() ? "" : " " + unit;
    out << "sweep.parameter = " << s.parameter << '\n'
        << "sweep.start = " << format_number(s.start) << suffix << '\n'
        << "sweep.stop = " << format_number(s.stop) << suffix << '\n'
        << "sweep.points = " << s.points << '\n'
        << "sweep.scale = " << (s.log_scale ? "log" : "linear") << '\n';
  }
  if (!cfg.output.path.empty()) out << "output.path = " << cfg.output.path << '\n';
  out << "output.format = " << cfg.output.format << '\n';
  out << "output.plot = " << (cfg.output.plot ? "svg" : "none") << '\n';
  if (!cfg.plot.x_scale.empty()) out << "plot.x_scale = " << cfg.plot.x_scale << '\n';
  if (!cfg.plot.y_scale.empty()) out << "plot.y_scale = " << cfg.plot.y_scale << '\n';
  return out.str();
}

std::string schema_reference() {
  std::ostringstream out;
  for (const auto& [name, keys] : schemas()) {
    out << "### " << name << "\n\n"
        << "| key | kind | required | default | sweep | description |\n"
        << "|---|---|---|---|---|---|\n";
    for (const auto& k : keys) {
      std::string kind = kind_name(k.kind);
      if (k.kind == Kind::choice) {
        kind.clear();
        for (const auto& c : k.choices) kind += (kind.empty() ? "" : " \\| ") + c;
      }
      if (k.list) kind += " list";
      out << "| `" << k.name << "` | " << kind << " | " << (k.required ? "yes" : "no") << " | "
          << (k.default_value.empty() ? "" : "`" + k.default_value + "`") << " | "
          << (k.sweepable ? "yes" : "no") << " | " << k.doc << " |\n";
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace dotcavity
