#pragma once

// Experiment configuration files: one `key = value [unit]` per line, `#`
// starts a comment. Dimensional values must carry a unit; they are stored
// in base units (Hz, 1/s, s, F, ohm, m, T). Keys are checked against a
// strict per-experiment schema.

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace dotcavity {

enum class Kind {
  frequency,    // Hz, kHz, MHz, GHz, THz
  rate,         // 1/s; a lifetime (s, ms, us, ns, ps) is inverted; Hz-family
                // values are read as the same number of 1/s
  time,         // s, ms, us, ns, ps, fs
  capacitance,  // F, nF, pF, fF, aF
  resistance,   // ohm, kohm, Mohm
  length,       // m, cm, mm, um, nm
  field,        // T, mT
  dimensionless,
  integer,
  choice,
};

struct KeySpec {
  std::string name;
  Kind kind;
  bool required = false;
  std::string default_value;  // config text; empty means no default
  bool list = false;          // comma-separated values accepted
  bool sweepable = false;
  std::vector<std::string> choices;
  std::string doc;
};

struct SweepSpec {
  std::string parameter;
  double start = 0.0;
  double stop = 0.0;
  int points = 0;
  bool log_scale = false;

  bool operator==(const SweepSpec&) const = default;
};

struct OutputSpec {
  std::string path;  // empty: standard output
  std::string format = "csv";
  bool plot = false;

  bool operator==(const OutputSpec&) const = default;
};

struct PlotHints {
  std::string x_scale;  // "", "linear" or "log"; empty keeps the default
  std::string y_scale;

  bool operator==(const PlotHints&) const = default;
};

struct ExperimentConfig {
  std::string experiment;
  std::map<std::string, std::vector<double>> numbers;
  std::map<std::string, std::string> choices;
  std::optional<SweepSpec> sweep;
  OutputSpec output;
  PlotHints plot;

  bool has(const std::string& key) const;
  // Single numeric value in base units; throws ConfigError when absent.
  double number(const std::string& key) const;
  const std::vector<double>& list(const std::string& key) const;
  const std::string& choice(const std::string& key) const;

  bool operator==(const ExperimentConfig&) const = default;
};

std::vector<std::string> experiment_names();
// Throws ConfigError for an unknown experiment.
const std::vector<KeySpec>& experiment_schema(const std::string& experiment);
const KeySpec& key_spec(const std::string& experiment, const std::string& key);
std::string base_unit(Kind kind);

// Value with unit in base units, e.g. "30 MHz" -> 3e7 for Kind::frequency.
// Throws ConfigError (without a line number).
double parse_quantity(std::string_view text, Kind kind);

// Throws ConfigError carrying the offending line number.
ExperimentConfig parse_config(std::string_view text);
ExperimentConfig load_config(const std::string& path);

// Every resolved value (defaults included) in base units with %.17g, one
// key per line; parse_config(canonical_text(c)) == c.
std::string canonical_text(const ExperimentConfig& cfg);

// Markdown listing of all experiments and keys.
std::string schema_reference();

}  // namespace dotcavity
