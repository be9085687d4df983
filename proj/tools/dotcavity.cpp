// dotcavity: batch front end for the double-dot / resonator models.
//
//   dotcavity run <config>
//   dotcavity preset <name> [--out PATH] [--plot]
//   dotcavity validate <config>
//   dotcavity schema
//
// Exit codes: 0 success, 2 configuration or usage error, 3 solver failure.
// DOTCAVITY_WORKERS sets the number of sweep workers.

#include <CLI11.hpp>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "dotcavity/config.hpp"
#include "dotcavity/error.hpp"
#include "dotcavity/experiments.hpp"

namespace fs = std::filesystem;
using namespace dotcavity;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitSolver = 3;

std::string utc_timestamp() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void emit(const ExperimentConfig& cfg, const std::string& fallback_plot) {
  RunResult result = run_experiment(cfg);
  result.table.metadata.insert(result.table.metadata.begin() + 1, {"timestamp", utc_timestamp()});

  const auto write = [&](std::ostream& out) {
    if (cfg.output.format == "json") {
      write_json(result.table, out);
    } else {
      write_csv(result.table, out);
    }
  };
  if (cfg.output.path.empty()) {
    write(std::cout);
  } else {
    std::ofstream out(cfg.output.path);
    if (!out) throw Error("cannot write '" + cfg.output.path + "'");
    write(out);
    std::cerr << "wrote " << cfg.output.path << " (" << result.table.rows.size() << " rows)\n";
  }
  if (cfg.output.plot) {
    std::string plot_path = fallback_plot;
    if (!cfg.output.path.empty()) plot_path = fs::path(cfg.output.path).replace_extension(".svg");
    if (plot_path.empty()) throw ConfigError("output.plot = svg needs output.path");
    save_svg(result.table, result.plot, plot_path);
    std::cerr << "wrote " << plot_path << '\n';
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Double quantum dot / resonator simulations"};
  app.require_subcommand(1);
  app.set_version_flag("--version", DOTCAVITY_VERSION);

  std::string config_path;
  auto* run = app.add_subcommand("run", "Run the experiment described by a config file");
  run->add_option("config", config_path, "Config file")->required();

  std::string preset_name;
  std::string out_path;
  bool plot = false;
  auto* preset = app.add_subcommand("preset", "Run a built-in preset");
  std::string names;
  for (const auto& n : preset_names()) names += (names.empty() ? "" : ", ") + n;
  preset->add_option("name", preset_name, "One of: " + names)->required();
  preset->add_option("--out", out_path, "Output file; a .json suffix selects JSON");
  preset->add_flag("--plot", plot, "Also write an SVG plot next to the output");

  auto* validate = app.add_subcommand("validate", "Parse and check a config, print its echo");
  validate->add_option("config", config_path, "Config file")->required();

  auto* schema = app.add_subcommand("schema", "Print the configuration key reference");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (*schema) {
      std::cout << schema_reference();
    } else if (*validate) {
      const ExperimentConfig cfg = load_config(config_path);
      check_experiment(cfg);
      std::cout << canonical_text(cfg);
    } else if (*run) {
      emit(load_config(config_path), "");
    } else if (*preset) {
      ExperimentConfig cfg = preset_config(preset_name);
      if (!out_path.empty()) {
        cfg.output.path = out_path;
        if (fs::path(out_path).extension() == ".json") cfg.output.format = "json";
      }
      cfg.output.plot = plot;
      emit(cfg, preset_name + ".svg");
    }
  } catch (const ConfigError& e) {
    std::cerr << "dotcavity: config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const InvalidInput& e) {
    std::cerr << "dotcavity: invalid input: " << e.what() << '\n';
    return kExitConfig;
  } catch (const SolverError& e) {
    std::cerr << "dotcavity: solver error: " << e.what() << '\n';
    return kExitSolver;
  } catch (const std::exception& e) {
    std::cerr << "dotcavity: error: " << e.what() << '\n';
    return kExitSolver;
  }
  return 0;
}
