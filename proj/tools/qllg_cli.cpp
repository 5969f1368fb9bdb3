// Command-line front end: run scenario files, dump/run bundled presets,
// validate configs. Exit codes: 0 success, 1 config error, 2 numerical abort.

#include <clocale>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "qllg/qdyn.hpp"
#include "qllg/scenario.hpp"

namespace {

constexpr const char* kVersion = "1.0.0";

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw qllg::ConfigError("cannot open '" + path + "'", 0);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

struct Overrides {
  std::string units;  // "", "paper" or "codata"
  double t_max = -1.0;
  double dt = -1.0;

  void apply(qllg::ScenarioConfig& cfg) const {
    if (units == "paper") cfg.units = qllg::Units::Paper;
    else if (units == "codata") cfg.units = qllg::Units::Codata;
    if (t_max > 0.0) cfg.t_max = t_max;
    if (dt > 0.0) cfg.dt = dt;
    qllg::validate_scenario(cfg);
  }
};

void add_override_flags(CLI::App* cmd, Overrides& ov) {
  cmd->add_option("--units", ov.units, "Constants convention: paper | codata")
      ->check(CLI::IsMember({"paper", "codata"}));
  cmd->add_option("--t-max", ov.t_max, "Override the time horizon (ps)");
  cmd->add_option("--dt", ov.dt, "Override the step size (ps)");
}

std::string output_dir(const std::string& flag_value) {
  if (!flag_value.empty()) return flag_value;
  if (const char* env = std::getenv("QLLG_OUT_DIR")) return env;
  return "";
}

int execute(const qllg::ScenarioConfig& cfg, const std::string& out_dir) {
  const qllg::ScenarioResult result = qllg::run_scenario(cfg, out_dir);
  std::cout << "wrote " << result.csv_path << " (" << result.series.times.size() << " rows, "
            << result.series.names.size() << " columns)\n";
  if (!result.svg_path.empty()) std::cout << "wrote " << result.svg_path << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  std::setlocale(LC_ALL, "C");
  CLI::App app{"Quantum and classical damped spin dynamics (q-LLG / q-LL / LLG)"};
  app.require_subcommand(1);

  // run <file>
  auto* run_cmd = app.add_subcommand("run", "Run a scenario file");
  std::string run_file;
  run_cmd->add_option("file", run_file, "Scenario config file")->required();
  std::string run_out_dir;
  run_cmd->add_option("--out-dir", run_out_dir,
                      "Directory for relative output paths (or $QLLG_OUT_DIR)");
  Overrides run_ov;
  add_override_flags(run_cmd, run_ov);

  // preset <name> [--dump|--run]
  auto* preset_cmd = app.add_subcommand("preset", "Dump or run a bundled preset");
  std::string preset_name;
  preset_cmd->add_option("name", preset_name, "One of: fig1a fig1b fig1c fig1d fig2a fig2b fig3 fig4 sm_afm sm_fm")
      ->required();
  bool preset_dump = false, preset_run = false;
  preset_cmd->add_flag("--dump", preset_dump, "Print the preset's config instead of running");
  preset_cmd->add_flag("--run", preset_run, "Run the preset (default)");
  std::string preset_out_dir;
  preset_cmd->add_option("--out-dir", preset_out_dir,
                         "Directory for relative output paths (or $QLLG_OUT_DIR)");
  Overrides preset_ov;
  add_override_flags(preset_cmd, preset_ov);

  // validate <file>
  auto* validate_cmd = app.add_subcommand("validate", "Check a scenario file without running it");
  std::string validate_file;
  validate_cmd->add_option("file", validate_file, "Scenario config file")->required();

  // version
  auto* version_cmd = app.add_subcommand("version", "Print the version");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    if (version_cmd->parsed()) {
      std::cout << "qllg " << kVersion << "\n";
      return 0;
    }
    if (validate_cmd->parsed()) {
      const qllg::ScenarioConfig cfg = qllg::parse_scenario(read_file(validate_file));
      std::cout << "OK: " << cfg.runs.size() << " run(s), " << cfg.observables.size()
                << " observable(s), t_max " << cfg.t_max << " ps\n";
      return 0;
    }
    if (run_cmd->parsed()) {
      qllg::ScenarioConfig cfg = qllg::parse_scenario(read_file(run_file));
      run_ov.apply(cfg);
      return execute(cfg, output_dir(run_out_dir));
    }
    if (preset_cmd->parsed()) {
      qllg::ScenarioConfig cfg = qllg::figure_preset(preset_name);
      preset_ov.apply(cfg);
      if (preset_dump) {
        std::cout << qllg::emit_scenario(cfg);
        if (!preset_run) return 0;
      }
      return execute(cfg, output_dir(preset_out_dir));
    }
  } catch (const qllg::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const qllg::MonitorError& e) {
    std::cerr << "numerical monitor abort: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
