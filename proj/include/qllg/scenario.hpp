#pragma once
//
// Batch front end: scenario configuration files (parse/emit/validate), the
// bundled figure presets, and the driver that runs every configured
// trajectory on a shared time grid and assembles a TimeSeries.
//

#include <string>
#include <vector>

#include "qllg/cldyn.hpp"
#include "qllg/config.hpp"
#include "qllg/models.hpp"
#include "qllg/qdyn.hpp"
#include "qllg/timeseries.hpp"

namespace qllg {

enum class Engine { Qllg, Qll, Exact, Classical };

std::string engine_name(Engine e);
Engine parse_engine(const std::string& name);  // throws std::invalid_argument

// Exchange strength as written in the file: either absolute (meV) or relative
// to the Zeeman scale (J = value * mu_B * |B|). Kept symbolic so emit() can
// reproduce the input and a units switch rescales consistently.
struct ExchangeSpec {
  enum class Mode { None, MeV, OverB0MuB };
  Mode mode = Mode::None;
  double value = 0.0;
  bool operator==(const ExchangeSpec& o) const {
    return mode == o.mode && value == o.value;
  }
};

// DMI vector, absolute (meV) or scaled by |J|.
struct DmiSpec {
  enum class Mode { None, MeV, OverJ };
  Mode mode = Mode::None;
  Vec3 value = Vec3::Zero();
  bool operator==(const DmiSpec& o) const {
    return mode == o.mode && (value - o.value).squaredNorm() == 0.0;
  }
};

struct RunSpec {
  std::string label;  // optional; prefixes column names as "label:obs"
  Engine engine = Engine::Qllg;
  std::vector<double> spins;     // one s per site
  Vec3 B_tesla = Vec3::Zero();
  ExchangeSpec J;                // pair (1,2); dimers only
  DmiSpec D;
  double kappa = 0.5;            // quantum damping
  double alpha = 0.5;            // classical Gilbert damping
  double m_magnitude_muB = 1.0;  // classical moment length multiplier, in mu_B
  std::string state;             // state grammar; classical: "moments:..."; quantum also "file:<path>"

  bool operator==(const RunSpec& o) const;
};

struct ScenarioConfig {
  std::string title;
  Units units = Units::Paper;
  double g_factor = 1.0;
  double dt = 1e-3;              // ps
  double t_max = 1.0;            // ps
  int sample_stride = 1;
  Integrator integrator = Integrator::RK4;
  double steady_tol = 0.0;       // >0 enables early stop (single-run scenarios)
  std::vector<std::string> observables;
  std::string csv_path;          // relative paths resolve against the output dir
  std::string svg_path;          // empty: no plot
  unsigned long seed = 0;        // reserved for random-state utilities
  std::vector<RunSpec> runs;

  bool operator==(const ScenarioConfig& o) const;
};

// Throws ConfigError: syntax/type problems carry the 1-based line number,
// semantic problems (unknown observable, bad state grammar, ...) carry line 0.
ScenarioConfig parse_scenario(const std::string& text);

// Inverse of parse_scenario up to formatting: parse_scenario(emit_scenario(c))
// compares equal to c.
std::string emit_scenario(const ScenarioConfig& config);

// Semantic checks only (parse_scenario already runs them).
void validate_scenario(const ScenarioConfig& config);

// Bundled scenarios: fig1a fig1b fig1c fig1d fig2a fig2b fig3 fig4 sm_afm
// sm_fm. Throws std::invalid_argument for unknown names.
std::vector<std::string> preset_names();
ScenarioConfig figure_preset(const std::string& name);

// Resolution helpers shared with the test suites.
HamiltonianSpec hamiltonian_for(const RunSpec& run, Units units, double g_factor);
DensityOperator initial_state_for(const RunSpec& run);       // quantum engines
// Moments exactly as written in the grammar, i.e. in units of mu_B; the
// runner scales them by mu_B * m_magnitude_muB before integrating.
std::vector<Vec3> initial_moments_for(const RunSpec& run);   // classical engine

// Column names this run contributes, in observable order ("" label = bare).
std::vector<std::string> run_column_names(const ScenarioConfig& config, const RunSpec& run);

struct ScenarioResult {
  TimeSeries series;
  std::string csv_path;  // as written; empty when write_files was false
  std::string svg_path;
};

// Executes all runs and assembles the series (columns run-major). Writes the
// CSV (and SVG when configured) unless write_files is false; relative output
// paths land in out_dir when it is non-empty. MonitorError propagates.
ScenarioResult run_scenario(const ScenarioConfig& config,
                            const std::string& out_dir = "",
                            bool write_files = true);

}  // namespace qllg
