#include "qllg/scenario.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "qllg/observables.hpp"
#include "qllg/plot.hpp"

namespace qllg {

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  out += '"';
  return out;
}

std::string fmt_array(const std::vector<double>& v) {
  std::string out = "[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    out += fmt(v[i]);
  }
  out += "]";
  return out;
}

int as_int_at_least(const ConfigValue& v, const char* what, int min_value) {
  const double d = v.as_number();
  if (d != std::floor(d) || d < min_value || d > 2e9) {
    throw ConfigError(std::string(what) + " must be an integer >= " + std::to_string(min_value),
                      v.line);
  }
  return static_cast<int>(d);
}

Vec3 as_vec3(const ConfigValue& v, const char* what) {
  const std::vector<double> a = v.as_number_array();
  if (a.size() != 3) {
    throw ConfigError(std::string(what) + " must be a 3-component array", v.line);
  }
  return Vec3(a[0], a[1], a[2]);
}

void reject_unknown_keys(const ConfigTable& table, const std::set<std::string>& allowed,
                         const std::string& where) {
  for (const auto& [key, value] : table.entries) {
    if (!allowed.count(key)) {
      throw ConfigError("unknown key '" + key + "' in " + where, value.line);
    }
  }
}

double parse_strict_double(const std::string& tok, const char* what) {
  const char* begin = tok.c_str();
  char* end = nullptr;
  const double v = std::strtod(begin, &end);
  if (end == begin || *end != '\0' || !std::isfinite(v)) {
    throw std::invalid_argument(std::string(what) + ": cannot parse number '" + tok + "'");
  }
  return v;
}

std::vector<std::string> split_on(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = s.find(sep, start);
    if (pos == std::string::npos) {
      out.push_back(s.substr(start));
      return out;
    }
    out.push_back(s.substr(start, pos - start));
    start = pos + 1;
  }
}

// Observables from config.observables that `run` can evaluate, bare names.
std::vector<std::string> supported_observables(const ScenarioConfig& config, const RunSpec& run) {
  std::vector<std::string> out;
  if (run.engine == Engine::Classical) {
    const HamiltonianSpec spec = hamiltonian_for(run, config.units, config.g_factor);
    for (const auto& name : config.observables) {
      if (classical_observable_supported(name, spec)) out.push_back(name);
    }
  } else {
    const SpinSystem system{run.spins};
    for (const auto& name : config.observables) {
      if (quantum_observable_supported(name, system)) out.push_back(name);
    }
  }
  return out;
}

std::string decorate(const std::string& label, const std::string& obs) {
  return label.empty() ? obs : label + ":" + obs;
}

}  // namespace

std::string engine_name(Engine e) {
  switch (e) {
    case Engine::Qllg: return "qllg";
    case Engine::Qll: return "qll";
    case Engine::Exact: return "exact";
    case Engine::Classical: return "classical";
  }
  return "?";
}

Engine parse_engine(const std::string& name) {
  if (name == "qllg") return Engine::Qllg;
  if (name == "qll") return Engine::Qll;
  if (name == "exact") return Engine::Exact;
  if (name == "classical") return Engine::Classical;
  throw std::invalid_argument("unknown engine '" + name +
                              "' (expected qllg, qll, exact or classical)");
}

bool RunSpec::operator==(const RunSpec& o) const {
  return label == o.label && engine == o.engine && spins == o.spins &&
         (B_tesla - o.B_tesla).squaredNorm() == 0.0 && J == o.J && D == o.D &&
         kappa == o.kappa && alpha == o.alpha && m_magnitude_muB == o.m_magnitude_muB &&
         state == o.state;
}

bool ScenarioConfig::operator==(const ScenarioConfig& o) const {
  return title == o.title && units == o.units && g_factor == o.g_factor && dt == o.dt &&
         t_max == o.t_max && sample_stride == o.sample_stride && integrator == o.integrator &&
         steady_tol == o.steady_tol && observables == o.observables && csv_path == o.csv_path &&
         svg_path == o.svg_path && seed == o.seed && runs == o.runs;
}

ScenarioConfig parse_scenario(const std::string& text) {
  const ConfigDocument doc = parse_config(text);
  ScenarioConfig cfg;

  reject_unknown_keys(doc.root, {"title", "units", "g_factor", "observables", "seed"},
                      "the top level");
  for (const auto& [name, table] : doc.tables) {
    if (name != "grid" && name != "output") {
      throw ConfigError("unknown table [" + name + "]", table.line);
    }
  }
  for (const auto& [name, tables] : doc.table_arrays) {
    if (name != "run") {
      throw ConfigError("unknown table array [[" + name + "]]", tables.front().line);
    }
  }

  if (const ConfigValue* v = doc.root.find("title")) cfg.title = v->as_string();
  if (const ConfigValue* v = doc.root.find("units")) {
    const std::string& u = v->as_string();
    if (u == "paper") cfg.units = Units::Paper;
    else if (u == "codata") cfg.units = Units::Codata;
    else throw ConfigError("units must be \"paper\" or \"codata\"", v->line);
  }
  if (const ConfigValue* v = doc.root.find("g_factor")) {
    cfg.g_factor = v->as_number();
    if (!(cfg.g_factor > 0.0)) throw ConfigError("g_factor must be positive", v->line);
  }
  if (const ConfigValue* v = doc.root.find("seed")) {
    cfg.seed = static_cast<unsigned long>(as_int_at_least(*v, "seed", 0));
  }
  cfg.observables = doc.root.at("observables").as_string_array();

  if (auto it = doc.tables.find("grid"); it != doc.tables.end()) {
    const ConfigTable& grid = it->second;
    reject_unknown_keys(grid, {"dt", "t_max", "sample_stride", "integrator", "steady_tol"},
                        "[grid]");
    if (const ConfigValue* v = grid.find("dt")) cfg.dt = v->as_number();
    if (const ConfigValue* v = grid.find("t_max")) cfg.t_max = v->as_number();
    if (const ConfigValue* v = grid.find("sample_stride")) {
      cfg.sample_stride = as_int_at_least(*v, "sample_stride", 1);
    }
    if (const ConfigValue* v = grid.find("integrator")) {
      const std::string& s = v->as_string();
      if (s == "rk4") cfg.integrator = Integrator::RK4;
      else if (s == "euler") cfg.integrator = Integrator::Euler;
      else throw ConfigError("integrator must be \"rk4\" or \"euler\"", v->line);
    }
    if (const ConfigValue* v = grid.find("steady_tol")) cfg.steady_tol = v->as_number();
  }

  if (auto it = doc.tables.find("output"); it != doc.tables.end()) {
    const ConfigTable& output = it->second;
    reject_unknown_keys(output, {"csv", "svg"}, "[output]");
    if (const ConfigValue* v = output.find("csv")) cfg.csv_path = v->as_string();
    if (const ConfigValue* v = output.find("svg")) cfg.svg_path = v->as_string();
  }

  auto runs_it = doc.table_arrays.find("run");
  if (runs_it == doc.table_arrays.end() || runs_it->second.empty()) {
    throw ConfigError("at least one [[run]] is required", 0);
  }
  for (const ConfigTable& t : runs_it->second) {
    reject_unknown_keys(t,
                        {"label", "engine", "spins", "state", "kappa", "alpha",
                         "m_magnitude_muB", "B", "J", "J_over_B0_in_muB", "D", "D_over_J"},
                        "[[run]]");
    RunSpec run;
    if (const ConfigValue* v = t.find("label")) run.label = v->as_string();
    {
      const ConfigValue& v = t.at("engine");
      try {
        run.engine = parse_engine(v.as_string());
      } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what(), v.line);
      }
    }
    run.spins = t.at("spins").as_number_array();
    run.state = t.at("state").as_string();
    run.B_tesla = as_vec3(t.at("B"), "B");
    if (const ConfigValue* v = t.find("kappa")) run.kappa = v->as_number();
    if (const ConfigValue* v = t.find("alpha")) run.alpha = v->as_number();
    if (const ConfigValue* v = t.find("m_magnitude_muB")) {
      run.m_magnitude_muB = v->as_number();
    }
    const ConfigValue* j_abs = t.find("J");
    const ConfigValue* j_rel = t.find("J_over_B0_in_muB");
    if (j_abs && j_rel) {
      throw ConfigError("give J either in meV or relative to mu_B*B0, not both", j_rel->line);
    }
    if (j_abs) {
      run.J.mode = ExchangeSpec::Mode::MeV;
      run.J.value = j_abs->as_number();
    } else if (j_rel) {
      run.J.mode = ExchangeSpec::Mode::OverB0MuB;
      run.J.value = j_rel->as_number();
    }
    const ConfigValue* d_abs = t.find("D");
    const ConfigValue* d_rel = t.find("D_over_J");
    if (d_abs && d_rel) {
      throw ConfigError("give D either in meV or relative to |J|, not both", d_rel->line);
    }
    if (d_abs) {
      run.D.mode = DmiSpec::Mode::MeV;
      run.D.value = as_vec3(*d_abs, "D");
    } else if (d_rel) {
      run.D.mode = DmiSpec::Mode::OverJ;
      run.D.value = as_vec3(*d_rel, "D_over_J");
    }
    cfg.runs.push_back(std::move(run));
  }

  validate_scenario(cfg);
  return cfg;
}

std::string emit_scenario(const ScenarioConfig& config) {
  std::string out;
  if (!config.title.empty()) out += "title = " + quote(config.title) + "\n";
  out += std::string("units = ") + (config.units == Units::Paper ? "\"paper\"" : "\"codata\"") + "\n";
  out += "g_factor = " + fmt(config.g_factor) + "\n";
  if (config.seed != 0) out += "seed = " + std::to_string(config.seed) + "\n";
  out += "observables = [";
  for (std::size_t i = 0; i < config.observables.size(); ++i) {
    if (i) out += ", ";
    out += quote(config.observables[i]);
  }
  out += "]\n";

  out += "\n[grid]\n";
  out += "dt = " + fmt(config.dt) + "\n";
  out += "t_max = " + fmt(config.t_max) + "\n";
  out += "sample_stride = " + std::to_string(config.sample_stride) + "\n";
  out += std::string("integrator = ") +
         (config.integrator == Integrator::RK4 ? "\"rk4\"" : "\"euler\"") + "\n";
  out += "steady_tol = " + fmt(config.steady_tol) + "\n";

  if (!config.csv_path.empty() || !config.svg_path.empty()) {
    out += "\n[output]\n";
    if (!config.csv_path.empty()) out += "csv = " + quote(config.csv_path) + "\n";
    if (!config.svg_path.empty()) out += "svg = " + quote(config.svg_path) + "\n";
  }

  for (const RunSpec& run : config.runs) {
    out += "\n[[run]]\n";
    if (!run.label.empty()) out += "label = " + quote(run.label) + "\n";
    out += "engine = " + quote(engine_name(run.engine)) + "\n";
    out += "spins = " + fmt_array(run.spins) + "\n";
    out += "state = " + quote(run.state) + "\n";
    out += "B = " + fmt_array({run.B_tesla[0], run.B_tesla[1], run.B_tesla[2]}) + "\n";
    if (run.J.mode == ExchangeSpec::Mode::MeV) {
      out += "J = " + fmt(run.J.value) + "\n";
    } else if (run.J.mode == ExchangeSpec::Mode::OverB0MuB) {
      out += "J_over_B0_in_muB = " + fmt(run.J.value) + "\n";
    }
    if (run.D.mode == DmiSpec::Mode::MeV) {
      out += "D = " + fmt_array({run.D.value[0], run.D.value[1], run.D.value[2]}) + "\n";
    } else if (run.D.mode == DmiSpec::Mode::OverJ) {
      out += "D_over_J = " + fmt_array({run.D.value[0], run.D.value[1], run.D.value[2]}) + "\n";
    }
    out += "kappa = " + fmt(run.kappa) + "\n";
    out += "alpha = " + fmt(run.alpha) + "\n";
    if (run.engine == Engine::Classical) {
      out += "m_magnitude_muB = " + fmt(run.m_magnitude_muB) + "\n";
    }
  }
  return out;
}

void validate_scenario(const ScenarioConfig& config) {
  auto fail = [](const std::string& msg) { throw ConfigError(msg, 0); };

  if (!(config.dt > 0.0) || !std::isfinite(config.dt)) fail("dt must be positive");
  if (!(config.t_max > 0.0) || !std::isfinite(config.t_max)) fail("t_max must be positive");
  if (config.t_max < config.dt) fail("t_max must be at least dt");
  if (config.sample_stride < 1) fail("sample_stride must be >= 1");
  if (config.steady_tol < 0.0) fail("steady_tol must be non-negative");
  if (!(config.g_factor > 0.0)) fail("g_factor must be positive");
  if (config.observables.empty()) fail("observables must list at least one name");
  if (config.runs.empty()) fail("at least one [[run]] is required");
  if (config.steady_tol > 0.0) {
    if (config.runs.size() != 1) fail("steady_tol needs a single-run scenario (shared time grid)");
    const Engine e = config.runs.front().engine;
    if (e != Engine::Qllg && e != Engine::Qll) {
      fail("steady_tol is only supported by the qllg/qll engines");
    }
  }

  for (const RunSpec& run : config.runs) {
    const std::string where =
        run.label.empty() ? "run (engine " + engine_name(run.engine) + ")" : "run '" + run.label + "'";
    for (char c : run.label) {
      if (c == ',' || c == ':' || c == '"' || std::isspace(static_cast<unsigned char>(c))) {
        fail("label '" + run.label + "' may not contain ',', ':', quotes or whitespace");
      }
    }
    SpinSystem system;
    try {
      system = SpinSystem{run.spins};
    } catch (const std::invalid_argument& e) {
      fail(where + ": " + e.what());
    }
    if (run.kappa < 0.0) fail(where + ": kappa must be non-negative");
    if (run.alpha < 0.0) fail(where + ": alpha must be non-negative");
    if (!(run.m_magnitude_muB > 0.0)) fail(where + ": m_magnitude_muB must be positive");
    if ((run.J.mode != ExchangeSpec::Mode::None || run.D.mode != DmiSpec::Mode::None) &&
        system.site_count() != 2) {
      fail(where + ": J/D couplings are supported for two-site systems only");
    }
    if (run.D.mode == DmiSpec::Mode::OverJ && run.J.mode == ExchangeSpec::Mode::None) {
      fail(where + ": D_over_J needs an exchange J");
    }
    if (run.engine == Engine::Classical) {
      try {
        initial_moments_for(run);
      } catch (const std::invalid_argument& e) {
        fail(where + ": " + e.what());
      }
    } else if (run.state.rfind("file:", 0) == 0) {
      if (run.state.size() == 5) fail(where + ": empty file path in state");
      // Contents checked when the file is loaded at run time.
    } else {
      DensityOperator rho;
      try {
        rho = parse_state(run.state, system);
      } catch (const std::invalid_argument& e) {
        fail(where + ": " + e.what());
      }
      if (run.engine == Engine::Exact && purity(rho.rho) < 1.0 - 1e-8) {
        fail(where + ": the exact engine propagates pure states only");
      }
    }
  }

  // Every observable must be live in some run, and decorated names unique.
  std::set<std::string> used;
  std::set<std::string> live;
  for (const RunSpec& run : config.runs) {
    for (const std::string& name : supported_observables(config, run)) {
      live.insert(name);
      const std::string column = decorate(run.label, name);
      if (!used.insert(column).second) {
        fail("column '" + column + "' appears twice; give the runs distinct labels");
      }
    }
  }
  for (const std::string& name : config.observables) {
    if (!live.count(name)) {
      fail("observable '" + name + "' is not supported by any run");
    }
  }
}

std::vector<std::string> run_column_names(const ScenarioConfig& config, const RunSpec& run) {
  std::vector<std::string> out;
  for (const std::string& name : supported_observables(config, run)) {
    out.push_back(decorate(run.label, name));
  }
  return out;
}

HamiltonianSpec hamiltonian_for(const RunSpec& run, Units units, double g_factor) {
  HamiltonianSpec spec;
  spec.system = SpinSystem{run.spins};
  spec.B_tesla = run.B_tesla;
  spec.constants = constants_for(units, g_factor);
  double J = 0.0;
  if ((run.J.mode != ExchangeSpec::Mode::None || run.D.mode != DmiSpec::Mode::None) &&
      spec.system.site_count() != 2) {
    throw std::invalid_argument("J/D couplings are supported for two-site systems only");
  }
  if (run.J.mode == ExchangeSpec::Mode::MeV) {
    J = run.J.value;
  } else if (run.J.mode == ExchangeSpec::Mode::OverB0MuB) {
    J = run.J.value * spec.constants.mu_B * run.B_tesla.norm();
  }
  if (run.J.mode != ExchangeSpec::Mode::None) spec.set_exchange(0, 1, J);
  if (run.D.mode == DmiSpec::Mode::MeV) {
    spec.set_dmi(0, 1, run.D.value);
  } else if (run.D.mode == DmiSpec::Mode::OverJ) {
    spec.set_dmi(0, 1, Vec3(run.D.value * std::abs(J)));
  }
  return spec;
}

DensityOperator initial_state_for(const RunSpec& run) {
  const SpinSystem system{run.spins};
  if (run.state.rfind("moments:", 0) == 0) {
    throw std::invalid_argument("'moments:' initial states are for classical runs");
  }
  if (run.state.rfind("file:", 0) == 0) {
    const std::string path = run.state.substr(5);
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open state file '" + path + "'");
    int dim = 0;
    if (!(in >> dim) || dim != system.dim()) {
      throw std::invalid_argument("state file '" + path + "' must start with the dimension " +
                                  std::to_string(system.dim()));
    }
    CMatrix rho(dim, dim);
    for (int i = 0; i < dim; ++i) {
      for (int j = 0; j < dim; ++j) {
        double re = 0.0, im = 0.0;
        if (!(in >> re >> im)) {
          throw std::invalid_argument("state file '" + path + "' ended early (need " +
                                      std::to_string(2 * dim * dim) + " numbers after the dimension)");
        }
        rho(i, j) = Complex(re, im);
      }
    }
    validate_density(rho, "state file '" + path + "'");
    return DensityOperator{system, rho};
  }
  return parse_state(run.state, system);
}

std::vector<Vec3> initial_moments_for(const RunSpec& run) {
  if (run.state.rfind("moments:", 0) != 0) {
    throw std::invalid_argument(
        "classical runs take 'moments:x,y,z;x,y,z;...' initial states, got '" + run.state + "'");
  }
  const std::string body = run.state.substr(8);
  const std::vector<std::string> sites = split_on(body, ';');
  const std::size_t expected = run.spins.size();
  if (sites.size() != expected) {
    throw std::invalid_argument("moments list has " + std::to_string(sites.size()) +
                                " sites, expected " + std::to_string(expected));
  }
  std::vector<Vec3> out;
  for (const std::string& site : sites) {
    const std::vector<std::string> comps = split_on(site, ',');
    if (comps.size() != 3) {
      throw std::invalid_argument("each moment needs 3 components, got '" + site + "'");
    }
    Vec3 m(parse_strict_double(comps[0], "moments"),
           parse_strict_double(comps[1], "moments"),
           parse_strict_double(comps[2], "moments"));
    if (!(m.norm() > 0.0)) throw std::invalid_argument("zero-length moment in '" + site + "'");
    out.push_back(m);
  }
  return out;
}

namespace {

void append_run_columns(const ScenarioConfig& config, const RunSpec& run, TimeSeries& series,
                        bool first_run) {
  const HamiltonianSpec spec = hamiltonian_for(run, config.units, config.g_factor);
  const std::vector<std::string> bare = supported_observables(config, run);
  if (bare.empty()) return;

  std::vector<std::vector<double>> data(bare.size());
  std::vector<double> times;

  if (run.engine == Engine::Classical) {
    std::vector<ClassicalObservable> evals;
    for (const auto& name : bare) evals.push_back(compile_classical_observable(name, spec));
    ClassicalParams params;
    params.alpha = run.alpha;
    params.integrator = config.integrator;
    params.dt = config.dt;
    params.t_max = config.t_max;
    params.sample_stride = config.sample_stride;
    // The grammar gives moments in mu_B; the model works in physical units.
    std::vector<Vec3> m0 = initial_moments_for(run);
    const double scale = spec.constants.mu_B * run.m_magnitude_muB;
    for (Vec3& v : m0) v *= scale;
    integrate_classical(ClassicalState(std::move(m0)), spec, params,
                        [&](double t, const std::vector<Vec3>& m) {
                          times.push_back(t);
                          for (std::size_t j = 0; j < evals.size(); ++j) {
                            data[j].push_back(evals[j](m));
                          }
                        });
  } else {
    const CMatrix H = build_quantum_hamiltonian(spec);
    const DensityOperator rho0 = initial_state_for(run);
    std::vector<QuantumEvaluator> evals;
    for (const auto& name : bare) {
      evals.push_back(compile_quantum_evaluator(name, spec.system, H));
    }

    if (run.engine == Engine::Exact) {
      if (purity(rho0.rho) < 1.0 - 1e-8) {
        throw std::invalid_argument("the exact engine propagates pure states only");
      }
      const ExactPurePropagator prop(rho0.rho, H, run.kappa, spec.constants.hbar);
      const long long total = std::llround(config.t_max / config.dt);
      std::vector<long long> steps = {0};
      for (long long n = config.sample_stride; n < total; n += config.sample_stride) {
        steps.push_back(n);
      }
      if (total > 0) steps.push_back(total);

      bool all_ops = true;
      for (const auto& e : evals) all_ops = all_ops && !e.ops.empty();
      if (all_ops) {
        std::vector<CMatrix> ops_eig;
        std::vector<std::size_t> offsets;
        for (const auto& e : evals) {
          offsets.push_back(ops_eig.size());
          for (const auto& op : e.ops) ops_eig.push_back(prop.to_eigenbasis(op));
        }
        for (long long n : steps) {
          const double t = static_cast<double>(n) * config.dt;
          const std::vector<double> traces = prop.expectations(t, ops_eig);
          times.push_back(t);
          for (std::size_t j = 0; j < evals.size(); ++j) {
            const std::size_t lo = offsets[j];
            const std::size_t hi = j + 1 < evals.size() ? offsets[j + 1] : traces.size();
            data[j].push_back(
                evals[j].combine(std::vector<double>(traces.begin() + lo, traces.begin() + hi)));
          }
        }
      } else {
        for (long long n : steps) {
          const double t = static_cast<double>(n) * config.dt;
          const CMatrix rho = prop.at(t);
          times.push_back(t);
          for (std::size_t j = 0; j < evals.size(); ++j) data[j].push_back(evals[j].full(rho));
        }
      }
    } else {
      QDynParams params;
      params.kappa = run.kappa;
      params.hbar = spec.constants.hbar;
      params.integrator = config.integrator;
      params.dt = config.dt;
      params.t_max = config.t_max;
      params.sample_stride = config.sample_stride;
      params.steady_tol = config.steady_tol;
      integrate(rho0.rho, H, params,
                run.engine == Engine::Qllg ? RhsKind::Qllg : RhsKind::Qll,
                [&](double t, const CMatrix& rho) {
                  times.push_back(t);
                  for (std::size_t j = 0; j < evals.size(); ++j) {
                    data[j].push_back(evals[j].full(rho));
                  }
                });
    }
  }

  if (first_run) {
    series.times = times;
  } else if (times.size() != series.times.size()) {
    throw std::runtime_error("runs sampled different time grids (internal error)");
  }
  for (std::size_t j = 0; j < bare.size(); ++j) {
    series.names.push_back(decorate(run.label, bare[j]));
    series.columns.push_back(std::move(data[j]));
  }
}

std::string resolve_path(const std::string& path, const std::string& out_dir) {
  if (path.empty() || out_dir.empty() || path.front() == '/') return path;
  return out_dir + "/" + path;
}

}  // namespace

std::vector<std::string> preset_names() {
  return {"fig1a", "fig1b", "fig1c", "fig1d", "fig2a",
          "fig2b", "fig3",  "fig4",  "sm_afm", "sm_fm"};
}

ScenarioConfig figure_preset(const std::string& name) {
  auto base = [](const std::string& title) {
    ScenarioConfig cfg;
    cfg.title = title;
    cfg.units = Units::Paper;
    cfg.g_factor = 1.0;
    cfg.dt = 1e-3;
    cfg.sample_stride = 10;
    cfg.integrator = Integrator::RK4;
    cfg.steady_tol = 0.0;
    cfg.csv_path = title + ".csv";
    cfg.svg_path = title + ".svg";
    return cfg;
  };
  auto quantum_run = [](double j_rel) {
    RunSpec run;
    run.engine = Engine::Qllg;
    run.spins = {0.5, 0.5};
    run.B_tesla = Vec3(1.0, 0.0, 0.0);
    run.J.mode = ExchangeSpec::Mode::OverB0MuB;
    run.J.value = j_rel;
    run.kappa = 0.5;
    run.state = "ket:up,down";
    return run;
  };
  auto classical_run = [](double j_rel) {
    RunSpec run;
    run.engine = Engine::Classical;
    run.spins = {0.5, 0.5};
    run.B_tesla = Vec3(1.0, 0.0, 0.0);
    run.J.mode = ExchangeSpec::Mode::OverB0MuB;
    run.J.value = j_rel;
    run.alpha = 0.5;
    run.state = "moments:0,0,1;0,0,-1";
    return run;
  };
  auto with_dmi = [](RunSpec run, double d_over_j) {
    run.D.mode = DmiSpec::Mode::OverJ;
    run.D.value = Vec3(0.0, 0.0, d_over_j);
    return run;
  };

  // fig1: one damped dimer, quantum Bloch vector vs classical moment.
  if (name == "fig1a" || name == "fig1b" || name == "fig1c" || name == "fig1d") {
    const bool afm = (name == "fig1b" || name == "fig1d");
    const bool dmi = (name == "fig1c" || name == "fig1d");
    const double j_rel = afm ? 1.0 : -1.0;
    ScenarioConfig cfg = base(name);
    cfg.t_max = 100.0;
    cfg.observables = {"r1_x", "r1_y", "r1_z", "r1_mag", "m1_x", "m1_y", "m1_z", "m1_mag"};
    RunSpec q = quantum_run(j_rel);
    RunSpec c = classical_run(j_rel);
    if (dmi) {
      q = with_dmi(std::move(q), 0.6);
      c = with_dmi(std::move(c), 0.6);
    }
    cfg.runs = {q, c};
    return cfg;
  }

  // fig2: correlation-matrix dynamics of the AFM dimer, without/with DMI.
  if (name == "fig2a" || name == "fig2b") {
    ScenarioConfig cfg = base(name);
    cfg.t_max = 100.0;
    cfg.observables = {"T_xx", "T_xy", "T_xz", "T_yx", "T_yy",
                       "T_yz", "T_zx", "T_zy", "T_zz", "r1_mag"};
    RunSpec q = quantum_run(1.0);
    if (name == "fig2b") q = with_dmi(std::move(q), 0.6);
    cfg.runs = {q};
    return cfg;
  }

  // fig3: Bell nonlocality of the driven dimer, D=0 vs D=0.6|J|.
  if (name == "fig3") {
    ScenarioConfig cfg = base(name);
    cfg.t_max = 120.0;
    cfg.observables = {"bell_B"};
    RunSpec d0 = quantum_run(1.0);
    d0.label = "D0";
    d0.state = "bell:psi+";
    RunSpec d6 = with_dmi(quantum_run(1.0), 0.6);
    d6.label = "D0p6";
    d6.state = "bell:psi+";
    cfg.runs = {d0, d6};
    return cfg;
  }

  // fig4: nonlocality revivals of Werner inputs, both exchange signs.
  if (name == "fig4") {
    ScenarioConfig cfg = base(name);
    cfg.t_max = 100.0;
    cfg.sample_stride = 50;
    cfg.observables = {"bell_B"};
    const double b = 1.0 / std::sqrt(3.0);
    const char* bells[] = {"phi+", "phi-", "psi+", "psi-"};
    for (double j_rel : {1.0, -1.0}) {
      for (const char* bell : bells) {
        RunSpec run = with_dmi(quantum_run(j_rel), 0.4);
        run.B_tesla = Vec3(b, b, b);
        run.state = std::string("werner:") + bell + ":0.9";
        run.label = std::string(bell) + (j_rel > 0 ? "afm" : "fm");
        cfg.runs.push_back(std::move(run));
      }
    }
    return cfg;
  }

  // sm_afm / sm_fm: spin-s sweep against the classical limit.
  if (name == "sm_afm" || name == "sm_fm") {
    const double j_rel = (name == "sm_afm") ? 1.0 : -1.0;
    ScenarioConfig cfg = base(name);
    cfg.t_max = 20.0;
    cfg.observables = {"S1_mag", "S1_y", "m1_y"};
    for (int i = 1; i <= 10; ++i) {
      const double s = 0.5 * i;
      RunSpec run;
      run.engine = Engine::Exact;
      run.spins = {s, s};
      run.B_tesla = Vec3(1.0, 0.0, 0.0);
      run.J.mode = ExchangeSpec::Mode::OverB0MuB;
      run.J.value = j_rel;
      run.kappa = 0.5;
      char m_str[32], label[32];
      std::snprintf(m_str, sizeof m_str, "%g", s);
      std::snprintf(label, sizeof label, "s%g", s);
      run.state = std::string("projector:+") + m_str + ",-" + m_str;
      run.label = label;
      cfg.runs.push_back(std::move(run));
    }
    RunSpec cl = classical_run(j_rel);
    cl.label = "cl";
    cfg.runs.push_back(std::move(cl));
    return cfg;
  }

  throw std::invalid_argument("unknown preset '" + name + "' (known: fig1a fig1b fig1c fig1d "
                              "fig2a fig2b fig3 fig4 sm_afm sm_fm)");
}

ScenarioResult run_scenario(const ScenarioConfig& config, const std::string& out_dir,
                            bool write_files) {
  validate_scenario(config);
  ScenarioResult result;
  bool first = true;
  for (const RunSpec& run : config.runs) {
    append_run_columns(config, run, result.series, first);
    first = false;
  }
  validate_series(result.series);

  if (write_files) {
    std::string csv = config.csv_path;
    if (csv.empty()) csv = (config.title.empty() ? "scenario" : config.title) + ".csv";
    result.csv_path = resolve_path(csv, out_dir);
    write_csv(result.series, result.csv_path);
    if (!config.svg_path.empty()) {
      result.svg_path = resolve_path(config.svg_path, out_dir);
      write_svg_file(result.series, config.title, result.svg_path);
    }
  }
  return result;
}

}  // namespace qllg
