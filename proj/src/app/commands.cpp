#include "fracpc/app/commands.hpp"

#include <fstream>
#include <functional>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "fracpc/app/bench.hpp"
#include "fracpc/app/csv.hpp"
#include "fracpc/app/manifest.hpp"
#include "fracpc/app/report.hpp"
#include "fracpc/errors.hpp"
#include "fracpc/problems.hpp"
#include "fracpc/schemes.hpp"

namespace fracpc::app {

namespace {

// Raw flag values; optional where the default depends on other inputs.
struct Flags {
  std::string problem;
  std::string scheme = "ppc";
  std::optional<std::string> kind;
  std::string history = "decoupled";
  std::optional<double> alpha;
  double beta = 0.9;
  std::optional<double> dt;
  std::optional<double> t_end;
  int sweeps = 1;
  int table = 0;
  std::string out;
  std::string report;
  std::string config;
  bool plot = false;
  GMParams gm{};
};

void write_file(const std::string& path, const std::function<void(std::ostream&)>& body) {
  std::ofstream f(path, std::ios::binary);
  if (!f) {
    throw IoError("cannot open '" + path + "' for writing");
  }
  body(f);
  f.flush();
  if (!f) {
    throw IoError("write to '" + path + "' failed");
  }
}

void emit_csv(const CsvTable& table, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    write_csv(out, table);
  } else {
    write_file(path, [&](std::ostream& os) { write_csv(os, table); });
  }
}

void emit_json(const nlohmann::ordered_json& j, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << j.dump(2) << '\n';
  } else {
    write_file(path, [&](std::ostream& os) { os << j.dump(2) << '\n'; });
  }
}

void emit_plot_script(const std::string& csv_path, const CsvTable& table, const std::string& title) {
  write_file(csv_path + ".gp", [&](std::ostream& os) { os << gnuplot_script(csv_path, table, title); });
}

std::string phase_path(const std::string& out) {
  const std::string ext = ".csv";
  if (out.size() > ext.size() && out.compare(out.size() - ext.size(), ext.size(), ext) == 0) {
    return out.substr(0, out.size() - ext.size()) + "_phase.csv";
  }
  return out + "_phase.csv";
}

// Config entries become --key=value arguments placed before the command
// line ones; with last-wins options the explicit flags take precedence.
std::vector<std::string> inject_config(const std::vector<std::string>& args) {
  std::optional<std::string> path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) {
      path = args[i + 1];
    } else if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
    }
  }
  if (!path || args.empty()) return args;
  std::vector<std::string> merged{args.front()};
  for (const auto& [key, value] : load_config(*path)) {
    if (key == "config") {
      throw ConfigError("config files cannot include other config files");
    }
    merged.push_back("--" + key + "=" + value);
  }
  merged.insert(merged.end(), args.begin() + 1, args.end());
  return merged;
}

void add_gm_options(CLI::App* cmd, Flags& f) {
  cmd->add_option("--rho0", f.gm.rho0, "Basal activator production");
  cmd->add_option("--rho", f.gm.rho, "Source density");
  cmd->add_option("--c", f.gm.c, "Activator self-enhancement");
  cmd->add_option("--mu", f.gm.mu, "Activator decay rate");
  cmd->add_option("--c-prime", f.gm.cprime, "Inhibitor production");
  cmd->add_option("--rho-prime", f.gm.rhoprime, "Inhibitor source density");
  cmd->add_option("--nu", f.gm.nu, "Inhibitor decay rate");
  cmd->add_option("--a0", f.gm.a0, "Initial activator");
  cmd->add_option("--h0", f.gm.h0, "Initial inhibitor");
}

void add_solver_options(CLI::App* cmd, Flags& f) {
  cmd->add_option("--scheme", f.scheme, "ppc | ias | as | ab2");
  cmd->add_option("--kind", f.kind, "classical | caputo | cf | abc");
  cmd->add_option("--predictor-history", f.history, "decoupled | coupled");
  cmd->add_option("--alpha", f.alpha, "Fractional order in (0, 1]");
  cmd->add_option("--dt", f.dt, "Step size");
  cmd->add_option("--t-end", f.t_end, "End of the time span (starts at 0)");
  cmd->add_option("--sweeps", f.sweeps, "Corrector applications per step");
  cmd->add_option("--out", f.out, "Trajectory CSV path (stdout when omitted)");
  cmd->add_option("--report", f.report, "JSON report path");
  cmd->add_option("--config", f.config, "key = value file supplying flag defaults");
  cmd->add_flag("--emit-plot-script", f.plot, "Write a gnuplot script next to each CSV");
  add_gm_options(cmd, f);
}

RunManifest resolve(const std::string& subcommand, const Flags& f, const NamedProblem& problem,
                    double default_alpha) {
  RunManifest m;
  m.subcommand = subcommand;
  m.problem = problem.id;
  m.scheme = parse_scheme(f.scheme);
  m.kind = f.kind ? parse_kind(*f.kind) : problem.natural_kind;
  m.predictor_history = parse_predictor_history(f.history);
  if (m.kind == DerivativeKind::Classical) {
    if (f.alpha && *f.alpha != 1.0) {
      throw UsageError("--alpha must be 1 for the classical derivative");
    }
    m.alpha = 1.0;
  } else {
    m.alpha = f.alpha.value_or(default_alpha);
  }
  m.beta = f.beta;
  m.gm = f.gm;
  if (!f.dt) {
    throw UsageError("--dt is required");
  }
  m.dt = *f.dt;
  m.t_end = f.t_end.value_or(problem.default_span);
  m.sweeps = f.sweeps;
  m.out = f.out;
  m.report = f.report;
  m.config = f.config;
  m.emit_plot_script = f.plot;
  if (m.emit_plot_script && m.out.empty()) {
    throw UsageError("--emit-plot-script needs --out");
  }
  return m;
}

struct Run {
  Trajectory traj;
  std::optional<std::size_t> diverged_at;
  std::string divergence_message;
};

Run integrate(const RunManifest& m, const NamedProblem& problem, const ProblemParams& params) {
  const FractionalIVP ivp = problem.make_ivp(params, m.kind);
  SolverConfig config;
  config.scheme = m.scheme;
  config.predictor_history = m.predictor_history;
  config.corrector_sweeps = m.sweeps;
  const UniformGrid grid = make_grid(m.dt, m.t_end);
  try {
    return {solve(ivp, config, grid), std::nullopt, {}};
  } catch (const DivergenceError& e) {
    return {e.partial(), e.step(), e.what()};
  }
}

ProblemParams params_of(const RunManifest& m) {
  ProblemParams p;
  p.alpha = m.alpha;
  p.beta = m.beta;
  p.gm = m.gm;
  return p;
}

int cmd_solve(const Flags& f, std::ostream& out, std::ostream& err) {
  const NamedProblem problem = builtin(f.problem);
  const RunManifest m = resolve("solve", f, problem, 1.0);
  const ProblemParams params = params_of(m);
  const Run run = integrate(m, problem, params);

  const std::vector<std::string> names =
      problem.id == "gierer-meinhardt" ? std::vector<std::string>{"a", "h"} : std::vector<std::string>{};
  const CsvTable table = trajectory_table(run.traj, names);
  emit_csv(table, m.out, out);
  if (m.emit_plot_script) {
    emit_plot_script(m.out, table, problem.id + " (" + std::string(to_string(m.scheme)) + ", " +
                                       std::string(to_string(m.kind)) + ")");
  }
  if (!m.report.empty()) {
    std::optional<double> max_error;
    if (problem.exact && !run.diverged_at) {
      max_error = max_abs_error(run.traj, [&](double t) { return problem.exact(t, params); });
    }
    emit_json(solve_report(m, run.traj, max_error, run.diverged_at), m.report, out);
  }
  if (run.diverged_at) {
    err << "error: " << run.divergence_message << '\n';
    return kExitDivergence;
  }
  return kExitOk;
}

int cmd_gm(const Flags& f, std::ostream& out, std::ostream& err) {
  Flags g = f;
  if (!g.kind) g.kind = "caputo";
  if (!g.dt) g.dt = 0.01;
  if (!g.t_end) g.t_end = 100.0;
  const NamedProblem problem = builtin("gierer-meinhardt");
  const RunManifest m = resolve("gm", g, problem, 0.85);
  m.gm.validate();
  const StabilityVerdict verdict = gm_classify(m.alpha, m.gm);
  const Run run = integrate(m, problem, params_of(m));

  if (!m.out.empty()) {
    const CsvTable traj = trajectory_table(run.traj, {"a", "h"});
    const CsvTable phase = phase_table(run.traj, {"a", "h"});
    const std::string ppath = phase_path(m.out);
    emit_csv(traj, m.out, out);
    emit_csv(phase, ppath, out);
    if (m.emit_plot_script) {
      emit_plot_script(m.out, traj, "activator and inhibitor");
      emit_plot_script(ppath, phase, "phase plane");
    }
  }
  std::optional<State> final_state;
  if (!run.traj.states.empty()) final_state = run.traj.states.back();
  emit_json(gm_report(m, verdict, final_state, run.diverged_at), m.report, out);
  if (run.diverged_at) {
    err << "error: " << run.divergence_message << '\n';
    return kExitDivergence;
  }
  return kExitOk;
}

int cmd_bench(const Flags& f, std::ostream& out) {
  const std::vector<BenchRow> rows = run_bench(f.table, bench_threads());
  emit_csv(bench_table(rows), f.out, out);
  return kExitOk;
}

int dispatch(const std::vector<std::string>& raw, std::ostream& out, std::ostream& err) {
  const std::vector<std::string> args = inject_config(raw);

  CLI::App app{"Predictor-corrector solvers for classical and fractional initial-value problems", "fracpc"};
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  app.require_subcommand(1);

  Flags f;
  auto* solve_cmd = app.add_subcommand("solve", "Integrate a builtin problem and write its trajectory");
  solve_cmd->add_option("--problem", f.problem, "Problem id")->required();
  solve_cmd->add_option("--beta", f.beta, "Exponent of the power-rhs forcing");
  add_solver_options(solve_cmd, f);

  auto* bench_cmd = app.add_subcommand("bench", "Recompute a published error table");
  bench_cmd->add_option("--table", f.table, "Table id")->required()->check(CLI::Range(1, 4));
  bench_cmd->add_option("--out", f.out, "CSV path (stdout when omitted)");
  bench_cmd->add_option("--config", f.config, "key = value file supplying flag defaults");

  auto* gm_cmd = app.add_subcommand("gm", "Gierer-Meinhardt stability report and trajectory");
  add_solver_options(gm_cmd, f);

  std::vector<const char*> argv{"fracpc"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kExitOk : kExitUsage;
  }

  if (solve_cmd->parsed()) return cmd_solve(f, out, err);
  if (bench_cmd->parsed()) return cmd_bench(f, out);
  return cmd_gm(f, out, err);
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  try {
    return dispatch(args, out, err);
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const DivergenceError& e) {
    err << "error: " << e.what() << '\n';
    return kExitDivergence;
  } catch (const OverflowError& e) {
    err << "error: " << e.what() << '\n';
    return kExitDivergence;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
}

}  // namespace fracpc::app
