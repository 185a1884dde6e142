#include "fracpc/app/manifest.hpp"

#include <fstream>
#include <istream>

#include "fracpc/errors.hpp"

namespace fracpc::app {

nlohmann::ordered_json to_json(const GMParams& p) {
  return {{"rho0", p.rho0}, {"rho", p.rho},   {"c", p.c},   {"mu", p.mu}, {"c_prime", p.cprime},
          {"rho_prime", p.rhoprime}, {"nu", p.nu}, {"a0", p.a0}, {"h0", p.h0}};
}

nlohmann::ordered_json to_json(const RunManifest& m) {
  nlohmann::ordered_json j;
  j["subcommand"] = m.subcommand;
  if (m.subcommand == "bench") {
    j["table"] = m.table;
  } else {
    j["problem"] = m.problem;
    j["scheme"] = to_string(m.scheme);
    j["kind"] = to_string(m.kind);
    j["predictor_history"] = to_string(m.predictor_history);
    j["alpha"] = m.alpha;
    if (m.problem == "power-rhs") j["beta"] = m.beta;
    if (m.problem == "gierer-meinhardt") j["gm_params"] = to_json(m.gm);
    j["dt"] = m.dt;
    j["t_end"] = m.t_end;
    j["sweeps"] = m.sweeps;
  }
  j["out"] = m.out;
  j["report"] = m.report;
  j["config"] = m.config;
  j["emit_plot_script"] = m.emit_plot_script;
  return j;
}

Scheme parse_scheme(const std::string& s) {
  for (Scheme v : {Scheme::ProposedPC, Scheme::ImprovedAS, Scheme::ClassicalAS, Scheme::TwoStepAB}) {
    if (s == to_string(v)) return v;
  }
  throw UsageError("unknown scheme '" + s + "'; expected ppc, ias, as or ab2");
}

DerivativeKind parse_kind(const std::string& s) {
  for (DerivativeKind v : {DerivativeKind::Classical, DerivativeKind::Caputo, DerivativeKind::CaputoFabrizio,
                           DerivativeKind::AtanganaBaleanu}) {
    if (s == to_string(v)) return v;
  }
  throw UsageError("unknown derivative kind '" + s + "'; expected classical, caputo, cf or abc");
}

PredictorHistory parse_predictor_history(const std::string& s) {
  for (PredictorHistory v : {PredictorHistory::Decoupled, PredictorHistory::Coupled}) {
    if (s == to_string(v)) return v;
  }
  throw UsageError("unknown predictor history '" + s + "'; expected decoupled or coupled");
}

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

ConfigEntries read_config(std::istream& is) {
  ConfigEntries entries;
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config line " + std::to_string(lineno) + ": expected key = value");
    }
    std::string key = trim(t.substr(0, eq));
    if (key.empty()) {
      throw ConfigError("config line " + std::to_string(lineno) + ": empty key");
    }
    entries.emplace_back(std::move(key), trim(t.substr(eq + 1)));
  }
  return entries;
}

ConfigEntries load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw IoError("cannot open config file '" + path + "'");
  }
  return read_config(in);
}

}  // namespace fracpc::app
