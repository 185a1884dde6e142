#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "fracpc/gm.hpp"
#include "fracpc/model.hpp"

namespace fracpc::app {

/// Fully resolved inputs of one CLI run, echoed into every report.
struct RunManifest {
  std::string subcommand;
  std::string problem;
  Scheme scheme = Scheme::ProposedPC;
  DerivativeKind kind = DerivativeKind::Classical;
  PredictorHistory predictor_history = PredictorHistory::Decoupled;
  double alpha = 1.0;
  double beta = 0.9;
  GMParams gm{};
  double dt = 0.0;
  double t_end = 0.0;
  int sweeps = 1;
  int table = 0;
  std::string out;
  std::string report;
  std::string config;
  bool emit_plot_script = false;
};

[[nodiscard]] nlohmann::ordered_json to_json(const RunManifest& m);
[[nodiscard]] nlohmann::ordered_json to_json(const GMParams& p);

// Throw UsageError listing the accepted spellings.
[[nodiscard]] Scheme parse_scheme(const std::string& s);
[[nodiscard]] DerivativeKind parse_kind(const std::string& s);
[[nodiscard]] PredictorHistory parse_predictor_history(const std::string& s);

using ConfigEntries = std::vector<std::pair<std::string, std::string>>;

/// key = value lines; blank lines and lines starting with '#' are skipped.
/// Keys are flag names without the leading dashes. Throws ConfigError on
/// lines without '=' or with an empty key.
[[nodiscard]] ConfigEntries read_config(std::istream& is);

/// Loads `path`; throws IoError when it cannot be opened.
[[nodiscard]] ConfigEntries load_config(const std::string& path);

}  // namespace fracpc::app
