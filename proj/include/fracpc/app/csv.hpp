#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "fracpc/model.hpp"

namespace fracpc::app {

/// 17 significant digits in scientific notation; independent of the locale,
/// so parse_double(format_double(x)) == x for every finite x.
[[nodiscard]] std::string format_double(double v);

/// Throws IoError when `text` is not a complete floating-point literal.
[[nodiscard]] double parse_double(std::string_view text);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

void write_csv(std::ostream& os, const CsvTable& table);

/// Plain comma-separated reader (no quoting). Throws IoError on ragged rows.
[[nodiscard]] CsvTable read_csv(std::istream& is);

/// Columns t, then one per state component, named `names` or y1, y2, ...
[[nodiscard]] CsvTable trajectory_table(const Trajectory& traj, const std::vector<std::string>& names = {});

/// Two-component trajectories only: one row (y1, y2) per node.
[[nodiscard]] CsvTable phase_table(const Trajectory& traj, const std::vector<std::string>& names);

/// gnuplot script plotting columns 2.. of `csv_path` against column 1.
[[nodiscard]] std::string gnuplot_script(const std::string& csv_path, const CsvTable& table, const std::string& title);

}  // namespace fracpc::app
