#include "fracpc/app/csv.hpp"

#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>

#include "fracpc/errors.hpp"

namespace fracpc::app {

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::scientific, 16);
  return std::string(buf, res.ptr);
}

double parse_double(std::string_view text) {
  double v = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  if (first != last && *first == '+') {
    ++first;
  }
  const auto res = std::from_chars(first, last, v);
  if (res.ec != std::errc() || res.ptr != last || text.empty()) {
    throw IoError("not a number: '" + std::string(text) + "'");
  }
  return v;
}

namespace {

void write_row(std::ostream& os, const std::vector<std::string>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i > 0) os << ',';
    os << cells[i];
  }
  os << '\n';
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, ',')) {
    out.push_back(cell);
  }
  if (!line.empty() && line.back() == ',') {
    out.emplace_back();
  }
  return out;
}

}  // namespace

void write_csv(std::ostream& os, const CsvTable& table) {
  write_row(os, table.header);
  for (const auto& row : table.rows) {
    write_row(os, row);
  }
}

CsvTable read_csv(std::istream& is) {
  CsvTable table;
  std::string line;
  bool first = true;
  while (std::getline(is, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto cells = split(line);
    if (first) {
      table.header = std::move(cells);
      first = false;
      continue;
    }
    if (cells.size() != table.header.size()) {
      throw IoError("csv row " + std::to_string(table.rows.size() + 2) + " has " + std::to_string(cells.size()) +
                    " cells, header has " + std::to_string(table.header.size()));
    }
    table.rows.push_back(std::move(cells));
  }
  if (first) {
    throw IoError("csv input is empty");
  }
  return table;
}

CsvTable trajectory_table(const Trajectory& traj, const std::vector<std::string>& names) {
  CsvTable table;
  table.header.push_back("t");
  const std::size_t dim = traj.states.empty() ? names.size() : traj.states.front().size();
  for (std::size_t d = 0; d < dim; ++d) {
    table.header.push_back(d < names.size() ? names[d] : "y" + std::to_string(d + 1));
  }
  for (std::size_t m = 0; m < traj.states.size(); ++m) {
    std::vector<std::string> row{format_double(traj.grid.node(m))};
    for (double v : traj.states[m]) {
      row.push_back(format_double(v));
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

CsvTable phase_table(const Trajectory& traj, const std::vector<std::string>& names) {
  if (names.size() != 2) {
    throw UsageError("phase_table: expected two component names");
  }
  CsvTable table;
  table.header = names;
  for (const auto& y : traj.states) {
    if (y.size() != 2) {
      throw UsageError("phase_table: trajectory is not two-dimensional");
    }
    table.rows.push_back({format_double(y[0]), format_double(y[1])});
  }
  return table;
}

std::string gnuplot_script(const std::string& csv_path, const CsvTable& table, const std::string& title) {
  std::ostringstream os;
  os << "set datafile separator ','\n";
  os << "set key autotitle columnhead\n";
  os << "set title \"" << title << "\"\n";
  os << "set xlabel \"" << (table.header.empty() ? "" : table.header.front()) << "\"\n";
  os << "plot ";
  for (std::size_t c = 2; c <= table.header.size(); ++c) {
    if (c > 2) os << ", \\\n     ";
    os << (c == 2 ? "'" + csv_path + "'" : std::string("''")) << " using 1:" << c << " with lines";
  }
  os << '\n';
  return os.str();
}

}  // namespace fracpc::app
