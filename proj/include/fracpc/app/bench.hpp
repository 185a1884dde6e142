#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "fracpc/app/csv.hpp"
#include "fracpc/model.hpp"

namespace fracpc::app {

/// One published (method, alpha, dt) error cell.
struct BenchCell {
  std::string method;  ///< ppc, ppc-caputo (fractional scheme at alpha = 1), ias, as, ab2
  std::string problem;
  DerivativeKind kind = DerivativeKind::Classical;
  Scheme scheme = Scheme::ProposedPC;
  double alpha = 1.0;
  int steps_per_unit = 1;  ///< dt = 1 / steps_per_unit
  double paper_value = 0.0;
};

struct BenchRow {
  BenchCell cell;
  double dt = 0.0;
  double max_abs_error = 0.0;
  double ratio = 0.0;  ///< max_abs_error / paper_value
};

/// Cells of error tables 1-4 in a fixed order. Throws UsageError for other ids.
[[nodiscard]] std::vector<BenchCell> bench_cells(int table);

[[nodiscard]] BenchRow run_cell(const BenchCell& cell);

/// Runs every cell of `table` on `threads` workers; rows come back in cell order.
[[nodiscard]] std::vector<BenchRow> run_bench(int table, unsigned threads);

/// Worker count from FRACPC_THREADS, else the hardware concurrency (at least 1).
/// Throws ConfigError when the variable is set but not a positive integer.
[[nodiscard]] unsigned bench_threads();

/// Columns method, alpha, dt, max_abs_error, paper_value, ratio.
[[nodiscard]] CsvTable bench_table(const std::vector<BenchRow>& rows);

}  // namespace fracpc::app
