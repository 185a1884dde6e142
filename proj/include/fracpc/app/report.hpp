#pragma once

#include <cstddef>
#include <optional>

#include <json.hpp>

#include "fracpc/app/manifest.hpp"
#include "fracpc/gm.hpp"

namespace fracpc::app {

/// Non-finite values become null.
[[nodiscard]] nlohmann::ordered_json number_or_null(double v);

/// Stability analysis of the equilibrium plus the run manifest and, when a
/// trajectory was computed, its final state or the step where it diverged.
[[nodiscard]] nlohmann::ordered_json gm_report(const RunManifest& manifest, const StabilityVerdict& verdict,
                                               const std::optional<State>& final_state,
                                               std::optional<std::size_t> diverged_at);

/// Summary of a solve run: node count, final state, max error when the
/// problem has a closed-form solution.
[[nodiscard]] nlohmann::ordered_json solve_report(const RunManifest& manifest, const Trajectory& traj,
                                                  std::optional<double> max_error,
                                                  std::optional<std::size_t> diverged_at);

}  // namespace fracpc::app
