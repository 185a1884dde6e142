#include "fracpc/app/report.hpp"

#include <cmath>

namespace fracpc::app {

nlohmann::ordered_json number_or_null(double v) {
  if (!std::isfinite(v)) return nullptr;
  return v;
}

namespace {

nlohmann::ordered_json state_json(const State& y) {
  auto arr = nlohmann::ordered_json::array();
  for (double v : y) arr.push_back(number_or_null(v));
  return arr;
}

}  // namespace

nlohmann::ordered_json gm_report(const RunManifest& manifest, const StabilityVerdict& verdict,
                                 const std::optional<State>& final_state, std::optional<std::size_t> diverged_at) {
  const Vec2 eq = gm_equilibrium(manifest.gm);
  nlohmann::ordered_json j;
  j["params"] = to_json(manifest.gm);
  j["alpha"] = manifest.alpha;
  j["equilibrium"] = {eq[0], eq[1]};
  j["trace"] = verdict.trace;
  j["determinant"] = verdict.determinant;
  j["discriminant"] = verdict.discriminant;
  auto eig = nlohmann::ordered_json::array();
  for (const auto& lam : verdict.eigenvalues) {
    eig.push_back({{"re", lam.real()}, {"im", lam.imag()}});
  }
  j["eigenvalues"] = eig;
  j["threshold_lhs"] = number_or_null(verdict.threshold_lhs);
  j["threshold_rhs"] = number_or_null(verdict.threshold_rhs);
  j["verdict"] = to_string(verdict.verdict);
  j["branch"] = to_string(verdict.branch);
  if (final_state) j["final_state"] = state_json(*final_state);
  j["diverged_at"] = diverged_at ? nlohmann::ordered_json(*diverged_at) : nlohmann::ordered_json(nullptr);
  j["manifest"] = to_json(manifest);
  return j;
}

nlohmann::ordered_json solve_report(const RunManifest& manifest, const Trajectory& traj,
                                    std::optional<double> max_error, std::optional<std::size_t> diverged_at) {
  nlohmann::ordered_json j;
  j["nodes"] = traj.states.size();
  j["final_time"] = traj.states.empty() ? 0.0 : traj.grid.node(traj.states.size() - 1);
  j["final_state"] = traj.states.empty() ? nlohmann::ordered_json::array() : state_json(traj.states.back());
  j["max_abs_error"] = max_error ? number_or_null(*max_error) : nlohmann::ordered_json(nullptr);
  j["diverged_at"] = diverged_at ? nlohmann::ordered_json(*diverged_at) : nlohmann::ordered_json(nullptr);
  j["manifest"] = to_json(manifest);
  return j;
}

}  // namespace fracpc::app
