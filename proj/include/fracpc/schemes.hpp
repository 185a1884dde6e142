#pragma once

#include <cstddef>
#include <span>
#include <string>

#include "fracpc/errors.hpp"
#include "fracpc/kernels.hpp"
#include "fracpc/model.hpp"

namespace fracpc {

/// A state left the divergence guard (or the right-hand side became
/// singular or non-finite). Carries the index of the node that failed and
/// the trajectory computed up to the node before it.
class DivergenceError : public Error {
 public:
  DivergenceError(std::size_t step, Trajectory partial, const std::string& what)
      : Error(what), step_(step), partial_(std::move(partial)) {}

  [[nodiscard]] std::size_t step() const noexcept { return step_; }
  [[nodiscard]] const Trajectory& partial() const noexcept { return partial_; }

 private:
  std::size_t step_;
  Trajectory partial_;
};

/// Everything a stepping rule needs to produce y_{m+1}. `traj` holds valid
/// states and f-values for nodes 0..m. `weights` is only read by the Caputo
/// and Atangana-Baleanu rules; when null they tabulate what they need.
struct StepContext {
  std::size_t m;
  const Trajectory& traj;
  const FractionalIVP& ivp;
  const SolverConfig& config;
  const MemoryWeights* weights = nullptr;
};

// Classical derivative.
[[nodiscard]] State predict_classical_as(const StepContext& ctx);
[[nodiscard]] State correct_classical(const StepContext& ctx, std::span<const double> y_pred);
[[nodiscard]] State step_two_step_ab(const StepContext& ctx);

// Caputo derivative.
[[nodiscard]] State predict_caputo_ias(const StepContext& ctx);
[[nodiscard]] State correct_caputo(const StepContext& ctx, std::span<const double> y_pred);

// Caputo-Fabrizio derivative.
[[nodiscard]] State predict_cf(const StepContext& ctx);
[[nodiscard]] State correct_cf(const StepContext& ctx, std::span<const double> y_pred);

// Atangana-Baleanu derivative in the Caputo sense.
[[nodiscard]] State predict_abc(const StepContext& ctx);
[[nodiscard]] State correct_abc(const StepContext& ctx, std::span<const double> y_pred);

/// One-step linear-interpolation predictor-corrector of the problem's kind,
/// used while the multistep stencils are not yet available (m < 2).
[[nodiscard]] State startup(const StepContext& ctx);

/// Runs the selected scheme over the whole grid.
/// With PredictorHistory::Decoupled the PPC corrector takes its prediction
/// from a separate explicit predictor trajectory advanced alongside.
/// Throws ConfigError for incompatible inputs and DivergenceError when a
/// state leaves the guard.
[[nodiscard]] Trajectory solve(const FractionalIVP& ivp, const SolverConfig& config, const UniformGrid& grid);

}  // namespace fracpc
