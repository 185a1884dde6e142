#pragma once

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fracpc/gm.hpp"
#include "fracpc/model.hpp"

namespace fracpc {

/// Tunable inputs shared by the builtin problems.
struct ProblemParams {
  double alpha = 1.0;
  double beta = 0.9;  ///< exponent of the power-rhs forcing t^beta
  GMParams gm{};
};

using ExactSolution = std::function<State(double t, const ProblemParams& params)>;

struct NamedProblem {
  std::string id;
  DerivativeKind natural_kind = DerivativeKind::Classical;
  double default_span = 1.0;
  /// Builds the initial-value problem for `kind` (alpha taken from params).
  std::function<FractionalIVP(const ProblemParams& params, DerivativeKind kind)> make_ivp;
  /// Empty when no closed-form solution is known.
  ExactSolution exact;

  [[nodiscard]] FractionalIVP ivp(const ProblemParams& params) const { return make_ivp(params, natural_kind); }
};

/// exp-linear, cos-riccati, power-rhs, poly-manufactured, gierer-meinhardt.
[[nodiscard]] const std::vector<std::string>& problem_ids();

/// Throws LookupError (listing the valid ids) for an unknown id.
[[nodiscard]] NamedProblem builtin(std::string_view id);

/// max over nodes and components of |y_m - exact(t_m)|.
[[nodiscard]] double max_abs_error(const Trajectory& traj, const std::function<State(double)>& exact);

/// log(err_coarse / err_fine) / log(ratio). Throws DomainError on
/// non-positive errors or ratio <= 1.
[[nodiscard]] double empirical_order(double err_coarse, double err_fine, double ratio);

}  // namespace fracpc
