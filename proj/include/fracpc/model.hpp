#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string_view>
#include <vector>

namespace fracpc {

using State = std::vector<double>;

/// Right-hand side f(t, y) of the initial-value problem.
using Rhs = std::function<State(double t, std::span<const double> y)>;

enum class DerivativeKind { Classical, Caputo, CaputoFabrizio, AtanganaBaleanu };

enum class Scheme {
  ProposedPC,   ///< improved predictor followed by the Newton-quadratic corrector
  ImprovedAS,   ///< explicit improved predictor on its own
  ClassicalAS,  ///< explicit three-point Newton predictor (classical only)
  TwoStepAB,    ///< two-step Adams-Bashforth baseline (classical only)
};

/// Where the proposed scheme's predictor takes its history from.
enum class PredictorHistory {
  Decoupled,  ///< predictor advances its own explicit trajectory alongside the corrected one
  Coupled,    ///< predictor reads the corrected trajectory (textbook PECE)
};

[[nodiscard]] std::string_view to_string(DerivativeKind kind);
[[nodiscard]] std::string_view to_string(Scheme scheme);
[[nodiscard]] std::string_view to_string(PredictorHistory history);

struct FractionalIVP {
  std::size_t dim = 1;
  Rhs rhs;
  State y0;
  DerivativeKind kind = DerivativeKind::Classical;
  double alpha = 1.0;

  /// Throws ConfigError when the fields are inconsistent.
  void validate() const;

  /// Evaluates rhs and checks the returned dimension.
  [[nodiscard]] State eval(double t, std::span<const double> y) const;
};

/// Uniform nodes t_m = m * dt, m = 0..N.
class UniformGrid {
 public:
  UniformGrid(double dt, std::size_t n_steps);

  [[nodiscard]] double dt() const noexcept { return dt_; }
  [[nodiscard]] std::size_t steps() const noexcept { return n_steps_; }
  [[nodiscard]] std::size_t size() const noexcept { return n_steps_ + 1; }
  [[nodiscard]] double node(std::size_t m) const noexcept { return static_cast<double>(m) * dt_; }
  [[nodiscard]] double t_end() const noexcept { return node(n_steps_); }

 private:
  double dt_;
  std::size_t n_steps_;
};

inline constexpr std::size_t kMaxGridSteps = 10'000'000;

/// Grid over [0, t_end]; t_end must be an integer multiple of dt.
[[nodiscard]] UniformGrid make_grid(double dt, double t_end);

/// Computed states and the cached right-hand side values at every node.
struct Trajectory {
  UniformGrid grid;
  std::vector<State> states;
  std::vector<State> f_history;

  explicit Trajectory(UniformGrid g) : grid(g) {
    states.reserve(g.size());
    f_history.reserve(g.size());
  }

  /// Number of nodes filled so far.
  [[nodiscard]] std::size_t filled() const noexcept { return states.size(); }
};

struct SolverConfig {
  Scheme scheme = Scheme::ProposedPC;
  PredictorHistory predictor_history = PredictorHistory::Decoupled;
  int corrector_sweeps = 1;
  double divergence_guard = 1e12;

  /// Throws ConfigError when the scheme cannot be used with `kind`.
  void validate_for(DerivativeKind kind) const;
};

}  // namespace fracpc
