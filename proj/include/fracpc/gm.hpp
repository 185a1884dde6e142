#pragma once

#include <array>
#include <complex>
#include <span>
#include <string_view>

#include "fracpc/model.hpp"

namespace fracpc {

/// Gierer-Meinhardt activator-inhibitor kinetics. Defaults are the
/// reference parameter set whose equilibrium is (7/4, 49/32).
struct GMParams {
  double rho0 = 1.0;
  double rho = 1.0;
  double c = 3.0;
  double mu = 4.0;
  double cprime = 1.0;
  double rhoprime = 1.0;
  double nu = 2.0;
  double a0 = 2.0;
  double h0 = 3.0;

  /// Throws ConfigError unless every field is positive and finite.
  void validate() const;
};

using Vec2 = std::array<double, 2>;
using Mat2 = std::array<std::array<double, 2>, 2>;

/// (rho0 rho + c rho a^2/h - mu a, c' rho' a^2 - nu h). Throws SingularityError at h = 0.
[[nodiscard]] State gm_rhs(double t, std::span<const double> state, const GMParams& p);

/// The unique positive equilibrium (a*, h*).
[[nodiscard]] Vec2 gm_equilibrium(const GMParams& p);

/// Jacobian of gm_rhs at the equilibrium, in closed form.
[[nodiscard]] Mat2 gm_jacobian(const GMParams& p);

[[nodiscard]] std::array<std::complex<double>, 2> gm_eigenvalues(const GMParams& p);

enum class Stability { AsymptoticallyStable, Unstable, Marginal };

/// Which case of the trace / discriminant analysis decided the verdict.
enum class StabilityBranch {
  RepeatedRoot,          ///< discriminant zero, real double root tr/2
  RealDistinct,          ///< discriminant positive
  ComplexTraceZero,      ///< purely imaginary pair
  ComplexTraceNegative,  ///< complex pair in the left half-plane
  ComplexTracePositive,  ///< complex pair in the right half-plane, order-dependent
};

[[nodiscard]] std::string_view to_string(Stability s);
[[nodiscard]] std::string_view to_string(StabilityBranch b);

struct StabilityVerdict {
  Stability verdict = Stability::Marginal;
  StabilityBranch branch = StabilityBranch::RepeatedRoot;
  std::array<std::complex<double>, 2> eigenvalues{};
  double trace = 0.0;
  double determinant = 0.0;
  double discriminant = 0.0;
  /// 4 det / tr^2 and tan^2(alpha pi / 2) + 1; NaN outside the
  /// ComplexTracePositive branch, threshold_rhs is +inf at alpha = 1.
  double threshold_lhs = 0.0;
  double threshold_rhs = 0.0;
};

/// Linear stability of the equilibrium for the fractional order alpha, using
/// |arg lambda| against alpha pi / 2. Ties within `tol` are Marginal.
[[nodiscard]] StabilityVerdict gm_classify(double alpha, const GMParams& p, double tol = 1e-12);

}  // namespace fracpc
