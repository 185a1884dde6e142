#include "fracpc/gm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "fracpc/errors.hpp"

namespace fracpc {

void GMParams::validate() const {
  const std::array<std::pair<const char*, double>, 9> fields = {{{"rho0", rho0},
                                                                 {"rho", rho},
                                                                 {"c", c},
                                                                 {"mu", mu},
                                                                 {"cprime", cprime},
                                                                 {"rhoprime", rhoprime},
                                                                 {"nu", nu},
                                                                 {"a0", a0},
                                                                 {"h0", h0}}};
  for (const auto& [name, value] : fields) {
    if (!(value > 0.0) || !std::isfinite(value)) {
      throw ConfigError(std::string("Gierer-Meinhardt parameter ") + name + " must be positive, got " +
                        std::to_string(value));
    }
  }
}

State gm_rhs(double /*t*/, std::span<const double> state, const GMParams& p) {
  const double a = state[0];
  const double h = state[1];
  if (h == 0.0) {
    throw SingularityError("gm_rhs: inhibitor concentration h = 0");
  }
  return {p.rho0 * p.rho + p.c * p.rho * a * a / h - p.mu * a, p.cprime * p.rhoprime * a * a - p.nu * h};
}

Vec2 gm_equilibrium(const GMParams& p) {
  const double a = (p.rho0 * p.rho * p.cprime * p.rhoprime + p.c * p.rho * p.nu) / (p.mu * p.cprime * p.rhoprime);
  const double h = p.cprime * p.rhoprime / p.nu * a * a;
  return {a, h};
}

Mat2 gm_jacobian(const GMParams& p) {
  const double s = p.c * p.nu + p.cprime * p.rhoprime * p.rho0;
  const double q = p.mu * p.nu / s;
  return {{{2.0 * p.c * p.mu * p.nu / s - p.mu, -p.c / p.rho * q * q}, {2.0 * p.rho * s / p.mu, -p.nu}}};
}

namespace {

struct Spectrum {
  double trace;
  double det;
  double disc;
};

Spectrum spectrum(const GMParams& p) {
  const Mat2 j = gm_jacobian(p);
  const double tr = j[0][0] + j[1][1];
  // det J = mu nu identically.
  const double det = p.mu * p.nu;
  return {tr, det, tr * tr - 4.0 * det};
}

std::array<std::complex<double>, 2> roots(const Spectrum& s) {
  if (s.disc >= 0.0) {
    const double r = std::sqrt(s.disc);
    return {std::complex<double>((s.trace + r) / 2.0, 0.0), std::complex<double>((s.trace - r) / 2.0, 0.0)};
  }
  const double im = std::sqrt(-s.disc) / 2.0;
  return {std::complex<double>(s.trace / 2.0, im), std::complex<double>(s.trace / 2.0, -im)};
}

}  // namespace

std::array<std::complex<double>, 2> gm_eigenvalues(const GMParams& p) { return roots(spectrum(p)); }

std::string_view to_string(Stability s) {
  switch (s) {
    case Stability::AsymptoticallyStable: return "asymptotically_stable";
    case Stability::Unstable: return "unstable";
    case Stability::Marginal: return "marginal";
  }
  return "unknown";
}

std::string_view to_string(StabilityBranch b) {
  switch (b) {
    case StabilityBranch::RepeatedRoot: return "repeated_root";
    case StabilityBranch::RealDistinct: return "real_distinct";
    case StabilityBranch::ComplexTraceZero: return "complex_trace_zero";
    case StabilityBranch::ComplexTraceNegative: return "complex_trace_negative";
    case StabilityBranch::ComplexTracePositive: return "complex_trace_positive";
  }
  return "unknown";
}

StabilityVerdict gm_classify(double alpha, const GMParams& p, double tol) {
  if (!(alpha > 0.0 && alpha <= 1.0)) {
    throw DomainError("gm_classify: alpha must lie in (0, 1], got " + std::to_string(alpha));
  }
  p.validate();
  const Spectrum s = spectrum(p);
  StabilityVerdict out;
  out.trace = s.trace;
  out.determinant = s.det;
  out.discriminant = s.disc;
  out.eigenvalues = roots(s);
  out.threshold_lhs = std::numeric_limits<double>::quiet_NaN();
  out.threshold_rhs = std::numeric_limits<double>::quiet_NaN();

  const double scale = std::max(s.trace * s.trace, 4.0 * std::abs(s.det));
  const bool disc_zero = std::abs(s.disc) <= tol * scale;
  const bool trace_zero = s.trace * s.trace <= tol * scale;

  if (disc_zero) {
    out.branch = StabilityBranch::RepeatedRoot;
  } else if (s.disc > 0.0) {
    out.branch = StabilityBranch::RealDistinct;
  } else if (trace_zero) {
    out.branch = StabilityBranch::ComplexTraceZero;
  } else if (s.trace < 0.0) {
    out.branch = StabilityBranch::ComplexTraceNegative;
  } else {
    out.branch = StabilityBranch::ComplexTracePositive;
  }

  // Smallest |arg lambda| over the pair decides: stable iff it exceeds alpha pi / 2.
  double min_angle = std::numbers::pi;
  for (const auto& lambda : out.eigenvalues) {
    min_angle = std::min(min_angle, std::abs(std::arg(lambda)));
  }
  if (out.branch == StabilityBranch::ComplexTraceZero) {
    min_angle = std::numbers::pi / 2.0;
  }
  const double critical = alpha * std::numbers::pi / 2.0;
  if (out.branch == StabilityBranch::RepeatedRoot) {
    // Double real root tr/2: the trace sign alone decides.
    out.verdict = trace_zero ? Stability::Marginal
                             : (s.trace < 0.0 ? Stability::AsymptoticallyStable : Stability::Unstable);
  } else if (std::abs(min_angle - critical) <= tol * critical) {
    out.verdict = Stability::Marginal;
  } else {
    out.verdict = min_angle > critical ? Stability::AsymptoticallyStable : Stability::Unstable;
  }

  if (out.branch == StabilityBranch::ComplexTracePositive) {
    out.threshold_lhs = 4.0 * s.det / (s.trace * s.trace);
    if (alpha == 1.0) {
      // The oscillatory right half-plane pair is unstable for the integer order.
      out.threshold_rhs = std::numeric_limits<double>::infinity();
      out.verdict = Stability::Unstable;
    } else {
      const double tn = std::tan(critical);
      out.threshold_rhs = tn * tn + 1.0;
    }
  }
  return out;
}

}  // namespace fracpc
