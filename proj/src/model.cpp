#include "fracpc/model.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "fracpc/errors.hpp"

namespace fracpc {

std::string_view to_string(DerivativeKind kind) {
  switch (kind) {
    case DerivativeKind::Classical: return "classical";
    case DerivativeKind::Caputo: return "caputo";
    case DerivativeKind::CaputoFabrizio: return "cf";
    case DerivativeKind::AtanganaBaleanu: return "abc";
  }
  return "unknown";
}

std::string_view to_string(Scheme scheme) {
  switch (scheme) {
    case Scheme::ProposedPC: return "ppc";
    case Scheme::ImprovedAS: return "ias";
    case Scheme::ClassicalAS: return "as";
    case Scheme::TwoStepAB: return "ab2";
  }
  return "unknown";
}

std::string_view to_string(PredictorHistory history) {
  return history == PredictorHistory::Decoupled ? "decoupled" : "coupled";
}

void FractionalIVP::validate() const {
  if (dim == 0) {
    throw ConfigError("problem dimension must be positive");
  }
  if (y0.size() != dim) {
    throw ConfigError("initial state has " + std::to_string(y0.size()) + " components, expected " +
                      std::to_string(dim));
  }
  if (!rhs) {
    throw ConfigError("problem has no right-hand side");
  }
  if (!(alpha > 0.0 && alpha <= 1.0)) {
    throw ConfigError("alpha must lie in (0, 1], got " + std::to_string(alpha));
  }
  if (kind == DerivativeKind::Classical && alpha != 1.0) {
    throw ConfigError("classical derivative requires alpha = 1");
  }
  for (double v : y0) {
    if (!std::isfinite(v)) {
      throw ConfigError("initial state is not finite");
    }
  }
}

State FractionalIVP::eval(double t, std::span<const double> y) const {
  State out = rhs(t, y);
  if (out.size() != dim) {
    throw ConfigError("right-hand side returned " + std::to_string(out.size()) +
                      " components, expected " + std::to_string(dim));
  }
  return out;
}

UniformGrid::UniformGrid(double dt, std::size_t n_steps) : dt_(dt), n_steps_(n_steps) {
  if (!(dt > 0.0) || !std::isfinite(dt)) {
    throw ConfigError("dt must be positive and finite");
  }
  if (n_steps == 0) {
    throw ConfigError("grid needs at least one step");
  }
  if (n_steps > kMaxGridSteps) {
    throw ConfigError("grid of " + std::to_string(n_steps) + " steps exceeds the limit of " +
                      std::to_string(kMaxGridSteps));
  }
}

UniformGrid make_grid(double dt, double t_end) {
  if (!(dt > 0.0) || !std::isfinite(dt)) {
    throw ConfigError("dt must be positive and finite");
  }
  if (!std::isfinite(t_end) || t_end < dt) {
    throw ConfigError("t_end must be finite and at least dt");
  }
  const double ratio = t_end / dt;
  if (ratio > static_cast<double>(kMaxGridSteps)) {
    throw ConfigError("grid of " + std::to_string(ratio) + " steps exceeds the limit of " +
                      std::to_string(kMaxGridSteps));
  }
  const double n = std::nearbyint(ratio);
  // A few ulps of slack: dt is usually a rounded decimal such as 0.01.
  const double slack = 4.0 * (std::nextafter(n, std::numeric_limits<double>::infinity()) - n);
  if (std::abs(ratio - n) > slack) {
    throw ConfigError("span not an integer multiple of dt");
  }
  return UniformGrid(dt, static_cast<std::size_t>(n));
}

void SolverConfig::validate_for(DerivativeKind kind) const {
  if (corrector_sweeps < 1) {
    throw ConfigError("corrector_sweeps must be at least 1");
  }
  if (!(divergence_guard > 0.0)) {
    throw ConfigError("divergence_guard must be positive");
  }
  if ((scheme == Scheme::TwoStepAB || scheme == Scheme::ClassicalAS) && kind != DerivativeKind::Classical) {
    throw ConfigError(std::string("scheme ") + std::string(to_string(scheme)) +
                      " is only defined for the classical derivative");
  }
}

}  // namespace fracpc
