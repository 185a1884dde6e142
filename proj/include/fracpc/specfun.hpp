#pragma once

namespace fracpc {

/// Gamma function for real x > 0 (Lanczos, g = 607/128, fifteen terms).
/// Throws DomainError for non-positive or non-finite x.
[[nodiscard]] double gamma(double x);

/// Caputo-Fabrizio normalization M(alpha). Constant one on (0, 1].
[[nodiscard]] double m_norm(double alpha);

/// Atangana-Baleanu normalization AB(alpha) = 1 - alpha + alpha / Gamma(alpha).
[[nodiscard]] double ab_norm(double alpha);

}  // namespace fracpc
