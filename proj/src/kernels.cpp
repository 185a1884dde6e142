#include "fracpc/kernels.hpp"

#include <cmath>
#include <string>

#include "fracpc/errors.hpp"
#include "fracpc/specfun.hpp"

namespace fracpc {

namespace {

// k^a for integer k >= 0 and a > 0, with 0^a = 0. std::pow returns exact
// values for integral a, which keeps the alpha = 1 reductions exact.
double ipow(std::size_t k, double a) {
  return k == 0 ? 0.0 : std::pow(static_cast<double>(k), a);
}

}  // namespace

std::string_view to_string(KernelId id) {
  switch (id) {
    case KernelId::C_Step: return "C_Step";
    case KernelId::C_Lin: return "C_Lin";
    case KernelId::C_Quad: return "C_Quad";
    case KernelId::C_FirstLin: return "C_FirstLin";
    case KernelId::P_Lin: return "P_Lin";
    case KernelId::P_Shift: return "P_Shift";
    case KernelId::P_Quad: return "P_Quad";
    case KernelId::Cl_Lin: return "Cl_Lin";
    case KernelId::Cl_Quad: return "Cl_Quad";
  }
  return "unknown";
}

double kernel_weight(KernelId id, double alpha, std::size_t m, std::size_t i, double dt) {
  if (!(dt > 0.0) || !std::isfinite(dt)) {
    throw DomainError("kernel_weight: dt must be positive and finite");
  }
  if (id == KernelId::Cl_Lin) {
    return -dt * dt / 2.0;
  }
  if (id == KernelId::Cl_Quad) {
    return -dt * dt * dt / 6.0;
  }
  if (!(alpha > 0.0 && alpha <= 1.0)) {
    throw DomainError("kernel_weight: alpha must lie in (0, 1], got " + std::to_string(alpha));
  }
  if (i > m) {
    throw UsageError("kernel_weight: cell index i = " + std::to_string(i) + " exceeds m = " +
                     std::to_string(m));
  }
  if (id == KernelId::C_FirstLin && i != 0) {
    throw UsageError("kernel_weight: C_FirstLin is defined for the first cell only (i = 0)");
  }

  const double a = alpha;
  const std::size_t k = m - i;
  const double kd = static_cast<double>(k);
  const double k_a = ipow(k, a);
  const double k1_a = ipow(k + 1, a);
  const double scale1 = std::pow(dt, a + 1.0) / (a * (a + 1.0));
  const double scale2 = std::pow(dt, a + 2.0) / (a * (a + 1.0) * (a + 2.0));

  double value = 0.0;
  switch (id) {
    case KernelId::C_Step:
      value = std::pow(dt, a) / a * (k1_a - k_a);
      break;
    case KernelId::C_Lin:
      value = scale1 * ((kd - a) * k1_a - ipow(k, a + 1.0));
      break;
    case KernelId::C_Quad:
      value = scale2 * (k1_a * (2.0 * kd * kd - a * (kd + 1.0) + 2.0 * kd) -
                        k_a * (2.0 * kd * kd + a * kd + 2.0 * kd));
      break;
    case KernelId::C_FirstLin:
    case KernelId::P_Lin:
      // Same integrand; for C_FirstLin i = 0 so k = m.
      value = scale1 * (ipow(k + 1, a + 1.0) - ipow(k, a + 1.0) - (a + 1.0) * k_a);
      break;
    case KernelId::P_Shift:
      value = scale1 * (k1_a * (kd + 3.0 + 2.0 * a) - k_a * (kd + 3.0 + 3.0 * a));
      break;
    case KernelId::P_Quad:
      value = scale2 * (k1_a * (2.0 * kd * kd + (3.0 * a + 10.0) * kd + 2.0 * a * a + 9.0 * a + 12.0) -
                        k_a * (2.0 * kd * kd + (5.0 * a + 10.0) * kd + 6.0 * a * a + 18.0 * a + 12.0));
      break;
    case KernelId::Cl_Lin:
    case KernelId::Cl_Quad:
      break;
  }
  if (!std::isfinite(value)) {
    throw OverflowError("kernel_weight: " + std::string(to_string(id)) + " is not finite for m = " +
                        std::to_string(m) + ", i = " + std::to_string(i));
  }
  return value;
}

MemoryWeights::MemoryWeights(double alpha, double dt, std::size_t max_m) : alpha_(alpha), dt_(dt) {
  const double inv_gamma = 1.0 / gamma(alpha);
  const double lin_scale = inv_gamma / dt;
  const double quad_scale = inv_gamma / (2.0 * dt * dt);
  const std::size_t n = max_m + 1;
  step_.resize(n);
  lin_.resize(n);
  quad_.resize(n);
  first_lin_.resize(n);
  pred_lin_.resize(n);
  pred_shift_.resize(n);
  pred_quad_.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    step_[k] = kernel_weight(KernelId::C_Step, alpha, k, 0, dt) * inv_gamma;
    lin_[k] = kernel_weight(KernelId::C_Lin, alpha, k, 0, dt) * lin_scale;
    quad_[k] = kernel_weight(KernelId::C_Quad, alpha, k, 0, dt) * quad_scale;
    first_lin_[k] = kernel_weight(KernelId::C_FirstLin, alpha, k, 0, dt) * lin_scale;
    pred_lin_[k] = kernel_weight(KernelId::P_Lin, alpha, k, 0, dt) * lin_scale;
    pred_shift_[k] = kernel_weight(KernelId::P_Shift, alpha, k, 0, dt) * lin_scale;
    pred_quad_[k] = kernel_weight(KernelId::P_Quad, alpha, k, 0, dt) * quad_scale;
  }
}

State upsilon(double alpha, std::size_t m, std::size_t p, double dt, std::span<const State> f_hist) {
  if (p >= m) {
    throw UsageError("upsilon: truncation bound p = " + std::to_string(p) + " must be below m = " +
                     std::to_string(m));
  }
  return upsilon(MemoryWeights(alpha, dt, m), m, p, f_hist);
}

State upsilon(const MemoryWeights& weights, std::size_t m, std::size_t p, std::span<const State> f_hist) {
  if (p >= m) {
    throw UsageError("upsilon: truncation bound p = " + std::to_string(p) + " must be below m = " +
                     std::to_string(m));
  }
  if (m > weights.max_m()) {
    throw UsageError("upsilon: weight table too short for m = " + std::to_string(m));
  }
  const std::size_t dim = f_hist.empty() ? 0 : f_hist.front().size();
  State sum(dim, 0.0);
  if (p == 0) {
    return sum;
  }
  if (f_hist.size() < p + 2) {
    throw UsageError("upsilon: history holds " + std::to_string(f_hist.size()) + " values, need " +
                     std::to_string(p + 2));
  }
  for (std::size_t i = 1; i <= p; ++i) {
    const std::size_t k = m - i;
    const double ws = weights.step(k);
    const double wl = weights.lin(k);
    const double wq = weights.quad(k);
    const State& next = f_hist[i + 1];
    const State& cur = f_hist[i];
    const State& prev = f_hist[i - 1];
    for (std::size_t d = 0; d < dim; ++d) {
      sum[d] += ws * next[d] + wl * (next[d] - cur[d]) + wq * (next[d] - 2.0 * cur[d] + prev[d]);
    }
  }
  return sum;
}

}  // namespace fracpc
