#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "fracpc/model.hpp"

namespace fracpc {

/// Closed-form product-integration integrals over one grid cell [t_i, t_{i+1}]
/// against the kernel (t_{m+1} - s)^(alpha - 1).
enum class KernelId {
  C_Step,      ///< integral of the kernel alone
  C_Lin,       ///< (s - t_{i+1}) times kernel
  C_Quad,      ///< (s - t_i)(s - t_{i+1}) times kernel
  C_FirstLin,  ///< s times kernel over [0, t_1]; requires i = 0
  P_Lin,       ///< (s - t_i) times kernel
  P_Shift,     ///< (s - t_{i-2}) times kernel
  P_Quad,      ///< (s - t_{i-2})(s - t_{i-1}) times kernel
  Cl_Lin,      ///< classical: integral of (s - t_{m+1}) over [t_m, t_{m+1}]
  Cl_Quad,     ///< classical: integral of (s - t_m)(s - t_{m+1}) over [t_m, t_{m+1}]
};

inline constexpr std::array<KernelId, 9> kAllKernels = {
    KernelId::C_Step, KernelId::C_Lin,   KernelId::C_Quad, KernelId::C_FirstLin, KernelId::P_Lin,
    KernelId::P_Shift, KernelId::P_Quad, KernelId::Cl_Lin, KernelId::Cl_Quad};

[[nodiscard]] std::string_view to_string(KernelId id);

/// Value of the integral selected by `id`. The classical kernels ignore
/// alpha, m and i. Throws UsageError on an invalid (id, m, i) combination,
/// DomainError on alpha or dt out of range and OverflowError when the
/// result is not finite.
[[nodiscard]] double kernel_weight(KernelId id, double alpha, std::size_t m, std::size_t i, double dt);

/// Quadrature coefficients for one (alpha, dt) pair, tabulated by the
/// distance k = m - i (and by m for the first-cell weight). Entries already
/// carry the 1/Gamma(alpha) factor and the divided-difference scaling, so a
/// history sum is a plain dot product with f-values.
class MemoryWeights {
 public:
  MemoryWeights(double alpha, double dt, std::size_t max_m);

  [[nodiscard]] double alpha() const noexcept { return alpha_; }
  [[nodiscard]] double dt() const noexcept { return dt_; }
  [[nodiscard]] std::size_t max_m() const noexcept { return step_.size() - 1; }

  /// C_Step / Gamma(alpha)
  [[nodiscard]] double step(std::size_t k) const { return step_.at(k); }
  /// C_Lin / (Gamma(alpha) dt)
  [[nodiscard]] double lin(std::size_t k) const { return lin_.at(k); }
  /// C_Quad / (2 Gamma(alpha) dt^2)
  [[nodiscard]] double quad(std::size_t k) const { return quad_.at(k); }
  /// C_FirstLin(m) / (Gamma(alpha) dt)
  [[nodiscard]] double first_lin(std::size_t m) const { return first_lin_.at(m); }
  /// P_Lin / (Gamma(alpha) dt)
  [[nodiscard]] double pred_lin(std::size_t k) const { return pred_lin_.at(k); }
  /// P_Shift / (Gamma(alpha) dt)
  [[nodiscard]] double pred_shift(std::size_t k) const { return pred_shift_.at(k); }
  /// P_Quad / (2 Gamma(alpha) dt^2)
  [[nodiscard]] double pred_quad(std::size_t k) const { return pred_quad_.at(k); }

 private:
  double alpha_;
  double dt_;
  std::vector<double> step_, lin_, quad_, first_lin_, pred_lin_, pred_shift_, pred_quad_;
};

/// Memory term: the quadratic-Newton product quadrature of cells i = 1..p
/// seen from step m (weights depend on m - i). Zero vector when p = 0.
/// Throws UsageError when p >= m or the history holds fewer than p + 2 values.
[[nodiscard]] State upsilon(double alpha, std::size_t m, std::size_t p, double dt,
                            std::span<const State> f_hist);

/// Same sum using precomputed weights (weights.max_m() >= m).
[[nodiscard]] State upsilon(const MemoryWeights& weights, std::size_t m, std::size_t p,
                            std::span<const State> f_hist);

}  // namespace fracpc
