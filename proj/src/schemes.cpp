#include "fracpc/schemes.hpp"

#include <cmath>
#include <optional>
#include <string>

#include "fracpc/specfun.hpp"

namespace fracpc {

namespace {

void require_history(const StepContext& ctx, std::size_t min_m, const char* rule) {
  if (ctx.m < min_m) {
    throw UsageError(std::string(rule) + ": needs m >= " + std::to_string(min_m) + ", got m = " +
                     std::to_string(ctx.m) + " (startup required)");
  }
  if (ctx.traj.states.size() < ctx.m + 1 || ctx.traj.f_history.size() < ctx.m + 1) {
    throw UsageError(std::string(rule) + ": trajectory history shorter than m + 1");
  }
  if (ctx.m >= ctx.traj.grid.steps()) {
    throw UsageError(std::string(rule) + ": m is past the last grid step");
  }
}

double t_next(const StepContext& ctx) { return ctx.traj.grid.node(ctx.m + 1); }

const State& f_at(const StepContext& ctx, std::size_t j) { return ctx.traj.f_history[j]; }

// Weight table covering step m: the caller's if it fits, otherwise a fresh one.
const MemoryWeights& weights_for(const StepContext& ctx, std::optional<MemoryWeights>& storage) {
  const double dt = ctx.traj.grid.dt();
  if (ctx.weights != nullptr && ctx.weights->max_m() >= ctx.m && ctx.weights->alpha() == ctx.ivp.alpha &&
      ctx.weights->dt() == dt) {
    return *ctx.weights;
  }
  return storage.emplace(ctx.ivp.alpha, dt, ctx.m);
}

// dt * (5/12 f_new + 2/3 f_m - 1/12 f_{m-1}): integral of the quadratic Newton
// interpolant through t_{m-1}, t_m, t_{m+1} over the last cell.
State implicit_increment(const State& f_new, const State& f_m, const State& f_m1, double dt) {
  State inc(f_m.size());
  for (std::size_t d = 0; d < inc.size(); ++d) {
    inc[d] = 5.0 / 12.0 * f_new[d] * dt + 2.0 / 3.0 * f_m[d] * dt - f_m1[d] * dt / 12.0;
  }
  return inc;
}

// dt * (5/12 f_{m-2} - 4/3 f_{m-1} + 23/12 f_m): the same cell integrated with
// the interpolant through the three previous nodes.
State explicit_increment(const State& f_m2, const State& f_m1, const State& f_m, double dt) {
  State inc(f_m.size());
  for (std::size_t d = 0; d < inc.size(); ++d) {
    inc[d] = 5.0 / 12.0 * f_m2[d] * dt - 4.0 / 3.0 * f_m1[d] * dt + 23.0 / 12.0 * f_m[d] * dt;
  }
  return inc;
}

// Product-quadrature estimate of (1/Gamma(alpha)) * int_0^{t_{m+1}} f (t_{m+1}-s)^(alpha-1) ds
// with the quadratic Newton interpolant on cells 1..m and the linear one on cell 0.
State caputo_corrector_sum(const StepContext& ctx, const MemoryWeights& w, const State& f_new) {
  const std::size_t m = ctx.m;
  const double alpha = ctx.ivp.alpha;
  const auto& fh = ctx.traj.f_history;
  State q = upsilon(w, m, m - 1, std::span<const State>(fh.data(), m + 1));

  const State& f0 = fh[0];
  const State& f1 = fh[1];
  const State& fm = fh[m];
  const State& fm1 = fh[m - 1];
  const double dt_a = std::pow(ctx.traj.grid.dt(), alpha);
  const double c0 = dt_a / gamma(alpha + 1.0);
  const double c1 = alpha * dt_a / gamma(alpha + 2.0);
  const double c2 = alpha * dt_a / (2.0 * gamma(alpha + 3.0));
  const double head_step = w.step(m);
  const double head_lin = w.first_lin(m);
  for (std::size_t d = 0; d < q.size(); ++d) {
    q[d] += head_step * f0[d] + head_lin * (f1[d] - f0[d]);
    q[d] += c0 * f_new[d] + c1 * (fm[d] - f_new[d]) - c2 * (f_new[d] - 2.0 * fm[d] + fm1[d]);
  }
  return q;
}

// Explicit counterpart: linear interpolant on cells 0 and 1, the quadratic
// interpolant through t_{i-2}, t_{i-1}, t_i extrapolated onto cells 2..m.
State ias_sum(const StepContext& ctx, const MemoryWeights& w) {
  const std::size_t m = ctx.m;
  const auto& fh = ctx.traj.f_history;
  State q(ctx.ivp.dim, 0.0);
  for (std::size_t i = 0; i <= 1; ++i) {
    const double ws = w.step(m - i);
    const double wl = w.pred_lin(m - i);
    for (std::size_t d = 0; d < q.size(); ++d) {
      q[d] += ws * fh[i][d] + wl * (fh[i + 1][d] - fh[i][d]);
    }
  }
  for (std::size_t i = 2; i <= m; ++i) {
    const double ws = w.step(m - i);
    const double wl = w.pred_shift(m - i);
    const double wq = w.pred_quad(m - i);
    const State& a = fh[i - 2];
    const State& b = fh[i - 1];
    const State& c = fh[i];
    for (std::size_t d = 0; d < q.size(); ++d) {
      q[d] += ws * a[d] + wl * (b[d] - a[d]) + wq * (c[d] - 2.0 * b[d] + a[d]);
    }
  }
  return q;
}

// Rectangle (predictor) and linear (corrector) product rules over cells 0..m.
State product_rectangle_sum(const StepContext& ctx, const MemoryWeights& w) {
  const auto& fh = ctx.traj.f_history;
  State q(ctx.ivp.dim, 0.0);
  for (std::size_t i = 0; i <= ctx.m; ++i) {
    const double ws = w.step(ctx.m - i);
    for (std::size_t d = 0; d < q.size(); ++d) {
      q[d] += ws * fh[i][d];
    }
  }
  return q;
}

State product_trapezoid_sum(const StepContext& ctx, const MemoryWeights& w, const State& f_new) {
  const auto& fh = ctx.traj.f_history;
  State q(ctx.ivp.dim, 0.0);
  for (std::size_t i = 0; i <= ctx.m; ++i) {
    const double ws = w.step(ctx.m - i);
    const double wl = w.pred_lin(ctx.m - i);
    const State& next = i == ctx.m ? f_new : fh[i + 1];
    for (std::size_t d = 0; d < q.size(); ++d) {
      q[d] += ws * fh[i][d] + wl * (next[d] - fh[i][d]);
    }
  }
  return q;
}

// y0 + (1 - alpha)/AB * local + alpha/AB * memory
State abc_combine(const StepContext& ctx, const State& local, const State& memory) {
  const double alpha = ctx.ivp.alpha;
  const double ab = ab_norm(alpha);
  const double local_coef = (1.0 - alpha) / ab;
  const double memory_coef = alpha / ab;
  State y = ctx.ivp.y0;
  for (std::size_t d = 0; d < y.size(); ++d) {
    y[d] += local_coef * local[d] + memory_coef * memory[d];
  }
  return y;
}

State plus(const State& a, const State& b) {
  State out = a;
  for (std::size_t d = 0; d < out.size(); ++d) {
    out[d] += b[d];
  }
  return out;
}

}  // namespace

State predict_classical_as(const StepContext& ctx) {
  require_history(ctx, 2, "predict_classical_as");
  const std::size_t m = ctx.m;
  return plus(ctx.traj.states[m],
              explicit_increment(f_at(ctx, m - 2), f_at(ctx, m - 1), f_at(ctx, m), ctx.traj.grid.dt()));
}

State correct_classical(const StepContext& ctx, std::span<const double> y_pred) {
  require_history(ctx, 1, "correct_classical");
  const std::size_t m = ctx.m;
  const State f_new = ctx.ivp.eval(t_next(ctx), y_pred);
  return plus(ctx.traj.states[m], implicit_increment(f_new, f_at(ctx, m), f_at(ctx, m - 1), ctx.traj.grid.dt()));
}

State step_two_step_ab(const StepContext& ctx) {
  require_history(ctx, 1, "step_two_step_ab");
  const std::size_t m = ctx.m;
  const double dt = ctx.traj.grid.dt();
  const State& fm = f_at(ctx, m);
  const State& fm1 = f_at(ctx, m - 1);
  State y = ctx.traj.states[m];
  for (std::size_t d = 0; d < y.size(); ++d) {
    y[d] += dt * (1.5 * fm[d] - 0.5 * fm1[d]);
  }
  return y;
}

State predict_caputo_ias(const StepContext& ctx) {
  require_history(ctx, 2, "predict_caputo_ias");
  std::optional<MemoryWeights> storage;
  return plus(ctx.ivp.y0, ias_sum(ctx, weights_for(ctx, storage)));
}

State correct_caputo(const StepContext& ctx, std::span<const double> y_pred) {
  require_history(ctx, 1, "correct_caputo");
  std::optional<MemoryWeights> storage;
  const MemoryWeights& w = weights_for(ctx, storage);
  const State f_new = ctx.ivp.eval(t_next(ctx), y_pred);
  return plus(ctx.ivp.y0, caputo_corrector_sum(ctx, w, f_new));
}

State predict_cf(const StepContext& ctx) {
  require_history(ctx, 2, "predict_cf");
  const std::size_t m = ctx.m;
  const double alpha = ctx.ivp.alpha;
  const double mn = m_norm(alpha);
  const State& fm = f_at(ctx, m);
  const State& fm1 = f_at(ctx, m - 1);
  const State inc = explicit_increment(f_at(ctx, m - 2), fm1, fm, ctx.traj.grid.dt());
  State y = ctx.traj.states[m];
  for (std::size_t d = 0; d < y.size(); ++d) {
    y[d] += (1.0 - alpha) / mn * (fm[d] - fm1[d]) + alpha / mn * inc[d];
  }
  return y;
}

State correct_cf(const StepContext& ctx, std::span<const double> y_pred) {
  require_history(ctx, 1, "correct_cf");
  const std::size_t m = ctx.m;
  const double alpha = ctx.ivp.alpha;
  const double mn = m_norm(alpha);
  const State f_new = ctx.ivp.eval(t_next(ctx), y_pred);
  const State& fm = f_at(ctx, m);
  const State inc = implicit_increment(f_new, fm, f_at(ctx, m - 1), ctx.traj.grid.dt());
  State y = ctx.traj.states[m];
  for (std::size_t d = 0; d < y.size(); ++d) {
    y[d] += (1.0 - alpha) / mn * (f_new[d] - fm[d]) + alpha / mn * inc[d];
  }
  return y;
}

State predict_abc(const StepContext& ctx) {
  require_history(ctx, 2, "predict_abc");
  std::optional<MemoryWeights> storage;
  return abc_combine(ctx, f_at(ctx, ctx.m), ias_sum(ctx, weights_for(ctx, storage)));
}

State correct_abc(const StepContext& ctx, std::span<const double> y_pred) {
  require_history(ctx, 1, "correct_abc");
  std::optional<MemoryWeights> storage;
  const MemoryWeights& w = weights_for(ctx, storage);
  const State f_new = ctx.ivp.eval(t_next(ctx), y_pred);
  return abc_combine(ctx, f_new, caputo_corrector_sum(ctx, w, f_new));
}

State startup(const StepContext& ctx) {
  require_history(ctx, 0, "startup");
  const std::size_t m = ctx.m;
  const double dt = ctx.traj.grid.dt();
  const double alpha = ctx.ivp.alpha;
  const State& ym = ctx.traj.states[m];
  const State& fm = f_at(ctx, m);
  const int sweeps = ctx.config.corrector_sweeps;

  switch (ctx.ivp.kind) {
    case DerivativeKind::Classical:
    case DerivativeKind::CaputoFabrizio: {
      // Classical is the alpha = 1 case of the Caputo-Fabrizio local form.
      const double mn = m_norm(alpha);
      State y = ym;
      for (std::size_t d = 0; d < y.size(); ++d) {
        y[d] += alpha / mn * dt * fm[d];
      }
      for (int s = 0; s < sweeps; ++s) {
        const State f_new = ctx.ivp.eval(t_next(ctx), y);
        for (std::size_t d = 0; d < y.size(); ++d) {
          y[d] = ym[d] + (1.0 - alpha) / mn * (f_new[d] - fm[d]) + alpha / mn * (dt / 2.0 * (fm[d] + f_new[d]));
        }
      }
      return y;
    }
    case DerivativeKind::Caputo:
    case DerivativeKind::AtanganaBaleanu: {
      std::optional<MemoryWeights> storage;
      const MemoryWeights& w = weights_for(ctx, storage);
      const bool abc = ctx.ivp.kind == DerivativeKind::AtanganaBaleanu;
      State y = abc ? abc_combine(ctx, fm, product_rectangle_sum(ctx, w))
                    : plus(ctx.ivp.y0, product_rectangle_sum(ctx, w));
      for (int s = 0; s < sweeps; ++s) {
        const State f_new = ctx.ivp.eval(t_next(ctx), y);
        const State q = product_trapezoid_sum(ctx, w, f_new);
        y = abc ? abc_combine(ctx, f_new, q) : plus(ctx.ivp.y0, q);
      }
      return y;
    }
  }
  return ym;
}

namespace {

// Smallest m at which the scheme's own stencil applies.
std::size_t first_regular_step(Scheme scheme) {
  return scheme == Scheme::TwoStepAB ? 1 : 2;
}

State predict(const StepContext& ctx) {
  switch (ctx.ivp.kind) {
    case DerivativeKind::Classical: return predict_classical_as(ctx);
    case DerivativeKind::Caputo: return predict_caputo_ias(ctx);
    case DerivativeKind::CaputoFabrizio: return predict_cf(ctx);
    case DerivativeKind::AtanganaBaleanu: return predict_abc(ctx);
  }
  throw UsageError("unknown derivative kind");
}

State correct(const StepContext& ctx, std::span<const double> y_pred) {
  switch (ctx.ivp.kind) {
    case DerivativeKind::Classical: return correct_classical(ctx, y_pred);
    case DerivativeKind::Caputo: return correct_caputo(ctx, y_pred);
    case DerivativeKind::CaputoFabrizio: return correct_cf(ctx, y_pred);
    case DerivativeKind::AtanganaBaleanu: return correct_abc(ctx, y_pred);
  }
  throw UsageError("unknown derivative kind");
}

State advance(const StepContext& ctx, const State* decoupled_pred) {
  const Scheme scheme = ctx.config.scheme;
  if (ctx.m == 0 || (scheme != Scheme::ProposedPC && ctx.m < first_regular_step(scheme))) {
    return startup(ctx);
  }
  switch (scheme) {
    case Scheme::ProposedPC: {
      State y;
      if (decoupled_pred != nullptr) {
        y = correct(ctx, *decoupled_pred);
      } else {
        y = correct(ctx, ctx.m < first_regular_step(scheme) ? startup(ctx) : predict(ctx));
      }
      for (int s = 1; s < ctx.config.corrector_sweeps; ++s) {
        y = correct(ctx, y);
      }
      return y;
    }
    case Scheme::ImprovedAS: return predict(ctx);
    case Scheme::ClassicalAS: return predict_classical_as(ctx);
    case Scheme::TwoStepAB: return step_two_step_ab(ctx);
  }
  throw UsageError("unknown scheme");
}

// Explicit predictor trajectory advanced alongside the corrected one.
State advance_predictor(const StepContext& ctx) {
  return ctx.m < first_regular_step(Scheme::ImprovedAS) ? startup(ctx) : predict(ctx);
}

bool within_guard(const State& v, double guard) {
  for (double x : v) {
    if (!std::isfinite(x) || std::abs(x) > guard) {
      return false;
    }
  }
  return true;
}

}  // namespace

Trajectory solve(const FractionalIVP& ivp, const SolverConfig& config, const UniformGrid& grid) {
  ivp.validate();
  config.validate_for(ivp.kind);

  Trajectory traj(grid);
  std::optional<MemoryWeights> weights;
  if (ivp.kind == DerivativeKind::Caputo || ivp.kind == DerivativeKind::AtanganaBaleanu) {
    weights.emplace(ivp.alpha, grid.dt(), grid.steps());
  }

  auto fail = [&](std::size_t index, const std::string& why) {
    throw DivergenceError(index, traj, "solution diverged at step " + std::to_string(index) + ": " + why);
  };
  auto evaluate = [&](std::size_t index, const State& y) {
    State f;
    try {
      f = ivp.eval(grid.node(index), y);
    } catch (const SingularityError& e) {
      fail(index, e.what());
    }
    if (!within_guard(f, std::numeric_limits<double>::infinity())) {
      fail(index, "right-hand side is not finite");
    }
    return f;
  };

  traj.states.push_back(ivp.y0);
  traj.f_history.push_back(evaluate(0, ivp.y0));

  std::optional<Trajectory> shadow;
  if (config.scheme == Scheme::ProposedPC && config.predictor_history == PredictorHistory::Decoupled) {
    shadow.emplace(grid);
    shadow->states.push_back(traj.states.front());
    shadow->f_history.push_back(traj.f_history.front());
  }

  for (std::size_t m = 0; m < grid.steps(); ++m) {
    const MemoryWeights* w = weights ? &*weights : nullptr;
    State next;
    try {
      if (shadow) {
        State pred = advance_predictor(StepContext{m, *shadow, ivp, config, w});
        if (!within_guard(pred, config.divergence_guard)) {
          fail(m + 1, "predictor left the divergence guard");
        }
        State f_pred = evaluate(m + 1, pred);
        shadow->states.push_back(std::move(pred));
        shadow->f_history.push_back(std::move(f_pred));
      }
      next = advance(StepContext{m, traj, ivp, config, w}, shadow ? &shadow->states.back() : nullptr);
    } catch (const SingularityError& e) {
      fail(m + 1, e.what());
    }
    if (!within_guard(next, config.divergence_guard)) {
      fail(m + 1, "state left the divergence guard");
    }
    State f_next = evaluate(m + 1, next);
    traj.states.push_back(std::move(next));
    traj.f_history.push_back(std::move(f_next));
  }
  return traj;
}

}  // namespace fracpc
