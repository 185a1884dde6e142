#include "fracpc/problems.hpp"

#include <algorithm>
#include <cmath>

#include "fracpc/errors.hpp"
#include "fracpc/specfun.hpp"

namespace fracpc {

namespace {

FractionalIVP scalar_ivp(Rhs rhs, double y0, const ProblemParams& params, DerivativeKind kind) {
  FractionalIVP ivp;
  ivp.dim = 1;
  ivp.rhs = std::move(rhs);
  ivp.y0 = {y0};
  ivp.kind = kind;
  ivp.alpha = kind == DerivativeKind::Classical ? 1.0 : params.alpha;
  return ivp;
}

NamedProblem exp_linear() {
  NamedProblem p;
  p.id = "exp-linear";
  p.natural_kind = DerivativeKind::Classical;
  p.default_span = 1.0;
  p.make_ivp = [](const ProblemParams& params, DerivativeKind kind) {
    return scalar_ivp([](double, std::span<const double> y) { return State{2.0 * y[0] + 3.0}; }, 1.0, params,
                      kind);
  };
  p.exact = [](double t, const ProblemParams&) { return State{2.5 * std::exp(2.0 * t) - 1.5}; };
  return p;
}

NamedProblem cos_riccati() {
  NamedProblem p;
  p.id = "cos-riccati";
  p.natural_kind = DerivativeKind::Classical;
  p.default_span = 30.0;
  p.make_ivp = [](const ProblemParams& params, DerivativeKind kind) {
    return scalar_ivp([](double t, std::span<const double> y) { return State{-std::cos(2.0 * t) * y[0] * y[0]}; },
                      1.0, params, kind);
  };
  p.exact = [](double t, const ProblemParams&) { return State{2.0 / (2.0 + std::sin(2.0 * t))}; };
  return p;
}

NamedProblem power_rhs() {
  NamedProblem p;
  p.id = "power-rhs";
  p.natural_kind = DerivativeKind::Caputo;
  p.default_span = 3.0;
  p.make_ivp = [](const ProblemParams& params, DerivativeKind kind) {
    const double beta = params.beta;
    return scalar_ivp([beta](double t, std::span<const double>) { return State{std::pow(t, beta)}; }, 0.0, params,
                      kind);
  };
  p.exact = [](double t, const ProblemParams& params) {
    const double a = params.alpha;
    const double b = params.beta;
    return State{gamma(b + 1.0) / gamma(a + b + 1.0) * std::pow(t, a + b)};
  };
  return p;
}

NamedProblem poly_manufactured() {
  NamedProblem p;
  p.id = "poly-manufactured";
  p.natural_kind = DerivativeKind::Caputo;
  p.default_span = 1.0;
  p.make_ivp = [](const ProblemParams& params, DerivativeKind kind) {
    const double a = kind == DerivativeKind::Classical ? 1.0 : params.alpha;
    const double g3 = gamma(3.0 - a);
    const double g2 = gamma(2.0 - a);
    return scalar_ivp(
        [a, g3, g2](double t, std::span<const double> y) {
          return State{2.0 * std::pow(t, 2.0 - a) / g3 - std::pow(t, 1.0 - a) / g2 - y[0] - t + t * t};
        },
        0.0, params, kind);
  };
  p.exact = [](double t, const ProblemParams&) { return State{t * t - t}; };
  return p;
}

NamedProblem gierer_meinhardt() {
  NamedProblem p;
  p.id = "gierer-meinhardt";
  p.natural_kind = DerivativeKind::Caputo;
  p.default_span = 100.0;
  p.make_ivp = [](const ProblemParams& params, DerivativeKind kind) {
    params.gm.validate();
    FractionalIVP ivp;
    ivp.dim = 2;
    const GMParams gm = params.gm;
    ivp.rhs = [gm](double t, std::span<const double> y) { return gm_rhs(t, y, gm); };
    ivp.y0 = {gm.a0, gm.h0};
    ivp.kind = kind;
    ivp.alpha = kind == DerivativeKind::Classical ? 1.0 : params.alpha;
    return ivp;
  };
  return p;
}

}  // namespace

const std::vector<std::string>& problem_ids() {
  static const std::vector<std::string> ids = {"exp-linear", "cos-riccati", "power-rhs", "poly-manufactured",
                                               "gierer-meinhardt"};
  return ids;
}

NamedProblem builtin(std::string_view id) {
  if (id == "exp-linear") return exp_linear();
  if (id == "cos-riccati") return cos_riccati();
  if (id == "power-rhs") return power_rhs();
  if (id == "poly-manufactured") return poly_manufactured();
  if (id == "gierer-meinhardt") return gierer_meinhardt();
  std::string valid;
  for (const auto& known : problem_ids()) {
    valid += valid.empty() ? known : ", " + known;
  }
  throw LookupError("unknown problem '" + std::string(id) + "'; valid ids: " + valid);
}

double max_abs_error(const Trajectory& traj, const std::function<State(double)>& exact) {
  double worst = 0.0;
  for (std::size_t m = 0; m < traj.states.size(); ++m) {
    const State ref = exact(traj.grid.node(m));
    const State& y = traj.states[m];
    for (std::size_t d = 0; d < y.size(); ++d) {
      worst = std::max(worst, std::abs(y[d] - ref[d]));
    }
  }
  return worst;
}

double empirical_order(double err_coarse, double err_fine, double ratio) {
  if (!(err_coarse > 0.0) || !(err_fine > 0.0)) {
    throw DomainError("empirical_order: errors must be positive");
  }
  if (!(ratio > 1.0)) {
    throw DomainError("empirical_order: refinement ratio must exceed 1");
  }
  return std::log(err_coarse / err_fine) / std::log(ratio);
}

}  // namespace fracpc
