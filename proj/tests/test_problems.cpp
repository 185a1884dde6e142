#include <doctest.h>

#include <cmath>

#include "fracpc/errors.hpp"
#include "fracpc/problems.hpp"
#include "fracpc/schemes.hpp"
#include "oracle.hpp"

using namespace fracpc;

TEST_CASE("problem registry") {
  CHECK(problem_ids().size() == 5);
  for (const auto& id : problem_ids()) {
    CHECK(builtin(id).id == id);
  }
  try {
    (void)builtin("lorenz");
    FAIL("expected LookupError");
  } catch (const LookupError& e) {
    CHECK(std::string(e.what()).find("exp-linear") != std::string::npos);
    CHECK(std::string(e.what()).find("gierer-meinhardt") != std::string::npos);
  }
  CHECK(builtin("exp-linear").default_span == 1.0);
  CHECK(builtin("cos-riccati").default_span == 30.0);
  CHECK(builtin("power-rhs").default_span == 3.0);
  CHECK_FALSE(builtin("gierer-meinhardt").exact);
}

TEST_CASE("classical exact solutions satisfy their equations") {
  const ProblemParams params;
  for (const char* id : {"exp-linear", "cos-riccati"}) {
    const NamedProblem p = builtin(id);
    const auto ivp = p.ivp(params);
    CHECK(p.exact(0.0, params) == ivp.y0);
    for (double t = 0.1; t < p.default_span; t += p.default_span / 37) {
      const double h = 1e-5;
      const double deriv = (p.exact(t + h, params)[0] - p.exact(t - h, params)[0]) / (2 * h);
      CHECK(deriv == doctest::Approx(ivp.eval(t, p.exact(t, params))[0]).epsilon(1e-8));
    }
  }
}

TEST_CASE("fractional exact solutions satisfy the integral form") {
  // y(t) = y0 + I^alpha f(., y(.)) (t)
  for (const char* id : {"power-rhs", "poly-manufactured"}) {
    for (double alpha : {0.25, 0.56, 0.9}) {
      ProblemParams params;
      params.alpha = alpha;
      const NamedProblem p = builtin(id);
      const auto ivp = p.ivp(params);
      auto f = [&](double s) { return ivp.eval(s, p.exact(s, params))[0]; };
      for (double t : {0.3, 1.0, 2.0}) {
        CAPTURE(id);
        CAPTURE(alpha);
        CAPTURE(t);
        const double rhs = ivp.y0[0] + oracle::rl_integral(f, alpha, t);
        CHECK(p.exact(t, params)[0] == doctest::Approx(rhs).epsilon(1e-8));
      }
    }
  }
}

TEST_CASE("classical kind of a fractional problem uses alpha = 1") {
  ProblemParams params;
  params.alpha = 0.4;
  const auto ivp = builtin("poly-manufactured").make_ivp(params, DerivativeKind::Classical);
  CHECK(ivp.alpha == 1.0);
  CHECK_NOTHROW(ivp.validate());
}

TEST_CASE("gierer-meinhardt problem wiring") {
  const ProblemParams params;
  const auto ivp = builtin("gierer-meinhardt").ivp(params);
  CHECK(ivp.dim == 2);
  CHECK(ivp.y0 == State{2.0, 3.0});
  CHECK(ivp.kind == DerivativeKind::Caputo);
  ProblemParams bad;
  bad.gm.mu = -1.0;
  CHECK_THROWS_AS((void)builtin("gierer-meinhardt").ivp(bad), ConfigError);
}

TEST_CASE("error helpers") {
  const UniformGrid grid = make_grid(0.5, 1.0);
  Trajectory traj(grid);
  traj.states = {{0.0, 1.0}, {0.5, 1.0}, {1.0, 2.0}};
  const double e = max_abs_error(traj, [](double t) { return State{t, 1.0}; });
  CHECK(e == 1.0);
  CHECK(empirical_order(1.6e-2, 1e-3, 2.0) == doctest::Approx(4.0));
  CHECK_THROWS_AS((void)empirical_order(0.0, 1e-3, 2.0), DomainError);
  CHECK_THROWS_AS((void)empirical_order(1e-2, 1e-3, 1.0), DomainError);
}

TEST_CASE("caputo proposed scheme converges on the power forcing") {
  ProblemParams params;
  params.alpha = 0.56;
  const NamedProblem p = builtin("power-rhs");
  const auto ivp = p.ivp(params);
  SolverConfig c;
  auto err = [&](double dt) {
    return max_abs_error(solve(ivp, c, make_grid(dt, 3.0)), [&](double t) { return p.exact(t, params); });
  };
  const double order = empirical_order(err(0.02), err(0.005), 4.0);
  CHECK(order > 1.3);
}
