#include <doctest.h>

#include <cmath>
#include <random>

#include "fracpc/errors.hpp"
#include "fracpc/problems.hpp"
#include "fracpc/schemes.hpp"
#include "fracpc/specfun.hpp"
#include "oracle.hpp"

using namespace fracpc;

namespace {

FractionalIVP make_ivp(DerivativeKind kind, double alpha, Rhs rhs, double y0 = 1.0) {
  FractionalIVP ivp;
  ivp.dim = 1;
  ivp.rhs = std::move(rhs);
  ivp.y0 = {y0};
  ivp.kind = kind;
  ivp.alpha = alpha;
  return ivp;
}

Rhs constant(double c) {
  return [c](double, std::span<const double>) { return State{c}; };
}

Rhs smooth_t() {
  return [](double t, std::span<const double>) { return State{std::cos(3.0 * t) + t * t}; };
}

// Trajectory whose f-history is rhs(t_j, y_j) for arbitrary states y_j.
Trajectory history(const UniformGrid& grid, std::size_t upto, const Rhs& rhs, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Trajectory traj(grid);
  for (std::size_t j = 0; j <= upto; ++j) {
    const State y{u(rng)};
    traj.states.push_back(y);
    traj.f_history.push_back(rhs(grid.node(j), y));
  }
  return traj;
}

SolverConfig config(Scheme s, PredictorHistory h = PredictorHistory::Decoupled) {
  SolverConfig c;
  c.scheme = s;
  c.predictor_history = h;
  return c;
}

}  // namespace

TEST_CASE("classical schemes integrate constant fields exactly") {
  const auto ivp = make_ivp(DerivativeKind::Classical, 1.0, constant(2.5));
  const UniformGrid grid = make_grid(0.1, 3.0);
  for (Scheme s : {Scheme::ProposedPC, Scheme::ImprovedAS, Scheme::ClassicalAS, Scheme::TwoStepAB}) {
    for (PredictorHistory h : {PredictorHistory::Decoupled, PredictorHistory::Coupled}) {
      const Trajectory traj = solve(ivp, config(s, h), grid);
      for (std::size_t m = 0; m < traj.states.size(); ++m) {
        CHECK(traj.states[m][0] == doctest::Approx(1.0 + 2.5 * grid.node(m)).epsilon(1e-13));
      }
    }
  }
}

TEST_CASE("zero field leaves the initial state unchanged") {
  for (DerivativeKind k : {DerivativeKind::Caputo, DerivativeKind::CaputoFabrizio, DerivativeKind::AtanganaBaleanu}) {
    const auto ivp = make_ivp(k, 0.6, constant(0.0), 0.75);
    const Trajectory traj = solve(ivp, config(Scheme::ProposedPC), make_grid(0.05, 1.0));
    for (const auto& y : traj.states) CHECK(y[0] == 0.75);
  }
}

TEST_CASE("fractional constant-field exactness") {
  const double c = -1.3;
  const UniformGrid grid = make_grid(0.01, 2.0);
  for (double alpha : {0.3, 0.7, 1.0}) {
    CAPTURE(alpha);
    SUBCASE("caputo") {
      const Trajectory traj = solve(make_ivp(DerivativeKind::Caputo, alpha, constant(c)), config(Scheme::ProposedPC), grid);
      for (std::size_t m = 0; m < traj.states.size(); ++m) {
        const double exact = 1.0 + c * std::pow(grid.node(m), alpha) / std::tgamma(alpha + 1.0);
        CHECK(traj.states[m][0] == doctest::Approx(exact).epsilon(1e-12));
      }
    }
    SUBCASE("atangana-baleanu") {
      const double ab = 1.0 - alpha + alpha / std::tgamma(alpha);
      const Trajectory traj =
          solve(make_ivp(DerivativeKind::AtanganaBaleanu, alpha, constant(c)), config(Scheme::ProposedPC), grid);
      for (std::size_t m = 1; m < traj.states.size(); ++m) {
        const double exact =
            1.0 + (1.0 - alpha) / ab * c + alpha * c * std::pow(grid.node(m), alpha) / (ab * std::tgamma(alpha + 1.0));
        CHECK(traj.states[m][0] == doctest::Approx(exact).epsilon(1e-12));
      }
    }
    SUBCASE("caputo-fabrizio") {
      const Trajectory traj =
          solve(make_ivp(DerivativeKind::CaputoFabrizio, alpha, constant(c)), config(Scheme::ProposedPC), grid);
      for (std::size_t m = 0; m < traj.states.size(); ++m) {
        CHECK(traj.states[m][0] == doctest::Approx(1.0 + alpha * c * grid.node(m)).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("stepping rules reject stencils that are not yet available") {
  const auto ivp = make_ivp(DerivativeKind::Classical, 1.0, constant(1.0));
  const UniformGrid grid = make_grid(0.1, 1.0);
  const Trajectory traj = history(grid, 1, ivp.rhs, 1);
  const SolverConfig c = config(Scheme::ProposedPC);
  const StepContext ctx{1, traj, ivp, c};
  CHECK_THROWS_AS((void)predict_classical_as(ctx), UsageError);
  CHECK_NOTHROW((void)correct_classical(ctx, traj.states[1]));
  const auto cap = make_ivp(DerivativeKind::Caputo, 0.5, constant(1.0));
  const StepContext cctx{1, traj, cap, c};
  CHECK_THROWS_AS((void)predict_caputo_ias(cctx), UsageError);
  const StepContext zero{0, traj, cap, c};
  CHECK_THROWS_AS((void)correct_caputo(zero, traj.states[0]), UsageError);
}

TEST_CASE("reduction lattice at alpha = 1") {
  const UniformGrid grid = make_grid(0.05, 2.0);
  const Rhs rhs = [](double t, std::span<const double> y) { return State{std::sin(t) - 0.5 * y[0] * y[0]}; };
  const auto classical = make_ivp(DerivativeKind::Classical, 1.0, rhs);
  const auto cf = make_ivp(DerivativeKind::CaputoFabrizio, 1.0, rhs);
  const auto abc = make_ivp(DerivativeKind::AtanganaBaleanu, 1.0, rhs);
  const auto caputo = make_ivp(DerivativeKind::Caputo, 1.0, rhs);
  const SolverConfig c = config(Scheme::ProposedPC);

  SUBCASE("caputo-fabrizio corrector is term-exact classical") {
    const Trajectory traj = history(grid, 30, rhs, 7);
    for (std::size_t m = 1; m < 30; ++m) {
      const State yp{0.3 + 0.01 * m};
      CHECK(correct_cf({m, traj, cf, c}, yp) == correct_classical({m, traj, classical, c}, yp));
    }
    for (std::size_t m = 2; m < 30; ++m) {
      CHECK(predict_cf({m, traj, cf, c}) == predict_classical_as({m, traj, classical, c}));
    }
  }

  SUBCASE("caputo corrector increments equal classical increments") {
    // y-independent field so that the corrector sums depend on t only
    const Rhs g = smooth_t();
    const auto cap_t = make_ivp(DerivativeKind::Caputo, 1.0, g);
    const auto cl_t = make_ivp(DerivativeKind::Classical, 1.0, g);
    const Trajectory traj = history(grid, 30, g, 11);
    const double dt = grid.dt();
    const State any{0.0};
    const double head = 1.0 + dt / 2 * (traj.f_history[0][0] + traj.f_history[1][0]);
    double prev = head;
    for (std::size_t m = 1; m < 30; ++m) {
      const double cap = correct_caputo({m, traj, cap_t, c}, any)[0];
      const double inc = correct_classical({m, traj, cl_t, c}, any)[0] - traj.states[m][0];
      CHECK(cap - prev == doctest::Approx(inc).epsilon(1e-12));
      prev = cap;
    }
  }

  SUBCASE("atangana-baleanu corrector equals caputo") {
    const Trajectory traj = history(grid, 30, rhs, 3);
    for (std::size_t m = 1; m < 30; ++m) {
      const State yp{0.1 * m};
      CHECK(correct_abc({m, traj, abc, c}, yp)[0] ==
            doctest::Approx(correct_caputo({m, traj, caputo, c}, yp)[0]).epsilon(1e-12));
    }
  }

  SUBCASE("whole solves agree") {
    const UniformGrid g2 = make_grid(0.02, 3.0);
    const Trajectory a = solve(classical, c, g2);
    const Trajectory b = solve(cf, c, g2);
    CHECK(a.states == b.states);
    const Trajectory d = solve(caputo, c, g2);
    const Trajectory e = solve(abc, c, g2);
    for (std::size_t m = 0; m < d.states.size(); ++m) {
      CHECK(e.states[m][0] == doctest::Approx(d.states[m][0]).epsilon(1e-12));
    }
  }
}

TEST_CASE("startup step") {
  SUBCASE("classical constant field") {
    const auto ivp = make_ivp(DerivativeKind::Classical, 1.0, constant(4.0), 2.0);
    const UniformGrid grid = make_grid(0.25, 1.0);
    Trajectory traj(grid);
    traj.states.push_back(ivp.y0);
    traj.f_history.push_back(ivp.eval(0.0, ivp.y0));
    const SolverConfig c = config(Scheme::ProposedPC);
    CHECK(startup({0, traj, ivp, c})[0] == doctest::Approx(3.0).epsilon(1e-15));
  }
  SUBCASE("classical local error is third order") {
    const NamedProblem p = builtin("exp-linear");
    const ProblemParams params;
    const auto ivp = p.ivp(params);
    auto first_error = [&](double dt) {
      const UniformGrid grid = make_grid(dt, 1.0);
      Trajectory traj(grid);
      traj.states.push_back(ivp.y0);
      traj.f_history.push_back(ivp.eval(0.0, ivp.y0));
      const SolverConfig c = config(Scheme::ProposedPC);
      return std::abs(startup({0, traj, ivp, c})[0] - p.exact(dt, params)[0]);
    };
    const double e1 = first_error(1.0 / 16);
    const double e2 = first_error(1.0 / 32);
    CHECK(e1 < std::pow(1.0 / 16, 3) * 10.0);
    CHECK(e1 / e2 == doctest::Approx(8.0).epsilon(0.15));
  }
  SUBCASE("caputo power forcing matches linear product quadrature") {
    const double alpha = 0.45;
    const double beta = 0.9;
    const double dt = 0.1;
    const auto ivp = make_ivp(
        DerivativeKind::Caputo, alpha, [beta](double t, std::span<const double>) { return State{std::pow(t, beta)}; },
        0.0);
    const UniformGrid grid = make_grid(dt, 1.0);
    Trajectory traj(grid);
    traj.states.push_back(ivp.y0);
    traj.f_history.push_back(ivp.eval(0.0, ivp.y0));
    const SolverConfig c = config(Scheme::ProposedPC);
    const double f1 = std::pow(dt, beta);
    const double expect =
        oracle::weakly_singular([&](double s) { return f1 * s / dt; }, alpha, dt, 0.0, dt) / std::tgamma(alpha);
    CHECK(startup({0, traj, ivp, c})[0] == doctest::Approx(expect).epsilon(1e-12));
  }
}

TEST_CASE("predictor history only matters when f depends on y") {
  const UniformGrid grid = make_grid(0.02, 2.0);
  for (DerivativeKind k : {DerivativeKind::Caputo, DerivativeKind::Classical}) {
    const double alpha = k == DerivativeKind::Classical ? 1.0 : 0.6;
    const auto ivp = make_ivp(k, alpha, smooth_t());
    const Trajectory a = solve(ivp, config(Scheme::ProposedPC, PredictorHistory::Decoupled), grid);
    const Trajectory b = solve(ivp, config(Scheme::ProposedPC, PredictorHistory::Coupled), grid);
    CHECK(a.states == b.states);
  }
  const auto ivp = make_ivp(DerivativeKind::Caputo, 0.6, [](double, std::span<const double> y) {
    return State{-y[0]};
  });
  const Trajectory a = solve(ivp, config(Scheme::ProposedPC, PredictorHistory::Decoupled), grid);
  const Trajectory b = solve(ivp, config(Scheme::ProposedPC, PredictorHistory::Coupled), grid);
  CHECK(a.states != b.states);
  CHECK(a.states.back()[0] == doctest::Approx(b.states.back()[0]).epsilon(1e-3));
}

TEST_CASE("decoupled predictor is the improved scheme run on its own") {
  const auto ivp = make_ivp(DerivativeKind::Caputo, 0.7, [](double t, std::span<const double> y) {
    return State{std::cos(t) - y[0]};
  });
  const UniformGrid grid = make_grid(0.05, 1.0);
  const Trajectory ias = solve(ivp, config(Scheme::ImprovedAS), grid);
  const Trajectory ppc = solve(ivp, config(Scheme::ProposedPC), grid);
  const SolverConfig c = config(Scheme::ProposedPC);
  for (std::size_t m = 1; m < grid.steps(); ++m) {
    Trajectory prefix(grid);
    prefix.states.assign(ppc.states.begin(), ppc.states.begin() + m + 1);
    prefix.f_history.assign(ppc.f_history.begin(), ppc.f_history.begin() + m + 1);
    CHECK(correct_caputo({m, prefix, ivp, c}, ias.states[m + 1]) == ppc.states[m + 1]);
  }
}

TEST_CASE("extra corrector sweeps change y-dependent solutions slightly") {
  const NamedProblem p = builtin("cos-riccati");
  const ProblemParams params;
  const auto ivp = p.ivp(params);
  SolverConfig c = config(Scheme::ProposedPC, PredictorHistory::Coupled);
  const UniformGrid grid = make_grid(1.0 / 64, 30.0);
  const auto exact = [&](double t) { return p.exact(t, params); };
  const double e1 = max_abs_error(solve(ivp, c, grid), exact);
  c.corrector_sweeps = 3;
  const double e3 = max_abs_error(solve(ivp, c, grid), exact);
  CHECK(e1 != e3);
  CHECK(e3 < 1e-3);
}

TEST_CASE("solves are deterministic") {
  const NamedProblem p = builtin("poly-manufactured");
  ProblemParams params;
  params.alpha = 0.65;
  const auto ivp = p.ivp(params);
  const UniformGrid grid = make_grid(1.0 / 256, 1.0);
  const Trajectory a = solve(ivp, config(Scheme::ProposedPC), grid);
  const Trajectory b = solve(ivp, config(Scheme::ProposedPC), grid);
  CHECK(a.states == b.states);
  CHECK(a.f_history == b.f_history);
}

TEST_CASE("divergence is reported with the failing step") {
  SUBCASE("blow-up") {
    const auto ivp = make_ivp(DerivativeKind::Classical, 1.0, [](double, std::span<const double> y) {
      return State{y[0] * y[0]};
    });
    try {
      (void)solve(ivp, config(Scheme::ProposedPC), make_grid(0.01, 2.0));
      FAIL("expected divergence");
    } catch (const DivergenceError& e) {
      CHECK(e.step() > 90);
      CHECK(e.step() < 200);
      CHECK(e.partial().states.size() == e.step());
    }
  }
  SUBCASE("singular right-hand side") {
    const auto ivp = make_ivp(DerivativeKind::Caputo, 0.8, [](double t, std::span<const double> y) {
      if (t > 0.55) throw SingularityError("singular");
      return State{-y[0]};
    });
    try {
      (void)solve(ivp, config(Scheme::ProposedPC), make_grid(0.1, 1.0));
      FAIL("expected divergence");
    } catch (const DivergenceError& e) {
      CHECK(e.step() == 6);
      CHECK(e.partial().states.size() == 6);
    }
  }
}

TEST_CASE("incompatible scheme is a configuration error") {
  const auto ivp = make_ivp(DerivativeKind::Caputo, 0.5, constant(1.0));
  CHECK_THROWS_AS((void)solve(ivp, config(Scheme::TwoStepAB), make_grid(0.1, 1.0)), ConfigError);
}
