#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "acmhd/harness.hpp"

using namespace acmhd;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("rate fit recovers an exact power law") {
  std::vector<double> x = {1, 2, 4, 8, 16};
  std::vector<double> y;
  for (double v : x) y.push_back(3.0 * std::pow(v, 2.5));
  RateFit f = fit_rate(x, y);
  CHECK(f.exponent == doctest::Approx(2.5).epsilon(1e-12));
  CHECK(f.prefactor == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(f.r2 == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(f.n == 5);
}

TEST_CASE("rate fit tolerates mild noise") {
  std::vector<double> x = {1e-1, 5e-2, 2.5e-2, 1.25e-2};
  std::vector<double> wiggle = {1.02, 0.98, 1.01, 0.99};
  std::vector<double> y;
  for (std::size_t i = 0; i < x.size(); ++i) y.push_back(wiggle[i] * x[i] * x[i]);
  RateFit f = fit_rate(x, y);
  CHECK(f.exponent == doctest::Approx(2.0).epsilon(0.02));
  CHECK(f.r2 > 0.99);
}

TEST_CASE("rate fit on constant data reports a perfect flat line") {
  RateFit f = fit_rate({1, 2, 4}, {5, 5, 5});
  CHECK(f.exponent == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(f.r2 == 1.0);
}

TEST_CASE("rate fit rejects junk") {
  CHECK_THROWS_AS(fit_rate({1, 2}, {1, 2, 3}), ParamError);
  CHECK_THROWS_AS(fit_rate({1}, {1}), ParamError);
  CHECK_THROWS_AS(fit_rate({1, 2}, {1, -2}), ParamError);
  CHECK_THROWS_AS(fit_rate({1, 2}, {1, 0}), ParamError);
  CHECK_THROWS_AS(fit_rate({3, 3}, {1, 2}), ParamError);
}

TEST_CASE("step halving shows second order on the full system") {
  Grid3 g(16, 2 * kPi);
  StepControls c;
  SelfConvergence sc = self_convergence(g, DataKind::well_prepared, 1e-2, 0.064, 4e-3, 2, c);
  REQUIRE(sc.dts.size() == 2);
  REQUIRE(sc.errors.size() == 2);
  REQUIRE(sc.ratios.size() == 1);
  CHECK(sc.dts[0] == doctest::Approx(4e-3));
  CHECK(sc.dts[1] == doctest::Approx(2e-3));
  CHECK_FALSE(sc.below_floor);
  CHECK(sc.ratios[0] > 3.0);
  CHECK(sc.ratios[0] < 5.0);
}

TEST_CASE("step halving on an exactly integrable flow lands below the floor") {
  // frozen advection and solenoidal quiet data: every substep is exact, so
  // refinement changes nothing but rounding
  Grid3 g(16, 2 * kPi);
  StepControls c;
  c.nonlinear = false;
  SelfConvergence sc = self_convergence(g, DataKind::well_prepared, 1.0, 0.064, 8e-3, 2, c);
  CHECK(sc.below_floor);
  CHECK(sc.floor > 0);

  CHECK_THROWS_AS(self_convergence(g, DataKind::well_prepared, 1.0, 0.064, 8e-3, 1, c),
                  ParamError);
}

TEST_CASE("mollifier check insists on resolving the smallest width") {
  CHECK_THROWS_AS(mollifier_estimate_check(32, 4, 1), ParamError);
  CHECK_THROWS_AS(mollifier_estimate_check(64, 4, 1), ParamError);  // needs n/3 >= 42
  CHECK_THROWS_AS(mollifier_estimate_check(128, 1, 1), ParamError);
}

TEST_CASE("probe rejects inconsistent geometry and schedules") {
  ProbeSpec base;
  base.n = 16;
  base.horizons = {1, 2};
  base.dt = 0.05;

  ProbeSpec s = base;
  s.window_frac = 0.6;
  CHECK_THROWS_AS(local_decay_probe(s), ParamError);
  s = base;
  s.sponge_strength = 0;
  CHECK_THROWS_AS(local_decay_probe(s), ParamError);
  s = base;
  s.horizons = {2, 1};
  CHECK_THROWS_AS(local_decay_probe(s), ParamError);
  s = base;
  s.horizons = {};
  CHECK_THROWS_AS(local_decay_probe(s), ParamError);
  s = base;
  s.horizons = {0.03};
  CHECK_THROWS_AS(local_decay_probe(s), ParamError);
}

TEST_CASE("probe bookkeeping: conservation off, dissipation only from the sponge") {
  ProbeSpec s;
  s.n = 16;
  s.dt = 0.05;
  s.horizons = {1, 2};
  ProbeResult r = local_decay_probe(s);
  REQUIRE(r.window_on.size() == 2);
  REQUIRE(r.window_off.size() == 2);
  CHECK(r.window_initial > 0);
  CHECK(r.total_initial > 0);
  // the control run is a pure rotation, so total energy is conserved
  CHECK(r.total_off_final == doctest::Approx(r.total_initial).epsilon(1e-9));
  // the sponge only removes energy
  CHECK(r.total_on_final <= r.total_initial * (1 + 1e-12));
  CHECK(r.total_on_final < r.total_off_final);
  for (double w : r.window_on) CHECK(w >= 0);
}

TEST_CASE("epsilon sweep: structure of the report on a short horizon") {
  SweepSpec spec;
  spec.n = 16;
  spec.T = 0.05;
  spec.cadence = 10;
  SweepReport rep = epsilon_sweep(spec);
  REQUIRE(rep.entries.size() == 4);
  for (std::size_t i = 1; i < rep.entries.size(); ++i)
    CHECK(rep.entries[i].epsilon < rep.entries[i - 1].epsilon);
  for (const SweepEntry& e : rep.entries) {
    CHECK(std::isfinite(e.qu_l2l4));
    CHECK(std::isfinite(e.pu_diff));
    CHECK(e.qu_l2l4 >= 0);
    CHECK(e.pu_diff >= 0);
    CHECK(e.strich_p >= 0);
    CHECK(e.eps_dtp_hm1 >= 0);
  }
  CHECK(rep.floor_q > 0);
  CHECK(rep.floor_p > 0);
  CHECK(rep.dt_control_gap >= 0);
  if (!rep.qu_below_floor) CHECK(rep.fit_qu.n >= 2);

  SweepSpec bad = spec;
  bad.epsilons = {1e-2};
  CHECK_THROWS_AS(epsilon_sweep(bad), ParamError);
  bad.epsilons = {1e-2, -1.0};
  CHECK_THROWS_AS(epsilon_sweep(bad), ParamError);
}
