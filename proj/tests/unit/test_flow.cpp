#include <cmath>

#include "catch_amalgamated.hpp"
#include "relunet/exact_calculus.hpp"
#include "relunet/experiment/instances.hpp"
#include "relunet/flow.hpp"
#include "relunet/lyapunov.hpp"
#include "relunet/numerics.hpp"

using namespace relunet;
using Catch::Matchers::WithinAbs;

namespace {
ParamVector ramp() { return ParamVector(1, {1, 0, 1, 0}); }
ParamVector flat() { return ParamVector(2, {1, 1, 0, 0, 0.5, -0.5, 0.5}); }
}  // namespace

TEST_CASE("a zero-risk start gives a constant trace") {
  const FlowTrace tr = integrate_flow(flat(), Target::constant(0.5), 2.0, 1e-2);
  REQUIRE(tr.size() == 201);
  for (std::size_t i = 0; i < tr.size(); ++i) {
    REQUIRE(tr.states[i] == flat());
    REQUIRE(tr.risks[i] == 0.0);
  }
  const ItoResiduals res = ito_residuals(tr);
  CHECK(res.v_identity_max == 0.0);
  CHECK(res.l_identity_max == 0.0);
  const FlowBounds b = flow_bound_check(tr);
  CHECK(b.sup_norm_ok);
  CHECK(b.decay_ok);
  CHECK(b.monotone_ok);
}

TEST_CASE("ramp flow satisfies the decay bound") {
  const FlowTrace tr = integrate_flow(ramp(), Target::constant(0), 10.0, 1e-3);
  CHECK(tr.times.back() == 10.0);
  CHECK(tr.risks.back() <= v_const(ramp(), 0) / 80.0);
  const FlowBounds b = flow_bound_check(tr);
  CHECK(b.sup_norm_ok);
  CHECK(b.decay_ok);
  CHECK(b.monotone_ok);
  for (std::size_t i = 1; i < tr.size(); ++i) {
    REQUIRE(tr.v_values[i] <= tr.v_values[i - 1] + 1e-9 * (1.0 + tr.v_values[0]));
  }
}

TEST_CASE("ramp flow identities") {
  const FlowTrace tr = integrate_flow(ramp(), Target::constant(0), 5.0, 1e-3);
  const ItoResiduals res = ito_residuals(tr);
  CHECK(res.v_identity_max <= 1e-6);
  CHECK(res.l_identity_max <= 1e-6);
}

TEST_CASE("from zero towards alpha = 1 only c moves") {
  const FlowTrace tr = integrate_flow(ParamVector::zeros(1), Target::constant(1), 1.0, 1e-3);
  for (const ParamVector& s : tr.states) {
    REQUIRE(s[0] == 0.0);
    REQUIRE(s[1] == 0.0);
    REQUIRE(s[2] == 0.0);
  }
  // c' = 2 (1 - c)
  CHECK_THAT(tr.states.back().c(), WithinAbs(1.0 - std::exp(-2.0), 1e-10));
}

TEST_CASE("RK4 beats Euler at the same step") {
  const FlowTrace rk = integrate_flow(ramp(), Target::constant(0), 2.0, 1e-2, FlowMethod::RK4);
  const FlowTrace eu = integrate_flow(ramp(), Target::constant(0), 2.0, 1e-2, FlowMethod::Euler);
  const ItoResiduals a = ito_residuals(rk);
  const ItoResiduals b = ito_residuals(eu);
  CHECK(a.v_identity_max < b.v_identity_max);
  CHECK(a.l_identity_max < b.l_identity_max);
}

TEST_CASE("halving the step shrinks the residuals on a smooth arc") {
  // no kink reaches 0 or 1 here: regular_prefix covers the whole trace
  const ParamVector phi0(1, {1, -0.5, 1, 0});
  const double T = 1.0;
  const FlowTrace c = integrate_flow(phi0, Target::constant(0.2), T, 2e-2);
  const FlowTrace f = integrate_flow(phi0, Target::constant(0.2), T, 1e-2);
  REQUIRE(regular_prefix(c) == c.size());
  const ItoResiduals rc = ito_residuals(c);
  const ItoResiduals rf = ito_residuals(f);
  CHECK(rf.l_identity_max * 8.0 <= rc.l_identity_max);

  const FlowTrace ce = integrate_flow(phi0, Target::constant(0.2), T, 2e-2, FlowMethod::Euler);
  const FlowTrace fe = integrate_flow(phi0, Target::constant(0.2), T, 1e-2, FlowMethod::Euler);
  CHECK(ito_residuals(fe).l_identity_max * 2.0 <= ito_residuals(ce).l_identity_max);
}

TEST_CASE("a corrupted trace fails the monotonicity check") {
  FlowTrace tr = integrate_flow(ramp(), Target::constant(0), 1.0, 1e-2);
  REQUIRE(flow_bound_check(tr).monotone_ok);
  tr.risks[50] += 1e-3;
  CHECK_FALSE(flow_bound_check(tr).monotone_ok);
}

TEST_CASE("general-target growth bounds") {
  const Target zero = Target::piecewise({0, 1}, {{0}});
  const FlowTrace z = integrate_flow(ramp(), zero, 2.0, 1e-2);
  const AprioriBounds bz = apriori_general_check(z, zero);
  CHECK(bz.v_growth_ok);
  CHECK(bz.norm_growth_ok);

  const Target id = Target::piecewise({0, 1}, {{0, 1}});
  CHECK_THAT(id.squared_integral(), WithinAbs(1.0 / 3.0, 1e-15));
  const FlowTrace tr = integrate_flow(ramp(), id, 10.0, 1e-3);
  const AprioriBounds b = apriori_general_check(tr, id);
  CHECK(b.v_growth_ok);
  CHECK(b.norm_growth_ok);

  // f = 1 through both paths: each bound under its own V
  const ParamVector phi0(1, {0.5, -0.2, 0.7, 0.1});
  const Target one_general = Target::piecewise({0, 1}, {{1}});
  const FlowTrace g = integrate_flow(phi0, one_general, 5.0, 1e-3);
  const AprioriBounds bg = apriori_general_check(g, one_general);
  CHECK(bg.v_growth_ok);
  CHECK(bg.norm_growth_ok);
  const FlowTrace c = integrate_flow(phi0, Target::constant(1), 5.0, 1e-3);
  const FlowBounds bc = flow_bound_check(c);
  CHECK(bc.sup_norm_ok);
  CHECK(bc.decay_ok);
  for (std::size_t i = 0; i < g.size(); ++i) REQUIRE(g.risks[i] == c.risks[i]);
}

TEST_CASE("flow on random starts") {
  CounterRng rng(29, 0);
  for (int i = 0; i < 5; ++i) {
    const ParamVector phi0 = experiment::random_phi(rng, experiment::random_width(rng), 1.0);
    const Target f = Target::constant(rng.uniform(-2, 2));
    const FlowTrace tr = integrate_flow(phi0, f, 3.0, 1e-3);
    const ItoResiduals res = ito_residuals(tr);
    CHECK(res.v_identity_max <= 1e-6);
    CHECK(res.l_identity_max <= 1e-6);
    const FlowBounds b = flow_bound_check(tr);
    CHECK(b.sup_norm_ok);
    CHECK(b.decay_ok);
    CHECK(b.monotone_ok);
  }
}

TEST_CASE("cumulative integral") {
  std::vector<double> y;
  for (int i = 0; i <= 10; ++i) y.push_back(0.1 * i * 0.1 * i);
  const std::vector<double> I = cumulative_integral(y, 0.1);
  for (int i = 0; i <= 10; ++i) CHECK_THAT(I[i], WithinAbs(std::pow(0.1 * i, 3) / 3.0, 1e-15));
}

TEST_CASE("integrator argument checks") {
  CHECK_THROWS_AS(integrate_flow(ramp(), Target::constant(0), 1.0, 0.0), DomainError);
  CHECK_THROWS_AS(integrate_flow(ramp(), Target::constant(0), 1.0, 2.0), DomainError);
}
