#include <cmath>

#include "catch_amalgamated.hpp"
#include "relunet/exact_calculus.hpp"
#include "relunet/experiment/instances.hpp"
#include "relunet/numerics.hpp"
#include "relunet/oracle/oracle.hpp"

using namespace relunet;
using Catch::Matchers::WithinAbs;

namespace {
ParamVector ramp() { return ParamVector(1, {1, 0, 1, 0}); }
Target identity() { return Target::piecewise({0, 1}, {{0, 1}}); }
}  // namespace

TEST_CASE("risk_exact examples") {
  CHECK_THAT(risk_exact(ramp(), Target::constant(0)), WithinAbs(1.0 / 3.0, 1e-15));
  CHECK(risk_exact(ParamVector::zeros(1), Target::constant(1)) == 1.0);
  CHECK(risk_exact(ramp(), identity()) == 0.0);
}

TEST_CASE("risk_exact matches Simpson on the examples") {
  // frozen from oracle::simpson with 2^16 panels
  const double ref = oracle::simpson([](double x) { return x * x; }, 1 << 16);
  CHECK(std::abs(risk_exact(ramp(), Target::constant(0)) - ref) <= 1e-12);
}

TEST_CASE("grad_exact examples") {
  const GradientVector g = grad_exact(ramp(), Target::constant(0));
  CHECK_THAT(g[0], WithinAbs(2.0 / 3.0, 1e-15));
  CHECK_THAT(g[1], WithinAbs(1.0, 1e-15));
  CHECK_THAT(g[2], WithinAbs(2.0 / 3.0, 1e-15));
  CHECK_THAT(g[3], WithinAbs(1.0, 1e-15));

  const GradientVector z = grad_exact(ParamVector::zeros(1), Target::constant(1));
  CHECK(z.vector() == std::vector<double>{0, 0, 0, -2});

  // v = 0 and an empty active set: w and b components vanish
  const GradientVector e = grad_exact(ParamVector(1, {-1, -1, 0, 0.3}), Target::constant(2));
  CHECK(e[0] == 0.0);
  CHECK(e[1] == 0.0);
  CHECK(e[2] == 0.0);
  CHECK_THAT(e[3], WithinAbs(2 * (0.3 - 2), 1e-15));

  CHECK(norm_sq(grad_exact(ramp(), identity()).values()) == 0.0);
}

TEST_CASE("segment_moment examples") {
  const std::vector<double> x{0, 1};
  const std::vector<double> one{1};
  CHECK_THAT(segment_moment(0, 1, x, 1), WithinAbs(1.0 / 3.0, 1e-15));
  CHECK(segment_moment(0, 1, one, 0) == 1.0);
  CHECK_THAT(segment_moment(0.5, 1, x, 0), WithinAbs(0.375, 1e-15));
}

TEST_CASE("exact risk and gradient match the Simpson oracle") {
  CounterRng rng(11, 0);
  for (int i = 0; i < 200; ++i) {
    const ParamVector phi = experiment::random_phi(rng, experiment::random_width(rng), 2.0);
    const Target f = rng.uniform01() < 0.5
                         ? Target::constant(rng.uniform(-2, 2))
                         : experiment::random_piecewise_target(rng, 3, 2, 1.0);
    const RiskAndGradient rg = evaluate_exact(phi, f);
    const oracle::Reference ref = oracle::reference(phi, f);
    REQUIRE(std::abs(rg.risk - ref.risk) <= 1e-10 * (1.0 + ref.risk));
    for (std::size_t k = 0; k < ref.gradient.size(); ++k) {
      REQUIRE(std::abs(rg.gradient[k] - ref.gradient[k]) <= 1e-8);
    }
  }
}

TEST_CASE("finite differences of the risk match the gradient off the kinks") {
  CounterRng rng(11, 1);
  for (int i = 0; i < 50; ++i) {
    const std::size_t H = experiment::random_width(rng);
    const ParamVector phi = experiment::random_regular_phi(rng, H, 2.0);
    const Target f = Target::constant(rng.uniform(-2, 2));
    const auto fd = oracle::fd_gradient(
        [&](std::span<const double> x) {
          return risk_exact(ParamVector(H, std::vector<double>(x.begin(), x.end())), f);
        },
        phi.values(), 1e-6);
    REQUIRE(oracle::componentwise_relative_error(grad_exact(phi, f).values(), fd) <= 1e-4);
  }
}

TEST_CASE("degenerate neurons get exactly zero w and b components") {
  CounterRng rng(11, 2);
  for (int i = 0; i < 100; ++i) {
    const std::size_t H = experiment::random_width(rng);
    std::vector<double> data = experiment::random_phi(rng, H, 2.0).vector();
    const std::size_t j = static_cast<std::size_t>(rng.next_u32() % H);
    data[j] = 0.0;
    data[H + j] = 0.0;
    const GradientVector g = grad_exact(ParamVector(H, data), Target::constant(rng.uniform(-2, 2)));
    CHECK(g[j] == 0.0);
    CHECK(g[H + j] == 0.0);
    CHECK_FALSE(std::signbit(g[j]));
  }
}

TEST_CASE("zero risk and zero gradient coincide") {
  // N = 0.5 + 0.5 relu(x) - 0.5 relu(x) = 0.5
  const ParamVector flat(2, {1, 1, 0, 0, 0.5, -0.5, 0.5});
  CHECK(risk_exact(flat, Target::constant(0.5)) <= 1e-30);
  CHECK(norm_sq(grad_exact(flat, Target::constant(0.5)).values()) <= 1e-30);

  CounterRng rng(11, 3);
  for (int i = 0; i < 200; ++i) {
    const ParamVector phi = experiment::random_phi(rng, experiment::random_width(rng), 2.0);
    const Target f = Target::constant(rng.uniform(-2, 2));
    const RiskAndGradient rg = evaluate_exact(phi, f);
    if (norm_sq(rg.gradient.values()) == 0.0) CHECK(rg.risk <= 1e-12);
  }
}

TEST_CASE("gradient norm bound for constant targets") {
  CounterRng rng(11, 4);
  for (int i = 0; i < 1000; ++i) {
    const ParamVector phi = experiment::random_phi(rng, experiment::random_width(rng), 2.0);
    const double alpha = rng.uniform(-5, 5);
    const RiskAndGradient rg = evaluate_exact(phi, Target::constant(alpha));
    const double bound = (8.0 * norm_sq(phi.values()) + 4.0) * rg.risk;
    REQUIRE(norm_sq(rg.gradient.values()) <= bound + 1e-9 * (1.0 + rg.risk));
  }
}

TEST_CASE("constant-target route agrees with the segment route") {
  CounterRng rng(11, 5);
  for (int i = 0; i < 200; ++i) {
    const ParamVector phi = experiment::random_phi(rng, experiment::random_width(rng), 2.0);
    const double alpha = rng.uniform(-2, 2);
    const GradientVector a = grad_exact(phi, Target::constant(alpha));
    const GradientVector b = grad_exact_constant(phi, alpha);
    const double scale = 1.0 + std::sqrt(norm_sq(a.values()));
    for (std::size_t k = 0; k < a.size(); ++k) REQUIRE(std::abs(a[k] - b[k]) <= 1e-12 * scale);
  }
}

TEST_CASE("target validation") {
  CHECK_THROWS_AS(Target::piecewise({0, 0.5}, {{1}}), TargetError);
  CHECK_THROWS_AS(Target::piecewise({0, 0.6, 0.5, 1}, {{1}, {1}, {1}}), TargetError);
  CHECK_THROWS_AS(Target::piecewise({0, 0.5, 1}, {{0}, {1}}), TargetError);
  const Target hat = Target::piecewise({0, 0.5, 1}, {{0, 2}, {2, -2}});
  CHECK_THAT(hat.squared_integral(), WithinAbs(1.0 / 3.0, 1e-15));
  CHECK_THAT(hat(0.25), WithinAbs(0.5, 1e-15));
}
