#include <cmath>

#include "catch_amalgamated.hpp"
#include "relunet/exact_calculus.hpp"
#include "relunet/experiment/instances.hpp"
#include "relunet/lyapunov.hpp"
#include "relunet/numerics.hpp"
#include "relunet/oracle/oracle.hpp"

using namespace relunet;
using Catch::Matchers::WithinAbs;

TEST_CASE("simpson examples") {
  CHECK_THAT(oracle::simpson([](double x) { return x * x; }, 1 << 14), WithinAbs(1.0 / 3.0, 1e-12));
  const auto hinge = [](double x) {
    const double y = std::max(x - 0.5, 0.0);
    return y * y;
  };
  CHECK_THAT(oracle::simpson(hinge, 1 << 14), WithinAbs(1.0 / 24.0, 1e-8));
  // same integral through the exact calculus: N(x) = relu(x - 0.5)
  CHECK_THAT(risk_exact(ParamVector(1, {1, -0.5, 1, 0}), Target::constant(0)),
             WithinAbs(1.0 / 24.0, 1e-15));
  CHECK(oracle::simpson([](double) { return 0.0; }, 64) == 0.0);
}

TEST_CASE("simpson error drops by at least 8 per doubling on smooth integrands") {
  const double exact = std::exp(1.0) - 1.0;
  double prev = std::abs(oracle::simpson([](double x) { return std::exp(x); }, 4) - exact);
  for (int n = 8; n <= 128; n *= 2) {
    const double err = std::abs(oracle::simpson([](double x) { return std::exp(x); }, n) - exact);
    CHECK(err * 8.0 <= prev);
    prev = err;
  }
}

TEST_CASE("simpson input checks") {
  CHECK_THROWS_AS(oracle::simpson([](double x) { return x; }, 3), OracleError);
  CHECK_THROWS_AS(oracle::simpson([](double x) { return 1.0 / (x - x); }, 4), OracleError);
  oracle::OracleConfig cfg;
  cfg.fd_step = 0.5;
  CHECK_THROWS_AS(cfg.validate(), OracleError);
}

TEST_CASE("fd_gradient examples") {
  CounterRng rng(19, 0);
  for (int i = 0; i < 20; ++i) {
    const ParamVector phi = experiment::random_phi(rng, experiment::random_width(rng), 2.0);
    // central differences are exact on quadratics, so only rounding remains; a
    // wider step keeps it below 1e-9
    const auto fd = oracle::fd_gradient([](auto x) { return norm_sq(x); }, phi.values(), 1e-3);
    for (std::size_t k = 0; k < phi.size(); ++k) CHECK_THAT(fd[k], WithinAbs(2.0 * phi[k], 1e-9));

    const double alpha = rng.uniform(-2, 2);
    const std::size_t H = phi.hidden();
    const auto fv = oracle::fd_gradient(
        [&](std::span<const double> x) {
          return v_const(ParamVector(H, std::vector<double>(x.begin(), x.end())), alpha);
        },
        phi.values(), 1e-6);
    const auto gv = grad_v(phi, alpha);
    for (std::size_t k = 0; k < phi.size(); ++k) CHECK_THAT(fv[k], WithinAbs(gv[k], 1e-7));
  }

  const auto risk = [](std::span<const double> x) {
    return risk_exact(ParamVector(1, std::vector<double>(x.begin(), x.end())), Target::constant(0));
  };
  const std::vector<double> phi{1, 0, 1, 0};
  const auto g = oracle::fd_gradient(risk, phi, 1e-6);
  const std::vector<double> expect{2.0 / 3.0, 1.0, 2.0 / 3.0, 1.0};
  for (std::size_t k = 0; k < 4; ++k) CHECK_THAT(g[k], WithinAbs(expect[k], 1e-4));
}

TEST_CASE("componentwise relative error uses a floor") {
  const std::vector<double> ref{1.0, 0.0};
  CHECK(oracle::componentwise_relative_error(std::vector<double>{1.1, 0.0}, ref) ==
        Catch::Approx(0.1));
  // floor 1e-3 (1 + 1)
  CHECK(oracle::componentwise_relative_error(std::vector<double>{1.0, 1e-6}, ref) ==
        Catch::Approx(5e-4));
}

TEST_CASE("reference on the ramp") {
  const oracle::Reference ref = oracle::reference(ParamVector(1, {1, 0, 1, 0}), Target::constant(0));
  CHECK_THAT(ref.risk, WithinAbs(1.0 / 3.0, 1e-12));
  const std::vector<double> expect{2.0 / 3.0, 1.0, 2.0 / 3.0, 1.0};
  for (std::size_t k = 0; k < 4; ++k) CHECK_THAT(ref.gradient[k], WithinAbs(expect[k], 1e-12));
}
