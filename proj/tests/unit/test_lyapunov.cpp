#include <cmath>

#include "catch_amalgamated.hpp"
#include "relunet/exact_calculus.hpp"
#include "relunet/experiment/instances.hpp"
#include "relunet/lyapunov.hpp"
#include "relunet/numerics.hpp"
#include "relunet/oracle/oracle.hpp"

using namespace relunet;
using Catch::Matchers::WithinAbs;

namespace {
ParamVector ramp() { return ParamVector(1, {1, 0, 1, 0}); }
}  // namespace

TEST_CASE("v_const examples") {
  CHECK(v_const(ramp(), 0) == 2.0);
  CHECK(v_const(ParamVector::zeros(1), 1) == 4.0);
}

TEST_CASE("v_split examples") {
  const VSplit a = v_split(ramp(), 0);
  CHECK(a.v1 == 1.0);
  CHECK(a.v2 == 1.0);
  const VSplit b = v_split(ParamVector::zeros(1), 1);
  CHECK(b.v1 == 0.0);
  CHECK(b.v2 == 0.0);
  const VSplit c = v_split(ParamVector(1, {0, 0, 0, 1}), 1);
  CHECK(c.v1 == -1.0);
  CHECK(c.v2 == -1.0);
}

TEST_CASE("grad_v examples") {
  CHECK(grad_v(ramp(), 0) == std::vector<double>{2, 0, 2, 0});
  CHECK(grad_v(ParamVector::zeros(1), 1) == std::vector<double>{0, 0, 0, -4});
}

TEST_CASE("v_general examples") {
  CHECK(v_general(ramp()) == 2.0);
  CHECK(v_general(ParamVector(1, {0, 0, 0, 1})) == 2.0);
  CHECK(v_general(ParamVector::zeros(3)) == 0.0);
}

TEST_CASE("certify examples") {
  const LyapunovReport a = certify(ramp(), 0);
  CHECK_THAT(a.pairing_v, WithinAbs(8.0 / 3.0, 1e-14));
  CHECK_THAT(a.risk, WithinAbs(1.0 / 3.0, 1e-15));
  CHECK(std::abs(a.residual_v) <= 1e-12);

  const LyapunovReport b = certify(ParamVector::zeros(1), 1);
  CHECK(b.pairing_v == 8.0);
  CHECK(b.risk == 1.0);

  // N = 0.5 everywhere
  const LyapunovReport c = certify(ParamVector(2, {1, 1, 0, 0, 0.5, -0.5, 0.5}), 0.5);
  CHECK(c.risk == 0.0);
  CHECK(c.pairing_v == 0.0);
  CHECK(c.pairing_v1 == 0.0);
  CHECK(c.pairing_v2 == 0.0);
  CHECK(c.grad_bound_slack == 0.0);
}

TEST_CASE("Lyapunov gradients match finite differences") {
  CounterRng rng(17, 0);
  for (int i = 0; i < 100; ++i) {
    const std::size_t H = experiment::random_width(rng);
    const ParamVector phi = experiment::random_phi(rng, H, 2.0);
    const double alpha = rng.uniform(-5, 5);
    auto as_phi = [H](std::span<const double> x) {
      return ParamVector(H, std::vector<double>(x.begin(), x.end()));
    };
    const auto fd = oracle::fd_gradient([&](auto x) { return v_const(as_phi(x), alpha); },
                                        phi.values(), 1e-6);
    const auto fd1 = oracle::fd_gradient([&](auto x) { return v_split(as_phi(x), alpha).v1; },
                                         phi.values(), 1e-6);
    const auto fd2 = oracle::fd_gradient([&](auto x) { return v_split(as_phi(x), alpha).v2; },
                                         phi.values(), 1e-6);
    const auto fdg = oracle::fd_gradient([&](auto x) { return v_general(as_phi(x)); },
                                         phi.values(), 1e-6);
    const auto g = grad_v(phi, alpha);
    const auto g1 = grad_v1(phi, alpha);
    const auto g2 = grad_v2(phi, alpha);
    const auto gg = grad_v_general(phi);
    for (std::size_t k = 0; k < phi.size(); ++k) {
      REQUIRE(std::abs(g[k] - fd[k]) <= 1e-7 * (1.0 + std::abs(fd[k])));
      REQUIRE(std::abs(g1[k] - fd1[k]) <= 1e-7 * (1.0 + std::abs(fd1[k])));
      REQUIRE(std::abs(g2[k] - fd2[k]) <= 1e-7 * (1.0 + std::abs(fd2[k])));
      REQUIRE(std::abs(gg[k] - fdg[k]) <= 1e-7 * (1.0 + std::abs(fdg[k])));
    }
  }
}

TEST_CASE("pairing identities, gradient bound and sandwich") {
  CounterRng rng(17, 1);
  for (int i = 0; i < 500; ++i) {
    const ParamVector phi = experiment::random_phi(rng, experiment::random_width(rng), 2.0);
    const double alpha = rng.uniform(-5, 5);
    const LyapunovReport rep = certify(phi, alpha);
    const double tol = 1e-10 * (1.0 + rep.risk);
    REQUIRE(std::abs(rep.residual_v) <= tol);
    REQUIRE(std::abs(rep.residual_v1) <= tol);
    REQUIRE(std::abs(rep.residual_v2) <= tol);
    REQUIRE(rep.grad_bound_slack >= -1e-9 * (1.0 + rep.risk));
    REQUIRE(rep.sandwich_ok);
    const double n2 = norm_sq(phi.values());
    REQUIRE(n2 <= rep.v);
    REQUIRE(rep.v <= 3.0 * n2 + 8.0 * alpha * alpha);
  }
}

TEST_CASE("v_split halves sum to v_const minus 4 alpha^2") {
  CounterRng rng(17, 2);
  for (int i = 0; i < 500; ++i) {
    const ParamVector phi = experiment::random_phi(rng, experiment::random_width(rng), 2.0);
    const double alpha = rng.uniform(-5, 5);
    const VSplit s = v_split(phi, alpha);
    const double target = v_const(phi, alpha) - 4.0 * alpha * alpha;
    // equal in exact arithmetic; the two final additions round differently
    REQUIRE(std::abs(s.v1 + s.v2 - target) <= 8.0 * 0x1p-52 * (1.0 + std::abs(target) + 4.0 * alpha * alpha));
  }
}

TEST_CASE("general-target pairing inequality") {
  CounterRng rng(17, 3);
  for (int i = 0; i < 500; ++i) {
    const ParamVector phi = experiment::random_phi(rng, experiment::random_width(rng), 2.0);
    const Target f = experiment::random_piecewise_target(rng, 3, 3, 2.0);
    const double pairing = dot(grad_v_general(phi), grad_exact(phi, f).values());
    REQUIRE(pairing >= -2.0 * f.squared_integral() - 1e-10 * (1.0 + f.squared_integral()));
  }
}
