#include "relunet/lyapunov.hpp"

#include <limits>

#include "relunet/exact_calculus.hpp"
#include "relunet/numerics.hpp"

namespace relunet {

namespace {

double block_norm_sq(const ParamVector& phi, std::size_t first, std::size_t count) {
  return norm_sq(phi.values().subspan(first, count));
}

}  // namespace

double v_const(const ParamVector& phi, double alpha) {
  const double shifted = phi.c() - 2.0 * alpha;
  return norm_sq(phi.values()) + shifted * shifted;
}

VSplit v_split(const ParamVector& phi, double alpha) {
  const std::size_t H = phi.hidden();
  const double c = phi.c();
  const double common = c * c - 2.0 * alpha * c;
  return {common + block_norm_sq(phi, 2 * H, H), common + block_norm_sq(phi, 0, 2 * H)};
}

std::vector<double> grad_v(const ParamVector& phi, double alpha) {
  std::vector<double> g(phi.size());
  for (std::size_t i = 0; i < g.size(); ++i) g[i] = 2.0 * phi[i];
  g.back() += 2.0 * (phi.c() - 2.0 * alpha);
  return g;
}

std::vector<double> grad_v1(const ParamVector& phi, double alpha) {
  const std::size_t H = phi.hidden();
  std::vector<double> g(phi.size(), 0.0);
  for (std::size_t j = 0; j < H; ++j) g[2 * H + j] = 2.0 * phi.v(j);
  g.back() = 2.0 * (phi.c() - alpha);
  return g;
}

std::vector<double> grad_v2(const ParamVector& phi, double alpha) {
  const std::size_t H = phi.hidden();
  std::vector<double> g(phi.size(), 0.0);
  for (std::size_t i = 0; i < 2 * H; ++i) g[i] = 2.0 * phi[i];
  g.back() = 2.0 * (phi.c() - alpha);
  return g;
}

double v_general(const ParamVector& phi) {
  return norm_sq(phi.values()) + phi.c() * phi.c();
}

std::vector<double> grad_v_general(const ParamVector& phi) {
  std::vector<double> g(phi.size());
  for (std::size_t i = 0; i < g.size(); ++i) g[i] = 2.0 * phi[i];
  g.back() = 4.0 * phi.c();
  return g;
}

LyapunovReport certify(const ParamVector& phi, double alpha) {
  const RiskAndGradient rg = evaluate_exact(phi, Target::constant(alpha));
  const auto G = rg.gradient.values();
  LyapunovReport rep;
  rep.risk = rg.risk;
  rep.v = v_const(phi, alpha);
  rep.pairing_v = dot(grad_v(phi, alpha), G);
  rep.pairing_v1 = dot(grad_v1(phi, alpha), G);
  rep.pairing_v2 = dot(grad_v2(phi, alpha), G);
  rep.residual_v = rep.pairing_v - 8.0 * rep.risk;
  rep.residual_v1 = rep.pairing_v1 - 4.0 * rep.risk;
  rep.residual_v2 = rep.pairing_v2 - 4.0 * rep.risk;
  const double phi_sq = norm_sq(phi.values());
  rep.grad_bound_slack = (8.0 * phi_sq + 4.0) * rep.risk - norm_sq(G);
  // a few ulps of slack, the comparison is between independently rounded sums
  const double eps = 4.0 * std::numeric_limits<double>::epsilon();
  const double upper = 3.0 * phi_sq + 8.0 * alpha * alpha;
  rep.sandwich_ok = phi_sq <= rep.v * (1.0 + eps) && rep.v <= upper * (1.0 + eps);
  return rep;
}

}  // namespace relunet
