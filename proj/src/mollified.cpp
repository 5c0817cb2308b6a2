#include "relunet/mollified.hpp"

#include <algorithm>
#include <cmath>

#include "relunet/errors.hpp"
#include "relunet/exact_calculus.hpp"
#include "relunet/gauss_legendre.hpp"
#include "relunet/numerics.hpp"
#include "relunet/shallow_net.hpp"

namespace relunet {

void QuadratureConfig::validate() const {
  if (nodes_per_panel < 2) throw DomainError("nodes_per_panel must be >= 2");
  if (base_panels < 1) throw DomainError("base_panels must be >= 1");
  if (refinement_levels < 0) throw DomainError("refinement_levels must be >= 0");
  if (!(kink_width_factor > 0.0) || !std::isfinite(kink_width_factor)) {
    throw DomainError("kink_width_factor must be positive and finite");
  }
}

namespace {

void check_r(double r) {
  if (!(r >= 1.0)) throw DomainError("mollification level r must be >= 1");
}

void push_if_inside(std::vector<double>& cuts, double x) {
  if (x > 0.0 && x < 1.0) cuts.push_back(x);
}

std::vector<double> panel_edges(const ParamVector& phi, double r, const QuadratureConfig& q) {
  std::vector<double> cuts;
  for (int k = 1; k < q.base_panels; ++k) {
    cuts.push_back(static_cast<double>(k) / q.base_panels);
  }
  const double shift = std::log(r) / r;
  for (std::size_t j = 0; j < phi.hidden(); ++j) {
    const double w = phi.w(j);
    if (w == 0.0) continue;
    const double center = (shift - phi.b(j)) / w;
    const double width = q.kink_width_factor / (r * std::abs(w));
    if (!std::isfinite(center) || !std::isfinite(width)) continue;
    push_if_inside(cuts, center);
    double d = width;
    for (int k = 0; k <= q.refinement_levels; ++k, d *= 0.5) {
      push_if_inside(cuts, center - d);
      push_if_inside(cuts, center + d);
    }
    // outward grading until the offsets pass unit scale
    for (d = 2.0 * width; d < 2.0; d *= 2.0) {
      push_if_inside(cuts, center - d);
      push_if_inside(cuts, center + d);
    }
  }
  cuts = normalize_cuts(std::move(cuts));
  std::vector<double> edges;
  edges.reserve(cuts.size() + 2);
  edges.push_back(0.0);
  edges.insert(edges.end(), cuts.begin(), cuts.end());
  edges.push_back(1.0);
  return edges;
}

const GaussLegendreRule& rule_for(int n) {
  // small cache; the default order covers nearly every call
  thread_local std::vector<std::pair<int, GaussLegendreRule>> cache;
  for (const auto& [order, rule] : cache) {
    if (order == n) return rule;
  }
  cache.emplace_back(n, GaussLegendreRule(static_cast<std::size_t>(n)));
  return cache.back().second;
}

}  // namespace

QuadratureGrid mollified_grid(const ParamVector& phi, double r, const QuadratureConfig& q) {
  q.validate();
  check_r(r);
  const std::vector<double> edges = panel_edges(phi, r, q);
  const GaussLegendreRule& rule = rule_for(q.nodes_per_panel);
  QuadratureGrid grid;
  grid.nodes.reserve((edges.size() - 1) * rule.nodes.size());
  grid.weights.reserve(grid.nodes.capacity());
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    rule.map_onto(edges[i], edges[i + 1], grid.nodes, grid.weights);
  }
  return grid;
}

double risk_mollified(const ParamVector& phi, double r, double alpha, const QuadratureConfig& q) {
  const QuadratureGrid grid = mollified_grid(phi, r, q);
  std::vector<double> terms(grid.nodes.size());
  for (std::size_t i = 0; i < grid.nodes.size(); ++i) {
    const double res = realize_mollified(phi, r, grid.nodes[i]) - alpha;
    terms[i] = grid.weights[i] * res * res;
  }
  return std::max(pairwise_sum(terms), 0.0);
}

GradientVector grad_mollified(const ParamVector& phi, double r, double alpha,
                              const QuadratureConfig& q) {
  const std::size_t H = phi.hidden();
  const QuadratureGrid grid = mollified_grid(phi, r, q);
  const std::size_t n = grid.nodes.size();

  // one row of integrand terms per gradient component, summed pairwise
  std::vector<std::vector<double>> terms(param_count(H), std::vector<double>(n));
  std::vector<double> s(H);
  std::vector<double> sp(H);
  for (std::size_t i = 0; i < n; ++i) {
    const double x = grid.nodes[i];
    double out = phi.c();
    for (std::size_t j = 0; j < H; ++j) {
      const double z = phi.w(j) * x + phi.b(j);
      s[j] = sigma_r(r, z);
      sp[j] = sigma_r_prime(r, z);
      out += phi.v(j) * s[j];
    }
    const double wr = grid.weights[i] * (out - alpha);
    for (std::size_t j = 0; j < H; ++j) {
      terms[j][i] = wr * x * sp[j];
      terms[H + j][i] = wr * sp[j];
      terms[2 * H + j][i] = wr * s[j];
    }
    terms[3 * H][i] = wr;
  }

  std::vector<double> g(param_count(H));
  for (std::size_t j = 0; j < H; ++j) {
    g[j] = 2.0 * phi.v(j) * pairwise_sum(terms[j]);
    g[H + j] = 2.0 * phi.v(j) * pairwise_sum(terms[H + j]);
    g[2 * H + j] = 2.0 * pairwise_sum(terms[2 * H + j]);
  }
  g[3 * H] = 2.0 * pairwise_sum(terms[3 * H]);
  return GradientVector(H, std::move(g));
}

std::vector<std::pair<double, double>> limit_gap_sweep(const ParamVector& phi, double alpha,
                                                       const std::vector<double>& rs,
                                                       const QuadratureConfig& q) {
  for (std::size_t i = 0; i < rs.size(); ++i) {
    check_r(rs[i]);
    if (i > 0 && !(rs[i] > rs[i - 1])) throw DomainError("sweep levels must be strictly increasing");
  }
  const GradientVector g = grad_exact(phi, Target::constant(alpha));
  std::vector<std::pair<double, double>> out;
  out.reserve(rs.size());
  std::vector<double> diff(g.size());
  for (double r : rs) {
    const GradientVector gr = grad_mollified(phi, r, alpha, q);
    for (std::size_t i = 0; i < g.size(); ++i) diff[i] = gr[i] - g[i];
    out.emplace_back(r, std::sqrt(norm_sq(diff)));
  }
  return out;
}

}  // namespace relunet
