#include "relunet/exact_calculus.hpp"

#include <algorithm>
#include <vector>

#include "relunet/polynomial.hpp"
#include "relunet/shallow_net.hpp"

namespace relunet {

double segment_moment(double left, double right, std::span<const double> residual, int k) {
  if (k != 0 && k != 1) throw DomainError("segment_moment supports k = 0 or k = 1");
  if (!(left <= right)) throw DomainError("segment_moment requires left <= right");
  return poly::integrate(residual, left, right, k);
}

RiskAndGradient evaluate_exact(const ParamVector& phi, const Target& target) {
  const std::size_t H = phi.hidden();

  std::vector<double> cuts = target.interior_breakpoints();
  for (std::size_t j = 0; j < H; ++j) {
    if (auto t = interior_kink(phi.w(j), phi.b(j))) cuts.push_back(*t);
  }
  cuts = normalize_cuts(std::move(cuts));
  cuts.push_back(1.0);

  // per-neuron sums of int x R and int R over the active set
  std::vector<double> moment_x(H, 0.0);
  std::vector<double> moment_1(H, 0.0);
  std::vector<bool> touched(H, false);
  double risk = 0.0;
  double mean_residual = 0.0;

  std::vector<double> residual;
  double left = 0.0;
  for (double right : cuts) {
    const AffineSegment seg = affine_piece(phi, left, right);
    const double mid = 0.5 * (left + right);
    const auto& piece = target.pieces()[target.piece_index(mid)];

    residual.assign(std::max<std::size_t>(piece.coeffs.size(), 2), 0.0);
    for (std::size_t i = 0; i < piece.coeffs.size(); ++i) residual[i] = -piece.coeffs[i];
    residual[0] += seg.intercept;
    residual[1] += seg.slope;

    const double m0 = poly::integrate(residual, left, right, 0);
    const double m1 = poly::integrate(residual, left, right, 1);
    risk += poly::integrate(poly::multiply(residual, residual), left, right, 0);
    mean_residual += m0;

    for (std::size_t j = 0; j < H; ++j) {
      if (phi.w(j) * mid + phi.b(j) > 0.0) {
        moment_x[j] += m1;
        moment_1[j] += m0;
        touched[j] = true;
      }
    }
    left = right;
  }

  std::vector<double> g(param_count(H), 0.0);
  for (std::size_t j = 0; j < H; ++j) {
    if (!touched[j]) continue;
    g[j] = 2.0 * phi.v(j) * moment_x[j];
    g[H + j] = 2.0 * phi.v(j) * moment_1[j];
    g[2 * H + j] = 2.0 * (phi.w(j) * moment_x[j] + phi.b(j) * moment_1[j]);
#ifdef RELUNET_FAULT_FLIP_GRAD_SIGN
    g[2 * H + j] = -g[2 * H + j];
#endif
  }
  g[3 * H] = 2.0 * mean_residual;

  return {std::max(risk, 0.0), GradientVector(H, std::move(g))};
}

double risk_exact(const ParamVector& phi, const Target& target) {
  return evaluate_exact(phi, target).risk;
}

GradientVector grad_exact(const ParamVector& phi, const Target& target) {
  return evaluate_exact(phi, target).gradient;
}

GradientVector grad_exact_constant(const ParamVector& phi, double alpha) {
  const std::size_t H = phi.hidden();
  const PiecewiseAffineForm form = piecewise_form(phi);

  // int_a^b R and int_a^b x R for R(x) = s x + q
  auto moments = [](double a, double b, double s, double q) {
    const double d1 = b - a;
    const double d2 = (b * b - a * a) / 2.0;
    const double d3 = (b * b * b - a * a * a) / 3.0;
    return std::pair{s * d2 + q * d1, s * d3 + q * d2};
  };

  std::vector<double> g(param_count(H), 0.0);
  double total = 0.0;
  for (const auto& seg : form.segments()) {
    total += moments(seg.left, seg.right, seg.slope, seg.intercept - alpha).first;
  }
  g[3 * H] = 2.0 * total;

  for (std::size_t j = 0; j < H; ++j) {
    const ActiveInterval ai = active_interval(phi.w(j), phi.b(j));
    if (ai.empty()) continue;
    double int_r = 0.0;
    double int_xr = 0.0;
    for (const auto& seg : form.segments()) {
      const double a = std::max(seg.left, ai.lower());
      const double b = std::min(seg.right, ai.upper());
      if (!(a < b)) continue;
      const auto [m0, m1] = moments(a, b, seg.slope, seg.intercept - alpha);
      int_r += m0;
      int_xr += m1;
    }
    g[j] = 2.0 * phi.v(j) * int_xr;
    g[H + j] = 2.0 * phi.v(j) * int_r;
    g[2 * H + j] = 2.0 * (phi.w(j) * int_xr + phi.b(j) * int_r);
  }
  return GradientVector(H, std::move(g));
}

}  // namespace relunet
