#include "relunet/gauss_legendre.hpp"

#include <cmath>
#include <numbers>

#include "relunet/errors.hpp"

namespace relunet {

GaussLegendreRule::GaussLegendreRule(std::size_t n) : nodes(n), weights(n) {
  if (n < 2) throw DomainError("Gauss-Legendre rule needs at least 2 nodes");
  const std::size_t half = (n + 1) / 2;
  for (std::size_t i = 0; i < half; ++i) {
    // Chebyshev-style initial guess for the i-th largest root, then Newton on P_n
    double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) /
                        (static_cast<double>(n) + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (std::size_t k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / static_cast<double>(k);
        p0 = p1;
        p1 = p2;
      }
      dp = static_cast<double>(n) * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    nodes[i] = -x;
    nodes[n - 1 - i] = x;
    weights[i] = w;
    weights[n - 1 - i] = w;
  }
}

void GaussLegendreRule::map_onto(double a, double b, std::vector<double>& xs,
                                 std::vector<double>& ws) const {
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    xs.push_back(mid + half * nodes[i]);
    ws.push_back(half * weights[i]);
  }
}

}  // namespace relunet
