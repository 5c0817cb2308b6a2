#pragma once

#include <cstddef>
#include <vector>

namespace relunet {

/// n-point Gauss-Legendre rule on [-1, 1], nodes ascending.
struct GaussLegendreRule {
  std::vector<double> nodes;
  std::vector<double> weights;

  explicit GaussLegendreRule(std::size_t n);

  /// Appends the nodes and weights mapped onto [a, b].
  void map_onto(double a, double b, std::vector<double>& xs, std::vector<double>& ws) const;
};

}  // namespace relunet
