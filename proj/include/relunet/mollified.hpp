#pragma once

#include <utility>
#include <vector>

#include "relunet/layout.hpp"
#include "relunet/sigma.hpp"

namespace relunet {

/// Panel layout for the composite Gauss-Legendre rule used on mollified
/// integrands.
///
/// [0,1] starts as `base_panels` equal panels. Each neuron with w_j != 0 adds
/// a graded mesh around the point where its pre-activation crosses the
/// transition layer of sigma_r (w_j x + b_j = ln(r)/r). With half-width
/// W = kink_width_factor / (r |w_j|), cuts are placed at center +- W 2^-k for
/// k = 0..refinement_levels, and at center +- W 2^k outward until the panels
/// reach unit scale, so the exponential tails are resolved as well.
struct QuadratureConfig {
  int nodes_per_panel = 16;
  int base_panels = 8;
  double kink_width_factor = 10.0;
  int refinement_levels = 4;

  void validate() const;
};

/// Nodes and weights of the composite rule for phi at level r.
struct QuadratureGrid {
  std::vector<double> nodes;
  std::vector<double> weights;
};

QuadratureGrid mollified_grid(const ParamVector& phi, double r, const QuadratureConfig& q);

/// L_r(phi) = int_0^1 (N_r(x) - alpha)^2 dx.
double risk_mollified(const ParamVector& phi, double r, double alpha,
                      const QuadratureConfig& q = {});

/// Gradient of L_r, all four component families on the same grid:
///   d/dw_j = 2 v_j int x sigma_r'(w_j x + b_j) (N_r - alpha)
///   d/db_j = 2 v_j int sigma_r'(w_j x + b_j) (N_r - alpha)
///   d/dv_j = 2 int sigma_r(w_j x + b_j) (N_r - alpha)
///   d/dc   = 2 int (N_r - alpha)
GradientVector grad_mollified(const ParamVector& phi, double r, double alpha,
                              const QuadratureConfig& q = {});

/// (r, ||grad L_r(phi) - G(phi)||) for each r; rs must be strictly increasing.
std::vector<std::pair<double, double>> limit_gap_sweep(const ParamVector& phi, double alpha,
                                                       const std::vector<double>& rs,
                                                       const QuadratureConfig& q = {});

}  // namespace relunet
