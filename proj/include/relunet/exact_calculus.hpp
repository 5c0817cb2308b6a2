#pragma once

#include <span>

#include "relunet/layout.hpp"
#include "relunet/target.hpp"

namespace relunet {

/// Integral over [left, right] of x^k * residual(x), k in {0, 1}, from the
/// monomial antiderivative. Linear in the residual coefficients.
double segment_moment(double left, double right, std::span<const double> residual, int k);

struct RiskAndGradient {
  double risk;
  GradientVector gradient;
};

/// Exact risk L(phi) = int_0^1 (N(x) - f(x))^2 dx and generalized gradient G
/// in one pass.
///
/// [0,1] is split at the union of network kinks and target breakpoints; on
/// each piece the residual N - f is a polynomial and every integral is taken
/// in closed form. The gradient components are
///
///   G_{w_j} = 2 v_j  int_{I_j} x (N - f)      G_{b_j} = 2 v_j int_{I_j} (N - f)
///   G_{v_j} = 2 int_0^1 max(w_j x + b_j, 0) (N - f)      G_c = 2 int_0^1 (N - f)
///
/// with I_j = {x : w_j x + b_j > 0}; a constant target is the degree-0 case.
/// Components of a neuron whose active set is empty (in particular
/// w_j = b_j = 0) are exactly +0.0.
RiskAndGradient evaluate_exact(const ParamVector& phi, const Target& target);

double risk_exact(const ParamVector& phi, const Target& target);
GradientVector grad_exact(const ParamVector& phi, const Target& target);

/// Constant-target gradient computed neuron by neuron from the ActiveInterval
/// bounds and the affine segments of N. Kept as an independent algebraic
/// route to cross-check grad_exact.
GradientVector grad_exact_constant(const ParamVector& phi, double alpha);

}  // namespace relunet
