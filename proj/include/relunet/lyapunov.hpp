#pragma once

#include <vector>

#include "relunet/layout.hpp"

namespace relunet {

/// V(phi) = ||phi||^2 + (c - 2 alpha)^2 for the constant target alpha.
double v_const(const ParamVector& phi, double alpha);

struct VSplit {
  double v1;  // c^2 - 2 alpha c + sum v_j^2
  double v2;  // c^2 - 2 alpha c + sum (w_j^2 + b_j^2)
};

/// Both halves may be negative; v1 + v2 equals v_const - 4 alpha^2 up to
/// rounding in the final additions.
VSplit v_split(const ParamVector& phi, double alpha);

std::vector<double> grad_v(const ParamVector& phi, double alpha);
std::vector<double> grad_v1(const ParamVector& phi, double alpha);
std::vector<double> grad_v2(const ParamVector& phi, double alpha);

/// V(phi) = ||phi||^2 + c^2, used for general (non-constant) targets.
double v_general(const ParamVector& phi);
std::vector<double> grad_v_general(const ParamVector& phi);

struct LyapunovReport {
  double v = 0.0;
  double pairing_v = 0.0;
  double pairing_v1 = 0.0;
  double pairing_v2 = 0.0;
  double risk = 0.0;
  double residual_v = 0.0;   // pairing_v - 8 risk
  double residual_v1 = 0.0;  // pairing_v1 - 4 risk
  double residual_v2 = 0.0;  // pairing_v2 - 4 risk
  double grad_bound_slack = 0.0;  // (8 ||phi||^2 + 4) risk - ||G||^2
  bool sandwich_ok = false;       // ||phi||^2 <= V <= 3 ||phi||^2 + 8 alpha^2
};

/// Pairings of the Lyapunov gradients with the exact generalized gradient,
/// the gradient-norm bound and the norm sandwich at one point.
LyapunovReport certify(const ParamVector& phi, double alpha);

}  // namespace relunet
