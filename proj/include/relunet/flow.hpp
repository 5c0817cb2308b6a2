#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "relunet/layout.hpp"
#include "relunet/target.hpp"

namespace relunet {

enum class FlowMethod { RK4, Euler };

std::string method_name(FlowMethod m);

/// Fixed-step discretization of Theta' = -G(Theta), sampled at every step.
///
/// v_values hold v_const for a constant target and v_general otherwise;
/// v_rates holds <grad V, G> at each sample (8 risk in exact arithmetic for a
/// constant target).
struct FlowTrace {
  std::vector<double> times;
  std::vector<ParamVector> states;
  std::vector<double> risks;
  std::vector<double> v_values;
  std::vector<double> grad_sq_norms;
  std::vector<double> v_rates;
  double step_size = 0.0;
  FlowMethod method = FlowMethod::RK4;
  Target target = Target::constant(0.0);

  std::size_t size() const { return times.size(); }
};

class FlowDivergence : public std::runtime_error {
 public:
  FlowDivergence(const std::string& what, FlowTrace trace)
      : std::runtime_error(what), trace_(std::move(trace)) {}
  const FlowTrace& trace() const { return trace_; }

 private:
  FlowTrace trace_;
};

/// Integrates on a uniform grid of n = ceil(T/h) steps of size T/n.
///
/// The field -G is continuous but its derivative jumps when a kink enters or
/// leaves [0,1]. With split_at_crossings, a step over such a crossing is
/// split at the crossing time (linear guess plus secant refinement on the
/// crossing b_j or w_j + b_j); samples stay on the uniform grid. Degenerate
/// neurons (w_j = b_j = 0) get no special treatment.
/// Requires 0 < h <= T (DomainError). Throws FlowDivergence with the samples
/// computed so far if a state or stage becomes non-finite.
FlowTrace integrate_flow(const ParamVector& phi0, const Target& target, double T, double h,
                         FlowMethod method = FlowMethod::RK4, bool split_at_crossings = true);

struct ItoResiduals {
  /// max_t |V(Theta_t) - V(Theta_0) + int_0^t <grad V, G> ds|, the integrand
  /// being 8 L for a constant target.
  double v_identity_max = 0.0;
  /// max_t |L(Theta_t) - L(Theta_0) + int_0^t ||G||^2 ds|
  double l_identity_max = 0.0;
};

/// A step [t_k, t_{k+1}] during which a kink reaches x = 0 or x = 1, at the
/// estimated fraction theta of the step. The integrands of the identities
/// have a derivative jump there.
struct BoundaryCrossing {
  std::size_t step;
  double theta;
};

/// Sign changes of b_j or w_j + b_j between consecutive samples, merged per
/// step, theta from linear interpolation.
std::vector<BoundaryCrossing> boundary_crossings(const FlowTrace& trace, std::size_t upto = 0);

/// Cumulative integral of samples y on a uniform grid of spacing h.
///
/// Between crossings the scheme is composite Simpson, closing odd-length runs
/// with a three-point rule on the last interval. A crossing step is
/// integrated piecewise: the quadratic through the three samples before it up
/// to the crossing, the quadratic through the three after it beyond.
std::vector<double> cumulative_integral(const std::vector<double>& y, double h,
                                        const std::vector<BoundaryCrossing>& crossings = {});

/// Residuals over samples 0..upto-1 (all samples when upto is 0 or too
/// large), with the time integrals from cumulative_integral on the stored
/// grid.
ItoResiduals ito_residuals(const FlowTrace& trace, std::size_t upto = 0);

/// Number of leading samples before the first step during which a neuron
/// crosses a degeneracy: |w_j| + |b_j| < 1e-8 at either end, or its kink
/// enters or leaves [0,1] (sign change of b_j or of w_j + b_j).
std::size_t regular_prefix(const FlowTrace& trace);

struct FlowBounds {
  bool sup_norm_ok = false;  // ||Theta_t|| <= sqrt(V(Theta_0))
  bool decay_ok = false;     // 8 t L(Theta_t) <= V(Theta_0)
  bool monotone_ok = false;  // L non-increasing along the grid
};

/// Each inequality checked at every grid time with tolerance 1e-6 (1 + V0).
FlowBounds flow_bound_check(const FlowTrace& trace);

struct AprioriBounds {
  bool v_growth_ok = false;     // v_general(Theta_t) <= V0 + 2 t int f^2
  bool norm_growth_ok = false;  // ||Theta_t|| <= sqrt(V0) + sqrt(2 int f^2) sqrt(t)
};

/// Growth bounds for a general target f, with V0 = v_general(Theta_0) and
/// int f^2 taken exactly. Tolerance 1e-6 (1 + V0).
AprioriBounds apriori_general_check(const FlowTrace& trace, const Target& f);

}  // namespace relunet
