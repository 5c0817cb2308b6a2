#pragma once

#include <functional>
#include <span>
#include <vector>

#include "relunet/layout.hpp"
#include "relunet/target.hpp"

// Brute-force references for tests and the verify command. Nothing here calls
// into the exact or mollified calculus.
namespace relunet::oracle {

struct OracleConfig {
  int simpson_panels = 1 << 14;
  double fd_step = 1e-6;

  /// Throws OracleError unless panels >= 2 and even, and 0 < fd_step < 1e-2.
  void validate() const;
};

/// Composite Simpson rule on [a, b]. Throws OracleError on a non-finite sample
/// or an invalid panel count.
double simpson(const std::function<double(double)>& fn, double a, double b, int panels);
double simpson(const std::function<double(double)>& fn, int panels);

/// Central differences (fn(phi + h e_i) - fn(phi - h e_i)) / 2h.
std::vector<double> fd_gradient(const std::function<double(std::span<const double>)>& fn,
                                std::span<const double> phi, double step);

/// max_i |a_i - ref_i| / max(|ref_i|, 1e-3 (1 + max_k |ref_k|)). The floor
/// keeps near-zero components from dominating.
double componentwise_relative_error(std::span<const double> a, std::span<const double> ref);

struct Reference {
  double risk = 0.0;
  std::vector<double> gradient;
};

/// Risk and generalized gradient by Simpson quadrature of the pointwise
/// integrands. [0,1] is cut at every kink and target breakpoint, the active
/// set is frozen at each piece's midpoint, and the panels are shared out in
/// proportion to piece length (at least two per piece).
Reference reference(const ParamVector& phi, const Target& target, const OracleConfig& cfg = {});

double reference_risk(const ParamVector& phi, const Target& target, const OracleConfig& cfg = {});
std::vector<double> reference_gradient(const ParamVector& phi, const Target& target,
                                       const OracleConfig& cfg = {});

}  // namespace relunet::oracle
