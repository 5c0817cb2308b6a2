#pragma once

#include <optional>
#include <vector>

#include "relunet/layout.hpp"
#include "relunet/target.hpp"

namespace relunet {

/// N(x) = c + sum_j v_j max(w_j x + b_j, 0).
double realize(const ParamVector& phi, double x);

/// N_r(x) = c + sum_j v_j sigma_r(w_j x + b_j). Throws DomainError for r < 1.
double realize_mollified(const ParamVector& phi, double r, double x);

/// The set {x in [0,1] : w x + b > 0}.
///
/// Boundary points are irrelevant for every integral, so a kink at exactly 0
/// or 1 collapses to Full or Empty. Only the partial kinds carry t, which then
/// lies strictly inside (0,1).
struct ActiveInterval {
  enum class Kind { Empty, Full, LeftOpenAtT, RightUpToT };

  Kind kind = Kind::Empty;
  double t = 0.0;

  bool empty() const { return kind == Kind::Empty; }
  /// Closure bounds for integration; meaningless when empty().
  double lower() const { return kind == Kind::LeftOpenAtT ? t : 0.0; }
  double upper() const { return kind == Kind::RightUpToT ? t : 1.0; }

  friend bool operator==(const ActiveInterval&, const ActiveInterval&) = default;
};

ActiveInterval active_interval(double w, double b);

/// Kink location -b/w when it falls strictly inside (0,1).
std::optional<double> interior_kink(double w, double b);

struct AffineSegment {
  double left;
  double right;
  double slope;
  double intercept;

  double operator()(double x) const { return slope * x + intercept; }
};

/// Exact representation of N on [0,1] as consecutive affine segments.
class PiecewiseAffineForm {
 public:
  PiecewiseAffineForm(std::vector<AffineSegment> segments, std::vector<double> breakpoints)
      : segments_(std::move(segments)), breakpoints_(std::move(breakpoints)) {}

  const std::vector<AffineSegment>& segments() const { return segments_; }
  /// Interior kinks, sorted, one per segment boundary.
  const std::vector<double>& breakpoints() const { return breakpoints_; }

  const AffineSegment& segment_at(double x) const;
  double operator()(double x) const { return segment_at(x)(x); }

 private:
  std::vector<AffineSegment> segments_;
  std::vector<double> breakpoints_;
};

/// Points closer than this are merged when building segment decompositions.
inline constexpr double kMinSegmentWidth = 1e-15;

/// Sorted, deduplicated cut points strictly inside (0,1): exact duplicates are
/// merged, as is any point within kMinSegmentWidth of its predecessor or of
/// the ends 0 and 1.
std::vector<double> normalize_cuts(std::vector<double> cuts);

PiecewiseAffineForm piecewise_form(const ParamVector& phi);

/// Slope and intercept of N on an interval where the active set is constant,
/// classified by the interval midpoint.
AffineSegment affine_piece(const ParamVector& phi, double left, double right);

}  // namespace relunet
