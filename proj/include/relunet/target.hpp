#pragma once

#include <span>
#include <utility>
#include <vector>

namespace relunet {

struct PolynomialPiece {
  double left = 0.0;
  double right = 1.0;
  std::vector<double> coeffs;  // ascending monomial coefficients in x
};

/// Regression target on [0,1]: either the constant alpha or a continuous
/// piecewise polynomial.
///
/// A constant target is stored as a single degree-0 piece, so every integral
/// routine handles both kinds through the same piece list. `is_constant()`
/// only reports how the target was constructed; a piecewise target that
/// happens to be constant stays a general target.
class Target {
 public:
  static Target constant(double alpha);

  /// Breakpoints must start at 0, end at 1 and increase strictly; coeffs has
  /// one entry per piece. Adjacent pieces must agree at interior breakpoints
  /// to within 1e-12. Throws TargetError otherwise.
  static Target piecewise(std::vector<double> breakpoints,
                          std::vector<std::vector<double>> coeffs);

  bool is_constant() const { return constant_; }
  /// Only valid for constant targets; throws std::logic_error otherwise.
  double alpha() const;

  std::span<const PolynomialPiece> pieces() const { return pieces_; }
  std::vector<double> breakpoints() const;
  std::vector<double> interior_breakpoints() const;
  std::size_t degree() const;

  /// Index of the piece containing x (clamped to [0,1]).
  std::size_t piece_index(double x) const;
  double operator()(double x) const;

  /// Exact integral of f(x)^2 over [0,1].
  double squared_integral() const;

 private:
  Target(std::vector<PolynomialPiece> pieces, bool constant)
      : pieces_(std::move(pieces)), constant_(constant) {}

  std::vector<PolynomialPiece> pieces_;
  bool constant_;
};

}  // namespace relunet
