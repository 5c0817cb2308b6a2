#include "relunet/target.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "relunet/errors.hpp"
#include "relunet/polynomial.hpp"

namespace relunet {

namespace {
constexpr double kContinuityTol = 1e-12;
}

Target Target::constant(double alpha) {
  if (!std::isfinite(alpha)) throw TargetError("constant target must be finite");
  return Target({PolynomialPiece{0.0, 1.0, {alpha}}}, true);
}

Target Target::piecewise(std::vector<double> breakpoints,
                         std::vector<std::vector<double>> coeffs) {
  if (breakpoints.size() < 2) throw TargetError("need at least the breakpoints 0 and 1");
  if (breakpoints.front() != 0.0 || breakpoints.back() != 1.0) {
    throw TargetError("breakpoints must start at 0 and end at 1");
  }
  for (std::size_t i = 1; i < breakpoints.size(); ++i) {
    if (!(breakpoints[i] > breakpoints[i - 1])) {
      throw TargetError("breakpoints must be strictly increasing");
    }
  }
  if (coeffs.size() != breakpoints.size() - 1) {
    throw TargetError("expected " + std::to_string(breakpoints.size() - 1) +
                      " coefficient lists, got " + std::to_string(coeffs.size()));
  }
  std::vector<PolynomialPiece> pieces;
  pieces.reserve(coeffs.size());
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (coeffs[i].empty()) throw TargetError("piece " + std::to_string(i) + " has no coefficients");
    for (double a : coeffs[i]) {
      if (!std::isfinite(a)) throw TargetError("non-finite coefficient");
    }
    pieces.push_back({breakpoints[i], breakpoints[i + 1], std::move(coeffs[i])});
  }
  for (std::size_t i = 1; i < pieces.size(); ++i) {
    const double t = pieces[i].left;
    const double jump = poly::eval(pieces[i - 1].coeffs, t) - poly::eval(pieces[i].coeffs, t);
    if (std::abs(jump) > kContinuityTol) {
      throw TargetError("target is discontinuous at x=" + std::to_string(t));
    }
  }
  return Target(std::move(pieces), false);
}

double Target::alpha() const {
  if (!constant_) throw std::logic_error("alpha() called on a non-constant target");
  return pieces_.front().coeffs.front();
}

std::vector<double> Target::breakpoints() const {
  std::vector<double> out;
  out.reserve(pieces_.size() + 1);
  for (const auto& p : pieces_) out.push_back(p.left);
  out.push_back(1.0);
  return out;
}

std::vector<double> Target::interior_breakpoints() const {
  std::vector<double> out;
  for (std::size_t i = 1; i < pieces_.size(); ++i) out.push_back(pieces_[i].left);
  return out;
}

std::size_t Target::degree() const {
  std::size_t d = 0;
  for (const auto& p : pieces_) d = std::max(d, p.coeffs.size() - 1);
  return d;
}

std::size_t Target::piece_index(double x) const {
  // first piece whose right end is >= x
  auto it = std::lower_bound(pieces_.begin(), pieces_.end(), x,
                             [](const PolynomialPiece& p, double v) { return p.right < v; });
  if (it == pieces_.end()) return pieces_.size() - 1;
  return static_cast<std::size_t>(it - pieces_.begin());
}

double Target::operator()(double x) const {
  return poly::eval(pieces_[piece_index(x)].coeffs, x);
}

double Target::squared_integral() const {
  double total = 0.0;
  for (const auto& p : pieces_) {
    const auto sq = poly::multiply(p.coeffs, p.coeffs);
    total += poly::integrate(sq, p.left, p.right);
  }
  return total;
}

}  // namespace relunet
