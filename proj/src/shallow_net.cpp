#include "relunet/shallow_net.hpp"

#include <algorithm>
#include <cmath>

#include "relunet/sigma.hpp"

namespace relunet {

double realize(const ParamVector& phi, double x) {
  double out = phi.c();
  for (std::size_t j = 0; j < phi.hidden(); ++j) out += phi.v(j) * relu(phi.w(j) * x + phi.b(j));
  return out;
}

double realize_mollified(const ParamVector& phi, double r, double x) {
  if (!(r >= 1.0)) throw DomainError("mollification parameter r must satisfy r >= 1");
  double out = phi.c();
  for (std::size_t j = 0; j < phi.hidden(); ++j) {
    out += phi.v(j) * sigma_r(r, phi.w(j) * x + phi.b(j));
  }
  return out;
}

ActiveInterval active_interval(double w, double b) {
  const double at0 = b;
  const double at1 = w + b;
  if (std::max(at0, at1) <= 0.0) return {ActiveInterval::Kind::Empty, 0.0};
  if (std::min(at0, at1) >= 0.0) return {ActiveInterval::Kind::Full, 0.0};
  // opposite strict signs at the ends, so w != 0 and -b/w lies in (0,1)
  double t = -b / w;
  t = std::clamp(t, std::nextafter(0.0, 1.0), std::nextafter(1.0, 0.0));
  if (w > 0.0) return {ActiveInterval::Kind::LeftOpenAtT, t};
  return {ActiveInterval::Kind::RightUpToT, t};
}

std::optional<double> interior_kink(double w, double b) {
  const ActiveInterval ai = active_interval(w, b);
  if (ai.kind == ActiveInterval::Kind::LeftOpenAtT || ai.kind == ActiveInterval::Kind::RightUpToT) {
    return ai.t;
  }
  return std::nullopt;
}

std::vector<double> normalize_cuts(std::vector<double> cuts) {
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  std::vector<double> out;
  out.reserve(cuts.size());
  double prev = 0.0;
  for (double t : cuts) {
    if (!(t > 0.0 && t < 1.0)) continue;
    if (t - prev < kMinSegmentWidth) continue;
    if (1.0 - t < kMinSegmentWidth) continue;
    out.push_back(t);
    prev = t;
  }
  return out;
}

AffineSegment affine_piece(const ParamVector& phi, double left, double right) {
  const double mid = 0.5 * (left + right);
  double slope = 0.0;
  double intercept = phi.c();
  for (std::size_t j = 0; j < phi.hidden(); ++j) {
    if (phi.w(j) * mid + phi.b(j) > 0.0) {
      slope += phi.v(j) * phi.w(j);
      intercept += phi.v(j) * phi.b(j);
    }
  }
  return {left, right, slope, intercept};
}

PiecewiseAffineForm piecewise_form(const ParamVector& phi) {
  std::vector<double> kinks;
  for (std::size_t j = 0; j < phi.hidden(); ++j) {
    if (auto t = interior_kink(phi.w(j), phi.b(j))) kinks.push_back(*t);
  }
  kinks = normalize_cuts(std::move(kinks));

  std::vector<AffineSegment> segments;
  segments.reserve(kinks.size() + 1);
  double left = 0.0;
  for (double t : kinks) {
    segments.push_back(affine_piece(phi, left, t));
    left = t;
  }
  segments.push_back(affine_piece(phi, left, 1.0));
  return PiecewiseAffineForm(std::move(segments), std::move(kinks));
}

const AffineSegment& PiecewiseAffineForm::segment_at(double x) const {
  auto it = std::lower_bound(segments_.begin(), segments_.end(), x,
                             [](const AffineSegment& s, double v) { return s.right < v; });
  if (it == segments_.end()) return segments_.back();
  return *it;
}

}  // namespace relunet
