#include "relunet/experiment/instances.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "relunet/polynomial.hpp"

namespace relunet::experiment {

ParamVector random_phi(CounterRng& rng, std::size_t hidden, double scale) {
  std::vector<double> x(param_count(hidden));
  for (double& xi : x) xi = rng.uniform(-scale, scale);
  return ParamVector(hidden, std::move(x));
}

ParamVector random_regular_phi(CounterRng& rng, std::size_t hidden, double scale, double gap) {
  for (;;) {
    ParamVector phi = random_phi(rng, hidden, scale);
    std::vector<double> kinks;
    bool ok = true;
    for (std::size_t j = 0; j < hidden && ok; ++j) {
      if (std::abs(phi.w(j)) < 0.05) {
        ok = false;
        break;
      }
      const double t = -phi.b(j) / phi.w(j);
      if (std::abs(t) < gap || std::abs(t - 1.0) < gap) ok = false;
      if (t > 0.0 && t < 1.0) kinks.push_back(t);
    }
    std::sort(kinks.begin(), kinks.end());
    for (std::size_t i = 1; i < kinks.size() && ok; ++i) {
      if (kinks[i] - kinks[i - 1] < gap) ok = false;
    }
    if (ok) return phi;
  }
}

Target random_piecewise_target(CounterRng& rng, std::size_t max_pieces, std::size_t max_degree,
                               double scale) {
  const std::size_t pieces = 1 + static_cast<std::size_t>(rng.uniform01() * max_pieces);
  std::vector<double> bps{0.0};
  for (std::size_t i = 1; i < pieces; ++i) bps.push_back(rng.uniform(0.05, 0.95));
  std::sort(bps.begin(), bps.end());
  bps.push_back(1.0);
  // drop breakpoints that landed too close together
  bps.erase(std::unique(bps.begin(), bps.end(),
                        [](double a, double b) { return b - a < 0.02; }),
            bps.end());
  if (bps.back() != 1.0) bps.back() = 1.0;
  if (bps.size() < 2) bps = {0.0, 1.0};

  std::vector<std::vector<double>> coeffs;
  for (std::size_t k = 0; k + 1 < bps.size(); ++k) {
    const std::size_t deg = static_cast<std::size_t>(rng.uniform01() * (max_degree + 1));
    std::vector<double> c(deg + 1);
    for (double& ci : c) ci = rng.uniform(-scale, scale);
    if (k > 0) {
      // shift so the piece starts where the previous one ends
      const double want = poly::eval(coeffs.back(), bps[k]);
      c[0] += want - poly::eval(c, bps[k]);
    }
    coeffs.push_back(std::move(c));
  }
  return Target::piecewise(std::move(bps), std::move(coeffs));
}

std::size_t random_width(CounterRng& rng) {
  static constexpr std::size_t kWidths[] = {1, 2, 4, 8};
  return kWidths[rng.next_u32() % 4];
}

}  // namespace relunet::experiment
