#include "relunet/oracle/oracle.hpp"

#include <algorithm>
#include <cmath>

#include "relunet/errors.hpp"

namespace relunet::oracle {

void OracleConfig::validate() const {
  if (simpson_panels < 2 || simpson_panels % 2 != 0) {
    throw OracleError("simpson_panels must be even and >= 2");
  }
  if (!(fd_step > 0.0 && fd_step < 1e-2)) throw OracleError("fd_step must lie in (0, 1e-2)");
}

double simpson(const std::function<double(double)>& fn, double a, double b, int panels) {
  if (panels < 2 || panels % 2 != 0) throw OracleError("Simpson needs an even panel count >= 2");
  const double h = (b - a) / panels;
  double odd = 0.0;
  double even = 0.0;
  double ends = 0.0;
  for (int i = 0; i <= panels; ++i) {
    const double x = i == panels ? b : a + h * i;
    const double y = fn(x);
    if (!std::isfinite(y)) throw OracleError("non-finite integrand sample");
    if (i == 0 || i == panels) {
      ends += y;
    } else if (i % 2 == 1) {
      odd += y;
    } else {
      even += y;
    }
  }
  return h / 3.0 * (ends + 4.0 * odd + 2.0 * even);
}

double simpson(const std::function<double(double)>& fn, int panels) {
  return simpson(fn, 0.0, 1.0, panels);
}

std::vector<double> fd_gradient(const std::function<double(std::span<const double>)>& fn,
                                std::span<const double> phi, double step) {
  std::vector<double> x(phi.begin(), phi.end());
  std::vector<double> g(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double saved = x[i];
    x[i] = saved + step;
    const double up = fn(x);
    x[i] = saved - step;
    const double down = fn(x);
    x[i] = saved;
    if (!std::isfinite(up) || !std::isfinite(down)) {
      throw OracleError("non-finite evaluation in finite differences");
    }
    g[i] = (up - down) / (2.0 * step);
  }
  return g;
}

double componentwise_relative_error(std::span<const double> a, std::span<const double> ref) {
  if (a.size() != ref.size()) throw OracleError("relative error of vectors of different length");
  double scale = 0.0;
  for (double r : ref) scale = std::max(scale, std::abs(r));
  const double floor = 1e-3 * (1.0 + scale);
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    worst = std::max(worst, std::abs(a[i] - ref[i]) / std::max(std::abs(ref[i]), floor));
  }
  return worst;
}

namespace {

double horner(const std::vector<double>& coeffs, double x) {
  double y = 0.0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) y = y * x + *it;
  return y;
}

}  // namespace

Reference reference(const ParamVector& phi, const Target& target, const OracleConfig& cfg) {
  cfg.validate();
  const std::size_t H = phi.hidden();
  const auto& p = phi.vector();

  std::vector<double> edges{0.0, 1.0};
  for (double bp : target.breakpoints()) edges.push_back(bp);
  for (std::size_t j = 0; j < H; ++j) {
    if (p[j] != 0.0) {
      const double t = -p[H + j] / p[j];
      if (t > 0.0 && t < 1.0) edges.push_back(t);
    }
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

  Reference ref;
  ref.gradient.assign(param_count(H), 0.0);
  std::vector<double> sx(H, 0.0);  // int over active set of x R
  std::vector<double> s1(H, 0.0);  // int over active set of R
  std::vector<double> sa(H, 0.0);  // int of relu(w x + b) R
  double sr = 0.0;
  std::vector<bool> active(H);

  for (std::size_t k = 0; k + 1 < edges.size(); ++k) {
    const double a = edges[k];
    const double b = edges[k + 1];
    if (!(b > a)) continue;
    const double mid = 0.5 * (a + b);
    for (std::size_t j = 0; j < H; ++j) active[j] = p[j] * mid + p[H + j] > 0.0;
    const auto& coeffs = target.pieces()[target.piece_index(mid)].coeffs;
    int panels = static_cast<int>(std::ceil(cfg.simpson_panels * (b - a)));
    panels = std::max(2, panels + panels % 2);

    auto residual = [&](double x) {
      double n = p[3 * H];
      for (std::size_t j = 0; j < H; ++j) {
        if (active[j]) n += p[2 * H + j] * (p[j] * x + p[H + j]);
      }
      return n - horner(coeffs, x);
    };
    ref.risk += simpson([&](double x) { double r = residual(x); return r * r; }, a, b, panels);
    sr += simpson(residual, a, b, panels);
    for (std::size_t j = 0; j < H; ++j) {
      if (!active[j]) continue;
      sx[j] += simpson([&](double x) { return x * residual(x); }, a, b, panels);
      s1[j] += simpson(residual, a, b, panels);
      sa[j] += simpson([&](double x) { return (p[j] * x + p[H + j]) * residual(x); }, a, b,
                       panels);
    }
  }
  for (std::size_t j = 0; j < H; ++j) {
    ref.gradient[j] = 2.0 * p[2 * H + j] * sx[j];
    ref.gradient[H + j] = 2.0 * p[2 * H + j] * s1[j];
    ref.gradient[2 * H + j] = 2.0 * sa[j];
  }
  ref.gradient[3 * H] = 2.0 * sr;
  return ref;
}

double reference_risk(const ParamVector& phi, const Target& target, const OracleConfig& cfg) {
  return reference(phi, target, cfg).risk;
}

std::vector<double> reference_gradient(const ParamVector& phi, const Target& target,
                                       const OracleConfig& cfg) {
  return reference(phi, target, cfg).gradient;
}

}  // namespace relunet::oracle
