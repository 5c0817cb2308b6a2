#include "relunet/flow.hpp"

#include <algorithm>
#include <cmath>

#include "relunet/errors.hpp"
#include "relunet/exact_calculus.hpp"
#include "relunet/lyapunov.hpp"
#include "relunet/numerics.hpp"
#include "relunet/polynomial.hpp"

namespace relunet {

std::string method_name(FlowMethod m) { return m == FlowMethod::RK4 ? "rk4" : "euler"; }

namespace {

using Vec = std::vector<double>;

// raw vectors, so non-finite stages are caught before a ParamVector is built
Vec field(std::size_t H, const Vec& x, const Target& target) {
  const GradientVector g = grad_exact(ParamVector(H, x), target);
  Vec out(g.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = -g[i];
  return out;
}

Vec axpy(const Vec& x, double a, const Vec& k) {
  Vec out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i] + a * k[i];
  return out;
}

void record(FlowTrace& trace, double t, const ParamVector& phi) {
  const RiskAndGradient rg = evaluate_exact(phi, trace.target);
  const auto G = rg.gradient.values();
  trace.times.push_back(t);
  trace.states.push_back(phi);
  trace.risks.push_back(rg.risk);
  trace.grad_sq_norms.push_back(norm_sq(G));
  if (trace.target.is_constant()) {
    const double alpha = trace.target.alpha();
    trace.v_values.push_back(v_const(phi, alpha));
    trace.v_rates.push_back(dot(grad_v(phi, alpha), G));
  } else {
    trace.v_values.push_back(v_general(phi));
    trace.v_rates.push_back(dot(grad_v_general(phi), G));
  }
}

}  // namespace

namespace {

// one Euler or RK4 step; empty when a stage leaves the finite range
Vec single_step(std::size_t H, const Vec& x, double dt, const Target& target, FlowMethod method) {
  if (method == FlowMethod::Euler) return axpy(x, dt, field(H, x, target));
  const Vec k1 = field(H, x, target);
  const Vec x2 = axpy(x, 0.5 * dt, k1);
  if (!all_finite(x2)) return {};
  const Vec k2 = field(H, x2, target);
  const Vec x3 = axpy(x, 0.5 * dt, k2);
  if (!all_finite(x3)) return {};
  const Vec k3 = field(H, x3, target);
  const Vec x4 = axpy(x, dt, k3);
  if (!all_finite(x4)) return {};
  const Vec k4 = field(H, x4, target);
  Vec next(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    next[i] = x[i] + dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
  }
  return next;
}

// b_j and w_j + b_j: a sign change moves a kink across x = 0 or x = 1
double boundary_quantity(std::size_t H, const Vec& x, std::size_t q) {
  const std::size_t j = q / 2;
  return q % 2 == 0 ? x[H + j] : x[j] + x[H + j];
}

bool changes_sign(double a, double b) { return (a > 0.0) != (b > 0.0); }

// Advances by dt, splitting the step where a kink crosses the boundary of
// [0,1] so that no sub-step straddles the derivative jump of the field.
Vec advance(std::size_t H, Vec x, double dt, const Target& target, FlowMethod method,
            bool split) {
  double remaining = dt;
  for (int pieces = 0;; ++pieces) {
    Vec full = single_step(H, x, remaining, target, method);
    if (full.empty() || !split || pieces == 16) return full;
    // earliest crossing by linear interpolation
    double theta = 1.0;
    std::size_t which = 0;
    for (std::size_t q = 0; q < 2 * H; ++q) {
      const double qa = boundary_quantity(H, x, q);
      const double qb = boundary_quantity(H, full, q);
      if (changes_sign(qa, qb) && qa != 0.0) {
        const double t = qa / (qa - qb);
        if (t < theta) {
          theta = t;
          which = q;
        }
      }
    }
    if (theta >= 1.0 || theta * remaining < 1e-12 * dt) return full;
    // secant refinement of the crossing time on the chosen quantity
    double t0 = 0.0;
    double q0 = boundary_quantity(H, x, which);
    double t1 = theta * remaining;
    Vec at = single_step(H, x, t1, target, method);
    if (at.empty()) return at;
    for (int it = 0; it < 3; ++it) {
      const double q1 = boundary_quantity(H, at, which);
      if (q1 == 0.0 || q1 == q0) break;
      const double t2 = std::clamp(t1 - q1 * (t1 - t0) / (q1 - q0), 0.0, remaining);
      t0 = t1;
      q0 = q1;
      t1 = t2;
      at = single_step(H, x, t1, target, method);
      if (at.empty()) return at;
    }
    if (t1 < 1e-12 * dt || t1 >= remaining) return full;
    x = std::move(at);
    remaining -= t1;
  }
}

}  // namespace

FlowTrace integrate_flow(const ParamVector& phi0, const Target& target, double T, double h,
                         FlowMethod method, bool split_at_crossings) {
  if (!(T > 0.0) || !std::isfinite(T)) throw DomainError("flow horizon T must be positive");
  if (!(h > 0.0) || h > T) throw DomainError("flow step h must satisfy 0 < h <= T");
  const auto n_steps = static_cast<std::size_t>(std::ceil(T / h - 1e-12));
  const double dt = T / static_cast<double>(n_steps);
  const std::size_t H = phi0.hidden();

  FlowTrace trace;
  trace.step_size = dt;
  trace.method = method;
  trace.target = target;
  record(trace, 0.0, phi0);

  Vec x = phi0.vector();
  for (std::size_t n = 0; n < n_steps; ++n) {
    Vec next = advance(H, x, dt, target, method, split_at_crossings);
    if (next.empty() || !all_finite(next)) {
      throw FlowDivergence("non-finite state at step " + std::to_string(n + 1), std::move(trace));
    }
    x = std::move(next);
    record(trace, dt * static_cast<double>(n + 1), ParamVector(H, x));
  }
  return trace;
}

namespace {

// monomial coefficients of the interpolant through up to three points
std::vector<double> interpolant(const double* u, const double* y, std::size_t n) {
  if (n == 1) return {y[0]};
  const double d1 = (y[1] - y[0]) / (u[1] - u[0]);
  if (n == 2) return {y[0] - d1 * u[0], d1};
  const double d12 = (y[2] - y[1]) / (u[2] - u[1]);
  const double d2 = (d12 - d1) / (u[2] - u[0]);
  return {y[0] - d1 * u[0] + d2 * u[0] * u[1], d1 - d2 * (u[0] + u[1]), d2};
}

// Simpson run over y[s..e], accumulated onto out[s]
void simpson_run(const std::vector<double>& y, double h, std::size_t s, std::size_t e,
                 std::vector<double>& out) {
  if (e == s) return;
  if (e == s + 1) {
    out[e] = out[s] + 0.5 * h * (y[s] + y[e]);
    return;
  }
  out[s + 1] = out[s] + h / 12.0 * (5.0 * y[s] + 8.0 * y[s + 1] - y[s + 2]);
  for (std::size_t i = s + 2; i <= e; ++i) {
    if ((i - s) % 2 == 0) {
      out[i] = out[i - 2] + h / 3.0 * (y[i - 2] + 4.0 * y[i - 1] + y[i]);
    } else {
      out[i] = out[i - 1] + h / 12.0 * (-y[i - 2] + 8.0 * y[i - 1] + 5.0 * y[i]);
    }
  }
}

}  // namespace

std::vector<double> cumulative_integral(const std::vector<double>& y, double h,
                                        const std::vector<BoundaryCrossing>& crossings) {
  std::vector<double> out(y.size(), 0.0);
  if (y.size() < 2) return out;
  std::size_t start = 0;
  for (std::size_t c = 0; c <= crossings.size(); ++c) {
    const bool last = c == crossings.size() || crossings[c].step + 1 >= y.size();
    const std::size_t end = last ? y.size() - 1 : crossings[c].step;
    simpson_run(y, h, start, end, out);
    if (last) break;
    const std::size_t next_end =
        c + 1 < crossings.size() ? std::min(crossings[c + 1].step, y.size() - 1) : y.size() - 1;
    // u measured in steps from t_end; left samples at u <= 0, right at u >= 1
    const std::size_t nl = std::min<std::size_t>(3, end - start + 1);
    const std::size_t nr = std::min<std::size_t>(3, next_end - end);
    double ul[3], yl[3], ur[3], yr[3];
    for (std::size_t i = 0; i < nl; ++i) {
      ul[i] = -static_cast<double>(nl - 1 - i);
      yl[i] = y[end - (nl - 1 - i)];
    }
    for (std::size_t i = 0; i < nr; ++i) {
      ur[i] = 1.0 + static_cast<double>(i);
      yr[i] = y[end + 1 + i];
    }
    const double theta = crossings[c].theta;
    double step_integral;
    if (nl >= 2 && nr >= 2) {
      step_integral = poly::integrate(interpolant(ul, yl, nl), 0.0, theta) +
                      poly::integrate(interpolant(ur, yr, nr), theta, 1.0);
    } else if (nr >= 2) {
      step_integral = poly::integrate(interpolant(ur, yr, nr), 0.0, 1.0);
    } else if (nl >= 2) {
      step_integral = poly::integrate(interpolant(ul, yl, nl), 0.0, 1.0);
    } else {
      step_integral = 0.5 * (y[end] + y[end + 1]);
    }
    out[end + 1] = out[end] + h * step_integral;
    start = end + 1;
  }
  return out;
}

std::vector<BoundaryCrossing> boundary_crossings(const FlowTrace& trace, std::size_t upto) {
  const std::size_t n = (upto == 0 || upto > trace.size()) ? trace.size() : upto;
  std::vector<BoundaryCrossing> out;
  if (n < 2) return out;
  const std::size_t H = trace.states[0].hidden();
  for (std::size_t k = 0; k + 1 < n; ++k) {
    const ParamVector& a = trace.states[k];
    const ParamVector& b = trace.states[k + 1];
    double theta_sum = 0.0;
    int count = 0;
    auto check = [&](double qa, double qb) {
      if (std::signbit(qa) != std::signbit(qb) && qa != qb) {
        theta_sum += std::clamp(qa / (qa - qb), 0.0, 1.0);
        ++count;
      }
    };
    for (std::size_t j = 0; j < H; ++j) {
      check(a.b(j), b.b(j));
      check(a.w(j) + a.b(j), b.w(j) + b.b(j));
    }
    if (count > 0) out.push_back({k, theta_sum / count});
  }
  return out;
}

ItoResiduals ito_residuals(const FlowTrace& trace, std::size_t upto) {
  const std::size_t n = (upto == 0 || upto > trace.size()) ? trace.size() : upto;
  ItoResiduals res;
  if (n == 0) return res;
  std::vector<double> rate(trace.v_rates.begin(), trace.v_rates.begin() + n);
  if (trace.target.is_constant()) {
    for (std::size_t i = 0; i < n; ++i) rate[i] = 8.0 * trace.risks[i];
  }
  const std::vector<double> gsq(trace.grad_sq_norms.begin(), trace.grad_sq_norms.begin() + n);
  const std::vector<BoundaryCrossing> crossings = boundary_crossings(trace, n);
  const std::vector<double> int_rate = cumulative_integral(rate, trace.step_size, crossings);
  const std::vector<double> int_gsq = cumulative_integral(gsq, trace.step_size, crossings);
  for (std::size_t i = 0; i < n; ++i) {
    res.v_identity_max = std::max(
        res.v_identity_max, std::abs(trace.v_values[i] - trace.v_values[0] + int_rate[i]));
    res.l_identity_max =
        std::max(res.l_identity_max, std::abs(trace.risks[i] - trace.risks[0] + int_gsq[i]));
  }
  return res;
}

std::size_t regular_prefix(const FlowTrace& trace) {
  if (trace.size() == 0) return 0;
  const std::size_t H = trace.states[0].hidden();
  auto degenerate = [&](const ParamVector& p, std::size_t j) {
    return std::abs(p.w(j)) + std::abs(p.b(j)) < 1e-8;
  };
  for (std::size_t i = 0; i + 1 < trace.size(); ++i) {
    const ParamVector& a = trace.states[i];
    const ParamVector& b = trace.states[i + 1];
    for (std::size_t j = 0; j < H; ++j) {
      const bool crossing = degenerate(a, j) || degenerate(b, j) ||
                            std::signbit(a.b(j)) != std::signbit(b.b(j)) ||
                            std::signbit(a.w(j) + a.b(j)) != std::signbit(b.w(j) + b.b(j));
      if (crossing) return i + 1;
    }
  }
  return trace.size();
}

FlowBounds flow_bound_check(const FlowTrace& trace) {
  FlowBounds out{true, true, true};
  if (trace.size() == 0) return out;
  const double v0 = trace.v_values[0];
  const double tol = 1e-6 * (1.0 + v0);
  const double norm_cap = std::sqrt(v0);
  for (std::size_t i = 0; i < trace.size(); ++i) {
    if (std::sqrt(norm_sq(trace.states[i].values())) > norm_cap + tol) out.sup_norm_ok = false;
    if (i > 0) {
      if (8.0 * trace.times[i] * trace.risks[i] > v0 + tol) out.decay_ok = false;
      if (trace.risks[i] > trace.risks[i - 1] + tol) out.monotone_ok = false;
    }
  }
  return out;
}

AprioriBounds apriori_general_check(const FlowTrace& trace, const Target& f) {
  AprioriBounds out{true, true};
  if (trace.size() == 0) return out;
  const double f_sq = f.squared_integral();
  const double v0 = v_general(trace.states[0]);
  const double tol = 1e-6 * (1.0 + v0);
  for (std::size_t i = 0; i < trace.size(); ++i) {
    const double t = trace.times[i];
    if (v_general(trace.states[i]) > v0 + 2.0 * t * f_sq + tol) out.v_growth_ok = false;
    const double norm = std::sqrt(norm_sq(trace.states[i].values()));
    if (norm > std::sqrt(v0) + std::sqrt(2.0 * f_sq) * std::sqrt(t) + tol) {
      out.norm_growth_ok = false;
    }
  }
  return out;
}

}  // namespace relunet
