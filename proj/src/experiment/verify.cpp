#include "relunet/experiment/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "relunet/exact_calculus.hpp"
#include "relunet/experiment/instances.hpp"
#include "relunet/flow.hpp"
#include "relunet/gd_trainer.hpp"
#include "relunet/lyapunov.hpp"
#include "relunet/mollified.hpp"
#include "relunet/numerics.hpp"
#include "relunet/oracle/oracle.hpp"
#include "relunet/shallow_net.hpp"
#include "relunet/sigma.hpp"

namespace relunet::experiment {

namespace {

struct Sizes {
  std::size_t realization, exact, fd, sigma_grid, moll_fd, moll_limit, pairing, bounds, general,
      gd_runs, gd_steps, flows;
  double flow_T;
};

constexpr Sizes kSmall{50, 20, 10, 25, 4, 4, 100, 1000, 50, 3, 2000, 2, 1.0};
constexpr Sizes kFull{500, 200, 100, 60, 50, 50, 500, 10000, 500, 20, 20000, 20, 10.0};

// fixed per-suite substreams, so adding a suite never perturbs another
enum Stream : std::uint64_t {
  kRealization = 1, kExact, kFd, kMollFd, kMollLimit, kPairing, kBounds, kGeneral, kGd, kFlow,
  kApriori,
};

Target random_target(CounterRng& rng) {
  if (rng.uniform01() < 0.5) return Target::constant(rng.uniform(-2.0, 2.0));
  return random_piecewise_target(rng, 3, 2, 1.0);
}

SuiteResult make(std::string suite, std::string anchor, std::size_t n, double worst,
                 double threshold) {
  return {std::move(suite), std::move(anchor), n, worst, threshold, worst <= threshold};
}

void realization_suite(std::uint64_t seed, const Sizes& s, std::vector<SuiteResult>& out) {
  CounterRng rng(seed, kRealization);
  double worst = 0.0;
  for (std::size_t i = 0; i < s.realization; ++i) {
    const ParamVector phi = random_phi(rng, random_width(rng), 2.0);
    const PiecewiseAffineForm form = piecewise_form(phi);
    for (int k = 0; k <= 16; ++k) {
      const double x = k / 16.0;
      const double n = realize(phi, x);
      worst = std::max(worst, std::abs(form(x) - n) / (1.0 + std::abs(n)));
    }
  }
  out.push_back(make("realization", "N(x) = c + sum_j v_j max(w_j x + b_j, 0)", s.realization,
                     worst, 1e-12));
}

void exact_suite(std::uint64_t seed, const Sizes& s, std::vector<SuiteResult>& out) {
  CounterRng rng(seed, kExact);
  double worst_risk = 0.0;
  double worst_grad = 0.0;
  double worst_route = 0.0;
  for (std::size_t i = 0; i < s.exact; ++i) {
    const ParamVector phi = random_phi(rng, random_width(rng), 2.0);
    const Target f = random_target(rng);
    const RiskAndGradient rg = evaluate_exact(phi, f);
    const oracle::Reference ref = oracle::reference(phi, f);
    worst_risk = std::max(worst_risk, std::abs(rg.risk - ref.risk) / std::max(ref.risk, 1e-300));
    for (std::size_t k = 0; k < ref.gradient.size(); ++k) {
      worst_grad = std::max(worst_grad, std::abs(rg.gradient[k] - ref.gradient[k]));
    }
    if (f.is_constant()) {
      const GradientVector g2 = grad_exact_constant(phi, f.alpha());
      const double scale = 1.0 + std::sqrt(norm_sq(rg.gradient.values()));
      for (std::size_t k = 0; k < g2.size(); ++k) {
        worst_route = std::max(worst_route, std::abs(g2[k] - rg.gradient[k]) / scale);
      }
    }
  }
  out.push_back(make("exact_risk", "L(phi) = int_0^1 (N(x) - f(x))^2 dx", s.exact, worst_risk,
                     1e-10));
  out.push_back(make("exact_gradient", "G_w = 2v int_I x R, G_b = 2v int_I R, G_v, G_c", s.exact,
                     worst_grad, 1e-8));
  out.push_back(make("gradient_routes", "G by segments = G by active intervals", s.exact,
                     worst_route, 1e-12));
}

void fd_suite(std::uint64_t seed, const Sizes& s, std::vector<SuiteResult>& out) {
  CounterRng rng(seed, kFd);
  double worst = 0.0;
  for (std::size_t i = 0; i < s.fd; ++i) {
    const std::size_t H = random_width(rng);
    const ParamVector phi = random_regular_phi(rng, H, 2.0);
    const Target f = random_target(rng);
    const auto fd = oracle::fd_gradient(
        [&](std::span<const double> x) {
          return risk_exact(ParamVector(H, std::vector<double>(x.begin(), x.end())), f);
        },
        phi.values(), 1e-6);
    worst = std::max(worst, oracle::componentwise_relative_error(grad_exact(phi, f).values(), fd));
  }
  out.push_back(make("fd_consistency", "dL/dphi_i = G_i off the degenerate set", s.fd, worst,
                     1e-4));
}

void sigma_suite(const Sizes& s, std::vector<SuiteResult>& out) {
  // log-domain values certify strict positivity where the plain ones underflow
  std::size_t violations = 0;
  std::size_t n = 0;
  for (std::size_t i = 0; i < s.sigma_grid; ++i) {
    const double r = std::pow(10.0, 8.0 * static_cast<double>(i) / (s.sigma_grid - 1));
    for (std::size_t k = 0; k < 4 * s.sigma_grid; ++k) {
      const double x = -1e3 + 2e3 * static_cast<double>(k) / (4 * s.sigma_grid - 1);
      ++n;
      const double sv = sigma_r(r, x);
      const double sp = sigma_r_prime(r, x);
      const bool ok = std::isfinite(log_sigma_r(r, x)) && sv >= 0.0 && sv < relu(x) + 1.0 &&
                      std::isfinite(log_sigma_r_prime(r, x)) &&
                      std::isfinite(log1m_sigma_r_prime(r, x)) && sp >= 0.0 && sp <= 1.0;
      if (!ok) ++violations;
    }
  }
  out.push_back(make("mollifier_bounds", "0 < sigma_r(x) < max(x,0) + 1, 0 < sigma_r'(x) < 1", n,
                     static_cast<double>(violations), 0.0));
}

void mollified_suites(std::uint64_t seed, const Sizes& s, std::vector<SuiteResult>& out) {
  {
    CounterRng rng(seed, kMollFd);
    double worst = 0.0;
    for (std::size_t i = 0; i < s.moll_fd; ++i) {
      const std::size_t H = random_width(rng);
      const ParamVector phi = random_phi(rng, H, 2.0);
      const double alpha = rng.uniform(-2.0, 2.0);
      const double r = std::pow(10.0, rng.uniform(0.0, 2.0));
      const auto fd = oracle::fd_gradient(
          [&](std::span<const double> x) {
            return risk_mollified(ParamVector(H, std::vector<double>(x.begin(), x.end())), r,
                                  alpha);
          },
          phi.values(), 1e-6);
      worst = std::max(worst, oracle::componentwise_relative_error(
                                  grad_mollified(phi, r, alpha).values(), fd));
    }
    out.push_back(make("mollified_fd", "grad L_r = finite differences of L_r", s.moll_fd, worst,
                       1e-4));
  }
  {
    CounterRng rng(seed, kMollLimit);
    double worst = 0.0;
    for (std::size_t i = 0; i < s.moll_limit; ++i) {
      const ParamVector phi = random_regular_phi(rng, random_width(rng), 2.0);
      const double alpha = rng.uniform(-2.0, 2.0);
      const double g = std::sqrt(norm_sq(grad_exact(phi, Target::constant(alpha)).values()));
      const auto gaps = limit_gap_sweep(phi, alpha, {1e5});
      worst = std::max(worst, gaps[0].second / (1.0 + g));
    }
    out.push_back(make("mollified_limit", "limsup_{r->inf} ||grad L_r - G|| = 0", s.moll_limit,
                       worst, 1e-3));
  }
}

void lyapunov_suites(std::uint64_t seed, const Sizes& s, std::vector<SuiteResult>& out) {
  {
    CounterRng rng(seed, kPairing);
    double w_v = 0.0;
    double w_v1 = 0.0;
    double w_v2 = 0.0;
    for (std::size_t i = 0; i < s.pairing; ++i) {
      const ParamVector phi = random_phi(rng, random_width(rng), 2.0);
      const double alpha = rng.uniform(-5.0, 5.0);
      const LyapunovReport rep = certify(phi, alpha);
      const double scale = 1.0 + rep.risk;
      w_v = std::max(w_v, std::abs(rep.residual_v) / scale);
      w_v1 = std::max(w_v1, std::abs(rep.residual_v1) / scale);
      w_v2 = std::max(w_v2, std::abs(rep.residual_v2) / scale);
    }
    out.push_back(make("pairing_v", "<grad V, G> = 8 L", s.pairing, w_v, 1e-10));
    out.push_back(make("pairing_v1", "<grad V1, G> = 4 L", s.pairing, w_v1, 1e-10));
    out.push_back(make("pairing_v2", "<grad V2, G> = 4 L", s.pairing, w_v2, 1e-10));
  }
  {
    CounterRng rng(seed, kBounds);
    double worst_slack = 0.0;
    std::size_t sandwich_fail = 0;
    for (std::size_t i = 0; i < s.bounds; ++i) {
      const ParamVector phi = random_phi(rng, random_width(rng), 2.0);
      const double alpha = rng.uniform(-5.0, 5.0);
      const LyapunovReport rep = certify(phi, alpha);
      worst_slack = std::max(worst_slack, -rep.grad_bound_slack / (1.0 + rep.risk));
      if (!rep.sandwich_ok) ++sandwich_fail;
    }
    out.push_back(make("gradient_bound", "||G||^2 <= (8 ||phi||^2 + 4) L", s.bounds, worst_slack,
                       1e-9));
    out.push_back(make("norm_sandwich", "||phi||^2 <= V <= 3 ||phi||^2 + 8 alpha^2", s.bounds,
                       static_cast<double>(sandwich_fail), 0.0));
  }
  {
    CounterRng rng(seed, kGeneral);
    double worst = 0.0;
    for (std::size_t i = 0; i < s.general; ++i) {
      const ParamVector phi = random_phi(rng, random_width(rng), 2.0);
      const Target f = random_piecewise_target(rng, 3, 3, 2.0);
      const double f_sq = f.squared_integral();
      const double pairing = dot(grad_v_general(phi), grad_exact(phi, f).values());
      worst = std::max(worst, -(pairing + 2.0 * f_sq) / (1.0 + f_sq));
    }
    out.push_back(make("general_pairing", "<grad V, G_f> >= -2 int_0^1 f^2", s.general, worst,
                       1e-10));
  }
}

void gd_suites(std::uint64_t seed, const Sizes& s, std::vector<SuiteResult>& out) {
  CounterRng rng(seed, kGd);
  double worst_descent = 0.0;
  double worst_sum = 0.0;
  double worst_norm = 0.0;
  for (std::size_t i = 0; i < s.gd_runs; ++i) {
    const ParamVector phi0 = random_phi(rng, random_width(rng), 1.0);
    const Target f = Target::constant(rng.uniform(-2.0, 2.0));
    const TrainTrace tr = train(phi0, Gate::Exact, f, s.gd_steps, 0.0);
    const double v0 = tr.records.front().v;
    const double cap = v0 / (4.0 * tr.gamma);
    double partial = 0.0;
    for (const StepRecord& rec : tr.records) {
      partial += rec.risk;
      worst_sum = std::max(worst_sum, partial - cap);
      worst_norm = std::max(worst_norm, std::sqrt(norm_sq(rec.phi.values())) - std::sqrt(v0));
      if (rec.n + 1 < tr.records.size()) {
        worst_descent = std::max(worst_descent, -rec.descent_slack / (1.0 + rec.v));
      }
    }
  }
  out.push_back(make("gd_descent", "V(theta_{n+1}) - V(theta_n) <= -4 gamma L(theta_n)",
                     s.gd_runs, worst_descent, 1e-9));
  out.push_back(make("gd_summability", "sum_n L(theta_n) <= V(theta_0) / (4 gamma)", s.gd_runs,
                     worst_sum, 1e-6));
  out.push_back(make("gd_bounded", "||theta_n|| <= V(theta_0)^(1/2)", s.gd_runs, worst_norm, 1e-9));
}

void flow_suites(std::uint64_t seed, const Sizes& s, std::vector<SuiteResult>& out) {
  {
    CounterRng rng(seed, kFlow);
    double worst_v = 0.0;
    double worst_l = 0.0;
    std::size_t bound_fail = 0;
    for (std::size_t i = 0; i < s.flows; ++i) {
      const ParamVector phi0 = random_phi(rng, random_width(rng), 1.0);
      const Target f = Target::constant(rng.uniform(-2.0, 2.0));
      const FlowTrace tr = integrate_flow(phi0, f, s.flow_T, 1e-3);
      const ItoResiduals res = ito_residuals(tr);
      worst_v = std::max(worst_v, res.v_identity_max);
      worst_l = std::max(worst_l, res.l_identity_max);
      const FlowBounds b = flow_bound_check(tr);
      bound_fail += !b.sup_norm_ok + !b.decay_ok + !b.monotone_ok;
    }
    out.push_back(make("flow_v_identity", "V(theta_t) = V(theta_0) - 8 int_0^t L ds", s.flows,
                       worst_v, 1e-6));
    out.push_back(make("flow_l_identity", "L(theta_t) = L(theta_0) - int_0^t ||G||^2 ds", s.flows,
                       worst_l, 1e-6));
    out.push_back(make("flow_bounds", "||theta_t|| <= V0^(1/2), L(theta_t) <= V0/(8t), L decreasing",
                       s.flows, static_cast<double>(bound_fail), 0.0));
  }
  {
    CounterRng rng(seed, kApriori);
    std::size_t fails = 0;
    for (std::size_t i = 0; i < s.flows; ++i) {
      const ParamVector phi0 = random_phi(rng, random_width(rng), 1.0);
      const Target f = random_piecewise_target(rng, 3, 2, 1.0);
      const FlowTrace tr = integrate_flow(phi0, f, s.flow_T, 1e-2);
      const AprioriBounds b = apriori_general_check(tr, f);
      fails += !b.v_growth_ok + !b.norm_growth_ok;
    }
    out.push_back(make("general_growth",
                       "V(theta_t) <= V(theta_0) + 2t int f^2, ||theta_t|| <= V0^(1/2) + (2t int f^2)^(1/2)",
                       s.flows, static_cast<double>(fails), 0.0));
  }
}

}  // namespace

std::vector<SuiteResult> run_verification(std::uint64_t seed, VerifyScale scale) {
  const Sizes& s = scale == VerifyScale::Full ? kFull : kSmall;
  std::vector<SuiteResult> out;
  realization_suite(seed, s, out);
  exact_suite(seed, s, out);
  fd_suite(seed, s, out);
  sigma_suite(s, out);
  mollified_suites(seed, s, out);
  lyapunov_suites(seed, s, out);
  gd_suites(seed, s, out);
  flow_suites(seed, s, out);
  return out;
}

CsvTable verification_table(const std::vector<SuiteResult>& results) {
  CsvTable t({"suite", "anchor", "instances", "worst", "threshold", "pass"});
  for (const SuiteResult& r : results) {
    // anchors contain commas; quote them
    t.add_row({r.suite, "\"" + r.anchor + "\"", std::to_string(r.instances), format_real(r.worst),
               format_real(r.threshold), r.pass ? "true" : "false"});
  }
  return t;
}

}  // namespace relunet::experiment
