#include "relunet/gd_trainer.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <thread>

#include "relunet/errors.hpp"
#include "relunet/exact_calculus.hpp"
#include "relunet/lyapunov.hpp"
#include "relunet/numerics.hpp"
#include "relunet/rng.hpp"

namespace relunet {

double gate_exact(const ParamVector& phi0, double alpha) {
  return 1.0 / (4.0 * v_const(phi0, alpha) + 2.0);
}

double gate_conservative(const ParamVector& phi0, double alpha) {
  return 1.0 / (12.0 * norm_sq(phi0.values()) + 32.0 * alpha * alpha + 2.0);
}

double gate_random(double c, std::size_t hidden, double alpha) {
  if (!(c > 0.0)) throw DomainError("gate_random requires c > 0");
  const double d = static_cast<double>(param_count(hidden));
  return 1.0 / (12.0 * c * c * d + 32.0 * alpha * alpha + 2.0);
}

namespace {

std::vector<double> step_values(const ParamVector& phi, double gamma, const GradientVector& g) {
  std::vector<double> next(phi.size());
  for (std::size_t i = 0; i < next.size(); ++i) next[i] = phi[i] - gamma * g[i];
  return next;
}

double lyapunov_value(const ParamVector& phi, const Target& target) {
  return target.is_constant() ? v_const(phi, target.alpha()) : v_general(phi);
}

double sup_norm(const ParamVector& phi) {
  double m = 0.0;
  for (double x : phi.values()) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace

ParamVector gd_step(const ParamVector& phi, double gamma, const Target& target) {
  if (!(gamma > 0.0)) throw DomainError("step size must be positive");
  return ParamVector(phi.hidden(), step_values(phi, gamma, grad_exact(phi, target)));
}

std::string gate_name(Gate g) {
  switch (g) {
    case Gate::Exact: return "exact";
    case Gate::Conservative: return "conservative";
    case Gate::Random: return "random";
  }
  return "unknown";
}

TrainTrace train(const ParamVector& phi0, const LearningRate& lr, const Target& target,
                 std::size_t max_steps, double risk_tol) {
  TrainTrace trace;
  trace.risk_tol = risk_tol;
  if (const double* g = std::get_if<double>(&lr)) {
    trace.gamma = *g;
    trace.gate_used = "explicit";
  } else {
    const Gate gate = std::get<Gate>(lr);
    if (!target.is_constant()) throw DomainError("step-size gates need a constant target");
    const double alpha = target.alpha();
    switch (gate) {
      case Gate::Exact: trace.gamma = gate_exact(phi0, alpha); break;
      case Gate::Conservative: trace.gamma = gate_conservative(phi0, alpha); break;
      case Gate::Random: {
        const double c = sup_norm(phi0);
        trace.gamma = c > 0.0 ? gate_random(c, phi0.hidden(), alpha)
                              : 1.0 / (32.0 * alpha * alpha + 2.0);
        break;
      }
    }
    trace.gate_used = gate_name(gate);
  }
  if (!(trace.gamma > 0.0) || !std::isfinite(trace.gamma)) {
    throw DomainError("step size must be positive and finite");
  }
  trace.certified = target.is_constant() && trace.gamma <= gate_exact(phi0, target.alpha());

  ParamVector phi = phi0;
  RiskAndGradient rg = evaluate_exact(phi, target);
  double v = lyapunov_value(phi, target);
  for (std::size_t n = 0;; ++n) {
    std::vector<double> next = step_values(phi, trace.gamma, rg.gradient);
    const bool stop = rg.risk <= risk_tol || n == max_steps;
    StepRecord rec{n, phi, rg.risk, std::sqrt(norm_sq(rg.gradient.values())), v, 0.0};
    if (!all_finite(next)) {
      rec.descent_slack = std::numeric_limits<double>::quiet_NaN();
      trace.records.push_back(std::move(rec));
      if (stop) break;
      throw TrainDivergence("non-finite iterate after step " + std::to_string(n),
                            std::move(trace));
    }
    ParamVector phi_next(phi.hidden(), std::move(next));
    const double v_next = lyapunov_value(phi_next, target);
    rec.descent_slack = v - v_next - 4.0 * trace.gamma * rg.risk;
    trace.records.push_back(std::move(rec));
    if (stop) {
      trace.terminated_by = rg.risk <= risk_tol ? Termination::RiskBelow : Termination::MaxSteps;
      break;
    }
    phi = std::move(phi_next);
    v = v_next;
    rg = evaluate_exact(phi, target);
    if (!std::isfinite(rg.risk) || !all_finite(rg.gradient.values())) {
      throw TrainDivergence("non-finite risk at step " + std::to_string(n + 1), std::move(trace));
    }
  }
  return trace;
}

ParamVector random_start(double c, std::size_t hidden, std::uint64_t seed, std::uint64_t trial) {
  CounterRng rng(seed, trial);
  std::vector<double> x(param_count(hidden));
  for (double& xi : x) xi = rng.uniform(-c, c);
  return ParamVector(hidden, std::move(x));
}

namespace {

struct TrialResult {
  std::vector<double> risks;
  double max_norm = 0.0;
  bool descending = true;
};

TrialResult run_trial(const ParamVector& phi0, double gamma, double alpha, std::size_t max_steps,
                      double risk_tol) {
  const Target target = Target::constant(alpha);
  TrialResult out;
  ParamVector phi = phi0;
  double v = v_const(phi, alpha);
  for (std::size_t n = 0;; ++n) {
    out.max_norm = std::max(out.max_norm, std::sqrt(norm_sq(phi.values())));
    const RiskAndGradient rg = evaluate_exact(phi, target);
    out.risks.push_back(rg.risk);
    if (rg.risk <= risk_tol || n == max_steps) break;
    std::vector<double> next = step_values(phi, gamma, rg.gradient);
    if (!all_finite(next)) {
      out.descending = false;
      out.max_norm = std::numeric_limits<double>::infinity();
      break;
    }
    phi = ParamVector(phi.hidden(), std::move(next));
    const double v_next = v_const(phi, alpha);
    if (v_next - v > -4.0 * gamma * rg.risk + 1e-9 * (1.0 + v)) out.descending = false;
    v = v_next;
  }
  return out;
}

}  // namespace

RandomInitSummary random_init_experiment(double c, std::size_t hidden, double alpha,
                                         std::size_t n_trials, std::size_t max_steps,
                                         std::uint64_t seed, double risk_tol, unsigned threads) {
  if (n_trials < 1) throw DomainError("n_trials must be >= 1");
  RandomInitSummary summary;
  summary.gamma = gate_random(c, hidden, alpha);
  summary.norm_bound =
      std::sqrt(3.0 * c * c * static_cast<double>(param_count(hidden)) + 8.0 * alpha * alpha);

  std::vector<TrialResult> results(n_trials);
  std::atomic<std::size_t> next_trial{0};
  auto worker = [&] {
    for (std::size_t k = next_trial++; k < n_trials; k = next_trial++) {
      results[k] = run_trial(random_start(c, hidden, seed, k), summary.gamma, alpha, max_steps,
                             risk_tol);
    }
  };
  const unsigned n_workers = std::max(1u, std::min<unsigned>(threads, n_trials));
  if (n_workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned i = 0; i < n_workers; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  summary.mean_risk.assign(max_steps + 1, 0.0);
  for (const TrialResult& r : results) {
    summary.final_risks.push_back(r.risks.back());
    summary.steps_taken.push_back(r.risks.size() - 1);
    summary.max_norms.push_back(r.max_norm);
    if (r.max_norm <= summary.norm_bound + 1e-9) ++summary.trials_within_bound;
    if (r.descending) ++summary.trials_descending;
    for (std::size_t n = 0; n <= max_steps; ++n) {
      summary.mean_risk[n] += n < r.risks.size() ? r.risks[n] : r.risks.back();
    }
  }
  for (double& m : summary.mean_risk) m /= static_cast<double>(n_trials);
  summary.mean_final_risk = pairwise_sum(summary.final_risks) / static_cast<double>(n_trials);
  return summary;
}

}  // namespace relunet
