#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "relunet/layout.hpp"
#include "relunet/target.hpp"

namespace relunet {

/// gamma_max = 1 / (4 V(phi0) + 2).
double gate_exact(const ParamVector& phi0, double alpha);
/// 1 / (12 ||phi0||^2 + 32 alpha^2 + 2); never larger than gate_exact.
double gate_conservative(const ParamVector& phi0, double alpha);
/// 1 / (12 c^2 (3H + 1) + 32 alpha^2 + 2) for starts in [-c, c]^{3H+1}.
/// Throws DomainError for c <= 0.
double gate_random(double c, std::size_t hidden, double alpha);

/// phi - gamma G(phi) with the exact generalized gradient.
ParamVector gd_step(const ParamVector& phi, double gamma, const Target& target);

enum class Gate { Exact, Conservative, Random };

/// Fixed step size, or a gate evaluated at the initial point. Gate::Random
/// uses c = max_i |phi0_i|.
using LearningRate = std::variant<double, Gate>;

std::string gate_name(Gate g);

struct StepRecord {
  std::size_t n = 0;
  ParamVector phi;
  double risk = 0.0;
  double grad_norm = 0.0;
  double v = 0.0;
  /// V(phi_n) - V(phi_n - gamma G(phi_n)) - 4 gamma risk_n. On the last
  /// record this refers to the step that would have come next.
  double descent_slack = 0.0;
};

enum class Termination { MaxSteps, RiskBelow };

struct TrainTrace {
  std::vector<StepRecord> records;
  double gamma = 0.0;
  std::string gate_used;  // "exact", "conservative", "random" or "explicit"
  /// Constant target and gamma within gate_exact of the start.
  bool certified = false;
  Termination terminated_by = Termination::MaxSteps;
  double risk_tol = 0.0;
};

class TrainDivergence : public std::runtime_error {
 public:
  TrainDivergence(const std::string& what, TrainTrace trace)
      : std::runtime_error(what), trace_(std::move(trace)) {}
  const TrainTrace& trace() const { return trace_; }

 private:
  TrainTrace trace_;
};

/// Gradient descent from phi0 with per-step Lyapunov records.
///
/// V is v_const for constant targets and v_general otherwise. Records are
/// produced for n = 0..N, stopping once risk <= risk_tol or n = max_steps.
/// Gates require a constant target (DomainError otherwise); gamma must be
/// positive and finite. Throws TrainDivergence when an iterate is not finite.
TrainTrace train(const ParamVector& phi0, const LearningRate& lr, const Target& target,
                 std::size_t max_steps, double risk_tol = 1e-10);

struct RandomInitSummary {
  double gamma = 0.0;
  double norm_bound = 0.0;  // sqrt(3 c^2 (3H+1) + 8 alpha^2)
  std::vector<double> final_risks;
  std::vector<std::size_t> steps_taken;
  /// Mean over trials of risk_n, n = 0..max_steps; a trial that stopped
  /// early contributes its final risk to later entries.
  std::vector<double> mean_risk;
  double mean_final_risk = 0.0;
  /// Largest ||Theta_n|| seen in each trial.
  std::vector<double> max_norms;
  std::size_t trials_within_bound = 0;
  /// Trials whose every step satisfied the descent inequality within
  /// 1e-9 (1 + V).
  std::size_t trials_descending = 0;
};

/// Uniform starts on [-c, c]^{3H+1}, trial k drawing from CounterRng(seed, k),
/// each trained with gate_random(c, H, alpha). Trials may run on `threads`
/// workers; results are merged by trial index so the summary does not depend
/// on scheduling.
RandomInitSummary random_init_experiment(double c, std::size_t hidden, double alpha,
                                         std::size_t n_trials, std::size_t max_steps,
                                         std::uint64_t seed, double risk_tol = 1e-10,
                                         unsigned threads = 1);

/// Start point of trial `trial` in random_init_experiment.
ParamVector random_start(double c, std::size_t hidden, std::uint64_t seed, std::uint64_t trial);

}  // namespace relunet
