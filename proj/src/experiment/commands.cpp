#include "relunet/experiment/commands.hpp"

#include <cmath>
#include <ostream>

#include "relunet/exact_calculus.hpp"
#include "relunet/experiment/csv.hpp"
#include "relunet/experiment/verify.hpp"
#include "relunet/lyapunov.hpp"
#include "relunet/mollified.hpp"
#include "relunet/numerics.hpp"

namespace relunet::experiment {

namespace {

struct Sink {
  const ExperimentConfig& cfg;
  std::ostream& out;
  std::ostream& err;

  std::ostream& summary() { return cfg.output ? out : err; }

  void emit(const CsvTable& table) {
    if (cfg.output) {
      write_atomic(*cfg.output, table.str());
    } else {
      out << table.str();
    }
  }
};

const char* flag(bool b) { return b ? "true" : "false"; }

double require_alpha(const ExperimentConfig& cfg, const std::string& why) {
  if (!cfg.target.is_constant()) {
    throw ConfigError("config field 'target': " + why + " needs a constant target (alpha)");
  }
  return cfg.target.alpha();
}

int cmd_risk(const ExperimentConfig& cfg, Sink& sink) {
  const ParamVector phi = cfg.initial_point();
  CsvTable t({"r", "value"});
  t.add_row({"inf", format_real(risk_exact(phi, cfg.target))});
  if (!cfg.r_values.empty()) {
    const double alpha = require_alpha(cfg, "mollified risk");
    for (double r : cfg.r_values) {
      t.add_row({format_real(r), format_real(risk_mollified(phi, r, alpha, cfg.quadrature))});
    }
  }
  sink.emit(t);
  return kExitOk;
}

int cmd_grad(const ExperimentConfig& cfg, Sink& sink) {
  const ParamVector phi = cfg.initial_point();
  const GradientVector g = grad_exact(phi, cfg.target);
  CsvTable t({"index", "name", "value"});
  for (std::size_t i = 0; i < g.size(); ++i) {
    t.add_row({std::to_string(i), component_name(phi.hidden(), i), format_real(g[i])});
  }
  sink.emit(t);
  return kExitOk;
}

CsvTable train_table(const TrainTrace& trace) {
  CsvTable t({"n", "risk", "grad_norm", "v", "descent_slack"});
  for (const StepRecord& r : trace.records) {
    t.add_row({std::to_string(r.n), format_real(r.risk), format_real(r.grad_norm),
               format_real(r.v), format_real(r.descent_slack)});
  }
  return t;
}

int cmd_train(const ExperimentConfig& cfg, Sink& sink) {
  const ParamVector phi0 = cfg.initial_point();
  TrainTrace trace;
  try {
    trace = train(phi0, cfg.learning_rate(), cfg.target, cfg.max_steps, cfg.risk_tol);
  } catch (const TrainDivergence& e) {
    sink.emit(train_table(e.trace()));
    sink.err << "divergence: " << e.what() << '\n';
    return kExitDivergence;
  } catch (const DomainError& e) {
    throw ConfigError(std::string("config field 'gate': ") + e.what());
  }
  sink.emit(train_table(trace));
  const StepRecord& last = trace.records.back();
  sink.summary() << "final_risk=" << format_real(last.risk) << " steps=" << last.n
                 << " gamma=" << format_real(trace.gamma) << " gate=" << trace.gate_used
                 << " terminated_by="
                 << (trace.terminated_by == Termination::RiskBelow ? "risk_tol" : "max_steps")
                 << " certified=" << flag(trace.certified) << '\n';
  return trace.certified ? kExitOk : kExitUncertified;
}

CsvTable flow_table(const FlowTrace& trace) {
  CsvTable t({"t", "risk", "v", "grad_sq_norm"});
  for (std::size_t i = 0; i < trace.size(); ++i) {
    t.add_row({format_real(trace.times[i]), format_real(trace.risks[i]),
               format_real(trace.v_values[i]), format_real(trace.grad_sq_norms[i])});
  }
  return t;
}

int cmd_flow(const ExperimentConfig& cfg, Sink& sink) {
  const ParamVector phi0 = cfg.initial_point();
  FlowTrace trace;
  try {
    trace = integrate_flow(phi0, cfg.target, cfg.T, cfg.h, cfg.method);
  } catch (const FlowDivergence& e) {
    sink.emit(flow_table(e.trace()));
    sink.err << "divergence: " << e.what() << '\n';
    return kExitDivergence;
  }
  sink.emit(flow_table(trace));
  const ItoResiduals res = ito_residuals(trace);
  std::ostream& s = sink.summary();
  s << "method=" << method_name(trace.method) << " h=" << format_real(trace.step_size)
    << " v_identity_max=" << format_real(res.v_identity_max)
    << " l_identity_max=" << format_real(res.l_identity_max);
  if (cfg.target.is_constant()) {
    const FlowBounds b = flow_bound_check(trace);
    s << " sup_norm_ok=" << flag(b.sup_norm_ok) << " decay_ok=" << flag(b.decay_ok)
      << " monotone_ok=" << flag(b.monotone_ok);
  } else {
    const AprioriBounds b = apriori_general_check(trace, cfg.target);
    s << " v_growth_ok=" << flag(b.v_growth_ok) << " norm_growth_ok=" << flag(b.norm_growth_ok);
  }
  s << '\n';
  return kExitOk;
}

int cmd_sweep(const ExperimentConfig& cfg, Sink& sink) {
  const ParamVector phi = cfg.initial_point();
  const double alpha = require_alpha(cfg, "sweep");
  if (cfg.r_values.empty()) throw ConfigError("config field 'r_values': sweep needs levels");
  CsvTable t({"r", "gap"});
  for (const auto& [r, gap] : limit_gap_sweep(phi, alpha, cfg.r_values, cfg.quadrature)) {
    t.add_row({format_real(r), format_real(gap)});
  }
  sink.emit(t);
  return kExitOk;
}

int cmd_verify(const ExperimentConfig& cfg, Sink& sink) {
  const std::vector<SuiteResult> results = run_verification(cfg.seed, cfg.scale);
  sink.emit(verification_table(results));
  bool all = true;
  std::ostream& s = sink.summary();
  for (const SuiteResult& r : results) {
    s << (r.pass ? "PASS " : "FAIL ") << r.suite << "  [" << r.anchor << "]  worst="
      << format_real(r.worst) << " threshold=" << format_real(r.threshold) << '\n';
    all = all && r.pass;
  }
  return all ? kExitOk : kExitVerifyFailed;
}

}  // namespace

int run_command(const std::string& command, const ExperimentConfig& cfg, std::ostream& out,
                std::ostream& err) {
  Sink sink{cfg, out, err};
  try {
    if (command == "risk") return cmd_risk(cfg, sink);
    if (command == "grad") return cmd_grad(cfg, sink);
    if (command == "train") return cmd_train(cfg, sink);
    if (command == "flow") return cmd_flow(cfg, sink);
    if (command == "sweep") return cmd_sweep(cfg, sink);
    if (command == "verify") return cmd_verify(cfg, sink);
    err << "unknown command '" << command << "'\n";
    return kExitConfig;
  } catch (const ConfigError& e) {
    err << e.what() << '\n';
    return kExitConfig;
  } catch (const IoError& e) {
    err << "I/O error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::exception& e) {
    // remaining library errors come from inconsistent inputs
    err << "invalid configuration: " << e.what() << '\n';
    return kExitConfig;
  }
}

}  // namespace relunet::experiment
