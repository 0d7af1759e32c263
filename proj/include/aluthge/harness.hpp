#pragma once

// Named experiments binding each stated result to pass/fail or evidence
// records. Pass/fail records compare against stated (PAPER) or immediate
// (TRIVIAL) values, or against an oracle evaluated in the same run (DERIVED).
// Evidence records never fail on magnitude, only on violated bounds or
// monotonicity, which are reported as separate pass/fail records.

#include <functional>
#include <string>
#include <vector>

#include "aluthge/config.hpp"
#include "aluthge/report.hpp"

namespace aluthge {

Experiment exp_closed_form_iteration(const ExperimentConfig& cfg);
Experiment exp_polar(const ExperimentConfig& cfg);
Experiment exp_semigroup(const ExperimentConfig& cfg);
Experiment exp_numeric_vs_symbolic(const ExperimentConfig& cfg);
Experiment exp_norms(const ExperimentConfig& cfg);
Experiment exp_sot(const ExperimentConfig& cfg);
Experiment exp_binormal_quasinormal(const ExperimentConfig& cfg);
Experiment exp_hardy(const ExperimentConfig& cfg);
Experiment exp_hyponormal_probe(const ExperimentConfig& cfg);

struct ExperimentEntry {
  std::string name;
  std::function<Experiment(const ExperimentConfig&)> run;
};

/// All experiments in report order.
const std::vector<ExperimentEntry>& experiment_registry();

/// Each stated result and the single experiment whose records carry its claim key.
struct ClaimEntry {
  std::string claim;
  std::string experiment;
};
const std::vector<ClaimEntry>& claim_catalog();

/// Worker count: ALUTHGE_THREADS if set and positive, else hardware concurrency.
unsigned worker_count();

/// Runs the selected experiments on up to `threads` workers (0 means
/// worker_count()). Records are merged in registry order, so the report body
/// does not depend on scheduling. An experiment that throws contributes a
/// single failing "experiment_error" record.
Report run_all(const ExperimentConfig& cfg, unsigned threads = 0);

}  // namespace aluthge
