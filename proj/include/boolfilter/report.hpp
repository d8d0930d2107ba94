#pragma once

#include <string>
#include <vector>

#include "boolfilter/harness.hpp"

namespace boolfilter {

// CSV writers. LF line endings, header row first, reals at 17 significant
// digits. wall_ms fields are left empty unless the experiment records timing.

/// experiment,graph,n,trial,t,estimator,ter,wall_ms
std::string results_csv(const std::vector<ExperimentResult>& results);

/// experiment,graph,n,estimator,mean_ter,stderr_ter,mean_wall_ms
std::string summary_csv(const std::vector<ExperimentResult>& results);

/// experiment,graph,n,trial,t,predict_gap,update_gap
std::string gap_csv(const ExperimentConfig& config, std::size_t n, const std::vector<GapSeries>& series);

/// graph,n,estimator,runs,mean_wall_ms
std::string bench_csv(const std::vector<BenchRow>& rows);

/// Static line chart. A single experiment plots mean TER per timestep; a
/// sweep plots mean TER against n. One line per estimator.
std::string ter_svg(const std::vector<ExperimentResult>& results);

/// Runtime chart for bench output, log-scaled time axis.
std::string bench_svg(const std::vector<BenchRow>& rows);

} // namespace boolfilter
