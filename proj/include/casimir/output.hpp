#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "casimir/run_config.hpp"

namespace casimir {

// Per-gap results carried from the executor to the writers; rows are always
// ordered by gap, whatever order the sweep finished in.
struct ForceRow {
  double gap = 0.0;
  PressureBreakdown breakdown;
  std::optional<OracleResult> oracle;  // set when --verify ran
  double oracle_rel_diff = 0.0;
};

struct SpectrumRow {
  double gap = 0.0;
  SpectrumTable table;
  ContributionRange range;         // equal-tail quantile interval
  ContributionRange min_width;     // narrowest interval, linear metric
  ContributionRange min_width_log; // narrowest interval, log metric
};

struct ApplicabilityRow {
  ApplicabilityReport report;
};

// 12-significant-digit scientific notation; the single float formatter for
// all machine-readable output, so identical runs are byte-identical.
std::string format_sci(double x);

void write_force(std::ostream& os, const RunConfig& cfg,
                 const std::vector<ForceRow>& rows);
void write_spectrum(std::ostream& os, const RunConfig& cfg,
                    const std::vector<SpectrumRow>& rows);
void write_applicability(std::ostream& os, const RunConfig& cfg,
                         const std::vector<ApplicabilityRow>& rows);

// true when every quadrature/summation flag in the rows converged; drives
// the process exit code (0 converged, 2 otherwise)
bool all_converged(const std::vector<ForceRow>& rows);
bool all_converged(const std::vector<SpectrumRow>& rows);

}  // namespace casimir
