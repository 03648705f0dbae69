#pragma once

#include <string>
#include <vector>

#include "graphwave/benchmark.hpp"

namespace graphwave {

enum class ReportFormat { Json, Csv };

ReportFormat report_format_from_name(const std::string& name);

/// CSV form of a report: a header, one row per source, and a closing
/// aggregate row (mean time, harmonic-mean TEPS).
std::string report_to_csv(const RunReport& report);

/// Write the report to `path` in the requested format. Throws ConfigError
/// when the path cannot be written.
void emit_report(const RunReport& report, const std::string& path, ReportFormat format);

/// Scaling series across runs of the same graph: one row per report, keyed
/// by (algorithm, p), sorted by p then algorithm. Columns carry mean TEPS,
/// total network words, and the per-phase word split. Reports must share
/// scale and edgefactor (or input file).
std::string plot_data_csv(const std::vector<RunReport>& reports);

void emit_plot_data(const std::vector<RunReport>& reports, const std::string& path);

}  // namespace graphwave
