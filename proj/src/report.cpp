#include "graphwave/report.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace graphwave {

ReportFormat report_format_from_name(const std::string& name) {
  if (name == "json") return ReportFormat::Json;
  if (name == "csv") return ReportFormat::Csv;
  throw ConfigError("unknown report format '" + name + "' (expected json or csv)");
}

std::string report_to_csv(const RunReport& report) {
  std::ostringstream out;
  out << "record_type,source,levels,reached,edges_traversed,elapsed_seconds,teps\n";
  for (const SourceRecord& rec : report.records) {
    out << "source," << rec.source << ',' << rec.levels << ',' << rec.reached << ','
        << rec.edges_traversed << ',' << rec.elapsed_seconds << ',' << rec.teps() << '\n';
  }
  out << "aggregate,,,,," << report.mean_time_seconds << ',' << report.teps_harmonic << '\n';
  return out.str();
}

void emit_report(const RunReport& report, const std::string& path, ReportFormat format) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write report to " + path);
  if (format == ReportFormat::Json) {
    out << report.to_json().dump(2) << '\n';
  } else {
    out << report_to_csv(report);
  }
  out.flush();
  if (!out) throw ConfigError("write to " + path + " failed");
}

std::string plot_data_csv(const std::vector<RunReport>& reports) {
  for (const RunReport& rep : reports) {
    const RunConfig& a = reports.front().config;
    const RunConfig& b = rep.config;
    const bool same_graph = a.input_path.empty() == b.input_path.empty() &&
                            (a.input_path.empty()
                                 ? a.scale == b.scale && a.edgefactor == b.edgefactor
                                 : a.input_path == b.input_path);
    if (!same_graph) {
      throw ConfigError("plot data needs reports over the same graph parameters");
    }
  }

  std::vector<const RunReport*> order;
  order.reserve(reports.size());
  for (const RunReport& rep : reports) order.push_back(&rep);
  std::stable_sort(order.begin(), order.end(), [](const RunReport* a, const RunReport* b) {
    if (a->config.p != b->config.p) return a->config.p < b->config.p;
    return std::string(algorithm_name(a->config.algorithm)) <
           std::string(algorithm_name(b->config.algorithm));
  });

  std::ostringstream out;
  out << "algorithm,p,teps_mean,total_network_words,alltoall_words,allgather_words,"
         "transpose_words,allreduce_words\n";
  for (const RunReport* rep : order) {
    const CommStats& c = rep->comm;
    out << algorithm_name(rep->config.algorithm) << ',' << rep->config.p << ','
        << rep->teps_mean << ',' << c.total_network_words() << ','
        << c.words(Phase::Alltoall) << ',' << c.words(Phase::Allgather) << ','
        << c.words(Phase::Transpose) << ',' << c.words(Phase::Allreduce) << '\n';
  }
  return out.str();
}

void emit_plot_data(const std::vector<RunReport>& reports, const std::string& path) {
  const std::string csv = plot_data_csv(reports);
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write plot data to " + path);
  out << csv;
  out.flush();
  if (!out) throw ConfigError("write to " + path + " failed");
}

}  // namespace graphwave
