#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "plancherel/experiments.hpp"
#include "plancherel/young.hpp"

namespace plancherel {

// Diagram records: one JSON object per line with field "rows".
std::string diagram_record(const young_diagram& d);
young_diagram parse_diagram_record(const std::string& line);

// Report records: line-delimited JSON, one "stat" object per statistic plus a
// leading "header" object echoing the configuration.
void write_report_records(std::ostream& os, const experiment_report& rep);

// CSV rows: experiment, n_or_theta, statistic, estimate, stderr, count, seed.
void write_report_csv(std::ostream& os, const experiment_report& rep, bool header);

// Parse record files (as written by write_report_records) back into reports.
std::vector<experiment_report> read_report_records(std::istream& is);

}  // namespace plancherel
