#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "rdlab/config.hpp"

namespace rdlab {

/// CSV table: one header row, cells already formatted.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

struct ExperimentResult {
  std::string command;
  bool passed = false;
  std::string report_json;
  std::map<std::string, Table> tables;  // keyed by table name
};

/// Commands: algebra-check, locality, position, zitterbewegung, continuity, covariance.
const std::vector<std::string>& command_names();

/// Runs one command; never touches the filesystem.
ExperimentResult run_experiment(const std::string& command, const Config& config, std::uint64_t seed);

/// Writes <dir>/<command>.report.json and <dir>/<command>.<table>.csv, each via
/// a temporary file renamed into place.
void write_outputs(const ExperimentResult& result, const std::string& dir);

/// %.17g
std::string format_number(double v);

}  // namespace rdlab
