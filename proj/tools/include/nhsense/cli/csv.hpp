#pragma once

#include <ostream>
#include <string>

#include "nhsense/cli/config.hpp"
#include "nhsense/cli/sweep.hpp"

namespace nhsense::cli {

class OutputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Doubles use 17 significant digits so that a reader recovers the exact value.
std::string format_cell(const Cell& cell);

void write_csv(const Dataset& data, std::ostream& out);

// Writes path and the sidecar path + ".json" with the resolved configuration.
void emit_csv(const Dataset& data, const RunConfig& config, const std::string& path);

std::string metadata_json(const Dataset& data, const RunConfig& config);

}  // namespace nhsense::cli
