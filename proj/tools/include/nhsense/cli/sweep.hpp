#pragma once

#include <cstddef>
#include <string>
#include <variant>
#include <vector>

#include "nhsense/cli/config.hpp"

namespace nhsense::cli {

using Cell = std::variant<long long, double, std::string>;

struct Dataset {
  std::vector<std::string> columns;  // the last column is "status"
  std::vector<std::vector<Cell>> rows;

  // Rows whose status is not "ok".
  std::size_t failures() const;
};

// requested == 0 picks the hardware concurrency; NHSENSE_MAX_THREADS caps the result.
unsigned resolve_threads(unsigned requested);

Dataset run_sweep(const RunConfig& config, unsigned threads = 1);

// Column names of a task's dataset.
std::vector<std::string> task_columns(Task task);

}  // namespace nhsense::cli
