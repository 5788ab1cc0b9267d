#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace nhsense::cli {

enum class Task { SnrLinear, QfiScan, NhseCompare, MeasTime, NonpertScan, Fig3, Fig4, Verify };

std::string task_name(Task task);
std::optional<Task> parse_task(const std::string& name);
const std::vector<Task>& all_tasks();

class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& key, const std::string& message);
  const std::string& key() const { return key_; }

 private:
  std::string key_;
};

// One (J, A) point of the hopping grid.
struct Coupling {
  double effective_hopping;
  double amplification;
};

struct RunConfig {
  Task task = Task::SnrLinear;
  std::string output;

  std::vector<int> sites;
  std::vector<Coupling> couplings;
  std::vector<double> eps0;
  std::vector<double> photons;
  std::vector<double> thermal_quanta;
  std::vector<double> tau;
  std::vector<double> hop_phase;

  double kappa = 1.0;
  double drive_phase = 0.0;
  double homodyne_angle = 1.5707963267948966;
  bool allow_even = false;

  double verify_tolerance = 1e-8;
  int verify_frequencies = 100;

  // Resolved (key, value) pairs in schema order, for the metadata sidecar.
  std::vector<std::pair<std::string, std::string>> resolved() const;
  std::size_t grid_size() const;
};

// INI text; task_override (from the command line) wins when the file has no
// task key and must agree with it otherwise.
RunConfig parse_config(const std::string& text, std::optional<Task> task_override = std::nullopt);

RunConfig load_config(const std::string& path, std::optional<Task> task_override = std::nullopt);

// Defaults for a task with no file at all.
RunConfig default_config(Task task);

}  // namespace nhsense::cli
