#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <string>

#include "nhsense/cli/config.hpp"
#include "nhsense/cli/csv.hpp"
#include "nhsense/cli/sweep.hpp"
#include "nhsense/errors.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitIo = 1;
constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

}  // namespace

int main(int argc, char** argv) {
  using namespace nhsense::cli;

  CLI::App app{"Sensing with directional amplifier chains: sweeps and datasets."};
  app.set_version_flag("--version", "nhsense 0.1.0");
  std::string task_arg;
  std::string config_path;
  std::string out_path;
  unsigned threads = 0;
  std::vector<std::string> names;
  for (Task t : all_tasks()) names.push_back(task_name(t));
  app.add_option("task", task_arg, "Task to run")->required()->check(CLI::IsMember(names));
  app.add_option("--config", config_path, "INI configuration file");
  app.add_option("--out", out_path, "Output CSV path (overrides the config)");
  app.add_option("--threads", threads, "Worker threads (default: all cores, capped by NHSENSE_MAX_THREADS)")
      ->check(CLI::Range(1u, 4096u));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  RunConfig config;
  const Task task = *parse_task(task_arg);
  try {
    if (config_path.empty()) {
      config = parse_config("task = " + task_arg + "\noutput = " + (out_path.empty() ? "-" : out_path) + "\n");
    } else {
      config = load_config(config_path, task);
    }
    if (!out_path.empty()) config.output = out_path;
    if (config.output.empty() || config.output == "-") throw ConfigError("output", "an output path is required");
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const nhsense::Error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  }

  const unsigned workers = resolve_threads(threads);
  Dataset data;
  try {
    data = run_sweep(config, workers);
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  }

  try {
    emit_csv(data, config, config.output);
  } catch (const OutputError& e) {
    std::cerr << "output error: " << e.what() << "\n";
    return kExitIo;
  }

  const std::size_t failed = data.failures();
  std::cerr << task_name(config.task) << ": " << data.rows.size() << " rows -> " << config.output;
  if (failed) std::cerr << " (" << failed << " failed)";
  std::cerr << "\n";
  return failed ? kExitNumerical : kExitOk;
}
