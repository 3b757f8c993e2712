#ifndef OPUC_RUNNER_HPP
#define OPUC_RUNNER_HPP

#include <cstddef>
#include <string>
#include <vector>

#include "json.hpp"
#include "opuc/config.hpp"

namespace opuc {

inline constexpr const char* kLibraryVersion = "0.1.0";

struct JobReport {
  std::string name;
  std::string status;  // "ok" or the error message
  double seconds = 0.0;
};

struct OutputRecord {
  std::string path;      // relative to the run directory
  std::string checksum;  // fnv1a-64 hex of the bytes
};

/// Execution record of one config run; serialized as manifest.json in the
/// run directory <out>/<run-id>/.
struct RunManifest {
  nlohmann::json config_echo;
  std::string version;
  std::string run_id;
  std::vector<JobReport> jobs;
  std::vector<OutputRecord> outputs;
  double wall_seconds = 0.0;
  bool all_ok = true;

  nlohmann::json to_json() const;
};

/// Execute the configured experiment pipeline.  Deterministic outputs for
/// deterministic configs; independent jobs run on `workers` threads.
/// Job errors are collected in the manifest; the run continues.
RunManifest run_experiment(const ExperimentConfig& config,
                           std::size_t workers = 1);

}  // namespace opuc

#endif  // OPUC_RUNNER_HPP
