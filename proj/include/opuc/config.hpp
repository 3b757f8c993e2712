#ifndef OPUC_CONFIG_HPP
#define OPUC_CONFIG_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "opuc/measures.hpp"
#include "opuc/ratio.hpp"
#include "opuc/schedules.hpp"
#include "opuc/types.hpp"

namespace opuc {

/// Experiment kinds driven by the runner.
enum class ExperimentKind {
  Zeros,
  Density,
  Ratio,
  Compare,
  Balayage,
  Moments,
  Bands,
};

const char* experiment_kind_name(ExperimentKind kind);

/// Parsed experiment configuration.
///
/// Config files are TOML (a small subset: key/value pairs, [tables],
/// strings, numbers, booleans, homogeneous arrays, arrays of arrays) or
/// JSON when the file extension is .json.  Complex numbers are written as
/// two-element arrays [re, im] or bare reals.
struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::Zeros;
  Schedule schedule = Schedule::constant(cd(0.0));
  double t = 1.0;
  std::vector<cd> betas = {cd(1.0)};
  std::vector<std::size_t> ladder = {200};
  std::string out_dir = "out";
  std::vector<RatioKind> ratio_kinds;                  // Ratio experiments
  std::vector<cd> probes;                              // Ratio experiments
  std::optional<ClosedFormDensity> closed_form;        // Density/Compare
  double ks_tolerance = 0.05;                          // Compare experiments
  std::size_t moment_count = 20;
  std::size_t fejer_order = 256;
  bool seedless = false;  // reserved; the pipeline consumes no randomness
  nlohmann::json echo;    // canonical parsed form for the manifest

  /// FNV-1a hash of the canonical config; run-id = first 12 hex digits.
  std::string run_id() const;
};

/// Parse a config file (TOML or JSON per extension).  Errors carry
/// line/field context and throw ConfigError.
ExperimentConfig parse_config_file(const std::string& path);

/// Parse from text; `format` is "toml" or "json".
ExperimentConfig parse_config_text(const std::string& text,
                                   const std::string& format);

/// The TOML-subset reader (exposed for tests): produces a JSON object.
nlohmann::json toml_subset_to_json(const std::string& text);

}  // namespace opuc

#endif  // OPUC_CONFIG_HPP
