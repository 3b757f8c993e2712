#ifndef OPUC_HARNESS_HPP
#define OPUC_HARNESS_HPP

#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace opuc {

/// One acceptance criterion: tolerance pinned at compile time, measured
/// value filled by the run.
struct Criterion {
  std::string id;
  std::string description;
  double tolerance = 0.0;
  double measured = 0.0;
  bool pass = false;
  bool skipped = false;
  double seconds = 0.0;
  double declared_seconds = 0.0;  // runtime budget from the suite design
};

/// Execute the acceptance suite.  `budget_seconds` caps the total runtime
/// using the declared per-criterion runtimes (skipped criteria are
/// flagged, not failed).  `only_id` isolates a single criterion.
std::vector<Criterion> run_acceptance(
    double budget_seconds = std::numeric_limits<double>::infinity(),
    const std::optional<std::string>& only_id = std::nullopt);

/// Aligned text table of the results (one line per criterion).
std::string format_criteria_table(const std::vector<Criterion>& criteria);

nlohmann::json criteria_to_json(const std::vector<Criterion>& criteria);

/// True iff every executed criterion passed and none was skipped.
bool all_passed(const std::vector<Criterion>& criteria);

}  // namespace opuc

#endif  // OPUC_HARNESS_HPP
