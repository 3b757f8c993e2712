// Acceptance suite as a ctest binary: one pass/fail line per criterion,
// nonzero exit on any failure.

#include <cstdio>
#include <cstring>

#include "opuc/harness.hpp"

int main(int argc, char** argv) {
  double budget = 1e18;
  std::optional<std::string> only;
  for (int i = 1; i < argc; ++i) {
    if (std::strncmp(argv[i], "--id=", 5) == 0) only = std::string(argv[i] + 5);
  }
  std::vector<opuc::Criterion> criteria = opuc::run_acceptance(budget, only);
  bool ok = !criteria.empty();
  for (const opuc::Criterion& c : criteria) {
    const char* status = c.skipped ? "SKIP" : (c.pass ? "PASS" : "FAIL");
    std::printf("%-4s %-4s measured=%.3e tolerance=%.3e (%.2fs) %s\n", status,
                c.id.c_str(), c.measured, c.tolerance, c.seconds,
                c.description.c_str());
    if (c.skipped || !c.pass) ok = false;
  }
  std::printf("%s\n", ok ? "ACCEPTANCE: ALL PASS" : "ACCEPTANCE: FAILURE");
  return ok ? 0 : 1;
}
