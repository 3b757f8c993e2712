#ifndef OPUC_RATIO_HPP
#define OPUC_RATIO_HPP

#include <cstddef>
#include <string>
#include <vector>

#include "opuc/schedules.hpp"
#include "opuc/types.hpp"

namespace opuc {

/// The six ratio families certified by the harness:
///   PopucStep      Phi^{(beta)}_{n+1} / Phi^{(beta)}_n
///   OpucStep       Phi_{n+1} / Phi_n
///   StarStep       Phi^*_{n+1} / Phi^*_n
///   OpucOverPopuc  Phi_n / Phi^{(beta)}_{n+1}
///   Blaschke       Phi_n / Phi^*_n
///   PeriodStep     Phi^{(beta)}_{n+p} / Phi^{(beta)}_n  (p = even period)
enum class RatioKind {
  PopucStep,
  OpucStep,
  StarStep,
  OpucOverPopuc,
  Blaschke,
  PeriodStep,
};

const char* ratio_kind_name(RatioKind kind);
RatioKind ratio_kind_from_name(const std::string& name);

/// Finite-n ratio evaluated through the log-scaled pointwise recurrence
/// (never through coefficient vectors).
cd observed_ratio(RatioKind kind, const Schedule& schedule, std::size_t n,
                  std::size_t N, cd beta, cd z);

/// Limit predicted by the ratio theorems for the schedule's limit
/// coefficients: m_{-conj(alpha) beta}, f_{-conj(alpha)}, G_a, G_Delta, or
/// the stripped periodic combinations.
cd predicted_limit(RatioKind kind, const Schedule& schedule, std::size_t n,
                   cd beta, cd z);

struct ConvergenceRung {
  std::size_t n = 0;
  std::size_t N = 0;
  cd observed{0.0, 0.0};
  cd predicted{0.0, 0.0};
  double error = 0.0;
};

struct ConvergenceReport {
  RatioKind kind;
  cd z;
  std::vector<ConvergenceRung> rungs;
  bool monotone_within_noise = true;  // no rung worsens by more than 2x
};

/// Errors |observed - predicted| along a strictly increasing n-ladder with
/// N tied to n through the target t (N = round(n / t)).
ConvergenceReport convergence_report(RatioKind kind, const Schedule& schedule,
                                     cd beta, cd z,
                                     const std::vector<std::size_t>& ladder,
                                     double t);

}  // namespace opuc

#endif  // OPUC_RATIO_HPP
