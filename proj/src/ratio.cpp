#include "opuc/ratio.hpp"

#include <cmath>

#include "opuc/errors.hpp"
#include "opuc/spectral.hpp"
#include "opuc/szego.hpp"

namespace opuc {

const char* ratio_kind_name(RatioKind kind) {
  switch (kind) {
    case RatioKind::PopucStep: return "popuc_step";
    case RatioKind::OpucStep: return "opuc_step";
    case RatioKind::StarStep: return "star_step";
    case RatioKind::OpucOverPopuc: return "opuc_over_popuc";
    case RatioKind::Blaschke: return "blaschke";
    case RatioKind::PeriodStep: return "period_step";
  }
  return "?";
}

RatioKind ratio_kind_from_name(const std::string& name) {
  if (name == "popuc_step") return RatioKind::PopucStep;
  if (name == "opuc_step") return RatioKind::OpucStep;
  if (name == "star_step") return RatioKind::StarStep;
  if (name == "opuc_over_popuc") return RatioKind::OpucOverPopuc;
  if (name == "blaschke") return RatioKind::Blaschke;
  if (name == "period_step") return RatioKind::PeriodStep;
  throw DomainError("unknown ratio kind: " + name);
}

namespace {

constexpr double kDenominatorFloor = 1e-250;

cd guarded_ratio(cd num, double num_log, cd den, double den_log) {
  if (std::abs(den) < kDenominatorFloor)
    throw NearZeroDenominatorError("observed_ratio: denominator underflow");
  return (num / den) * std::exp(num_log - den_log);
}

// Even effective period of a schedule for PeriodStep (doubled when odd so
// the G_Delta branch is single-valued).
std::size_t effective_period(const Schedule& schedule) {
  std::size_t p =
      schedule.kind() == Schedule::Kind::Periodic ? schedule.period() : 1;
  if (p % 2 == 1) p *= 2;
  return p;
}

cd popuc_value(const PairTrace& trace, std::size_t k, cd beta, cd z,
               double* log_scale) {
  // Phi_k^{(beta)} from the (k-1)-level pair, sharing that level's scale.
  *log_scale = trace.log_scale[k - 1];
  return z * trace.phi[k - 1] - std::conj(beta) * trace.phi_star[k - 1];
}

}  // namespace

cd observed_ratio(RatioKind kind, const Schedule& schedule, std::size_t n,
                  std::size_t N, cd beta, cd z) {
  const std::size_t p = effective_period(schedule);
  const std::size_t top = (kind == RatioKind::PeriodStep) ? n + p : n + 1;
  PairTrace trace = trace_pair(schedule, top, N, z);

  switch (kind) {
    case RatioKind::PopucStep: {
      double lg_num, lg_den;
      cd num = popuc_value(trace, n + 1, beta, z, &lg_num);
      cd den = popuc_value(trace, n, beta, z, &lg_den);
      return guarded_ratio(num, lg_num, den, lg_den);
    }
    case RatioKind::OpucStep:
      return guarded_ratio(trace.phi[n + 1], trace.log_scale[n + 1],
                           trace.phi[n], trace.log_scale[n]);
    case RatioKind::StarStep:
      return guarded_ratio(trace.phi_star[n + 1], trace.log_scale[n + 1],
                           trace.phi_star[n], trace.log_scale[n]);
    case RatioKind::OpucOverPopuc: {
      double lg_den;
      cd den = popuc_value(trace, n + 1, beta, z, &lg_den);
      return guarded_ratio(trace.phi[n], trace.log_scale[n], den, lg_den);
    }
    case RatioKind::Blaschke:
      return guarded_ratio(trace.phi[n], trace.log_scale[n],
                           trace.phi_star[n], trace.log_scale[n]);
    case RatioKind::PeriodStep: {
      double lg_num, lg_den;
      cd num = popuc_value(trace, n + p, beta, z, &lg_num);
      cd den = popuc_value(trace, n, beta, z, &lg_den);
      return guarded_ratio(num, lg_num, den, lg_den);
    }
  }
  throw DomainError("unreachable ratio kind");
}

namespace {

// Limit coefficient(s) of the schedule as n/N -> t.
std::vector<cd> limit_coefficients(const Schedule& schedule) {
  switch (schedule.kind()) {
    case Schedule::Kind::Constant:
      return {schedule.coefficient(0, 1)};
    case Schedule::Kind::Periodic:
      return schedule.periodic_coefficients();
    case Schedule::Kind::Sampled: {
      LimitFunction lf = schedule.limit_function();
      return {lf(lf.t())};
    }
    case Schedule::Kind::Table:
      throw UnsupportedVariantError(
          "predicted_limit: table schedules carry no limit");
  }
  throw DomainError("unreachable schedule kind");
}

// Reversed conjugated beta-rotated period: b_i = -conj(alpha_{p-1-i}) beta.
std::vector<cd> reflected_period(const std::vector<cd>& alphas, cd beta) {
  std::vector<cd> b(alphas.size());
  for (std::size_t i = 0; i < alphas.size(); ++i)
    b[i] = -std::conj(alphas[alphas.size() - 1 - i]) * beta;
  return b;
}

// m-function of the j-stripped reflected sequence evaluated at 1/conj(z),
// conjugated (the combination appearing in the periodic step limits).
cd m_reflected_at_inverse(const std::vector<cd>& b, std::size_t j, cd z) {
  cd w = 1.0 / std::conj(z);
  return std::conj(periodic_m(b, j, w));
}

// Schur function of the stripped periodic sequence, extended off the disk
// through conj(f(1/conj(z))) = 1/f(z).
cd schur_extended(const std::vector<cd>& b, std::size_t j, cd z) {
  if (std::abs(z) < 1.0) return periodic_schur(b, j, z);
  cd inner = periodic_schur(b, j, 1.0 / std::conj(z));
  if (std::abs(inner) < 1e-14)
    throw OnSpectrumError(
        "predicted_limit: pole of the extended Schur function");
  return 1.0 / std::conj(inner);
}

cd predicted_periodic(RatioKind kind, const std::vector<cd>& alphas,
                      std::size_t n, cd beta, cd z) {
  const std::size_t p = alphas.size();
  // n = kp - j determines the strip index j.
  const std::size_t j = (p - (n % p)) % p;
  const std::vector<cd> b1 = reflected_period(alphas, cd(1.0));
  auto alpha_mod = [&](long idx) {
    long m = idx % static_cast<long>(p);
    if (m < 0) m += static_cast<long>(p);
    return alphas[static_cast<std::size_t>(m)];
  };

  switch (kind) {
    case RatioKind::OpucOverPopuc: {
      std::vector<cd> bb = reflected_period(alphas, beta);
      return periodic_m(bb, j, z);
    }
    case RatioKind::Blaschke:
      return schur_extended(b1, j, z);
    case RatioKind::StarStep:
      // 1 - z alpha_{p-j} f_1^{(j)}(z)
      return 1.0 - z * alpha_mod(static_cast<long>(p) - static_cast<long>(j)) *
                       schur_extended(b1, j, z);
    case RatioKind::OpucStep: {
      cd f = schur_extended(b1, j, z);
      if (std::abs(f) < 1e-14)
        throw OnSpectrumError("predicted_limit: zero of the Schur function");
      return z - std::conj(alpha_mod(static_cast<long>(p) -
                                     static_cast<long>(j))) /
                     f;
    }
    case RatioKind::PopucStep: {
      // Ratio of stripped m-functions times the star-step limit at j-1.
      std::vector<cd> bb = reflected_period(alphas, beta);
      std::size_t jm1 = (j + p - 1) % p;
      cd num = m_reflected_at_inverse(bb, jm1, z);
      cd den = m_reflected_at_inverse(bb, j, z);
      cd star = 1.0 - z *
                          alpha_mod(static_cast<long>(p) -
                                    static_cast<long>(j) + 1) *
                          schur_extended(b1, jm1, z);
      return (num / den) * star;
    }
    case RatioKind::PeriodStep:
      break;  // handled by the caller
  }
  throw DomainError("unreachable periodic ratio kind");
}

}  // namespace

cd predicted_limit(RatioKind kind, const Schedule& schedule, std::size_t n,
                   cd beta, cd z) {
  if (kind == RatioKind::PeriodStep) {
    std::vector<cd> alphas;
    if (schedule.kind() == Schedule::Kind::Periodic)
      alphas = schedule.periodic_coefficients();
    else
      alphas = limit_coefficients(schedule);
    Discriminant d(alphas);
    return g_delta(d, z);
  }

  if (schedule.kind() == Schedule::Kind::Periodic && schedule.period() > 1) {
    return predicted_periodic(kind, schedule.periodic_coefficients(), n, beta,
                              z);
  }

  const cd alpha = limit_coefficients(schedule)[0];
  const double a = std::abs(alpha);
  switch (kind) {
    case RatioKind::OpucOverPopuc:
      return geronimus_functions(-std::conj(alpha) * beta, z).m;
    case RatioKind::Blaschke: {
      GeronimusTriple g = geronimus_functions(-std::conj(alpha), z);
      if (g.f_infinite)
        throw OnSpectrumError("predicted_limit: Schur limit is infinite here");
      return g.f;
    }
    case RatioKind::PopucStep:
    case RatioKind::OpucStep:
    case RatioKind::StarStep:
      return g_a(z, a);
    case RatioKind::PeriodStep:
      break;
  }
  throw DomainError("unreachable ratio kind");
}

ConvergenceReport convergence_report(RatioKind kind, const Schedule& schedule,
                                     cd beta, cd z,
                                     const std::vector<std::size_t>& ladder,
                                     double t) {
  if (ladder.empty()) throw DomainError("convergence_report: empty ladder");
  for (std::size_t i = 1; i < ladder.size(); ++i)
    if (ladder[i] <= ladder[i - 1])
      throw DomainError("convergence_report: ladder must strictly increase");

  ConvergenceReport report;
  report.kind = kind;
  report.z = z;
  for (std::size_t n : ladder) {
    ConvergenceRung rung;
    rung.n = n;
    rung.N = static_cast<std::size_t>(
        std::llround(static_cast<double>(n) / t));
    rung.observed = observed_ratio(kind, schedule, n, rung.N, beta, z);
    rung.predicted = predicted_limit(kind, schedule, n, beta, z);
    rung.error = std::abs(rung.observed - rung.predicted);
    report.rungs.push_back(rung);
  }
  for (std::size_t i = 1; i < report.rungs.size(); ++i)
    if (report.rungs[i].error > 2.0 * report.rungs[i - 1].error)
      report.monotone_within_noise = false;
  return report;
}

}  // namespace opuc
