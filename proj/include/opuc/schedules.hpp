#ifndef OPUC_SCHEDULES_HPP
#define OPUC_SCHEDULES_HPP

#include <cstddef>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "opuc/types.hpp"

namespace opuc {

/// Modulus clamp applied to sampled values that leave the open unit disk.
/// Recurrence inputs must satisfy |alpha| < 1, while the sampling function
/// itself may touch the closed disk; the unclamped function is kept for
/// density work.
inline constexpr double kClampEpsilon = 1e-12;

/// Built-in expression set for sampled coefficient functions on [0, t].
///
/// Power        alpha(s) = s^omega
/// Exp          alpha(s) = zeta^s, sampled at (n+1)/N so that
///              alpha_{n,N} = zeta^{(n+1)/N} (rotated Rogers-Szego form)
/// SqrtOneMinusS2  alpha(s) = sqrt(1 - s^2)
/// Sine         alpha(s) = sin(pi s / t)
/// Constant     alpha(s) = c
/// Table        piecewise-linear interpolation through (s_i, alpha_i)
class SampledExpression {
 public:
  enum class Kind { Power, Exp, SqrtOneMinusS2, Sine, Constant, Table };

  static SampledExpression power(double omega);
  static SampledExpression exponential(cd zeta);
  static SampledExpression sqrt_one_minus_s2();
  static SampledExpression sine();
  static SampledExpression constant(cd value);
  static SampledExpression table(std::vector<std::pair<double, cd>> knots);

  /// Unclamped value alpha(s); `t` supplies the horizon for Sine.
  cd eval(double s, double t) const;

  Kind kind() const { return kind_; }
  double omega() const { return omega_; }
  cd zeta() const { return zeta_; }
  cd constant_value() const { return constant_; }

  /// Exp samples at (n+1)/N instead of n/N; everything else uses n/N.
  double sample_point(std::size_t n, std::size_t N) const;

 private:
  Kind kind_ = Kind::Constant;
  double omega_ = 1.0;
  cd zeta_{0.0, 0.0};
  cd constant_{0.0, 0.0};
  std::vector<std::pair<double, cd>> knots_;
};

/// The a.e. limit function s -> alpha_j(s) of a schedule on [0, t].
/// Non-periodic schedules have a single component (period() == 1).
class LimitFunction {
 public:
  LimitFunction(double t, std::vector<std::function<cd(double)>> components);

  double t() const { return t_; }
  std::size_t period() const { return components_.size(); }
  cd operator()(double s, std::size_t j = 0) const;
  double modulus(double s, std::size_t j = 0) const;

 private:
  double t_;
  std::vector<std::function<cd(double)>> components_;
};

/// A rule producing the Verblunsky coefficient alpha_{n,N} for any (n, N).
///
/// Immutable value type; all queries are reentrant.
class Schedule {
 public:
  enum class Kind { Constant, Periodic, Sampled, Table };

  static Schedule constant(cd alpha);
  static Schedule periodic(std::vector<cd> alphas);
  static Schedule sampled(SampledExpression expr, double t);
  /// Explicit rows: rows[i] = {N_i, coefficients alpha_{0..m-1, N_i}}.
  static Schedule table(std::vector<std::pair<std::size_t, std::vector<cd>>> rows);

  /// alpha_{n,N}.  0-based n; N >= 1.  Always lies in the open unit disk.
  cd coefficient(std::size_t n, std::size_t N) const;

  /// The limit function used by the density calculators.  Throws
  /// UnsupportedVariantError for Table schedules.
  LimitFunction limit_function() const;

  Kind kind() const { return kind_; }
  double horizon() const { return t_; }
  std::size_t period() const { return periodic_.size(); }
  const std::vector<cd>& periodic_coefficients() const { return periodic_; }
  const SampledExpression& expression() const { return expr_; }
  std::string describe() const;

 private:
  Kind kind_ = Kind::Constant;
  cd constant_{0.0, 0.0};
  std::vector<cd> periodic_;
  SampledExpression expr_;
  double t_ = 1.0;
  std::vector<std::pair<std::size_t, std::vector<cd>>> table_;
};

/// Clamp a value into the open disk: modulus >= 1 becomes 1 - kClampEpsilon.
cd clamp_to_open_disk(cd value);

}  // namespace opuc

#endif  // OPUC_SCHEDULES_HPP
