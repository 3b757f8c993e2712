#ifndef OPUC_MEASURES_HPP
#define OPUC_MEASURES_HPP

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "opuc/schedules.hpp"
#include "opuc/spectral.hpp"
#include "opuc/types.hpp"

namespace opuc {

struct PointMass {
  double theta = 0.0;
  double weight = 0.0;
};

/// Probability measure on the circle: absolutely continuous part given by a
/// density on the support arcs, plus optional point masses.  Singularity
/// markers flag angles where the density diverges integrably.
struct DensityCurve {
  std::vector<Arc> support;
  std::vector<PointMass> atoms;
  std::function<double(double)> density;  // 0 outside the support
  std::vector<double> singularities;
  /// Density at angle anchor + offset with the offset exact below one ulp;
  /// set by curves whose 1/sqrt edges would otherwise cancel in theta.
  std::function<double(double anchor, double offset)> density_rel;

  double total_mass(double tol = 1e-10) const;
  bool in_support(double theta) const;
};

/// Equilibrium measure nu_a of the arc Gamma_a; the Dirac mass at -1 when
/// a = 1.
DensityCurve nu_a(double a);

/// Equilibrium measure nu_Delta of the band set of a periodic discriminant,
/// density |Delta'| / (pi p sqrt(4 - Delta^2)) on band interiors.
DensityCurve nu_delta(const Discriminant& d);

/// Averaged measure sigma_t = (1/t) int_0^t nu_{|alpha(s)|} ds for a scalar
/// limit function, by singularity-aware quadrature in s.  A period-2 limit
/// function averages the 2-periodic band measure instead.
DensityCurve sigma_t_numeric(const LimitFunction& limit);

/// The closed-form densities of the worked examples.
enum class ClosedFormKind { Power, Exp, Sqrt, Sine };

struct ClosedFormDensity {
  ClosedFormKind kind;
  double t = 1.0;
  double omega = 1.0;  // Power
  double zeta = 0.5;   // Exp

  static ClosedFormDensity power(double omega, double t);
  static ClosedFormDensity exponential(double zeta, double t);
  static ClosedFormDensity sqrt_profile(double t);
  static ClosedFormDensity sine_profile(double t);

  /// Density value; 0 outside the support, +infinity at a marked
  /// singularity.
  double operator()(double theta) const;

  /// Support edge angle theta_* (support is [theta_*, 2pi - theta_*]).
  double support_edge() const;

  /// Marked singular angles (theta = pi for Sqrt and Sine).
  std::vector<double> singular_angles() const;

  DensityCurve curve() const;
};

/// Density from the monotone-profile formulas: f = |alpha| strictly
/// monotone on (0, t) with an inverse supplied by the caller.
double monotone_density(const std::function<double(double)>& f,
                        const std::function<double(double)>& f_inverse,
                        bool increasing, double t, double theta);

/// Cumulative distribution anchored at theta = 0 (the point z = 1).
class DistributionFunction {
 public:
  explicit DistributionFunction(const DensityCurve& curve, double tol = 1e-10);

  double operator()(double theta) const;
  double total() const { return total_; }

 private:
  struct Segment {
    double lo, hi;
    double cum_before;  // mass strictly below lo (atoms at lo included)
  };
  std::vector<Segment> segments_;
  std::vector<PointMass> atoms_;
  std::function<double(double)> density_;
  std::function<double(double, double)> density_rel_;
  double density_total_ = 0.0;
  double total_ = 0.0;
  double tol_;
};

/// Finite multiset of zeros with uniform weight 1/n.
struct EmpiricalMeasure {
  std::vector<cd> points;

  std::size_t size() const { return points.size(); }
};

/// Two-sided Kolmogorov distance between the angular projection of an
/// empirical measure and a distribution function.  Points further than
/// 1e-6 from the circle are projected and the flag is set.
struct KolmogorovResult {
  double distance = 0.0;
  bool projected = false;
};

KolmogorovResult kolmogorov_distance(const EmpiricalMeasure& emp,
                                     const DistributionFunction& F);

/// Moments int z^k dmu for k = 0..k_max.
std::vector<cd> moments(const EmpiricalMeasure& emp, std::size_t k_max);
std::vector<cd> moments(const DensityCurve& curve, std::size_t k_max,
                        double tol = 1e-10);

/// Balayage onto the circle: the measure with matching moments
/// c_k = (1/n) sum z_j^k, plus a Fejer-kernel density reconstruction.
struct BalayageMeasure {
  std::vector<cd> moments;  // c_0..c_K; c_{-k} = conj(c_k)

  std::size_t order() const { return moments.size() - 1; }
  /// Nonnegative Cesaro (Fejer) density at angle theta.
  double fejer_density(double theta) const;
};

BalayageMeasure balayage(const EmpiricalMeasure& emp, std::size_t k_max);

/// Poisson kernel P_r(t) = (1 - r^2) / (1 - 2 r cos t + r^2), 0 <= r < 1.
double poisson_kernel(double r, double t);

/// Logarithmic potential -int log|z - xi| dmu(xi).
double log_potential(const EmpiricalMeasure& emp, cd z);
double log_potential(const DensityCurve& curve, cd z, double tol = 1e-10);

/// Wrapped-Gaussian density of the Rogers-Szego measure, parameter a > 0.
double rogers_szego_density(double a, double theta);

}  // namespace opuc

#endif  // OPUC_MEASURES_HPP
