#ifndef OPUC_SPECTRAL_HPP
#define OPUC_SPECTRAL_HPP

#include <array>
#include <cstddef>
#include <optional>
#include <vector>

#include "opuc/types.hpp"

namespace opuc {

/// Geometry of the spectral arc Gamma_a = {e^{i theta} : theta_a <= theta <=
/// 2pi - theta_a} with theta_a = 2 arcsin(a), plus the mass point
/// (1 + conj(alpha)) / (1 + alpha) present when |alpha + 1/2| > 1/2.
struct ArcGeometry {
  double a = 0.0;
  double theta_a = 0.0;
  Arc arc;
  bool has_mass_point = false;
  cd mass_point{0.0, 0.0};

  static ArcGeometry for_modulus(double a);
  static ArcGeometry for_coefficient(cd alpha);

  /// Euclidean distance from z to the spectrum (arc plus mass point).
  double distance(cd z) const;
};

/// Branch of sqrt((z - e^{i theta_a})(z - e^{-i theta_a})) analytic on
/// C \ Gamma_a, normalized to 1 at z = 0.  On the cut itself the value is
/// the limit from inside the disk and `on_cut` is set.
struct BranchValue {
  cd value{0.0, 0.0};
  bool on_cut = false;
};

BranchValue sqrt_branch(cd z, double a);

/// G_a(z) = (z + 1 + sqrt_branch(z, a)) / 2.
cd g_a(cd z, double a);

/// Caratheodory, m-, and Schur functions of the constant-coefficient
/// (Geronimus) measure; `f` may be infinite (the free case outside the
/// closed disk), reported via f_infinite.
struct GeronimusTriple {
  cd F{0.0, 0.0};
  cd m{0.0, 0.0};
  cd f{0.0, 0.0};
  bool f_infinite = false;
};

GeronimusTriple geronimus_functions(cd alpha, cd z);

/// Szego transfer matrix A(alpha, z) = (1/rho) [[z, -conj(alpha)], [-alpha z, 1]].
std::array<cd, 4> transfer_matrix(cd alpha, cd z);

/// Discriminant of a p-periodic coefficient sequence.  Odd periods are
/// doubled on construction so that z^{-p/2} is an integer power; the
/// original period is retained for reporting.
class Discriminant {
 public:
  explicit Discriminant(std::vector<cd> alphas);

  std::size_t period() const { return alphas_.size(); }        // even
  std::size_t original_period() const { return original_period_; }
  const std::vector<cd>& coefficients() const { return alphas_; }
  double rho_product() const { return rho_product_; }

  /// Delta(z) = z^{-p/2} Tr(A(alpha_{p-1}, z) ... A(alpha_0, z)); z != 0.
  cd operator()(cd z) const;

  /// d/dz of Delta, by product-rule differentiation of the matrix product.
  cd derivative(cd z) const;

  /// d/dtheta of Delta(e^{i theta}), real for real-on-circle discriminants.
  double theta_derivative(double theta) const;

  /// lim_{z->0} z^{p/2} Delta(z) = prod rho_j^{-1} (the separate 0-query).
  double limit_scale_at_zero() const { return 1.0 / rho_product_; }

 private:
  std::vector<cd> alphas_;
  std::size_t original_period_;
  double rho_product_;
};

/// Closed arcs where Delta(e^{i theta}) lies in [-2, 2].
struct BandSet {
  std::vector<Arc> bands;

  bool contains(double theta) const;
  double distance(cd z) const;
  double total_length() const;
};

/// Grid scan (resolution pi/10^4) plus bisection refinement of each +-2
/// crossing to 1e-12.
BandSet band_set(const Discriminant& d);

/// G_Delta(z) = (z^{p/2}/2) (prod rho_j) (Delta + sqrt(Delta^2 - 4)) with the
/// root maximizing |Delta + sqrt(Delta^2 - 4)|; G_Delta(0) = 1 by the limit
/// construction.  Throws OnSpectrumError when both roots tie (z on a band).
cd g_delta(const Discriminant& d, cd z);

/// Schur function f^{(j)} of the j-times-stripped p-periodic sequence, as
/// the in-disk root of the one-period Moebius fixed-point equation.
/// Requires |z| < 1.
cd periodic_schur(const std::vector<cd>& alphas, std::size_t strip, cd z);

/// m-function of the j-times-stripped p-periodic sequence, valid for
/// |z| != 1: computed from the Schur fixed point inside the disk and
/// extended outside via conj(m(1/conj(z))) = z (1 - z m(z)).
cd periodic_m(const std::vector<cd>& alphas, std::size_t strip, cd z);

}  // namespace opuc

#endif  // OPUC_SPECTRAL_HPP
