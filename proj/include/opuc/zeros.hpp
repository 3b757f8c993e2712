#ifndef OPUC_ZEROS_HPP
#define OPUC_ZEROS_HPP

#include <cstddef>
#include <string>
#include <vector>

#include "opuc/schedules.hpp"
#include "opuc/szego.hpp"
#include "opuc/types.hpp"

namespace opuc {

/// Zeros of a degree-n polynomial, one entry per zero.
struct ZeroSet {
  std::vector<cd> zeros;
  double max_residual = 0.0;   // scaled |Phi(z_j)| over the set
  std::string method;          // "phase", "eig", "aberth"
  bool clustered = false;      // multiple/clustered roots detected

  std::size_t size() const { return zeros.size(); }
  std::string to_csv() const;  // re,im,modulus,arg,residual header
};

/// POPUC zeros from the real phase function
///   g(theta) = Re[ e^{i(phi - n theta)/2} Phi_n^{(beta)}(e^{i theta}) ],
/// phi = arg(-conj(beta)), whose n simple sign changes are bracketed on a
/// grid of 8n points and refined by bisection + secant to 1e-13.
ZeroSet popuc_zeros_phase(const Schedule& schedule, std::size_t n,
                          std::size_t N, cd beta);

/// POPUC zeros as eigenvalues of the unitary cut-off CMV matrix; dense
/// eigensolver budget n <= 2000.  Cross-validation oracle for the phase
/// method.
ZeroSet popuc_zeros_eig(const Schedule& schedule, std::size_t n, std::size_t N,
                        cd beta);

/// OPUC zeros by simultaneous Aberth-Ehrlich iteration with Newton polish.
/// Initial guesses live on the circle of radius |alpha_{n-1,N}|^{1/n},
/// golden-angle spaced.  Coefficient-based: adequate at desk scale while
/// the coefficient range stays within double precision.
ZeroSet opuc_zeros(const Schedule& schedule, std::size_t n, std::size_t N);

/// OPUC zeros as eigenvalues of the non-unitary cut-off CMV matrix, whose
/// O(1) entries keep the problem well conditioned when the coefficient
/// vector spans hundreds of orders of magnitude (Rogers-Szego ramps).
/// Dense budget n <= 2000.
ZeroSet opuc_zeros_eig(const Schedule& schedule, std::size_t n,
                       std::size_t N);

/// Aberth-Ehrlich on an explicit monic coefficient vector.
ZeroSet aberth_roots(const MonicPolynomial& poly, double radius_hint);

/// Fractions (1/n) #{j : |z_j| <= 1 - delta} for each delta in the grid.
std::vector<double> circle_proximity_profile(const ZeroSet& zs,
                                             const std::vector<double>& deltas);

/// Greatest pairwise distance under the angular alignment of two zero sets
/// on the circle (used to cross-validate the two POPUC methods).
double matched_distance(const ZeroSet& a, const ZeroSet& b);

}  // namespace opuc

#endif  // OPUC_ZEROS_HPP
