#ifndef OPUC_SZEGO_HPP
#define OPUC_SZEGO_HPP

#include <cstddef>
#include <vector>

#include "opuc/schedules.hpp"
#include "opuc/types.hpp"

namespace opuc {

/// Polynomial stored as ascending coefficients c_0..c_n.  Monic for OPUC and
/// POPUC outputs (c_n == 1).
struct MonicPolynomial {
  std::vector<cd> coeffs;

  std::size_t degree() const { return coeffs.empty() ? 0 : coeffs.size() - 1; }
  cd constant_term() const { return coeffs.empty() ? cd(0) : coeffs.front(); }
};

/// Recurrence state: coefficient vectors of (Phi_n, Phi_n^*).
/// Phi_n^* is the reversed polynomial z^n conj(Phi_n(1/conj(z))); it is not
/// monic, its constant term is 1.
struct PolynomialPair {
  std::vector<cd> phi;       // Phi_n, ascending
  std::vector<cd> phi_star;  // Phi_n^*, ascending

  std::size_t degree() const { return phi.empty() ? 0 : phi.size() - 1; }
  static PolynomialPair initial();  // Phi_0 = Phi_0^* = 1
};

/// One Szego step:
///   Phi_{n+1}   = z Phi_n - conj(alpha) Phi_n^*
///   Phi_{n+1}^* = Phi_n^* - z alpha Phi_n
/// Requires |alpha| < 1.
PolynomialPair advance(const PolynomialPair& pair, cd alpha);

/// Phi_{n,N} built from alpha_{0,N}..alpha_{n-1,N}.
MonicPolynomial opuc_polynomial(const Schedule& schedule, std::size_t n, std::size_t N);

/// Paraorthogonal Phi_n^{(beta)} = z Phi_{n-1} - conj(beta) Phi_{n-1}^*.
/// Requires n >= 1 and |beta| = 1 (tolerance 1e-14).
MonicPolynomial popuc_polynomial(const Schedule& schedule, std::size_t n, std::size_t N,
                      cd beta);

/// Horner evaluation.
cd evaluate(const MonicPolynomial& poly, cd z);

/// CSV rows "k,re,im" of the coefficient vector, ascending.
std::string coefficients_csv(const MonicPolynomial& poly);

/// Coefficient reversal-conjugation: p(z) -> z^deg conj(p(1/conj(z))).
std::vector<cd> reverse_conjugate(const std::vector<cd>& coeffs);

/// Value pair (Phi_n(z), Phi_n^*(z)) up to a shared positive real scale:
///   Phi_n(z) = phi * exp(log_scale),  Phi_n^*(z) = phi_star * exp(log_scale).
/// Ratios of components are exact; log-magnitudes are recovered without
/// overflow for |z| > 1 and large n.
struct ScaledPairValue {
  cd phi;
  cd phi_star;
  double log_scale = 0.0;

  double log_abs_phi() const;
  double log_abs_phi_star() const;
};

ScaledPairValue evaluate_pair_at(const Schedule& schedule, std::size_t n,
                                 std::size_t N, cd z);

/// POPUC value with the same scale convention, from the (n-1)-pair.
ScaledPairValue evaluate_popuc_at(const Schedule& schedule, std::size_t n,
                                  std::size_t N, cd beta, cd z);

/// Stepwise results for ratio work: scaled values at every level 0..n.
/// popuc[k] = Phi_k^{(beta)}(z) paired with the scale of level k-1.
struct PairTrace {
  std::vector<cd> phi;        // component of Phi_k at level k
  std::vector<cd> phi_star;   // component of Phi_k^* at level k
  std::vector<double> log_scale;  // shared scale exponent at level k
};

PairTrace trace_pair(const Schedule& schedule, std::size_t n, std::size_t N,
                     cd z);

}  // namespace opuc

#endif  // OPUC_SZEGO_HPP
