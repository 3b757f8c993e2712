#ifndef OPUC_CMV_HPP
#define OPUC_CMV_HPP

#include <cstddef>
#include <vector>

#include "opuc/szego.hpp"
#include "opuc/types.hpp"

namespace opuc {

/// Cut-off CMV matrix: the top-left n x n corner of the infinite
/// five-diagonal CMV pattern, populated from alpha_0..alpha_{n-2} plus a
/// terminator (alpha_{n-1} or a unimodular beta).  Unitary iff the
/// terminator is unimodular.
class CmvMatrix {
 public:
  /// Entries outside the band |i - j| <= 2 are exactly zero.
  static CmvMatrix build_cutoff(const std::vector<cd>& interior, cd terminator);

  std::size_t order() const { return n_; }
  cd operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }
  const std::vector<cd>& data() const { return data_; }
  const std::vector<cd>& coefficients() const { return alphas_; }
  cd terminator() const { return alphas_.back(); }

  /// max-entry norm of C* C - I.
  double unitarity_defect() const;

  /// CSV rows "row,col,re,im" for the nonzero band entries.
  std::string to_csv() const;

 private:
  CmvMatrix(std::size_t n, std::vector<cd> data, std::vector<cd> alphas)
      : n_(n), data_(std::move(data)), alphas_(std::move(alphas)) {}

  std::size_t n_ = 0;
  std::vector<cd> data_;    // dense row-major
  std::vector<cd> alphas_;  // alpha_0..alpha_{n-1} with terminator last
};

inline constexpr std::size_t kCharpolyMaxOrder = 64;

/// det(z - C) as a monic coefficient vector via Faddeev-LeVerrier.
/// Oracle-grade: orders above kCharpolyMaxOrder raise SizeError (the Szego
/// recurrence is authoritative there).
MonicPolynomial charpoly(const CmvMatrix& matrix);

/// Max-entry deviation between the two sides of the reflection identity
///   Q_n C_n(a_0..a_{n-2}, b) Q_n =
///     P_n(b)  C_n^T(-conj(a_{n-2})b, .., -conj(a_0)b, b) P_n^*(b)   (n odd)
///     P_n^*(b) C_n (-conj(a_{n-2})b, .., -conj(a_0)b, b) P_n(b)    (n even)
/// with Q_n the anti-diagonal flip and P_n(b) = diag(1, b, 1, b, ...).
double reflect_deviation(const std::vector<cd>& interior, cd beta,
                         std::size_t n);

/// Normalized trace moments m_k = (1/n) Tr(C^k), k = 0..k_max, via banded
/// multiplication (the k-th power has bandwidth O(k)).
std::vector<cd> trace_power_moments(const CmvMatrix& matrix, std::size_t k_max);

/// LM factorization of the same cut-off (test oracle for the entry pattern).
/// L = Theta_0 + Theta_2 + ..., M = 1 + Theta_1 + Theta_3 + ... truncated.
std::vector<cd> cmv_from_lm_factorization(const std::vector<cd>& interior,
                                          cd terminator);

}  // namespace opuc

#endif  // OPUC_CMV_HPP
