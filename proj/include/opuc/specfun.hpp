#ifndef OPUC_SPECFUN_HPP
#define OPUC_SPECFUN_HPP

namespace opuc {

/// Gamma function for x > 0 (Lanczos approximation, relative error ~1e-13).
double gamma_fn(double x);

/// Gauss hypergeometric 2F1(a, b; c; x) for real parameters, x in [0, 1].
///
/// Power series for x <= 0.9; the 1-x linear-transformation formula on
/// (0.9, 1); the closed Gauss value at x = 1 (requires c - a - b > 0 there).
double hyp2f1(double a, double b, double c, double x);

/// Complete elliptic integral of the first kind, K(k) for 0 <= k < 1,
/// via the arithmetic-geometric mean.
double elliptic_k(double k);

/// K expressed through the complementary modulus k' = sqrt(1 - k^2);
/// stays accurate as k -> 1 where 1 - k^2 cancels.
double elliptic_k_from_complement(double k_complement);

}  // namespace opuc

#endif  // OPUC_SPECFUN_HPP
