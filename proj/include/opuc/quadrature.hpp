#ifndef OPUC_QUADRATURE_HPP
#define OPUC_QUADRATURE_HPP

#include <complex>
#include <functional>

namespace opuc {

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  bool converged = false;
};

/// Tanh-sinh (double exponential) quadrature of f over (a, b).
///
/// Handles integrable endpoint singularities such as 1/sqrt(x - a).  The
/// integrand is never evaluated at the endpoints themselves.  Levels are
/// doubled until two successive refinements agree to `tol` (mixed
/// absolute/relative) or `max_level` is reached.
QuadratureResult tanh_sinh(const std::function<double(double)>& f, double a,
                           double b, double tol = 1e-10, int max_level = 12);

/// Endpoint-resolved variant: f receives (u, offset, side) where side 0
/// means u = a + offset and side 1 means u = b - offset, with `offset`
/// exact far below one ulp of u.  Required when the integrand has a
/// 1/sqrt(distance) singularity whose distance cancels in u itself.
using SidedIntegrand = std::function<double(double u, double offset, int side)>;

QuadratureResult tanh_sinh_sided(const SidedIntegrand& f, double a, double b,
                                 double tol = 1e-10, int max_level = 12);

/// Complex-valued variant sharing the same node set.
struct ComplexQuadratureResult {
  std::complex<double> value{0.0, 0.0};
  double error_estimate = 0.0;
  bool converged = false;
};

ComplexQuadratureResult tanh_sinh_complex(
    const std::function<std::complex<double>(double)>& f, double a, double b,
    double tol = 1e-10, int max_level = 12);

}  // namespace opuc

#endif  // OPUC_QUADRATURE_HPP
