#include "opuc/types.hpp"

#include <cmath>

#include "opuc/errors.hpp"

namespace opuc {

double wrap_angle(double theta) {
  double t = std::fmod(theta, two_pi);
  if (t < 0.0) t += two_pi;
  return t;
}

double rho_of(cd alpha) {
  double a2 = std::norm(alpha);
  if (a2 >= 1.0) {
    if (a2 <= 1.0 + 1e-15) return 0.0;
    throw DomainError("rho_of: |alpha| > 1");
  }
  return std::sqrt(1.0 - a2);
}

}  // namespace opuc
