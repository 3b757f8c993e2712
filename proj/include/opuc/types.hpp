#ifndef OPUC_TYPES_HPP
#define OPUC_TYPES_HPP

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>

namespace opuc {

using cd = std::complex<double>;

inline constexpr double pi = std::numbers::pi_v<double>;
inline constexpr double two_pi = 2.0 * std::numbers::pi_v<double>;

/// Closed circular arc {e^{i theta} : lo <= theta <= hi}, angles in [0, 2pi].
struct Arc {
  double lo = 0.0;
  double hi = 0.0;

  double length() const { return hi - lo; }
  bool contains(double theta) const { return theta >= lo && theta <= hi; }
};

/// Reduce an angle to [0, 2pi).
double wrap_angle(double theta);

/// sqrt(1 - |alpha|^2) for a Verblunsky coefficient in the open disk.
double rho_of(cd alpha);

/// Deterministic 64-bit generator (splitmix64) for seeded identity checks.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform double in [0, 1).
  double uniform() {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
  }

  /// Uniform double in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Uniform point in the open disk of radius r (rejection-free polar draw).
  cd disk(double r = 1.0) {
    double radius = r * std::sqrt(uniform());
    double angle = uniform(0.0, two_pi);
    return std::polar(radius, angle);
  }

  /// Uniform unimodular number.
  cd circle() { return std::polar(1.0, uniform(0.0, two_pi)); }

 private:
  std::uint64_t state_;
};

}  // namespace opuc

#endif  // OPUC_TYPES_HPP
