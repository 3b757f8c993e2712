#include "doctest.h"
#include "opuc/errors.hpp"
#include "opuc/measures.hpp"
#include "opuc/cmv.hpp"
#include "opuc/zeros.hpp"

#include <algorithm>
#include <cmath>

using namespace opuc;

namespace {

Schedule seeded_random_schedule(std::uint64_t seed, std::size_t length,
                                double radius = 0.9) {
  SplitMix64 rng(seed);
  std::vector<cd> alphas(length);
  for (cd& a : alphas) a = rng.disk(radius);
  return Schedule::table({{1, std::move(alphas)}});
}

}  // namespace

TEST_CASE("phase method basics") {
  SUBCASE("n = 1 returns conj(beta)") {
    cd beta = std::polar(1.0, 1.1);
    ZeroSet zs = popuc_zeros_phase(Schedule::constant(cd(0.0)), 1, 1, beta);
    REQUIRE(zs.size() == 1);
    CHECK(std::abs(zs.zeros[0] - std::conj(beta)) < 1e-12);
  }
  SUBCASE("free case beta = 1, n = 8 gives the eighth roots of unity") {
    ZeroSet zs = popuc_zeros_phase(Schedule::constant(cd(0.0)), 8, 1, cd(1.0));
    REQUIRE(zs.size() == 8);
    std::vector<double> angles;
    for (const cd& z : zs.zeros) angles.push_back(wrap_angle(std::arg(z)));
    std::sort(angles.begin(), angles.end());
    for (int j = 0; j < 8; ++j)
      CHECK(angles[j] == doctest::Approx(two_pi * j / 8.0).epsilon(1e-11));
  }
  SUBCASE("all moduli are exactly one by construction") {
    ZeroSet zs =
        popuc_zeros_phase(seeded_random_schedule(7, 40), 40, 1, cd(0.0, 1.0));
    for (const cd& z : zs.zeros)
      CHECK(std::abs(std::abs(z) - 1.0) < 1e-15);
  }
  SUBCASE("most zeros of a constant schedule land on the arc") {
    ZeroSet zs =
        popuc_zeros_phase(Schedule::constant(cd(0.5)), 200, 1, cd(1.0));
    double lo = 2.0 * std::asin(0.5);
    int outside = 0;
    for (const cd& z : zs.zeros) {
      double theta = wrap_angle(std::arg(z));
      if (theta < lo - 1e-6 || theta > two_pi - lo + 1e-6) ++outside;
    }
    CHECK(outside <= 3);  // O(1) exceptions near the arc endpoints
  }
}

TEST_CASE("eigenvalue method cross-validates the phase method") {
  SUBCASE("n = 2 free case, beta = 1 gives +-1") {
    ZeroSet zs = popuc_zeros_eig(Schedule::constant(cd(0.0)), 2, 1, cd(1.0));
    REQUIRE(zs.size() == 2);
    std::vector<cd> sorted = zs.zeros;
    std::sort(sorted.begin(), sorted.end(),
              [](const cd& a, const cd& b) { return a.real() < b.real(); });
    CHECK(std::abs(sorted[0] + 1.0) < 1e-12);
    CHECK(std::abs(sorted[1] - 1.0) < 1e-12);
  }
  SUBCASE("moduli within 1e-12 of the circle, matching <= 1e-8") {
    // Schedules in the regime of the limit theorems; adversarial i.i.d.
    // draws with large moduli push intermediate polynomials through
    // exponentially deep dips that double precision cannot track.
    cd beta = std::polar(1.0, 0.37);
    struct Fixture {
      Schedule schedule;
      std::size_t n;
      std::size_t N;
    };
    std::vector<Fixture> fixtures;
    fixtures.push_back({Schedule::constant(cd(0.5)), 25, 25});
    fixtures.push_back({Schedule::constant(cd(0.5)), 60, 60});
    fixtures.push_back(
        {Schedule::sampled(SampledExpression::exponential(cd(0.5)), 1.0), 60,
         60});
    fixtures.push_back({seeded_random_schedule(1259, 25, 0.55), 25, 1});
    for (const Fixture& fx : fixtures) {
      ZeroSet eig = popuc_zeros_eig(fx.schedule, fx.n, fx.N, beta);
      ZeroSet phase = popuc_zeros_phase(fx.schedule, fx.n, fx.N, beta);
      for (const cd& z : eig.zeros)
        CHECK(std::abs(std::abs(z) - 1.0) <= 1e-12);
      CHECK(matched_distance(eig, phase) <= 1e-8);
    }
  }
  SUBCASE("conjugation-symmetric schedules give conjugate-paired zeros") {
    SplitMix64 rng(0x5EEDULL);
    std::vector<cd> alphas(12);
    for (cd& a : alphas) a = cd(rng.uniform(-0.8, 0.8), 0.0);  // real
    Schedule s = Schedule::table({{1, alphas}});
    ZeroSet zs = popuc_zeros_phase(s, 12, 1, cd(1.0));
    // The set must equal its own conjugate.
    for (const cd& z : zs.zeros) {
      double best = 1e9;
      for (const cd& w : zs.zeros)
        best = std::min(best, std::abs(std::conj(z) - w));
      CHECK(best < 1e-9);
    }
  }
}

TEST_CASE("Aberth-Ehrlich OPUC zeros") {
  SUBCASE("quadratic oracle: alpha = (0.5, 0.5)") {
    // Phi_2 = z^2 - 0.25 z - 0.5, roots from the quadratic formula.
    Schedule s = Schedule::table({{1, {cd(0.5), cd(0.5)}}});
    ZeroSet zs = opuc_zeros(s, 2, 1);
    double disc = 0.0625 + 2.0;
    cd r1 = cd(0.125 + 0.5 * std::sqrt(disc));
    cd r2 = cd(0.125 - 0.5 * std::sqrt(disc));
    double d1 = std::min(std::abs(zs.zeros[0] - r1), std::abs(zs.zeros[0] - r2));
    double d2 = std::min(std::abs(zs.zeros[1] - r1), std::abs(zs.zeros[1] - r2));
    CHECK(d1 < 1e-12);
    CHECK(d2 < 1e-12);
  }
  SUBCASE("free case clusters at the origin with the flag set") {
    ZeroSet zs = opuc_zeros(Schedule::constant(cd(0.0)), 12, 1);
    CHECK(zs.clustered);
    for (const cd& z : zs.zeros) CHECK(std::abs(z) < 1e-3);
  }
  SUBCASE("Rogers-Szego zeros all sit on the circle of radius gamma") {
    const double gamma = 0.5;
    const std::size_t n = 50;
    std::vector<cd> alphas(n);
    for (std::size_t k = 0; k < n; ++k)
      alphas[k] = cd((k % 2 == 0 ? 1.0 : -1.0) *
                     std::pow(gamma, static_cast<double>(k + 1)));
    Schedule s = Schedule::table({{1, alphas}});
    ZeroSet zs = opuc_zeros(s, n, 1);
    for (const cd& z : zs.zeros)
      CHECK(std::abs(z) == doctest::Approx(gamma).epsilon(1e-8));
  }
  SUBCASE("Vieta product identity") {
    Schedule s = seeded_random_schedule(99, 30, 0.8);
    ZeroSet zs = opuc_zeros(s, 30, 1);
    cd prod(1.0);
    for (const cd& z : zs.zeros) prod *= -z;
    cd phi0 = -std::conj(s.coefficient(29, 1));
    CHECK(std::abs(prod - phi0) <= 1e-8 * std::abs(phi0));
    for (const cd& z : zs.zeros) CHECK(std::abs(z) < 1.0);
  }
}

TEST_CASE("OPUC eigenvalue route") {
  SUBCASE("matches Aberth where the coefficient vector is tame") {
    Schedule s = seeded_random_schedule(4242, 30, 0.7);
    ZeroSet aberth = opuc_zeros(s, 30, 1);
    ZeroSet eig = opuc_zeros_eig(s, 30, 1);
    CHECK(matched_distance(aberth, eig) <= 1e-9);
  }
  SUBCASE("keeps the Vieta product exact on a Rogers-Szego ramp") {
    // At this scale the monic coefficients span ~40 orders of magnitude
    // and the coefficient-based iteration starts losing roots; the CMV
    // eigenvalue route works from O(1) entries.
    Schedule s =
        Schedule::sampled(SampledExpression::exponential(cd(0.5)), 1.0);
    ZeroSet zs = opuc_zeros_eig(s, 120, 120);
    cd prod(1.0);
    for (const cd& z : zs.zeros) {
      prod *= -z;
      // True zeros are strictly inside; eigensolver rounding may push a
      // near-circle zero out by O(1e-7).
      CHECK(std::abs(z) < 1.0 + 1e-6);
    }
    CHECK(std::abs(std::abs(prod) - 0.5) < 1e-10);
  }
}

TEST_CASE("empirical POPUC moments equal trace moments") {
  const std::size_t n = 40;
  cd beta = std::polar(1.0, 2.0);
  Schedule s = seeded_random_schedule(31337, n);
  ZeroSet zs = popuc_zeros_phase(s, n, 1, beta);
  EmpiricalMeasure emp{zs.zeros};
  std::vector<cd> zm = moments(emp, 12);

  std::vector<cd> interior(n - 1);
  for (std::size_t k = 0; k + 1 < n; ++k) interior[k] = s.coefficient(k, 1);
  CmvMatrix C = CmvMatrix::build_cutoff(interior, beta);
  std::vector<cd> tm = trace_power_moments(C, 12);
  for (std::size_t k = 0; k <= 12; ++k)
    CHECK(std::abs(zm[k] - tm[k]) <= 1e-8);
}

TEST_CASE("circle proximity profile") {
  SUBCASE("POPUC zero sets give zero for every delta") {
    ZeroSet zs =
        popuc_zeros_phase(Schedule::constant(cd(0.3)), 30, 1, cd(1.0));
    for (double frac : circle_proximity_profile(zs, {0.01, 0.1, 0.5}))
      CHECK(frac == 0.0);
  }
  SUBCASE("free-case OPUC gives one for every delta < 1") {
    ZeroSet zs = opuc_zeros(Schedule::constant(cd(0.0)), 10, 1);
    for (double frac : circle_proximity_profile(zs, {0.01, 0.5, 0.9}))
      CHECK(frac == 1.0);
  }
}
