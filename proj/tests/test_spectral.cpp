#include "doctest.h"
#include "opuc/errors.hpp"
#include "opuc/spectral.hpp"

#include <cmath>

using namespace opuc;

namespace {

// Random point at distance >= margin from the arc/spectrum of modulus a.
cd off_arc_point(SplitMix64& rng, double a, double margin = 0.05) {
  ArcGeometry g = ArcGeometry::for_modulus(a);
  for (int tries = 0; tries < 1000; ++tries) {
    cd z = std::polar(rng.uniform(0.02, 3.0), rng.uniform(0.0, two_pi));
    if (g.distance(z) >= margin) return z;
  }
  return cd(0.0);
}

}  // namespace

TEST_CASE("sqrt_branch normalization and special cases") {
  SUBCASE("value 1 at the origin for every a") {
    for (double a : {0.0, 0.1, 0.5, 1.0 / std::sqrt(2.0), 0.9, 1.0})
      CHECK(std::abs(sqrt_branch(cd(0.0), a).value - cd(1.0)) < 1e-14);
  }
  SUBCASE("a = 1 is z + 1 with no cut") {
    CHECK(std::abs(sqrt_branch(cd(3.0), 1.0).value - cd(4.0)) < 1e-15);
    CHECK(std::abs(sqrt_branch(cd(-2.0, 1.0), 1.0).value - cd(-1.0, 1.0)) <
          1e-15);
  }
  SUBCASE("a = 0 splits inside/outside") {
    CHECK(std::abs(sqrt_branch(cd(0.5), 0.0).value - cd(0.5)) < 1e-15);
    CHECK(std::abs(sqrt_branch(cd(2.0), 0.0).value - cd(1.0)) < 1e-15);
  }
  SUBCASE("a = 0.5, z = 2: square is 3, sign from the real-axis walk") {
    BranchValue v = sqrt_branch(cd(2.0), 0.5);
    CHECK(std::abs(v.value * v.value - cd(3.0)) < 1e-13);
    CHECK(v.value.real() == doctest::Approx(std::sqrt(3.0)).epsilon(1e-13));
    CHECK_FALSE(v.on_cut);
  }
  SUBCASE("square always reproduces (z-1)^2 + 4 a^2 z") {
    SplitMix64 rng(0x5EEDULL);
    for (int t = 0; t < 500; ++t) {
      double a = rng.uniform(0.01, 0.999);
      cd z = std::polar(rng.uniform(0.02, 3.0), rng.uniform(0.0, two_pi));
      cd v = sqrt_branch(z, a).value;
      cd expect = (z - 1.0) * (z - 1.0) + 4.0 * a * a * z;
      CHECK(std::abs(v * v - expect) <= 1e-12 * std::max(1.0, std::abs(expect)));
    }
  }
  SUBCASE("analytic off the arc: no jump across the chord line") {
    // The chord Re z = cos(theta_a) inside the disk is not a cut.
    for (double a : {0.3, 0.5, 1.0 / std::sqrt(2.0), 0.9}) {
      double m = std::cos(2.0 * std::asin(a));
      for (double y : {0.05, -0.3, 0.5}) {
        cd left(m - 1e-9, y), right(m + 1e-9, y);
        if (std::abs(left) >= 0.995) continue;
        CHECK(std::abs(sqrt_branch(left, a).value -
                       sqrt_branch(right, a).value) < 1e-6);
      }
    }
  }
  SUBCASE("jump across the arc, inside-limit on the cut") {
    double a = 0.5;
    cd on = std::polar(1.0, pi);  // -1, interior of the arc
    BranchValue v = sqrt_branch(on, a);
    CHECK(v.on_cut);
    cd inside = sqrt_branch(std::polar(1.0 - 1e-9, pi), a).value;
    cd outside = sqrt_branch(std::polar(1.0 + 1e-9, pi), a).value;
    CHECK(std::abs(v.value - inside) < 1e-6);
    CHECK(std::abs(v.value + outside) < 1e-6);  // opposite side flips sign
  }
  SUBCASE("real symmetry S(conj z) = conj(S(z))") {
    SplitMix64 rng(0x5EEDULL);
    for (int t = 0; t < 200; ++t) {
      double a = rng.uniform(0.05, 0.95);
      cd z = off_arc_point(rng, a);
      cd v1 = sqrt_branch(z, a).value;
      cd v2 = sqrt_branch(std::conj(z), a).value;
      CHECK(std::abs(v1 - std::conj(v2)) < 1e-12);
    }
  }
}

TEST_CASE("G_a fundamental identities") {
  SUBCASE("special values") {
    CHECK(std::abs(g_a(cd(0.0), 0.37) - cd(1.0)) < 1e-14);
    CHECK(std::abs(g_a(cd(0.5), 0.0) - cd(1.0)) < 1e-15);
    CHECK(std::abs(g_a(cd(2.0, 1.0), 0.0) - cd(2.0, 1.0)) < 1e-15);
    CHECK(std::abs(g_a(cd(1.5, -2.0), 1.0) - cd(2.5, -2.0)) < 1e-15);
  }
  SUBCASE("(z - G)(1 - G) = a^2 z at 1000 seeded points") {
    SplitMix64 rng(0x5EEDULL);
    for (int t = 0; t < 1000; ++t) {
      double a = rng.uniform(1e-3, 1.0);
      cd z = off_arc_point(rng, a);
      cd G = g_a(z, a);
      cd lhs = (z - G) * (1.0 - G);
      cd rhs = a * a * z;
      CHECK(std::abs(lhs - rhs) <= 1e-12 * std::max(1.0, std::abs(rhs)));
    }
  }
  SUBCASE("conj(G_a(1/conj z)) = G_a(z)/z for 0 < a <= 1") {
    SplitMix64 rng(0x5EEDULL);
    for (int t = 0; t < 500; ++t) {
      double a = rng.uniform(1e-3, 1.0);
      cd z = off_arc_point(rng, a);
      if (std::abs(z) < 0.02) continue;
      cd lhs = std::conj(g_a(1.0 / std::conj(z), a));
      cd rhs = g_a(z, a) / z;
      CHECK(std::abs(lhs - rhs) <= 1e-11 * std::max(1.0, std::abs(rhs)));
    }
  }
}

TEST_CASE("Geronimus function triple") {
  SUBCASE("free case branches") {
    GeronimusTriple g = geronimus_functions(cd(0.0), cd(0.5));
    CHECK(g.F == cd(1.0));
    CHECK(g.m == cd(0.0));
    CHECK(g.f == cd(0.0));
    GeronimusTriple h = geronimus_functions(cd(0.0), cd(2.0));
    CHECK(h.F == cd(-1.0));
    CHECK(std::abs(h.m - cd(0.5)) < 1e-15);
    CHECK(h.f_infinite);
  }
  SUBCASE("unimodular coefficient") {
    cd alpha = std::polar(1.0, 0.4);
    GeronimusTriple g = geronimus_functions(alpha, cd(2.0));
    CHECK(std::abs(g.m - 1.0 / (2.0 - std::conj(alpha))) < 1e-14);
    CHECK(std::abs(g.f - alpha) < 1e-15);
  }
  SUBCASE("m-function relations at alpha = 0.5, z = 0.3") {
    GeronimusTriple g = geronimus_functions(cd(0.5), cd(0.3));
    CHECK(std::abs(g.F - (1.0 - 2.0 * cd(0.3) * g.m)) < 1e-12);
    CHECK(std::abs(g.f - g.m / (cd(0.3) * g.m - 1.0)) < 1e-12);
  }
  SUBCASE("Lemma web at 1000 seeded off-spectrum points") {
    SplitMix64 rng(0x5EEDULL);
    int checked = 0;
    while (checked < 1000) {
      cd alpha = rng.disk(0.97);
      if (std::abs(alpha) < 1e-3) continue;
      ArcGeometry geom = ArcGeometry::for_coefficient(alpha);
      cd z = std::polar(rng.uniform(0.05, 3.0), rng.uniform(0.0, two_pi));
      if (geom.distance(z) < 0.05) continue;
      if (std::abs(std::abs(z) - 1.0) < 0.02) continue;
      ++checked;
      GeronimusTriple g = geronimus_functions(alpha, z);
      GeronimusTriple gi = geronimus_functions(alpha, 1.0 / std::conj(z));
      // F = 1 - 2 z m
      CHECK(std::abs(g.F - (1.0 - 2.0 * z * g.m)) <=
            1e-10 * std::max(1.0, std::abs(g.F)));
      // conj(m(1/conj z)) = z (1 - z m)
      CHECK(std::abs(std::conj(gi.m) - z * (1.0 - z * g.m)) <=
            1e-10 * std::max(1.0, std::abs(z)));
      // f = m / (z m - 1)
      CHECK(std::abs(g.f - g.m / (z * g.m - 1.0)) <=
            1e-10 * std::max(1.0, std::abs(g.f)));
      // conj(f(1/conj z)) = 1 / f
      if (std::abs(g.f) > 1e-8 && !gi.f_infinite) {
        CHECK(std::abs(std::conj(gi.f) - 1.0 / g.f) <=
              1e-9 * std::max(1.0, 1.0 / std::abs(g.f)));
      }
    }
  }
  SUBCASE("m does not vanish outside the closed disk") {
    SplitMix64 rng(0x5EEDULL);
    for (int t = 0; t < 300; ++t) {
      cd alpha = rng.disk(0.95);
      ArcGeometry geom = ArcGeometry::for_coefficient(alpha);
      cd z = std::polar(rng.uniform(1.01, 10.0), rng.uniform(0.0, two_pi));
      if (geom.distance(z) < 0.01) continue;
      CHECK(std::abs(geronimus_functions(alpha, z).m) > 0.0);
    }
  }
  SUBCASE("on-spectrum errors") {
    CHECK_THROWS_AS(geronimus_functions(cd(0.5), std::polar(1.0, pi)),
                    OnSpectrumError);
    CHECK_THROWS_AS(geronimus_functions(cd(0.0), std::polar(1.0, 1.0)),
                    OnSpectrumError);
  }
}

TEST_CASE("transfer matrix") {
  SUBCASE("alpha = 0 is diag(z, 1)") {
    auto A = transfer_matrix(cd(0.0), cd(1.5, 0.5));
    CHECK(A[0] == cd(1.5, 0.5));
    CHECK(A[1] == cd(0.0));
    CHECK(A[2] == cd(0.0));
    CHECK(A[3] == cd(1.0));
  }
  SUBCASE("det A(alpha, z) = z") {
    SplitMix64 rng(0x5EEDULL);
    for (int t = 0; t < 100; ++t) {
      cd alpha = rng.disk(0.99);
      cd z = std::polar(rng.uniform(0.1, 3.0), rng.uniform(0.0, two_pi));
      auto A = transfer_matrix(alpha, z);
      cd det = A[0] * A[3] - A[1] * A[2];
      CHECK(std::abs(det - z) <= 1e-12 * std::abs(z));
    }
  }
  SUBCASE("direct substitution alpha = 0.5, z = 1") {
    auto A = transfer_matrix(cd(0.5), cd(1.0));
    double s = 1.0 / std::sqrt(0.75);
    CHECK(std::abs(A[0] - cd(s)) < 1e-15);
    CHECK(std::abs(A[1] + 0.5 * s) < 1e-15);
    CHECK(std::abs(A[2] + 0.5 * s) < 1e-15);
    CHECK(std::abs(A[3] - cd(s)) < 1e-15);
  }
  SUBCASE("domain error") {
    CHECK_THROWS_AS(transfer_matrix(cd(1.0), cd(1.0)), DomainError);
  }
}

TEST_CASE("discriminant") {
  SUBCASE("constant alpha doubled: Delta = (z + 1/z + 2|a|^2)/(1 - |a|^2)") {
    SplitMix64 rng(0x5EEDULL);
    for (int t = 0; t < 50; ++t) {
      cd alpha = rng.disk(0.9);
      Discriminant d({alpha, alpha});
      cd z = std::polar(rng.uniform(0.2, 2.5), rng.uniform(0.0, two_pi));
      cd expect =
          (z + 1.0 / z + 2.0 * std::norm(alpha)) / (1.0 - std::norm(alpha));
      CHECK(std::abs(d(z) - expect) <= 1e-12 * std::max(1.0, std::abs(expect)));
    }
  }
  SUBCASE("free case value") {
    Discriminant d({cd(0.0), cd(0.0)});
    CHECK(std::abs(d(cd(1.0)) - cd(2.0)) < 1e-15);
  }
  SUBCASE("real on the unit circle") {
    Discriminant d({cd(0.5), cd(0.0, 0.6)});
    for (int i = 0; i < 200; ++i) {
      double theta = two_pi * i / 200.0;
      CHECK(std::abs(d(std::polar(1.0, theta)).imag()) < 1e-12);
    }
  }
  SUBCASE("odd periods are doubled") {
    Discriminant d({cd(0.3)});
    CHECK(d.period() == 2);
    CHECK(d.original_period() == 1);
  }
  SUBCASE("z^{p/2} Delta(z) -> rho-product inverse at 0") {
    Discriminant d({cd(0.4, 0.1), cd(-0.2, 0.3)});
    double target = d.limit_scale_at_zero();
    // The correction is O(z): error shrinks linearly along the sequence.
    for (double r : {1e-3, 1e-5, 1e-7}) {
      cd z(r, 0.5 * r);
      cd val = std::pow(z, 1.0) * d(z);
      CHECK(std::abs(val - target) <= 10.0 * r * target);
    }
    cd z(1e-8, 0.0);
    CHECK(std::abs(z * d(z) - target) <= 1e-7 * target);
  }
  SUBCASE("derivative matches central finite differences") {
    Discriminant d({cd(0.3, -0.2), cd(0.1, 0.5)});
    SplitMix64 rng(0x5EEDULL);
    for (int t = 0; t < 40; ++t) {
      cd z = std::polar(rng.uniform(0.4, 2.0), rng.uniform(0.0, two_pi));
      const double h = 1e-6;
      cd fd = (d(z + h) - d(z - h)) / (2.0 * h);
      CHECK(std::abs(d.derivative(z) - fd) <=
            1e-6 * std::max(1.0, std::abs(fd)));
    }
  }
  SUBCASE("theta derivative is the tangential derivative on the circle") {
    Discriminant d({cd(0.3, -0.2), cd(0.1, 0.5)});
    for (double theta : {0.3, 1.2, 2.9, 4.4}) {
      const double h = 1e-6;
      double fd = (d(std::polar(1.0, theta + h)).real() -
                   d(std::polar(1.0, theta - h)).real()) /
                  (2.0 * h);
      CHECK(d.theta_derivative(theta) == doctest::Approx(fd).epsilon(1e-5));
    }
  }
  SUBCASE("z = 0 rejected") {
    Discriminant d({cd(0.3), cd(0.3)});
    CHECK_THROWS_AS(d(cd(0.0)), DomainError);
  }
}

TEST_CASE("band sets") {
  SUBCASE("constant 0.5 doubled gives the arc [pi/3, 5pi/3]") {
    Discriminant d({cd(0.5), cd(0.5)});
    BandSet b = band_set(d);
    REQUIRE(b.bands.size() == 1);
    CHECK(b.bands[0].lo == doctest::Approx(pi / 3.0).epsilon(1e-9));
    CHECK(b.bands[0].hi == doctest::Approx(5.0 * pi / 3.0).epsilon(1e-9));
  }
  SUBCASE("p = 2 equal real coefficients: theta+ = 2 asin a, theta- = pi") {
    double a = 0.35;
    Discriminant d({cd(a), cd(a)});
    BandSet b = band_set(d);
    REQUIRE(b.bands.size() == 1);
    CHECK(b.bands[0].lo == doctest::Approx(2.0 * std::asin(a)).epsilon(1e-9));
  }
  SUBCASE("p = 2 fixture (0.3, 0.6i) matches the arccos closed form") {
    cd a0(0.3), a1(0.0, 0.6);
    Discriminant d({a0, a1});
    BandSet b = band_set(d);
    double r = std::sqrt((1.0 - std::norm(a0)) * (1.0 - std::norm(a1)));
    double shift = (a0 * std::conj(a1)).real();
    double tp = std::acos(r - shift);
    double tm = std::acos(-r - shift);
    REQUIRE(b.bands.size() == 2);
    CHECK(std::abs(b.bands[0].lo - tp) < 1e-10);
    CHECK(std::abs(b.bands[0].hi - tm) < 1e-10);
    CHECK(std::abs(b.bands[1].lo - (two_pi - tm)) < 1e-10);
    CHECK(std::abs(b.bands[1].hi - (two_pi - tp)) < 1e-10);
  }
  SUBCASE("free case covers the whole circle") {
    Discriminant d({cd(0.0), cd(0.0)});
    BandSet b = band_set(d);
    REQUIRE(b.bands.size() == 1);
    CHECK(b.bands[0].lo == 0.0);
    CHECK(b.bands[0].hi == two_pi);
  }
}

TEST_CASE("G_Delta") {
  SUBCASE("value 1 at the origin") {
    Discriminant d({cd(0.3), cd(0.0, 0.6)});
    CHECK(g_delta(d, cd(0.0)) == cd(1.0));
    CHECK(std::abs(g_delta(d, cd(1e-9, 1e-9)) - cd(1.0)) < 1e-6);
  }
  SUBCASE("free case doubled at z = 3 gives 9") {
    Discriminant d({cd(0.0), cd(0.0)});
    CHECK(std::abs(g_delta(d, cd(3.0)) - cd(9.0)) < 1e-12);
  }
  SUBCASE("constant alpha doubled equals G_a^2 off the arc") {
    SplitMix64 rng(0x5EEDULL);
    int checked = 0;
    while (checked < 100) {
      cd alpha = rng.disk(0.9);
      double a = std::abs(alpha);
      Discriminant d({alpha, alpha});
      cd z = off_arc_point(rng, a, 0.08);
      if (std::abs(z) < 0.05) continue;
      ++checked;
      cd lhs = g_delta(d, z);
      cd g = g_a(z, a);
      CHECK(std::abs(lhs - g * g) <= 1e-10 * std::max(1.0, std::abs(g * g)));
    }
  }
  SUBCASE("on-band evaluation raises") {
    Discriminant d({cd(0.5), cd(0.5)});
    CHECK_THROWS_AS(g_delta(d, std::polar(1.0, pi)), OnSpectrumError);
  }
}

TEST_CASE("periodic Schur fixed point") {
  SUBCASE("constant sequence reproduces the Geronimus Schur function") {
    SplitMix64 rng(0x5EEDULL);
    int checked = 0;
    while (checked < 100) {
      cd alpha = rng.disk(0.9);
      if (std::abs(alpha) < 1e-3) continue;
      cd z = rng.disk(0.95);
      ArcGeometry geom = ArcGeometry::for_coefficient(alpha);
      if (geom.distance(z) < 0.05) continue;
      ++checked;
      cd fp = periodic_schur({alpha, alpha}, 0, z);
      cd direct = geronimus_functions(alpha, z).f;
      CHECK(std::abs(fp - direct) <= 1e-10 * std::max(1.0, std::abs(direct)));
    }
  }
  SUBCASE("all-zero sequence gives f = 0") {
    CHECK(periodic_schur({cd(0.0), cd(0.0)}, 0, cd(0.3, 0.2)) == cd(0.0));
  }
  SUBCASE("f(0) equals the first coefficient of the stripped sequence") {
    std::vector<cd> alphas{cd(0.2, 0.1), cd(-0.4), cd(0.1, -0.5), cd(0.3)};
    for (std::size_t j = 0; j < alphas.size(); ++j) {
      cd f0 = periodic_schur(alphas, j, cd(0.0));
      CHECK(std::abs(f0 - alphas[j]) < 1e-14);
    }
  }
  SUBCASE("periodic m matches Geronimus m inside and outside") {
    SplitMix64 rng(0x5EEDULL);
    int checked = 0;
    while (checked < 100) {
      cd alpha = rng.disk(0.85);
      if (std::abs(alpha) < 1e-3) continue;
      cd z = std::polar(rng.uniform(0.1, 3.0), rng.uniform(0.0, two_pi));
      if (std::abs(std::abs(z) - 1.0) < 0.05) continue;
      ArcGeometry geom = ArcGeometry::for_coefficient(alpha);
      if (geom.distance(z) < 0.05) continue;
      ++checked;
      cd fp = periodic_m({alpha, alpha}, 0, z);
      cd direct = geronimus_functions(alpha, z).m;
      CHECK(std::abs(fp - direct) <= 1e-9 * std::max(1.0, std::abs(direct)));
    }
  }
}
