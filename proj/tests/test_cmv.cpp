#include "doctest.h"
#include "opuc/cmv.hpp"
#include "opuc/errors.hpp"
#include "opuc/szego.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

using namespace opuc;

namespace {

// Test-only determinant oracle: det(z - C) sampled at n+1 points via
// Gaussian elimination, interpolated back to coefficients.  Independent of
// both Faddeev-LeVerrier and the Szego recurrence.
cd det_of(std::vector<cd> m, std::size_t n) {
  cd det(1.0);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::abs(m[r * n + col]) > std::abs(m[piv * n + col])) piv = r;
    if (m[piv * n + col] == cd(0.0)) return cd(0.0);
    if (piv != col) {
      for (std::size_t c = 0; c < n; ++c)
        std::swap(m[piv * n + c], m[col * n + c]);
      det = -det;
    }
    det *= m[col * n + col];
    for (std::size_t r = col + 1; r < n; ++r) {
      cd f = m[r * n + col] / m[col * n + col];
      for (std::size_t c = col; c < n; ++c) m[r * n + c] -= f * m[col * n + c];
    }
  }
  return det;
}

std::vector<cd> charpoly_by_interpolation(const CmvMatrix& C) {
  const std::size_t n = C.order();
  const std::size_t pts = n + 1;
  // Sample on a circle of radius 2 to keep the Vandermonde well conditioned.
  std::vector<cd> xs(pts), ys(pts);
  for (std::size_t i = 0; i < pts; ++i) {
    xs[i] = std::polar(2.0, two_pi * static_cast<double>(i) /
                                static_cast<double>(pts));
    std::vector<cd> m(C.data());
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) {
        m[r * n + c] = -m[r * n + c];
        if (r == c) m[r * n + c] += xs[i];
      }
    ys[i] = det_of(std::move(m), n);
  }
  // Newton divided differences, then expand to monomial coefficients.
  std::vector<cd> dd(ys);
  for (std::size_t j = 1; j < pts; ++j)
    for (std::size_t i = pts - 1; i >= j; --i)
      dd[i] = (dd[i] - dd[i - 1]) / (xs[i] - xs[i - j]);
  std::vector<cd> coeffs(pts, cd(0.0));
  std::vector<cd> basis{cd(1.0)};
  coeffs[0] = dd[0];
  for (std::size_t j = 1; j < pts; ++j) {
    // basis *= (x - xs[j-1])
    basis.insert(basis.begin(), cd(0.0));
    for (std::size_t k = 0; k + 1 < basis.size(); ++k)
      basis[k] -= xs[j - 1] * basis[k + 1];
    for (std::size_t k = 0; k < basis.size(); ++k)
      coeffs[k] += dd[j] * basis[k];
  }
  return coeffs;
}

std::vector<cd> random_interior(SplitMix64& rng, std::size_t count,
                                double radius = 0.9) {
  std::vector<cd> v(count);
  for (cd& a : v) a = rng.disk(radius);
  return v;
}

}  // namespace

TEST_CASE("small cut-off matrices match the displayed pattern") {
  SUBCASE("n = 1 is (conj(beta))") {
    CmvMatrix C = CmvMatrix::build_cutoff({}, cd(0.0, 1.0));
    CHECK(std::abs(C(0, 0) - cd(0.0, -1.0)) < 1e-16);
  }
  SUBCASE("n = 2 top-left block") {
    cd a0(0.3, 0.1), a1(-0.2, 0.5);
    double rho0 = std::sqrt(1.0 - std::norm(a0));
    CmvMatrix C = CmvMatrix::build_cutoff({a0}, a1);
    CHECK(std::abs(C(0, 0) - std::conj(a0)) < 1e-15);
    CHECK(std::abs(C(0, 1) - std::conj(a1) * rho0) < 1e-15);
    CHECK(std::abs(C(1, 0) - rho0) < 1e-15);
    CHECK(std::abs(C(1, 1) + std::conj(a1) * a0) < 1e-15);
  }
}

TEST_CASE("entry pattern equals the LM factorization") {
  SplitMix64 rng(0x5EEDULL);
  for (std::size_t n : {1u, 2u, 3u, 4u, 5u, 8u, 9u, 12u}) {
    std::vector<cd> interior = random_interior(rng, n - 1);
    cd term = rng.circle();
    CmvMatrix C = CmvMatrix::build_cutoff(interior, term);
    std::vector<cd> lm = cmv_from_lm_factorization(interior, term);
    double worst = 0.0;
    for (std::size_t i = 0; i < n * n; ++i)
      worst = std::max(worst, std::abs(C.data()[i] - lm[i]));
    CHECK(worst < 1e-14);
  }
}

TEST_CASE("band structure: entries vanish off |i - j| <= 2") {
  SplitMix64 rng(0x5EEDULL);
  CmvMatrix C = CmvMatrix::build_cutoff(random_interior(rng, 9), cd(1.0));
  for (std::size_t i = 0; i < 10; ++i)
    for (std::size_t j = 0; j < 10; ++j)
      if (i > j + 2 || j > i + 2) CHECK(C(i, j) == cd(0.0));
}

TEST_CASE("beta-terminated matrices are unitary") {
  SplitMix64 rng(0x5EEDULL);
  for (std::size_t n : {2u, 5u, 17u, 40u}) {
    CmvMatrix C =
        CmvMatrix::build_cutoff(random_interior(rng, n - 1), rng.circle());
    CHECK(C.unitarity_defect() <= 1e-12);
  }
  // Interior terminator is not unitary.
  CmvMatrix C = CmvMatrix::build_cutoff(random_interior(rng, 4), cd(0.3));
  CHECK(C.unitarity_defect() > 1e-3);
}

TEST_CASE("charpoly equals the Szego recurrence and the determinant oracle") {
  SplitMix64 rng(0x5EEDULL);
  SUBCASE("free case with terminator 1 gives z^n - 1") {
    CmvMatrix C =
        CmvMatrix::build_cutoff({cd(0.0), cd(0.0), cd(0.0)}, cd(1.0));
    MonicPolynomial p = charpoly(C);
    std::vector<cd> interp = charpoly_by_interpolation(C);
    REQUIRE(p.coeffs.size() == 5);
    CHECK(std::abs(p.coeffs[0] + 1.0) < 1e-12);
    for (std::size_t k = 1; k < 4; ++k) CHECK(std::abs(p.coeffs[k]) < 1e-12);
    CHECK(std::abs(p.coeffs[4] - 1.0) < 1e-12);
    for (std::size_t k = 0; k < 5; ++k)
      CHECK(std::abs(interp[k] - p.coeffs[k]) < 1e-10);
  }
  SUBCASE("random schedules, n <= 12, all three routes agree") {
    for (int trial = 0; trial < 30; ++trial) {
      std::size_t n = 1 + rng.next() % 12;
      std::vector<cd> interior = random_interior(rng, n - 1);
      cd term = rng.disk(0.98);
      CmvMatrix C = CmvMatrix::build_cutoff(interior, term);
      MonicPolynomial fl = charpoly(C);

      std::vector<cd> all(interior);
      all.push_back(term);
      std::vector<std::pair<std::size_t, std::vector<cd>>> rows{{1, all}};
      MonicPolynomial rec = opuc_polynomial(Schedule::table(std::move(rows)), n, 1);

      std::vector<cd> interp = charpoly_by_interpolation(C);
      double scale = 0.0;
      for (const cd& c : rec.coeffs) scale = std::max(scale, std::abs(c));
      for (std::size_t k = 0; k <= n; ++k) {
        CHECK(std::abs(fl.coeffs[k] - rec.coeffs[k]) <= 1e-10 * scale);
        CHECK(std::abs(interp[k] - rec.coeffs[k]) <= 1e-9 * scale);
      }
    }
  }
  SUBCASE("size guard") {
    std::vector<cd> big(kCharpolyMaxOrder, cd(0.1));
    CmvMatrix C = CmvMatrix::build_cutoff(big, cd(1.0));
    CHECK_THROWS_AS(charpoly(C), SizeError);
  }
}

TEST_CASE("reflection identity holds for both parities") {
  SplitMix64 rng(0x5EEDULL);
  SUBCASE("n = 1 trivial case") {
    CHECK(reflect_deviation({}, cd(0.0, 1.0), 1) < 1e-15);
  }
  SUBCASE("fixed fixtures") {
    CHECK(reflect_deviation({cd(0.2), cd(0.0, 0.4)}, cd(1.0), 3) <= 1e-12);
    CHECK(reflect_deviation(
              {cd(0.1, 0.2), cd(-0.3), cd(0.2, -0.4)},
              std::polar(1.0, pi / 3.0), 4) <= 1e-12);
  }
  SUBCASE("random draws n = 1..10") {
    for (std::size_t n = 1; n <= 10; ++n) {
      for (int trial = 0; trial < 20; ++trial) {
        std::vector<cd> interior = random_interior(rng, n - 1);
        CHECK(reflect_deviation(interior, rng.circle(), n) <= 1e-12);
      }
    }
  }
}

TEST_CASE("trace power moments") {
  SUBCASE("m_0 = 1 always") {
    SplitMix64 rng(0x5EEDULL);
    CmvMatrix C =
        CmvMatrix::build_cutoff(random_interior(rng, 7), rng.circle());
    CHECK(trace_power_moments(C, 0)[0] == cd(1.0));
  }
  SUBCASE("free case n = 6, terminator 1: sixth roots of unity") {
    CmvMatrix C = CmvMatrix::build_cutoff(std::vector<cd>(5, cd(0.0)),
                                          cd(1.0));
    std::vector<cd> m = trace_power_moments(C, 6);
    for (std::size_t k = 1; k <= 5; ++k) CHECK(std::abs(m[k]) < 1e-13);
    CHECK(std::abs(m[6] - cd(1.0)) < 1e-13);
  }
  SUBCASE("moments match eigenvalue power sums on a small matrix") {
    // Free case with terminator beta: charpoly z^4 - conj(beta), so the
    // eigenvalues are the fourth roots of conj(beta).
    cd term = std::polar(1.0, 0.7);
    CmvMatrix C = CmvMatrix::build_cutoff(std::vector<cd>(3, cd(0.0)), term);
    std::vector<cd> m = trace_power_moments(C, 8);
    for (std::size_t k = 0; k <= 8; ++k) {
      cd expect = (k % 4 == 0)
                      ? std::pow(std::conj(term),
                                 cd(static_cast<double>(k) / 4.0))
                      : cd(0.0);
      CHECK(std::abs(m[k] - expect) < 1e-12);
    }
  }
}

TEST_CASE("matrix CSV export omits zero entries") {
  CmvMatrix C = CmvMatrix::build_cutoff({cd(0.0)}, cd(0.5));
  std::string csv = C.to_csv();
  CHECK(csv.rfind("row,col,re,im\n", 0) == 0);
  // n = 2 free-interior matrix: [[0, 0.5], [1, 0]]; two nonzero entries.
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 3);
  CHECK(csv.find("1,0,1,") != std::string::npos);
}
