#include "opuc/cmv.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "opuc/errors.hpp"

namespace opuc {

namespace {

// alpha_{-1} = -1 closes the entry pattern at the top-left corner; indices
// beyond the cut are never stored (their entries fall outside the corner).
cd alpha_at(const std::vector<cd>& a, long j) {
  if (j < 0) return cd(-1.0, 0.0);
  if (static_cast<std::size_t>(j) >= a.size()) return cd(0.0);
  return a[static_cast<std::size_t>(j)];
}

double rho_at(const std::vector<cd>& a, long j) {
  if (j < 0) return 0.0;
  if (static_cast<std::size_t>(j) >= a.size()) return 0.0;
  return rho_of(a[static_cast<std::size_t>(j)]);
}

}  // namespace

CmvMatrix CmvMatrix::build_cutoff(const std::vector<cd>& interior,
                                  cd terminator) {
  const std::size_t n = interior.size() + 1;
  for (const cd& a : interior)
    if (std::abs(a) >= 1.0)
      throw DomainError("build_cutoff: interior coefficients need |alpha| < 1");
  if (std::abs(terminator) > 1.0 + 1e-15)
    throw DomainError("build_cutoff: |terminator| <= 1 required");

  std::vector<cd> a(interior);
  a.push_back(terminator);

  std::vector<cd> data(n * n, cd(0.0));
  auto set = [&](long i, long j, cd v) {
    if (i < 0 || j < 0) return;
    if (static_cast<std::size_t>(i) >= n || static_cast<std::size_t>(j) >= n)
      return;
    data[static_cast<std::size_t>(i) * n + static_cast<std::size_t>(j)] = v;
  };

  // Rows come in pairs; the even row of the pair carries conj(alpha) factors,
  // the odd row carries rho factors, following the displayed band pattern.
  for (long m = 0; 2 * m < static_cast<long>(n); ++m) {
    const long r = 2 * m;
    set(r, r - 1, std::conj(alpha_at(a, r)) * rho_at(a, r - 1));
    set(r, r, -std::conj(alpha_at(a, r)) * alpha_at(a, r - 1));
    set(r, r + 1, std::conj(alpha_at(a, r + 1)) * rho_at(a, r));
    set(r, r + 2, rho_at(a, r + 1) * rho_at(a, r));
  }
  for (long m = 0; 2 * m + 1 < static_cast<long>(n); ++m) {
    const long r = 2 * m + 1;
    set(r, r - 2, rho_at(a, r - 1) * rho_at(a, r - 2));
    set(r, r - 1, -rho_at(a, r - 1) * alpha_at(a, r - 2));
    set(r, r, -std::conj(alpha_at(a, r)) * alpha_at(a, r - 1));
    set(r, r + 1, -rho_at(a, r) * alpha_at(a, r - 1));
  }

  return CmvMatrix(n, std::move(data), std::move(a));
}

double CmvMatrix::unitarity_defect() const {
  double worst = 0.0;
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = 0; j < n_; ++j) {
      cd acc(0.0);
      for (std::size_t k = 0; k < n_; ++k)
        acc += std::conj((*this)(k, i)) * (*this)(k, j);
      if (i == j) acc -= 1.0;
      worst = std::max(worst, std::abs(acc));
    }
  }
  return worst;
}

std::string CmvMatrix::to_csv() const {
  std::ostringstream os;
  os.precision(17);
  os << "row,col,re,im\n";
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) {
      cd v = (*this)(i, j);
      if (v != cd(0.0)) {
        os << i << "," << j << "," << v.real() << "," << v.imag() << "\n";
      }
    }
  return os.str();
}

MonicPolynomial charpoly(const CmvMatrix& matrix) {
  const std::size_t n = matrix.order();
  if (n > kCharpolyMaxOrder)
    throw SizeError("charpoly: order exceeds the determinant-oracle budget");

  // Faddeev-LeVerrier: N_1 = A, a_1 = -tr N_1, N_k = A(N_{k-1} + a_{k-1} I),
  // a_k = -tr(N_k)/k; then det(zI - A) = z^n + a_1 z^{n-1} + ... + a_n.
  const std::vector<cd>& A = matrix.data();
  std::vector<cd> Nk(A);
  std::vector<cd> coeffs(n + 1, cd(0.0));
  coeffs[n] = cd(1.0);
  cd ak(0.0);
  for (std::size_t k = 1; k <= n; ++k) {
    if (k > 1) {
      std::vector<cd> shifted(Nk);
      for (std::size_t i = 0; i < n; ++i) shifted[i * n + i] += ak;
      std::vector<cd> next(n * n, cd(0.0));
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t l = 0; l < n; ++l) {
          cd ail = A[i * n + l];
          if (ail == cd(0.0)) continue;
          for (std::size_t j = 0; j < n; ++j)
            next[i * n + j] += ail * shifted[l * n + j];
        }
      Nk.swap(next);
    }
    cd tr(0.0);
    for (std::size_t i = 0; i < n; ++i) tr += Nk[i * n + i];
    ak = -tr / static_cast<double>(k);
    coeffs[n - k] = ak;
  }
  return MonicPolynomial{std::move(coeffs)};
}

double reflect_deviation(const std::vector<cd>& interior, cd beta,
                         std::size_t n) {
  if (n < 1) throw DomainError("reflect: n >= 1 required");
  if (std::abs(std::abs(beta) - 1.0) > 1e-14)
    throw DomainError("reflect: |beta| = 1 required");
  if (interior.size() + 1 != n)
    throw DomainError("reflect: need n-1 interior coefficients");

  CmvMatrix lhs_m = CmvMatrix::build_cutoff(interior, beta);
  std::vector<cd> reversed(interior.size());
  for (std::size_t k = 0; k < interior.size(); ++k)
    reversed[k] = -std::conj(interior[interior.size() - 1 - k]) * beta;
  CmvMatrix rhs_m = CmvMatrix::build_cutoff(reversed, beta);

  const bool odd = (n % 2 == 1);
  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      // (Q C Q)(i,j) = C(n-1-i, n-1-j)
      cd lhs = lhs_m(n - 1 - i, n - 1 - j);
      // P_n(beta) = diag(1, beta, 1, beta, ...)
      cd pi = (i % 2 == 0) ? cd(1.0) : beta;
      cd pj = (j % 2 == 0) ? cd(1.0) : beta;
      cd rhs = odd ? pi * rhs_m(j, i) * std::conj(pj)
                   : std::conj(pi) * rhs_m(i, j) * pj;
      worst = std::max(worst, std::abs(lhs - rhs));
    }
  }
  return worst;
}

std::vector<cd> trace_power_moments(const CmvMatrix& matrix,
                                    std::size_t k_max) {
  const std::size_t n = matrix.order();
  const long ln = static_cast<long>(n);
  std::vector<cd> moments;
  moments.reserve(k_max + 1);
  moments.push_back(cd(1.0));  // m_0 = Tr(I)/n

  // B = C^k kept dense but multiplied only inside the growing band.
  std::vector<cd> B(matrix.data());
  long band = 2;
  for (std::size_t k = 1; k <= k_max; ++k) {
    if (k > 1) {
      long new_band = std::min<long>(band + 2, ln);
      std::vector<cd> next(n * n, cd(0.0));
      for (long i = 0; i < ln; ++i) {
        const long lmin = std::max<long>(0, i - 2);
        const long lmax = std::min<long>(ln - 1, i + 2);
        for (long l = lmin; l <= lmax; ++l) {
          cd cil = matrix(static_cast<std::size_t>(i),
                          static_cast<std::size_t>(l));
          if (cil == cd(0.0)) continue;
          const long jmin = std::max<long>(0, l - band);
          const long jmax = std::min<long>(ln - 1, l + band);
          for (long j = jmin; j <= jmax; ++j)
            next[static_cast<std::size_t>(i) * n + static_cast<std::size_t>(j)] +=
                cil * B[static_cast<std::size_t>(l) * n +
                        static_cast<std::size_t>(j)];
        }
      }
      B.swap(next);
      band = new_band;
    }
    cd tr(0.0);
    for (std::size_t i = 0; i < n; ++i) tr += B[i * n + i];
    moments.push_back(tr / static_cast<double>(n));
  }
  return moments;
}

std::vector<cd> cmv_from_lm_factorization(const std::vector<cd>& interior,
                                          cd terminator) {
  const std::size_t n = interior.size() + 1;
  std::vector<cd> a(interior);
  a.push_back(terminator);

  auto theta_block = [&](std::vector<cd>& mat, std::size_t j) {
    // Theta_j = [[conj(a_j), rho_j], [rho_j, -a_j]] on coordinates (j, j+1);
    // when j+1 falls outside the corner only the (j, j) entry survives.
    double r = rho_of(a[j]);
    mat[j * n + j] = std::conj(a[j]);
    if (j + 1 < n) {
      mat[j * n + j + 1] = r;
      mat[(j + 1) * n + j] = r;
      mat[(j + 1) * n + j + 1] = -a[j];
    }
  };

  std::vector<cd> L(n * n, cd(0.0)), M(n * n, cd(0.0));
  for (std::size_t j = 0; j < n; j += 2) theta_block(L, j);
  M[0] = cd(1.0);
  for (std::size_t j = 1; j < n; j += 2) theta_block(M, j);

  std::vector<cd> C(n * n, cd(0.0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t l = 0; l < n; ++l) {
      cd v = L[i * n + l];
      if (v == cd(0.0)) continue;
      for (std::size_t j = 0; j < n; ++j) C[i * n + j] += v * M[l * n + j];
    }
  return C;
}

}  // namespace opuc
