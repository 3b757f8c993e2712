#include "opuc/zeros.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "opuc/cmv.hpp"
#include "opuc/eig.hpp"
#include "opuc/errors.hpp"

namespace opuc {

std::string ZeroSet::to_csv() const {
  std::ostringstream os;
  os.precision(17);
  os << "re,im,modulus,arg,residual\n";
  for (const cd& z : zeros)
    os << z.real() << "," << z.imag() << "," << std::abs(z) << ","
       << std::arg(z) << "," << max_residual << "\n";
  return os.str();
}

// ---------------------------------------------------------------------------
// Phase method

namespace {

// Real-valued phase function of a self-inversive POPUC on the circle:
// Phi_n^{(beta)}(e^{i theta}) = +-|Phi| e^{i(phi + n theta)/2} with
// phi = arg(-conj(beta)), so the rotated value is real and changes sign
// exactly at the (simple) zeros.
class PhaseFunction {
 public:
  PhaseFunction(const Schedule& schedule, std::size_t n, std::size_t N,
                cd beta)
      : schedule_(schedule), n_(n), N_(N), beta_(beta),
        phi_(std::arg(-std::conj(beta))) {}

  double operator()(double theta) const {
    cd z = std::polar(1.0, theta);
    ScaledPairValue v = evaluate_popuc_at(schedule_, n_, N_, beta_, z);
    double half = 0.5 * (phi_ + static_cast<double>(n_) * theta);
    return (std::polar(1.0, -half) * v.phi).real();
  }

 private:
  const Schedule& schedule_;
  std::size_t n_, N_;
  cd beta_;
  double phi_;
};

}  // namespace

ZeroSet popuc_zeros_phase(const Schedule& schedule, std::size_t n,
                          std::size_t N, cd beta) {
  if (n < 1) throw DomainError("popuc_zeros_phase: n >= 1 required");
  PhaseFunction g(schedule, n, N, beta);

  std::size_t grid = 8 * n;
  const std::size_t cap = std::size_t(1) << 20;
  std::vector<double> roots;

  while (true) {
    roots.clear();
    const double step = two_pi / static_cast<double>(grid);
    // g(theta + 2pi) = (-1)^n g(theta); the wrap sample reuses g(0).
    double g0 = g(0.0);
    double prev = g0;
    double prev_theta = 0.0;
    for (std::size_t i = 1; i <= grid; ++i) {
      double theta = static_cast<double>(i) * step;
      double cur = (i == grid) ? ((n % 2 == 0) ? g0 : -g0) : g(theta);
      if (prev == 0.0) {
        roots.push_back(prev_theta);
      } else if (prev * cur < 0.0) {
        // Bisection then secant polish.
        double lo = prev_theta, hi = theta, flo = prev, fhi = cur;
        for (int it = 0; it < 40 && hi - lo > 1e-13; ++it) {
          double mid = 0.5 * (lo + hi);
          double fm = g(mid);
          if (fm == 0.0) {
            lo = hi = mid;
            break;
          }
          if ((flo < 0.0) != (fm < 0.0)) {
            hi = mid;
            fhi = fm;
          } else {
            lo = mid;
            flo = fm;
          }
        }
        double x0 = lo, x1 = hi, f0 = flo, f1 = fhi;
        for (int it = 0; it < 6 && x1 != x0 && f1 != f0; ++it) {
          double x2 = x1 - f1 * (x1 - x0) / (f1 - f0);
          if (!(x2 >= prev_theta && x2 <= theta)) break;
          x0 = x1;
          f0 = f1;
          x1 = x2;
          f1 = g(x1);
          if (f1 == 0.0) break;
        }
        roots.push_back(x1);
      }
      prev = cur;
      prev_theta = theta;
    }
    if (roots.size() >= n) break;
    if (grid * 2 > cap) {
      std::ostringstream os;
      os << "popuc_zeros_phase: found " << roots.size() << " of " << n
         << " sign changes at grid cap (clustered zeros)";
      throw ClusteringError(os.str());
    }
    grid *= 2;
  }

  ZeroSet out;
  out.method = "phase";
  out.zeros.reserve(n);
  double worst = 0.0;
  for (double theta : roots) {
    out.zeros.push_back(std::polar(1.0, wrap_angle(theta)));
    worst = std::max(worst, std::abs(g(theta)));
  }
  out.max_residual = worst;  // components are renormalized to O(1)
  return out;
}

// ---------------------------------------------------------------------------
// Eigenvalue method

ZeroSet popuc_zeros_eig(const Schedule& schedule, std::size_t n, std::size_t N,
                        cd beta) {
  if (n < 1) throw DomainError("popuc_zeros_eig: n >= 1 required");
  if (n > 2000) throw SizeError("popuc_zeros_eig: dense budget is n <= 2000");
  std::vector<cd> interior(n >= 1 ? n - 1 : 0);
  for (std::size_t k = 0; k + 1 < n; ++k)
    interior[k] = schedule.coefficient(k, N);
  CmvMatrix C = CmvMatrix::build_cutoff(interior, beta);
  ZeroSet out;
  out.method = "eig";
  out.zeros = dense_eigenvalues(C.data(), n);
  double worst = 0.0;
  for (const cd& z : out.zeros) {
    ScaledPairValue v = evaluate_popuc_at(schedule, n, N, beta, z);
    worst = std::max(worst, std::abs(v.phi));
  }
  out.max_residual = worst;
  return out;
}

// ---------------------------------------------------------------------------
// Aberth-Ehrlich

ZeroSet aberth_roots(const MonicPolynomial& poly, double radius_hint) {
  const std::size_t n = poly.degree();
  if (n < 1) throw DomainError("aberth_roots: degree >= 1 required");
  const std::vector<cd>& c = poly.coeffs;

  auto eval_both = [&](cd z, cd& p, cd& dp) {
    p = c[n];
    dp = cd(0.0);
    for (std::size_t k = n; k-- > 0;) {
      dp = dp * z + p;
      p = p * z + c[k];
    }
  };
  auto scale_at = [&](cd z) {
    double az = std::abs(z), acc = 0.0, pw = 1.0;
    for (std::size_t k = 0; k <= n; ++k) {
      acc += std::abs(c[k]) * pw;
      pw *= az;
    }
    return acc;
  };

  double r0 = radius_hint > 0.0 ? radius_hint : 1e-3;
  const double golden = 2.399963229728653;  // golden angle
  std::vector<cd> z(n);
  for (std::size_t k = 0; k < n; ++k)
    z[k] = std::polar(r0, (static_cast<double>(k) + 0.5) * golden);

  std::vector<bool> done(n, false);
  const int max_sweeps = 500;
  int sweep = 0;
  for (; sweep < max_sweeps; ++sweep) {
    double max_step = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      if (done[k]) continue;
      cd p, dp;
      eval_both(z[k], p, dp);
      if (std::abs(p) <= 1e-15 * scale_at(z[k])) {
        done[k] = true;
        continue;
      }
      cd newton = (dp != cd(0.0)) ? p / dp : cd(1e-12, 1e-12);
      cd s(0.0);
      for (std::size_t j = 0; j < n; ++j) {
        if (j == k) continue;
        cd diff = z[k] - z[j];
        if (diff == cd(0.0)) diff = cd(1e-14, 1e-14);
        s += 1.0 / diff;
      }
      cd denom = 1.0 - newton * s;
      cd w = (denom != cd(0.0)) ? newton / denom : newton;
      z[k] -= w;
      max_step = std::max(max_step, std::abs(w) / (1.0 + std::abs(z[k])));
    }
    if (max_step <= 1e-13) break;
  }

  // Newton polish.
  for (std::size_t k = 0; k < n; ++k) {
    for (int it = 0; it < 3; ++it) {
      cd p, dp;
      eval_both(z[k], p, dp);
      if (dp == cd(0.0)) break;
      cd step = p / dp;
      if (std::abs(step) > 0.1 * (1.0 + std::abs(z[k]))) break;
      z[k] -= step;
    }
  }

  ZeroSet out;
  out.method = "aberth";
  out.zeros = z;
  double worst = 0.0;
  std::vector<cd> converged;
  for (const cd& zk : z) {
    cd p, dp;
    eval_both(zk, p, dp);
    double rel = std::abs(p) / std::max(scale_at(zk), 1e-300);
    worst = std::max(worst, rel);
    if (rel <= 1e-10) converged.push_back(zk);
  }
  out.max_residual = worst;
  if (sweep >= max_sweeps && worst > 1e-8)
    throw PartialResultError("aberth_roots: no convergence after 500 sweeps",
                             std::move(converged));

  // Clustered-root flag: any pair closer than 1e-6 with a weak derivative.
  for (std::size_t i = 0; i < n && !out.clustered; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (std::abs(z[i] - z[j]) < 1e-6) {
        out.clustered = true;
        break;
      }
  return out;
}

ZeroSet opuc_zeros(const Schedule& schedule, std::size_t n, std::size_t N) {
  if (n < 1) throw DomainError("opuc_zeros: n >= 1 required");
  MonicPolynomial poly = opuc_polynomial(schedule, n, N);
  double a_last = std::abs(schedule.coefficient(n - 1, N));
  double hint =
      a_last > 0.0
          ? std::pow(a_last, 1.0 / static_cast<double>(n))
          : 1e-3;
  return aberth_roots(poly, hint);
}

ZeroSet opuc_zeros_eig(const Schedule& schedule, std::size_t n,
                       std::size_t N) {
  if (n < 1) throw DomainError("opuc_zeros_eig: n >= 1 required");
  if (n > 2000) throw SizeError("opuc_zeros_eig: dense budget is n <= 2000");
  std::vector<cd> interior(n - 1);
  for (std::size_t k = 0; k + 1 < n; ++k)
    interior[k] = schedule.coefficient(k, N);
  CmvMatrix C = CmvMatrix::build_cutoff(interior,
                                        schedule.coefficient(n - 1, N));
  ZeroSet out;
  out.method = "eig";
  out.zeros = dense_eigenvalues(C.data(), n);
  // Residual via the stabilized recurrence, relative to the pair scale.
  double worst = 0.0;
  for (const cd& z : out.zeros) {
    ScaledPairValue v = evaluate_pair_at(schedule, n, N, z);
    worst = std::max(worst, std::abs(v.phi));
  }
  out.max_residual = worst;
  return out;
}

// ---------------------------------------------------------------------------
// Diagnostics

std::vector<double> circle_proximity_profile(
    const ZeroSet& zs, const std::vector<double>& deltas) {
  std::vector<double> out;
  out.reserve(deltas.size());
  const double n = static_cast<double>(zs.size());
  for (double delta : deltas) {
    std::size_t count = 0;
    for (const cd& z : zs.zeros)
      if (std::abs(z) <= 1.0 - delta) ++count;
    out.push_back(static_cast<double>(count) / n);
  }
  return out;
}

double matched_distance(const ZeroSet& a, const ZeroSet& b) {
  if (a.size() != b.size())
    throw DomainError("matched_distance: set sizes differ");
  // Symmetric Hausdorff distance: with simple zeros separated far beyond
  // the method error this certifies a one-to-one matching.
  auto one_sided = [](const std::vector<cd>& from, const std::vector<cd>& to) {
    double worst = 0.0;
    for (const cd& z : from) {
      double best = std::numeric_limits<double>::infinity();
      for (const cd& w : to) best = std::min(best, std::abs(z - w));
      worst = std::max(worst, best);
    }
    return worst;
  };
  return std::max(one_sided(a.zeros, b.zeros), one_sided(b.zeros, a.zeros));
}

}  // namespace opuc
