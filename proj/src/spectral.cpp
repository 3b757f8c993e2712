#include "opuc/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "opuc/errors.hpp"

namespace opuc {

// ---------------------------------------------------------------------------
// ArcGeometry

ArcGeometry ArcGeometry::for_modulus(double a) {
  if (a < 0.0 || a > 1.0)
    throw DomainError("ArcGeometry: a in [0, 1] required");
  ArcGeometry g;
  g.a = a;
  g.theta_a = 2.0 * std::asin(a);
  g.arc = Arc{g.theta_a, two_pi - g.theta_a};
  return g;
}

ArcGeometry ArcGeometry::for_coefficient(cd alpha) {
  ArcGeometry g = for_modulus(std::abs(alpha));
  if (std::abs(alpha + 0.5) > 0.5) {
    g.has_mass_point = true;
    g.mass_point = (1.0 + std::conj(alpha)) / (1.0 + alpha);
  }
  return g;
}

double ArcGeometry::distance(cd z) const {
  double d;
  if (a >= 1.0) {
    d = std::abs(z + 1.0);
  } else {
    double theta = wrap_angle(std::arg(z));
    if (arc.contains(theta)) {
      d = std::abs(std::abs(z) - 1.0);
    } else {
      d = std::min(std::abs(z - std::polar(1.0, arc.lo)),
                   std::abs(z - std::polar(1.0, arc.hi)));
    }
  }
  if (has_mass_point) d = std::min(d, std::abs(z - mass_point));
  return d;
}

// ---------------------------------------------------------------------------
// sqrt_branch and G_a

BranchValue sqrt_branch(cd z, double a) {
  if (a < 0.0 || a > 1.0) throw DomainError("sqrt_branch: a in [0, 1]");
  BranchValue out;
  if (a == 1.0) {
    out.value = z + 1.0;
    return out;
  }
  if (a < 1e-150) {
    // Cut along the whole circle: 1 - z inside, z - 1 outside, the inside
    // limit on the circle itself.  Sub-denormal arc widths would overflow
    // the chord coordinates and land here too.
    double r = std::abs(z);
    out.on_cut = (r == 1.0);
    out.value = (r <= 1.0) ? (1.0 - z) : (z - 1.0);
    return out;
  }

  const double theta_a = 2.0 * std::asin(a);
  const double m = std::cos(theta_a);       // chord midpoint (real)
  const double s = std::sin(theta_a);
  const cd h(0.0, s);                       // half-chord vector

  // Chord-cut branch: h * sqrt(zeta - 1) * sqrt(zeta + 1) with principal
  // roots has its only cut on the straight segment between the branch
  // points and behaves like z at infinity.
  const cd zeta = (z - m) / h;
  const cd chord = h * std::sqrt(zeta - 1.0) * std::sqrt(zeta + 1.0);

  // Flipping the sign on the lens {|z| <= 1, Re z <= cos(theta_a)} moves
  // the cut from the chord onto the arc; the boundary inequalities match
  // the principal-root convention on the chord itself and pick the
  // inside-of-disk limit on the arc.
  const double r = std::abs(z);
  const bool lens = (r <= 1.0 && z.real() <= m);
  cd value = lens ? -chord : chord;
  out.on_cut = (r == 1.0 && z.real() <= m);

  // Normalize the overall sign so value(0) = 1; tau depends only on a.
  const cd zeta0 = cd(-m, 0.0) / h;
  const cd chord0 = h * std::sqrt(zeta0 - 1.0) * std::sqrt(zeta0 + 1.0);
  const bool lens0 = (0.0 <= 1.0 && 0.0 <= m);
  const cd at_zero = lens0 ? -chord0 : chord0;
  if (at_zero.real() < 0.0) value = -value;

  out.value = value;
  return out;
}

cd g_a(cd z, double a) { return 0.5 * (z + 1.0 + sqrt_branch(z, a).value); }

// ---------------------------------------------------------------------------
// Geronimus functions

GeronimusTriple geronimus_functions(cd alpha, cd z) {
  const double a = std::abs(alpha);
  if (a > 1.0) throw DomainError("geronimus_functions: |alpha| <= 1");
  GeronimusTriple out;

  if (a == 0.0) {
    double r = std::abs(z);
    if (r == 1.0)
      throw OnSpectrumError("geronimus_functions: z on the unit circle");
    if (r < 1.0) {
      out.F = cd(1.0);
      out.m = cd(0.0);
      out.f = cd(0.0);
    } else {
      out.F = cd(-1.0);
      out.m = 1.0 / z;
      out.f_infinite = true;
    }
    return out;
  }

  if (a == 1.0) {
    cd mass = std::conj(alpha);
    if (std::abs(z - mass) < 1e-12)
      throw OnSpectrumError("geronimus_functions: z at the Dirac mass");
    out.F = (std::conj(alpha) + z) / (std::conj(alpha) - z);
    out.m = 1.0 / (z - std::conj(alpha));
    out.f = alpha;
    return out;
  }

  ArcGeometry geom = ArcGeometry::for_coefficient(alpha);
  if (geom.distance(z) < 1e-12)
    throw OnSpectrumError("geronimus_functions: z on the spectrum");

  const cd G = g_a(z, a);
  out.F = 1.0 + 2.0 * (G + alpha * z - 1.0) /
                    (1.0 + std::conj(alpha) - (1.0 + alpha) * z);
  if (z == cd(0.0)) {
    // Limits at the origin: m(0) = -(a^2 + alpha)/(1 + conj(alpha)),
    // f(0) = alpha (the first Schur parameter).
    out.m = -(a * a + alpha) / (1.0 + std::conj(alpha));
    out.f = alpha;
  } else {
    out.m = (G + alpha * z - 1.0) /
            (z * ((1.0 + alpha) * z - (1.0 + std::conj(alpha))));
    out.f = (G - 1.0) / (std::conj(alpha) * z);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Discriminant

std::array<cd, 4> transfer_matrix(cd alpha, cd z) {
  double a2 = std::norm(alpha);
  if (a2 >= 1.0) throw DomainError("transfer_matrix: |alpha| < 1 required");
  double inv_rho = 1.0 / std::sqrt(1.0 - a2);
  return {inv_rho * z, -inv_rho * std::conj(alpha), -inv_rho * alpha * z,
          inv_rho * cd(1.0)};
}

namespace {

std::array<cd, 4> mat_mul(const std::array<cd, 4>& x,
                          const std::array<cd, 4>& y) {
  return {x[0] * y[0] + x[1] * y[2], x[0] * y[1] + x[1] * y[3],
          x[2] * y[0] + x[3] * y[2], x[2] * y[1] + x[3] * y[3]};
}

}  // namespace

Discriminant::Discriminant(std::vector<cd> alphas) : alphas_(std::move(alphas)) {
  if (alphas_.empty()) throw DomainError("Discriminant: empty period");
  for (const cd& a : alphas_)
    if (std::abs(a) >= 1.0)
      throw DomainError("Discriminant: |alpha_j| < 1 required");
  original_period_ = alphas_.size();
  if (alphas_.size() % 2 == 1) {
    // Any p-periodic sequence is also 2p-periodic; doubling keeps z^{p/2}
    // an integer power.
    std::vector<cd> doubled(alphas_);
    doubled.insert(doubled.end(), alphas_.begin(), alphas_.end());
    alphas_ = std::move(doubled);
  }
  rho_product_ = 1.0;
  for (const cd& a : alphas_) rho_product_ *= rho_of(a);
}

cd Discriminant::operator()(cd z) const {
  if (z == cd(0.0))
    throw DomainError(
        "Discriminant: z = 0 is a separate limit query (limit_scale_at_zero)");
  std::array<cd, 4> prod = transfer_matrix(alphas_[0], z);
  for (std::size_t j = 1; j < alphas_.size(); ++j)
    prod = mat_mul(transfer_matrix(alphas_[j], z), prod);
  cd trace = prod[0] + prod[3];
  const std::size_t half = alphas_.size() / 2;
  return trace * std::pow(z, -static_cast<double>(half));
}

cd Discriminant::derivative(cd z) const {
  if (z == cd(0.0)) throw DomainError("Discriminant: derivative at z = 0");
  const std::size_t p = alphas_.size();
  // d/dz A(alpha, z) = (1/rho) [[1, 0], [-alpha, 0]]
  std::vector<std::array<cd, 4>> mats(p);
  std::vector<std::array<cd, 4>> dmats(p);
  for (std::size_t j = 0; j < p; ++j) {
    mats[j] = transfer_matrix(alphas_[j], z);
    double inv_rho = 1.0 / rho_of(alphas_[j]);
    dmats[j] = {cd(inv_rho), cd(0.0), -inv_rho * alphas_[j], cd(0.0)};
  }
  // Factor k (from the left) of A_{p-1} ... A_0 is mats[p-1-k];
  // prefix[k] = factors 0..k-1, suffix[k] = factors k..p-1, so replacing
  // factor k by its derivative is prefix[k] * dmats[p-1-k] * suffix[k+1].
  std::vector<std::array<cd, 4>> suffix(p + 1), prefix(p + 1);
  suffix[p] = prefix[0] = {cd(1.0), cd(0.0), cd(0.0), cd(1.0)};
  for (std::size_t j = 0; j < p; ++j)
    prefix[j + 1] = mat_mul(prefix[j], mats[p - 1 - j]);
  for (std::size_t j = p; j-- > 0;)
    suffix[j] = mat_mul(mats[p - 1 - j], suffix[j + 1]);
  cd dtrace(0.0);
  for (std::size_t k = 0; k < p; ++k) {
    std::array<cd, 4> term =
        mat_mul(prefix[k], mat_mul(dmats[p - 1 - k], suffix[k + 1]));
    dtrace += term[0] + term[3];
  }
  std::array<cd, 4> full = prefix[p];
  cd trace = full[0] + full[3];
  const double half = static_cast<double>(p) / 2.0;
  return std::pow(z, -half) * dtrace - half * std::pow(z, -half - 1.0) * trace;
}

double Discriminant::theta_derivative(double theta) const {
  cd z = std::polar(1.0, theta);
  cd d = derivative(z) * cd(0.0, 1.0) * z;
  return d.real();
}

// ---------------------------------------------------------------------------
// Band set

bool BandSet::contains(double theta) const {
  double t = wrap_angle(theta);
  for (const Arc& b : bands)
    if (b.contains(t) || b.contains(t + two_pi)) return true;
  return false;
}

double BandSet::distance(cd z) const {
  double best = std::numeric_limits<double>::infinity();
  double theta = wrap_angle(std::arg(z));
  for (const Arc& b : bands) {
    if (b.contains(theta) || b.contains(theta + two_pi)) {
      best = std::min(best, std::abs(std::abs(z) - 1.0));
    } else {
      best = std::min({best, std::abs(z - std::polar(1.0, b.lo)),
                       std::abs(z - std::polar(1.0, b.hi))});
    }
  }
  return best;
}

double BandSet::total_length() const {
  double acc = 0.0;
  for (const Arc& b : bands) acc += b.length();
  return acc;
}

BandSet band_set(const Discriminant& d) {
  const int grid = 20000;  // resolution pi / 10^4
  const double step = two_pi / grid;
  auto delta_at = [&](double theta) { return d(std::polar(1.0, theta)).real(); };
  // Slack keeps interior touching points (closed gaps, |Delta| = 2) from
  // splitting a band through rounding.
  auto in_band = [&](double theta) {
    return std::abs(delta_at(theta)) <= 2.0 + 1e-11;
  };

  // Bisect the +-2 crossing between an in-band and an out-of-band angle.
  // The slack belongs to the scan only; the edge itself targets |Delta| = 2
  // exactly, otherwise every edge shifts by slack/|Delta'|.
  auto refine = [&](double t_in, double t_out) {
    for (int i = 0; i < 80; ++i) {
      double mid = 0.5 * (t_in + t_out);
      if (std::abs(delta_at(mid)) <= 2.0)
        t_in = mid;
      else
        t_out = mid;
      if (std::abs(t_out - t_in) < 1e-14) break;
    }
    return t_in;
  };

  std::vector<bool> inside(grid);
  for (int i = 0; i < grid; ++i) inside[i] = in_band(i * step);

  BandSet out;
  if (std::all_of(inside.begin(), inside.end(), [](bool b) { return b; })) {
    out.bands.push_back(Arc{0.0, two_pi});
    return out;
  }

  // Maximal circular runs of in-band samples; each run refines to one band.
  // Runs are tracked in an unwrapped frame anchored at the run head so the
  // lo/hi brackets are always contiguous.
  std::vector<bool> visited(grid, false);
  for (int k = 0; k < grid; ++k) {
    if (!inside[k] || visited[k]) continue;
    int prev = (k - 1 + grid) % grid;
    if (inside[prev]) continue;  // not a run head
    int len = 0;
    int i = k;
    while (inside[i] && len < grid) {
      visited[i] = true;
      i = (i + 1) % grid;
      ++len;
    }
    double head = k * step;
    double tail = head + (len - 1) * step;
    double lo = refine(head, head - step);
    double hi = refine(tail, tail + step);
    // Bands narrower than the grid cannot be detected; anything found here
    // has positive length by construction.
    out.bands.push_back(Arc{lo, hi});
  }

  // Normalize lo into [0, 2pi); hi may exceed 2pi for a band through 0.
  for (Arc& b : out.bands) {
    if (b.lo < 0.0) {
      b.lo += two_pi;
      b.hi += two_pi;
    }
  }
  std::sort(out.bands.begin(), out.bands.end(),
            [](const Arc& x, const Arc& y) { return x.lo < y.lo; });

  // Gaps narrower than the grid are below resolution; when the gap
  // midpoint still sits at |Delta| <= 2 it is a touching point, merge.
  std::vector<Arc> merged;
  for (const Arc& b : out.bands) {
    if (!merged.empty()) {
      Arc& last = merged.back();
      double gap = b.lo - last.hi;
      if (gap < 2.0 * step &&
          std::abs(delta_at(0.5 * (last.hi + b.lo))) <= 2.0 + 1e-9) {
        last.hi = b.hi;
        continue;
      }
    }
    merged.push_back(b);
  }
  if (merged.size() >= 2) {
    double wrap_gap = merged.front().lo + two_pi - merged.back().hi;
    if (wrap_gap < 2.0 * step &&
        std::abs(delta_at(merged.back().hi + 0.5 * wrap_gap)) <= 2.0 + 1e-9) {
      merged.back().hi = merged.front().hi + two_pi;
      merged.erase(merged.begin());
    }
  }
  out.bands = std::move(merged);
  return out;
}

// ---------------------------------------------------------------------------
// G_Delta

cd g_delta(const Discriminant& d, cd z) {
  if (z == cd(0.0)) return cd(1.0);
  const cd delta = d(z);
  // On a band: z on the circle with Delta real in [-2, 2].
  if (std::abs(std::abs(z) - 1.0) <= 1e-9 &&
      std::abs(delta.imag()) <= 1e-6 && std::abs(delta.real()) <= 2.0 + 1e-9)
    throw OnSpectrumError("g_delta: z lies on a spectral band");
  const cd root = std::sqrt(delta * delta - 4.0);
  const cd plus = delta + root;
  const cd minus = delta - root;
  const double ap = std::abs(plus);
  const double am = std::abs(minus);
  if (std::abs(ap - am) <= 1e-9 * std::max(ap, am))
    throw OnSpectrumError("g_delta: z lies on a spectral band");
  const cd w = (ap > am) ? plus : minus;
  const double half = static_cast<double>(d.period()) / 2.0;
  return 0.5 * d.rho_product() * std::pow(z, half) * w;
}

// ---------------------------------------------------------------------------
// Periodic Schur / m functions

cd periodic_schur(const std::vector<cd>& alphas, std::size_t strip, cd z) {
  if (alphas.empty()) throw DomainError("periodic_schur: empty period");
  if (std::abs(z) >= 1.0)
    throw DomainError("periodic_schur: |z| < 1 required");
  const std::size_t p = alphas.size();

  // One period of Schur steps starting at index `strip`:
  // f^{(k)} = (alpha_k + z f^{(k+1)}) / (1 + conj(alpha_k) z f^{(k+1)}),
  // composed as Moebius coefficient matrices [[z, alpha], [conj(alpha) z, 1]].
  std::array<cd, 4> M{cd(1.0), cd(0.0), cd(0.0), cd(1.0)};
  for (std::size_t i = 0; i < p; ++i) {
    cd a = alphas[(strip + i) % p];
    if (std::abs(a) >= 1.0)
      throw DomainError("periodic_schur: |alpha_j| < 1 required");
    std::array<cd, 4> step{z, a, std::conj(a) * z, cd(1.0)};
    M = mat_mul(M, step);
  }

  // Fixed point of f = (M00 f + M01)/(M10 f + M11):
  // M10 f^2 + (M11 - M00) f - M01 = 0.
  const cd qa = M[2];
  const cd qb = M[3] - M[0];
  const cd qc = -M[1];
  const double scale = std::max({std::abs(qa), std::abs(qb), std::abs(qc)});
  if (scale == 0.0) return cd(0.0);
  if (std::abs(qa) <= 1e-14 * scale) {
    if (std::abs(qb) <= 1e-14 * scale)
      throw BranchSelectionError("periodic_schur: degenerate fixed point");
    return -qc / qb;
  }
  const cd disc = std::sqrt(qb * qb - 4.0 * qa * qc);
  // Cancellation-safe pairing: q = -(b + sign * sqrt)/2 with sign aligned.
  const cd q = (std::real(std::conj(qb) * disc) >= 0.0) ? -0.5 * (qb + disc)
                                                        : -0.5 * (qb - disc);
  cd r1 = q / qa;
  cd r2 = (std::abs(q) > 0.0) ? qc / q : (-qb / qa - r1);
  cd root = (std::abs(r1) <= std::abs(r2)) ? r1 : r2;
  if (std::abs(root) > 1.0 + 1e-9)
    throw BranchSelectionError(
        "periodic_schur: both fixed-point roots leave the closed disk");
  return root;
}

cd periodic_m(const std::vector<cd>& alphas, std::size_t strip, cd z) {
  const double r = std::abs(z);
  if (std::abs(r - 1.0) < 1e-12)
    throw DomainError("periodic_m: |z| = 1 not supported");
  if (r < 1.0) {
    cd f = periodic_schur(alphas, strip, z);
    // Inverted m -> f relation: m = f / (f z - 1).
    return f / (f * z - 1.0);
  }
  // Outside the disk: conj(m(1/conj(z))) = z (1 - z m(z)) with the roles of
  // the two points swapped gives m(z) = conj(u (1 - u m(u))), u = 1/conj(z).
  cd u = 1.0 / std::conj(z);
  cd mu = periodic_m(alphas, strip, u);
  return std::conj(u * (1.0 - u * mu));
}

}  // namespace opuc
