#include "opuc/measures.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "opuc/errors.hpp"
#include "opuc/quadrature.hpp"
#include "opuc/specfun.hpp"

namespace opuc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Breakpoints of a curve clipped into [0, 2pi]: arc endpoints, singular
// angles, atom positions.  Quadrature runs between consecutive breakpoints
// so endpoint singularities stay at interval ends.
std::vector<double> curve_breakpoints(const DensityCurve& curve) {
  std::vector<double> pts{0.0, two_pi};
  auto push = [&](double t) {
    t = wrap_angle(t);
    pts.push_back(t);
    if (t == 0.0) pts.push_back(two_pi);
  };
  for (const Arc& a : curve.support) {
    push(a.lo);
    push(a.hi);
    if (a.hi > two_pi) {
      pts.push_back(two_pi);
      pts.push_back(0.0);
    }
  }
  for (double s : curve.singularities) push(s);
  for (const PointMass& pm : curve.atoms) push(pm.theta);
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end(),
                        [](double x, double y) { return std::abs(x - y) < 1e-13; }),
            pts.end());
  return pts;
}

// Integral of weight(theta) * density over one breakpoint segment, routed
// through the endpoint-resolved density when the curve provides one.
QuadratureResult integrate_density_segment(
    const std::function<double(double)>& density,
    const std::function<double(double, double)>& density_rel, double lo,
    double hi, double tol, const std::function<double(double)>& weight = {}) {
  if (density_rel) {
    return tanh_sinh_sided(
        [&](double u, double offset, int side) {
          double v = side == 0 ? density_rel(lo, offset)
                               : density_rel(hi, -offset);
          return weight ? v * weight(u) : v;
        },
        lo, hi, tol);
  }
  return tanh_sinh(
      [&](double u) {
        double v = density(u);
        return weight ? v * weight(u) : v;
      },
      lo, hi, tol);
}

}  // namespace

bool DensityCurve::in_support(double theta) const {
  double t = wrap_angle(theta);
  for (const Arc& a : support)
    if (a.contains(t) || a.contains(t + two_pi)) return true;
  return false;
}

double DensityCurve::total_mass(double tol) const {
  double acc = 0.0;
  for (const PointMass& pm : atoms) acc += pm.weight;
  if (!density) return acc;
  std::vector<double> pts = curve_breakpoints(*this);
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    double mid = 0.5 * (pts[i] + pts[i + 1]);
    if (!in_support(mid)) continue;
    acc += integrate_density_segment(density, density_rel, pts[i], pts[i + 1],
                                     tol)
               .value;
  }
  return acc;
}

// ---------------------------------------------------------------------------
// nu_a

DensityCurve nu_a(double a) {
  if (a < 0.0 || a > 1.0) throw DomainError("nu_a: a in [0, 1] required");
  DensityCurve curve;
  if (a == 1.0) {
    curve.atoms.push_back(PointMass{pi, 1.0});
    curve.density = [](double) { return 0.0; };
    return curve;
  }
  const double theta_a = 2.0 * std::asin(a);
  Arc arc{theta_a, two_pi - theta_a};
  curve.support.push_back(arc);
  if (a > 0.0) {
    curve.singularities = {arc.lo, arc.hi};
  }
  // cos^2(theta_a/2) - cos^2(theta/2) = sin^2(theta/2) - a^2; the second
  // form stays exact near theta = 0 where the first one cancels.
  curve.density = [arc, a](double theta) {
    double t = wrap_angle(theta);
    if (!arc.contains(t)) return 0.0;
    double sh = std::sin(0.5 * t);
    double rad = (sh - a) * (sh + a);
    if (rad <= 0.0) return kInf;
    return sh / (two_pi * std::sqrt(rad));
  };
  // Edge-resolved form: sin^2(theta/2) - a^2 factors into
  // sin((theta - lo)/2) sin((hi - theta)/2) with exact edge distances.
  const double lo = arc.lo, hi = arc.hi;
  curve.density_rel = [lo, hi](double anchor, double offset) {
    double d_lo = (anchor - lo) + offset;
    double d_hi = (anchor - hi) + offset;
    if (d_lo <= 0.0 || d_hi >= 0.0) return 0.0;
    double theta = anchor + offset;
    double rad = std::sin(0.5 * d_lo) * std::sin(-0.5 * d_hi);
    if (rad <= 0.0) return kInf;
    return std::sin(0.5 * theta) / (two_pi * std::sqrt(rad));
  };
  return curve;
}

// ---------------------------------------------------------------------------
// nu_delta

DensityCurve nu_delta(const Discriminant& d) {
  BandSet bands = band_set(d);
  DensityCurve curve;
  curve.support = bands.bands;
  const double p = static_cast<double>(d.period());

  for (const Arc& b : curve.support) {
    if (b.lo == 0.0 && b.hi == two_pi) continue;  // full circle: no edges
    curve.singularities.push_back(wrap_angle(b.lo));
    curve.singularities.push_back(wrap_angle(b.hi));
  }
  // Interior touching points |Delta| = 2 (closed gaps) are removable 0/0
  // spots; mark them so quadrature splits there, and record the finite
  // limit value sqrt(|Delta''|/2) / (pi p) for the edge-resolved density.
  std::vector<std::pair<double, double>> touch_values;
  const int grid = 20000;
  for (int i = 0; i < grid; ++i) {
    double theta = i * (two_pi / grid);
    if (!bands.contains(theta)) continue;
    cd delta = d(std::polar(1.0, theta));
    if (std::abs(std::abs(delta.real()) - 2.0) < 1e-9) {
      curve.singularities.push_back(theta);
      const double h = 1e-4;
      double second = (d(std::polar(1.0, theta + h)).real() -
                       2.0 * delta.real() +
                       d(std::polar(1.0, theta - h)).real()) /
                      (h * h);
      touch_values.push_back(
          {theta, std::sqrt(0.5 * std::abs(second)) / (pi * p)});
    }
  }

  Discriminant disc = d;  // owned copy for the closure
  BandSet owned_bands = bands;
  curve.density = [disc, owned_bands, p, touch_values](double theta) {
    double t = wrap_angle(theta);
    if (!owned_bands.contains(t)) return 0.0;
    double delta = disc(std::polar(1.0, t)).real();
    double rad = (2.0 - delta) * (2.0 + delta);  // 4 - Delta^2, cancel-free
    // Near a touching point the 0/0 form is removable; use its limit.
    if (rad < 1e-10) {
      for (const auto& [angle, value] : touch_values)
        if (std::abs(t - angle) < 1e-5) return value;
    }
    if (rad <= 0.0) return kInf;
    double dprime = disc.theta_derivative(t);
    return std::abs(dprime) / (pi * p * std::sqrt(rad));
  };

  // Quadratic model of 4 - Delta^2 at each band edge (slope and curvature
  // of the radicand along the in-band direction) lets the edge
  // neighborhoods resolve distances far below one ulp of theta.
  struct EdgeModel {
    double angle;
    double inward;  // +1 when the band lies at larger theta
    double slope;
    double curve2;
  };
  std::vector<EdgeModel> edge_models;
  for (const Arc& b : curve.support) {
    if (b.lo == 0.0 && b.hi == two_pi) continue;
    for (int side = 0; side < 2; ++side) {
      double e = side == 0 ? b.lo : b.hi;
      double inward = side == 0 ? 1.0 : -1.0;
      auto rad_at = [&](double d) {
        double delta = disc(std::polar(1.0, e + inward * d)).real();
        return (2.0 - delta) * (2.0 + delta);
      };
      const double h = 1e-7;
      double r1 = rad_at(h), r2 = rad_at(2.0 * h);
      double A = (4.0 * r1 - r2) / (2.0 * h);
      double B = (r2 - 2.0 * r1) / (2.0 * h * h);
      if (!(A > 0.0)) {
        A = std::max(r1 / h, 0.0);
        B = 0.0;
      }
      edge_models.push_back({wrap_angle(e), inward, A, B});
    }
  }
  auto base_density = curve.density;
  curve.density_rel = [base_density, disc, owned_bands, p, edge_models,
                       touch_values](double anchor, double offset) {
    if (std::abs(offset) >= 2e-7) return base_density(anchor + offset);
    double anchor_w = wrap_angle(anchor);
    for (const EdgeModel& m : edge_models) {
      if (std::abs(anchor_w - m.angle) > 1e-11 || m.slope <= 1e-8) continue;
      if (offset * m.inward <= 0.0) return 0.0;  // outside the band
      double t = wrap_angle(anchor + offset);
      double d = std::abs(offset);
      double rad = d * (m.slope + m.curve2 * d);
      if (rad <= 0.0) return 0.0;
      double dprime = disc.theta_derivative(t);
      return std::abs(dprime) / (pi * p * std::sqrt(rad));
    }
    for (const auto& [angle, value] : touch_values)
      if (std::abs(anchor_w - angle) <= 1e-11) return value;
    return base_density(anchor + offset);
  };
  return curve;
}

// ---------------------------------------------------------------------------
// sigma_t

namespace {

// Partition [0, t] at the zeros of a continuous switch function g; returns
// sorted cut points including the ends.  `seeds` inserts extra scan points
// (extrema of the profile) so that sign windows far narrower than the
// uniform grid are still caught.
std::vector<double> level_crossings(const std::function<double(double)>& g,
                                    double t,
                                    const std::vector<double>& seeds = {}) {
  const int grid = 2048;
  std::vector<double> samples;
  samples.reserve(grid + 1 + seeds.size());
  for (int i = 0; i <= grid; ++i) samples.push_back(t * i / grid);
  for (double s : seeds)
    if (s > 0.0 && s < t) samples.push_back(s);
  std::sort(samples.begin(), samples.end());
  samples.erase(std::unique(samples.begin(), samples.end()), samples.end());

  std::vector<double> cuts{0.0, t};
  double prev = g(samples.front());
  for (std::size_t i = 1; i < samples.size(); ++i) {
    double cur = g(samples[i]);
    if ((prev < 0.0 && cur >= 0.0) || (prev >= 0.0 && cur < 0.0)) {
      double lo = samples[i - 1], hi = samples[i];
      for (int it = 0; it < 80; ++it) {
        double mid = 0.5 * (lo + hi);
        if ((g(lo) < 0.0) == (g(mid) < 0.0))
          lo = mid;
        else
          hi = mid;
        if (hi - lo < 1e-14 * t) break;
      }
      cuts.push_back(0.5 * (lo + hi));
    }
    prev = cur;
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  return cuts;
}

double sigma_density_scalar(const LimitFunction& limit, double theta,
                            double tol,
                            const std::vector<double>& seeds = {}) {
  const double t = limit.t();
  const double c = std::sin(0.5 * wrap_angle(theta));
  if (c <= 0.0) return 0.0;
  auto gap = [&](double s) { return c - limit.modulus(s); };
  auto rad_direct = [&](double s) {
    double m = limit.modulus(s);
    return (c - m) * (c + m);
  };
  std::vector<double> cuts = level_crossings(gap, t, seeds);

  // Integral of c / sqrt(rad) over [a, b] where the radicand vanishes
  // linearly at the anchor endpoint.  The substitution s = anchor +- u^2
  // bounds the integrand; integrating over dyadic u-pieces from the anchor
  // keeps convergence fast even when the mirror zero of a nearly merged
  // crossing pair sits just off the interval.
  auto crossing_piece = [&](double a, double b, bool anchored_left,
                            double& achieved) {
    const double len = b - a;
    const double handoff = std::min(1e-7, 0.025 * len);
    double anchor = anchored_left ? a : b;
    auto rad_from_anchor = [&](double d) {
      return rad_direct(anchored_left ? anchor + d : anchor - d);
    };
    // Quadratic model rad = A d + B d^2 through the first two resolvable
    // points; a plain secant is biased when a nearly merged crossing pair
    // shrinks the curvature scale of the radicand.
    double r1 = rad_from_anchor(handoff);
    double r2 = rad_from_anchor(2.0 * handoff);
    double A = (4.0 * r1 - r2) / (2.0 * handoff);
    double B = (r2 - 2.0 * r1) / (2.0 * handoff * handoff);
    if (!(A > 0.0)) {
      A = r1 / handoff;
      B = 0.0;
    }
    auto integrand = [&](double u) {
      double d = u * u;  // distance from the anchor
      double rad =
          d < 2.0 * handoff ? d * (A + B * d) : rad_from_anchor(d);
      if (rad <= 0.0) return 0.0;
      return 2.0 * u * c / std::sqrt(rad);
    };
    const double cap = std::sqrt(len);
    double total = 0.0;
    double hi_u = cap;
    for (int piece = 0; piece < 22; ++piece) {
      double lo_u = (piece == 21) ? 0.0 : hi_u * 0.5;
      QuadratureResult q = tanh_sinh(integrand, lo_u, hi_u, tol, 9);
      total += q.value;
      achieved = std::max(achieved, q.error_estimate);
      hi_u = lo_u;
      if (lo_u == 0.0) break;
    }
    return total;
  };

  double acc = 0.0;
  double achieved = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    double lo = cuts[i], hi = cuts[i + 1];
    double mid = 0.5 * (lo + hi);
    if (gap(mid) <= 0.0) continue;
    bool lo_crossing = std::abs(gap(lo)) < 1e-9;
    bool hi_crossing = std::abs(gap(hi)) < 1e-9;
    if (lo_crossing && hi_crossing) {
      acc += crossing_piece(lo, mid, true, achieved);
      acc += crossing_piece(mid, hi, false, achieved);
    } else if (lo_crossing) {
      acc += crossing_piece(lo, hi, true, achieved);
    } else if (hi_crossing) {
      acc += crossing_piece(lo, hi, false, achieved);
    } else {
      QuadratureResult q = tanh_sinh(
          [&](double s) {
            double rad = rad_direct(s);
            if (rad <= 0.0) return 0.0;
            return c / std::sqrt(rad);
          },
          lo, hi, tol);
      achieved = std::max(achieved, q.error_estimate);
      acc += q.value;
    }
  }
  double value = acc / (two_pi * t);
  if (achieved / (two_pi * t) > 1e-8 * std::max(1.0, value))
    throw ToleranceError("sigma_t_numeric: s-quadrature stalled",
                         achieved / (two_pi * t));
  return value;
}

double sigma_density_period2(const LimitFunction& limit, double theta,
                             double tol) {
  const double t = limit.t();
  const double ct = std::cos(theta);
  const double st = std::abs(std::sin(theta));
  // cos(theta_s^{+-}) = +-sqrt((1-|a0|^2)(1-|a1|^2)) - Re(a0 conj(a1))
  auto cos_pm = [&](double s, int sign) {
    cd a0 = limit(s, 0), a1 = limit(s, 1);
    double r = std::sqrt((1.0 - std::norm(a0)) * (1.0 - std::norm(a1)));
    double shift = (a0 * std::conj(a1)).real();
    return sign * r - shift;
  };
  auto gap_hi = [&](double s) { return cos_pm(s, +1) - ct; };
  auto gap_lo = [&](double s) { return ct - cos_pm(s, -1); };
  std::vector<double> cuts = level_crossings(gap_hi, t);
  std::vector<double> more = level_crossings(gap_lo, t);
  cuts.insert(cuts.end(), more.begin(), more.end());
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  auto product = [&](double s) {
    double ghi = gap_hi(s), glo = gap_lo(s);
    if (ghi <= 0.0 || glo <= 0.0) return 0.0;
    return ghi * glo;
  };

  auto crossing_piece = [&](double a, double b, bool anchored_left,
                            double& achieved) {
    const double len = b - a;
    const double handoff = std::min(1e-7, 0.025 * len);
    double anchor = anchored_left ? a : b;
    auto rad_from_anchor = [&](double d) {
      return product(anchored_left ? anchor + d : anchor - d);
    };
    double r1 = rad_from_anchor(handoff);
    double r2 = rad_from_anchor(2.0 * handoff);
    double A = (4.0 * r1 - r2) / (2.0 * handoff);
    double B = (r2 - 2.0 * r1) / (2.0 * handoff * handoff);
    if (!(A > 0.0)) {
      A = r1 / handoff;
      B = 0.0;
    }
    auto integrand = [&](double u) {
      double d = u * u;
      double rad =
          d < 2.0 * handoff ? d * (A + B * d) : rad_from_anchor(d);
      if (rad <= 0.0) return 0.0;
      return 2.0 * u * st / std::sqrt(rad);
    };
    const double cap = std::sqrt(len);
    double total = 0.0;
    double hi_u = cap;
    for (int piece = 0; piece < 22; ++piece) {
      double lo_u = (piece == 21) ? 0.0 : hi_u * 0.5;
      QuadratureResult q = tanh_sinh(integrand, lo_u, hi_u, tol, 9);
      total += q.value;
      achieved = std::max(achieved, q.error_estimate);
      hi_u = lo_u;
      if (lo_u == 0.0) break;
    }
    return total;
  };

  double acc = 0.0;
  double achieved = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    double lo = cuts[i], hi = cuts[i + 1];
    double mid = 0.5 * (lo + hi);
    if (gap_hi(mid) <= 0.0 || gap_lo(mid) <= 0.0) continue;
    bool lo_crossing = std::min(gap_hi(lo), gap_lo(lo)) < 1e-9;
    bool hi_crossing = std::min(gap_hi(hi), gap_lo(hi)) < 1e-9;
    if (lo_crossing && hi_crossing) {
      acc += crossing_piece(lo, mid, true, achieved);
      acc += crossing_piece(mid, hi, false, achieved);
    } else if (lo_crossing) {
      acc += crossing_piece(lo, hi, true, achieved);
    } else if (hi_crossing) {
      acc += crossing_piece(lo, hi, false, achieved);
    } else {
      QuadratureResult q = tanh_sinh(
          [&](double s) {
            double rad = product(s);
            if (rad <= 0.0) return 0.0;
            return st / std::sqrt(rad);
          },
          lo, hi, tol);
      achieved = std::max(achieved, q.error_estimate);
      acc += q.value;
    }
  }
  double value = acc / (two_pi * t);
  if (achieved / (two_pi * t) > 1e-8 * std::max(1.0, value))
    throw ToleranceError("sigma_t_numeric: s-quadrature stalled",
                         achieved / (two_pi * t));
  return value;
}

}  // namespace

DensityCurve sigma_t_numeric(const LimitFunction& limit) {
  const double t = limit.t();
  const double tol = 1e-10;
  DensityCurve curve;

  if (limit.period() == 1) {
    // Constant-modulus limits reduce exactly to the arc equilibrium
    // measure; delegating keeps the edge-resolved 1/sqrt form.
    {
      const int probe = 64;
      double m0 = limit.modulus(0.0);
      bool constant_modulus = true;
      for (int i = 1; i <= probe; ++i)
        if (std::abs(limit.modulus(t * i / probe) - m0) > 1e-13)
          constant_modulus = false;
      if (constant_modulus) return nu_a(std::min(m0, 1.0));
    }

    // Support edge from the minimum modulus; atoms from |alpha(s)| = 1 runs,
    // with run boundaries bisected so isolated touch points get zero weight.
    const int grid = 4096;
    auto atomic_at = [&](double s) { return limit.modulus(s) >= 1.0 - 1e-9; };
    auto refine_boundary = [&](double s_atomic, double s_not) {
      for (int it = 0; it < 60; ++it) {
        double mid = 0.5 * (s_atomic + s_not);
        if (atomic_at(mid))
          s_atomic = mid;
        else
          s_not = mid;
        if (std::abs(s_atomic - s_not) < 1e-15 * t) break;
      }
      return 0.5 * (s_atomic + s_not);
    };

    double amin = kInf;
    double atom_length = 0.0;
    bool prev_atomic = atomic_at(0.0);
    double run_start = 0.0;
    std::vector<double> crit_values;
    std::vector<double> extremum_seeds;
    double m_prev = limit.modulus(0.0), m_prev2 = m_prev;
    crit_values.push_back(m_prev);
    for (int i = 0; i <= grid; ++i) {
      double s = t * i / grid;
      double m = limit.modulus(s);
      amin = std::min(amin, m);
      bool atomic = (m >= 1.0 - 1e-9);
      if (i > 0) {
        double s_prev = t * (i - 1) / grid;
        if (atomic && !prev_atomic) run_start = refine_boundary(s, s_prev);
        if (!atomic && prev_atomic)
          atom_length += refine_boundary(s_prev, s) - run_start;
      }
      prev_atomic = atomic;
      // Strict interior extrema of |alpha| mark angles where the density
      // kinks or diverges; their refined s-locations seed the crossing
      // scans so narrow exclusion windows are not stepped over.
      if (i >= 2 && ((m_prev > m_prev2 && m_prev > m) ||
                     (m_prev < m_prev2 && m_prev < m))) {
        bool is_max = m_prev > m;
        double a_ = t * (i - 2) / grid, b_ = s;
        for (int it = 0; it < 60; ++it) {
          double x1 = a_ + (b_ - a_) / 3.0, x2 = b_ - (b_ - a_) / 3.0;
          double f1 = limit.modulus(x1), f2 = limit.modulus(x2);
          if ((f1 < f2) == is_max)
            a_ = x1;
          else
            b_ = x2;
        }
        double s_star = 0.5 * (a_ + b_);
        extremum_seeds.push_back(s_star);
        crit_values.push_back(limit.modulus(s_star));
      }
      m_prev2 = m_prev;
      m_prev = m;
    }
    if (prev_atomic) atom_length += t - run_start;
    crit_values.push_back(limit.modulus(t));

    double edge = 2.0 * std::asin(std::min(1.0, amin));
    curve.support.push_back(Arc{edge, two_pi - edge});
    std::sort(crit_values.begin(), crit_values.end());
    crit_values.erase(
        std::unique(crit_values.begin(), crit_values.end(),
                    [](double x, double y) { return std::abs(x - y) < 1e-9; }),
        crit_values.end());
    for (double v : crit_values) {
      if (v <= 0.0 || v > 1.0) continue;
      double th = 2.0 * std::asin(std::min(1.0, v));
      curve.singularities.push_back(th);
      curve.singularities.push_back(two_pi - th);
    }
    // Plateaus |alpha(s)| = 1 below the detection resolution are treated as
    // measure zero: continuous profiles that merely touch the boundary
    // would otherwise leak a sqrt(threshold)-wide artificial atom.
    if (atom_length > t / 1024.0)
      curve.atoms.push_back(PointMass{pi, atom_length / t});

    LimitFunction lf = limit;
    std::vector<double> seeds = extremum_seeds;
    curve.density = [lf, tol, seeds](double theta) {
      return sigma_density_scalar(lf, theta, tol, seeds);
    };

    // Below |offset| = 1e-5 from a marked angle, sin(theta/2) is no longer
    // resolvable against the critical modulus in double precision.  The
    // density there follows the local model a/sqrt(d) + b log(1/d) + c
    // (covering flat-stretch, interior-extremum, and edge behavior),
    // fitted per marker and side in the still-resolvable range.
    struct SideModel {
      double anchor;
      double coef[2][3];  // side 0: offset < 0, side 1: offset > 0
      bool valid[2] = {false, false};
    };
    std::vector<SideModel> models;
    const double fits[3] = {1e-4, 3.1622776601683795e-5, 1e-5};
    for (double marker : curve.singularities) {
      SideModel m;
      m.anchor = marker;
      for (int side = 0; side < 2; ++side) {
        double sign = side == 0 ? -1.0 : 1.0;
        double y[3];
        bool ok = true;
        try {
          for (int i = 0; i < 3; ++i)
            y[i] = sigma_density_scalar(lf, marker + sign * fits[i], tol,
                                        seeds);
        } catch (const Error&) {
          ok = false;
        }
        if (!ok || !std::isfinite(y[0]) || !std::isfinite(y[1]) ||
            !std::isfinite(y[2]))
          continue;
        // Only data that actually grows like 1/sqrt earns that basis term;
        // fitting it to smooth or log-type markers just amplifies noise.
        bool sqrt_like = y[0] > 0.0 && y[2] / y[0] > 2.0;
        if (!sqrt_like) {
          double a = (y[2] - y[0]) / std::log(fits[0] / fits[2]);
          m.coef[side][0] = 0.0;
          m.coef[side][1] = a;
          m.coef[side][2] = y[2] - a * std::log(1.0 / fits[2]);
          m.valid[side] = true;
          continue;
        }
        // Solve [d^-1/2, log(1/d), 1] coef = y via Cramer's rule.
        double M[3][3];
        for (int i = 0; i < 3; ++i) {
          M[i][0] = 1.0 / std::sqrt(fits[i]);
          M[i][1] = std::log(1.0 / fits[i]);
          M[i][2] = 1.0;
        }
        auto det3 = [](double a[3][3]) {
          return a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) -
                 a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0]) +
                 a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
        };
        double det = det3(M);
        if (std::abs(det) < 1e-12) continue;
        for (int col = 0; col < 3; ++col) {
          double Mc[3][3];
          for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) Mc[i][j] = (j == col) ? y[i] : M[i][j];
          m.coef[side][col] = det3(Mc) / det;
        }
        // A negative 1/sqrt coefficient is an unphysical fit artifact of a
        // vanishing-edge profile; drop that basis term.
        if (m.coef[side][0] < 0.0) {
          m.coef[side][0] = 0.0;
          double a = (y[2] - y[0]) / std::log(fits[0] / fits[2]);
          m.coef[side][1] = a;
          m.coef[side][2] = y[2] - a * std::log(1.0 / fits[2]);
        }
        m.valid[side] = true;
      }
      models.push_back(m);
    }
    auto base = curve.density;
    const double fit_near = fits[2];
    curve.density_rel = [base, models, fit_near](double anchor,
                                                 double offset) {
      if (std::abs(offset) >= fit_near) return base(anchor + offset);
      for (const SideModel& m : models) {
        if (std::abs(anchor - m.anchor) > 1e-11) continue;
        int side = offset < 0.0 ? 0 : 1;
        if (!m.valid[side]) break;
        double d = std::max(std::abs(offset), 1e-300);
        double v = m.coef[side][0] / std::sqrt(d) +
                   m.coef[side][1] * std::log(1.0 / d) + m.coef[side][2];
        return std::max(0.0, v);
      }
      return base(anchor + offset);
    };
    return curve;
  }

  if (limit.period() == 2) {
    // Union of the varying 2-periodic bands: cos(theta) between the extreme
    // band edges.
    const int grid = 4096;
    double max_hi = -kInf, min_lo = kInf;
    for (int i = 0; i <= grid; ++i) {
      double s = t * i / grid;
      cd a0 = limit(s, 0), a1 = limit(s, 1);
      double r = std::sqrt((1.0 - std::norm(a0)) * (1.0 - std::norm(a1)));
      double shift = (a0 * std::conj(a1)).real();
      max_hi = std::max(max_hi, r - shift);
      min_lo = std::min(min_lo, -r - shift);
    }
    double lo_angle = (max_hi >= 1.0) ? 0.0 : std::acos(std::min(1.0, max_hi));
    double hi_angle = (min_lo <= -1.0) ? pi : std::acos(std::max(-1.0, min_lo));
    curve.support.push_back(Arc{lo_angle, hi_angle});
    curve.support.push_back(Arc{two_pi - hi_angle, two_pi - lo_angle});
    curve.singularities = {lo_angle, hi_angle, two_pi - hi_angle,
                           two_pi - lo_angle};
    LimitFunction lf = limit;
    curve.density = [lf, tol](double theta) {
      return sigma_density_period2(lf, theta, tol);
    };
    return curve;
  }

  throw UnsupportedVariantError(
      "sigma_t_numeric: periodic limits with p > 2 are not supported");
}

// ---------------------------------------------------------------------------
// Closed forms

ClosedFormDensity ClosedFormDensity::power(double omega, double t) {
  if (!(omega > 0.0) || !(t > 0.0) || t > 1.0)
    throw DomainError("closed form power: omega > 0 and 0 < t <= 1");
  return ClosedFormDensity{ClosedFormKind::Power, t, omega, 0.0};
}

ClosedFormDensity ClosedFormDensity::exponential(double zeta, double t) {
  if (!(zeta > 0.0) || zeta >= 1.0 || !(t > 0.0))
    throw DomainError("closed form exp: zeta in (0, 1) and t > 0");
  return ClosedFormDensity{ClosedFormKind::Exp, t, 1.0, zeta};
}

ClosedFormDensity ClosedFormDensity::sqrt_profile(double t) {
  if (!(t > 0.0) || t > 1.0) throw DomainError("closed form sqrt: 0 < t <= 1");
  return ClosedFormDensity{ClosedFormKind::Sqrt, t, 1.0, 0.0};
}

ClosedFormDensity ClosedFormDensity::sine_profile(double t) {
  if (!(t > 0.0)) throw DomainError("closed form sine: t > 0");
  return ClosedFormDensity{ClosedFormKind::Sine, t, 1.0, 0.0};
}

double ClosedFormDensity::support_edge() const {
  switch (kind) {
    case ClosedFormKind::Power:
    case ClosedFormKind::Sine:
      return 0.0;
    case ClosedFormKind::Exp:
      return 2.0 * std::asin(std::pow(zeta, t));
    case ClosedFormKind::Sqrt:
      return 2.0 * std::asin(std::sqrt(std::max(0.0, 1.0 - t * t)));
  }
  return 0.0;
}

std::vector<double> ClosedFormDensity::singular_angles() const {
  if (kind == ClosedFormKind::Sqrt || kind == ClosedFormKind::Sine)
    return {pi};
  return {};
}

double ClosedFormDensity::operator()(double theta) const {
  double th = wrap_angle(theta);
  double edge = support_edge();
  if (th < edge || th > two_pi - edge) return 0.0;
  double sh = std::sin(0.5 * th);
  switch (kind) {
    case ClosedFormKind::Power: {
      double tw = std::pow(t, omega);
      if (omega == 1.0) {
        if (sh > t) return std::sin(0.5 * th) *
                           std::asin(t / sh) / (two_pi * t);
        return std::sin(0.5 * th) / (4.0 * t);
      }
      if (sh > tw) {
        double x = (tw * tw) / (sh * sh);
        return hyp2f1(0.5, 0.5 / omega, (2.0 * omega + 1.0) / (2.0 * omega),
                      x) /
               two_pi;
      }
      double ratio = gamma_fn((2.0 * omega + 1.0) / (2.0 * omega)) /
                     gamma_fn((omega + 1.0) / (2.0 * omega));
      return ratio * std::pow(sh, 1.0 / omega) /
             (2.0 * std::sqrt(pi) * t);
    }
    case ClosedFormKind::Exp: {
      double z2t = std::pow(zeta, 2.0 * t);
      double rad = sh * sh - z2t;
      if (rad < 0.0) return 0.0;
      double inner = sh + std::sqrt(rad);
      double logz = std::log(zeta);
      return (1.0 - std::log(inner) / (t * logz)) / two_pi;
    }
    case ClosedFormKind::Sqrt: {
      double ch = std::abs(std::cos(0.5 * th));
      if (ch == 0.0) return kInf;
      double rad = t * t - ch * ch;
      if (rad < 0.0) return 0.0;
      return sh * (std::log(t + std::sqrt(rad)) - std::log(ch)) /
             (two_pi * t);
    }
    case ClosedFormKind::Sine: {
      // Complementary modulus |cos(theta/2)| keeps K accurate against the
      // logarithmic blow-up at theta = pi.
      double kc = std::abs(std::cos(0.5 * th));
      if (kc == 0.0) return kInf;
      return sh * elliptic_k_from_complement(kc) / (pi * pi);
    }
  }
  return 0.0;
}

DensityCurve ClosedFormDensity::curve() const {
  DensityCurve c;
  double edge = support_edge();
  c.support.push_back(Arc{edge, two_pi - edge});
  c.singularities = singular_angles();
  if (edge > 0.0) {
    c.singularities.push_back(edge);
    c.singularities.push_back(two_pi - edge);
  }
  if (kind == ClosedFormKind::Power) {
    // Branch boundary sin(theta/2) = t^omega is a kink; splitting there
    // restores spectral quadrature convergence.
    double tw = std::pow(t, omega);
    if (tw < 1.0) {
      double kink = 2.0 * std::asin(tw);
      c.singularities.push_back(kink);
      c.singularities.push_back(two_pi - kink);
    }
  }
  ClosedFormDensity self = *this;
  c.density = [self](double theta) { return self(theta); };
  return c;
}

double monotone_density(const std::function<double(double)>& f,
                        const std::function<double(double)>& f_inverse,
                        bool increasing, double t, double theta) {
  const double c = std::sin(0.5 * wrap_angle(theta));
  if (c <= 0.0) return 0.0;
  double lo, hi;
  if (increasing) {
    if (c <= f(0.0)) return 0.0;
    lo = 0.0;
    hi = (c >= f(t)) ? t : std::min(t, f_inverse(c));
  } else {
    if (c <= f(t)) return 0.0;
    hi = t;
    lo = (c >= f(0.0)) ? 0.0 : std::max(0.0, f_inverse(c));
  }
  QuadratureResult q = tanh_sinh(
      [&](double s) {
        double fs = f(s);
        double rad = c * c - fs * fs;
        if (rad <= 0.0) return 0.0;
        return c / std::sqrt(rad);
      },
      lo, hi, 1e-10);
  return q.value / (two_pi * t);
}

// ---------------------------------------------------------------------------
// Distribution function

DistributionFunction::DistributionFunction(const DensityCurve& curve,
                                           double tol)
    : atoms_(curve.atoms),
      density_(curve.density),
      density_rel_(curve.density_rel),
      tol_(tol) {
  std::vector<double> pts = curve_breakpoints(curve);
  double cum = 0.0;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    Segment seg;
    seg.lo = pts[i];
    seg.hi = pts[i + 1];
    seg.cum_before = cum;
    double mid = 0.5 * (seg.lo + seg.hi);
    if (curve.in_support(mid) && density_)
      cum += integrate_density_segment(density_, density_rel_, seg.lo, seg.hi,
                                       tol_)
                 .value;
    segments_.push_back(seg);
  }
  density_total_ = cum;
  total_ = cum;
  for (const PointMass& pm : atoms_) total_ += pm.weight;
}

double DistributionFunction::operator()(double theta) const {
  double t = std::clamp(theta, 0.0, two_pi);
  double acc = density_total_;
  for (const Segment& seg : segments_) {
    if (t >= seg.hi) continue;
    acc = seg.cum_before;
    if (t > seg.lo && density_)
      acc +=
          integrate_density_segment(density_, density_rel_, seg.lo, t, tol_)
              .value;
    break;
  }
  for (const PointMass& pm : atoms_)
    if (pm.theta <= t) acc += pm.weight;
  return acc;
}

// ---------------------------------------------------------------------------
// Kolmogorov distance

KolmogorovResult kolmogorov_distance(const EmpiricalMeasure& emp,
                                     const DistributionFunction& F) {
  if (emp.points.empty())
    throw DomainError("kolmogorov_distance: empty empirical measure");
  KolmogorovResult out;
  std::vector<double> angles;
  angles.reserve(emp.points.size());
  for (const cd& z : emp.points) {
    if (std::abs(std::abs(z) - 1.0) > 1e-6) out.projected = true;
    angles.push_back(wrap_angle(std::arg(z)));
  }
  std::sort(angles.begin(), angles.end());
  const double n = static_cast<double>(angles.size());
  double worst = 0.0;
  for (std::size_t i = 0; i < angles.size(); ++i) {
    double Fv = F(angles[i]);
    double below = static_cast<double>(i) / n;
    double above = static_cast<double>(i + 1) / n;
    worst = std::max({worst, std::abs(Fv - below), std::abs(Fv - above)});
  }
  out.distance = worst;
  return out;
}

// ---------------------------------------------------------------------------
// Moments

std::vector<cd> moments(const EmpiricalMeasure& emp, std::size_t k_max) {
  const double n = static_cast<double>(emp.points.size());
  std::vector<cd> out(k_max + 1, cd(0.0));
  for (const cd& z : emp.points) {
    cd pw(1.0);
    for (std::size_t k = 0; k <= k_max; ++k) {
      out[k] += pw;
      pw *= z;
    }
  }
  for (cd& m : out) m /= n;
  return out;
}

std::vector<cd> moments(const DensityCurve& curve, std::size_t k_max,
                        double tol) {
  std::vector<cd> out(k_max + 1, cd(0.0));
  std::vector<double> pts = curve_breakpoints(curve);
  for (std::size_t k = 0; k <= k_max; ++k) {
    const double dk = static_cast<double>(k);
    cd acc(0.0);
    if (curve.density) {
      for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        double mid = 0.5 * (pts[i] + pts[i + 1]);
        if (!curve.in_support(mid)) continue;
        double re = integrate_density_segment(
                        curve.density, curve.density_rel, pts[i], pts[i + 1],
                        tol, [dk](double t) { return std::cos(dk * t); })
                        .value;
        double im = integrate_density_segment(
                        curve.density, curve.density_rel, pts[i], pts[i + 1],
                        tol, [dk](double t) { return std::sin(dk * t); })
                        .value;
        acc += cd(re, im);
      }
    }
    for (const PointMass& pm : curve.atoms)
      acc += pm.weight * std::polar(1.0, dk * pm.theta);
    out[k] = acc;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Balayage

double BalayageMeasure::fejer_density(double theta) const {
  const std::size_t K = order();
  double acc = moments[0].real();
  for (std::size_t k = 1; k <= K; ++k) {
    double w = 1.0 - static_cast<double>(k) / (static_cast<double>(K) + 1.0);
    acc += 2.0 * w *
           (moments[k] * std::polar(1.0, -static_cast<double>(k) * theta))
               .real();
  }
  return acc / two_pi;
}

BalayageMeasure balayage(const EmpiricalMeasure& emp, std::size_t k_max) {
  for (const cd& z : emp.points)
    if (std::abs(z) > 1.0 + 1e-9)
      throw DomainError("balayage: points must lie in the closed disk");
  BalayageMeasure out;
  out.moments = moments(emp, k_max);
  return out;
}

double poisson_kernel(double r, double t) {
  if (!(r >= 0.0) || r >= 1.0) throw DomainError("poisson_kernel: 0 <= r < 1");
  double denom = 1.0 - 2.0 * r * std::cos(t) + r * r;
  return (1.0 - r * r) / denom;
}

// ---------------------------------------------------------------------------
// Logarithmic potentials

double log_potential(const EmpiricalMeasure& emp, cd z) {
  if (emp.points.empty()) throw DomainError("log_potential: empty measure");
  double acc = 0.0;
  for (const cd& zj : emp.points) {
    double d = std::abs(z - zj);
    if (d < 1e-6)
      throw ProximityError("log_potential: z within 1e-6 of a mass point");
    acc += std::log(d);
  }
  return -acc / static_cast<double>(emp.points.size());
}

double log_potential(const DensityCurve& curve, cd z, double tol) {
  // Distance to the support.
  double dist = kInf;
  double theta_z = wrap_angle(std::arg(z));
  for (const Arc& a : curve.support) {
    if (a.contains(theta_z) || a.contains(theta_z + two_pi))
      dist = std::min(dist, std::abs(std::abs(z) - 1.0));
    else
      dist = std::min({dist, std::abs(z - std::polar(1.0, a.lo)),
                       std::abs(z - std::polar(1.0, a.hi))});
  }
  for (const PointMass& pm : curve.atoms)
    dist = std::min(dist, std::abs(z - std::polar(1.0, pm.theta)));
  if (dist < 1e-6)
    throw ProximityError("log_potential: z within 1e-6 of the support");

  double acc = 0.0;
  std::vector<double> pts = curve_breakpoints(curve);
  if (curve.density) {
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
      double mid = 0.5 * (pts[i] + pts[i + 1]);
      if (!curve.in_support(mid)) continue;
      acc += integrate_density_segment(
                 curve.density, curve.density_rel, pts[i], pts[i + 1], tol,
                 [&](double theta) {
                   return std::log(std::abs(z - std::polar(1.0, theta)));
                 })
                 .value;
    }
  }
  for (const PointMass& pm : curve.atoms)
    acc += pm.weight * std::log(std::abs(z - std::polar(1.0, pm.theta)));
  return -acc;
}

double rogers_szego_density(double a, double theta) {
  if (!(a > 0.0)) throw DomainError("rogers_szego_density: a > 0 required");
  const double norm = 1.0 / std::sqrt(two_pi * a);
  const long j0 = std::lround(theta / two_pi);
  double acc = 0.0;
  for (long j = j0;; ++j) {
    double d = theta - two_pi * static_cast<double>(j);
    double term = std::exp(-d * d / (2.0 * a));
    acc += term;
    if (term < 1e-16 && j > j0) break;
  }
  for (long j = j0 - 1;; --j) {
    double d = theta - two_pi * static_cast<double>(j);
    double term = std::exp(-d * d / (2.0 * a));
    acc += term;
    if (term < 1e-16) break;
  }
  return norm * acc;
}

}  // namespace opuc
