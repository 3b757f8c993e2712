#include "opuc/schedules.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "opuc/errors.hpp"

namespace opuc {

cd clamp_to_open_disk(cd value) {
  double m = std::abs(value);
  if (m < 1.0) return value;
  if (m == 0.0) return value;
  return value * ((1.0 - kClampEpsilon) / m);
}

// ---------------------------------------------------------------------------
// SampledExpression

SampledExpression SampledExpression::power(double omega) {
  if (!(omega > 0.0)) throw DomainError("power expression needs omega > 0");
  SampledExpression e;
  e.kind_ = Kind::Power;
  e.omega_ = omega;
  return e;
}

SampledExpression SampledExpression::exponential(cd zeta) {
  if (std::abs(zeta) >= 1.0 || std::abs(zeta) == 0.0)
    throw DomainError("exp expression needs 0 < |zeta| < 1");
  SampledExpression e;
  e.kind_ = Kind::Exp;
  e.zeta_ = zeta;
  return e;
}

SampledExpression SampledExpression::sqrt_one_minus_s2() {
  SampledExpression e;
  e.kind_ = Kind::SqrtOneMinusS2;
  return e;
}

SampledExpression SampledExpression::sine() {
  SampledExpression e;
  e.kind_ = Kind::Sine;
  return e;
}

SampledExpression SampledExpression::constant(cd value) {
  SampledExpression e;
  e.kind_ = Kind::Constant;
  e.constant_ = value;
  return e;
}

SampledExpression SampledExpression::table(
    std::vector<std::pair<double, cd>> knots) {
  if (knots.empty()) throw DomainError("table expression needs knots");
  std::sort(knots.begin(), knots.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  SampledExpression e;
  e.kind_ = Kind::Table;
  e.knots_ = std::move(knots);
  return e;
}

cd SampledExpression::eval(double s, double t) const {
  switch (kind_) {
    case Kind::Power:
      return std::pow(std::max(s, 0.0), omega_);
    case Kind::Exp:
      return std::pow(zeta_, cd(s, 0.0));
    case Kind::SqrtOneMinusS2: {
      double v = 1.0 - s * s;
      return v > 0.0 ? std::sqrt(v) : 0.0;
    }
    case Kind::Sine:
      return std::sin(pi * s / t);
    case Kind::Constant:
      return constant_;
    case Kind::Table: {
      if (s <= knots_.front().first) return knots_.front().second;
      if (s >= knots_.back().first) return knots_.back().second;
      auto it = std::upper_bound(
          knots_.begin(), knots_.end(), s,
          [](double x, const auto& k) { return x < k.first; });
      const auto& hi = *it;
      const auto& lo = *(it - 1);
      double w = (s - lo.first) / (hi.first - lo.first);
      return lo.second + w * (hi.second - lo.second);
    }
  }
  throw DomainError("unreachable expression kind");
}

double SampledExpression::sample_point(std::size_t n, std::size_t N) const {
  double dn = static_cast<double>(n);
  double dN = static_cast<double>(N);
  return kind_ == Kind::Exp ? (dn + 1.0) / dN : dn / dN;
}

// ---------------------------------------------------------------------------
// LimitFunction

LimitFunction::LimitFunction(double t,
                             std::vector<std::function<cd(double)>> components)
    : t_(t), components_(std::move(components)) {
  if (components_.empty())
    throw DomainError("limit function needs at least one component");
}

cd LimitFunction::operator()(double s, std::size_t j) const {
  return components_[j % components_.size()](s);
}

double LimitFunction::modulus(double s, std::size_t j) const {
  return std::abs((*this)(s, j));
}

// ---------------------------------------------------------------------------
// Schedule

Schedule Schedule::constant(cd alpha) {
  if (std::abs(alpha) >= 1.0)
    throw DomainError("constant schedule needs |alpha| < 1");
  Schedule s;
  s.kind_ = Kind::Constant;
  s.constant_ = alpha;
  return s;
}

Schedule Schedule::periodic(std::vector<cd> alphas) {
  if (alphas.empty()) throw DomainError("periodic schedule needs coefficients");
  for (const cd& a : alphas)
    if (std::abs(a) >= 1.0)
      throw DomainError("periodic schedule needs |alpha_j| < 1");
  Schedule s;
  s.kind_ = Kind::Periodic;
  s.periodic_ = std::move(alphas);
  return s;
}

Schedule Schedule::sampled(SampledExpression expr, double t) {
  if (!(t > 0.0)) throw DomainError("sampled schedule needs t > 0");
  Schedule s;
  s.kind_ = Kind::Sampled;
  s.expr_ = std::move(expr);
  s.t_ = t;
  return s;
}

Schedule Schedule::table(
    std::vector<std::pair<std::size_t, std::vector<cd>>> rows) {
  Schedule s;
  s.kind_ = Kind::Table;
  s.table_ = std::move(rows);
  return s;
}

cd Schedule::coefficient(std::size_t n, std::size_t N) const {
  if (N == 0) throw DomainError("coefficient: N >= 1 required");
  switch (kind_) {
    case Kind::Constant:
      return constant_;
    case Kind::Periodic:
      return periodic_[n % periodic_.size()];
    case Kind::Sampled: {
      // alpha_{n,N} = clamp(f(s_n)) for n <= tN and 0 above the horizon,
      // matching the model situation alpha_{n,N} = 0 for n > tN.
      if (static_cast<double>(n) > t_ * static_cast<double>(N))
        return cd(0.0, 0.0);
      return clamp_to_open_disk(expr_.eval(expr_.sample_point(n, N), t_));
    }
    case Kind::Table: {
      for (const auto& row : table_) {
        if (row.first == N) {
          if (n >= row.second.size())
            throw OutOfRangeError("table schedule: n outside stored range");
          return row.second[n];
        }
      }
      throw OutOfRangeError("table schedule: N outside stored range");
    }
  }
  throw DomainError("unreachable schedule kind");
}

LimitFunction Schedule::limit_function() const {
  switch (kind_) {
    case Kind::Constant: {
      cd a = constant_;
      return LimitFunction(1.0, {[a](double) { return a; }});
    }
    case Kind::Periodic: {
      std::vector<std::function<cd(double)>> comps;
      comps.reserve(periodic_.size());
      for (cd a : periodic_) comps.push_back([a](double) { return a; });
      return LimitFunction(1.0, std::move(comps));
    }
    case Kind::Sampled: {
      SampledExpression e = expr_;
      double t = t_;
      return LimitFunction(t, {[e, t](double s) { return e.eval(s, t); }});
    }
    case Kind::Table:
      throw UnsupportedVariantError("table schedule has no declared limit");
  }
  throw DomainError("unreachable schedule kind");
}

std::string Schedule::describe() const {
  std::ostringstream os;
  switch (kind_) {
    case Kind::Constant:
      os << "constant(" << constant_.real() << "+" << constant_.imag() << "i)";
      break;
    case Kind::Periodic:
      os << "periodic[p=" << periodic_.size() << "]";
      break;
    case Kind::Sampled:
      os << "sampled[t=" << t_ << "]";
      break;
    case Kind::Table:
      os << "table[" << table_.size() << " rows]";
      break;
  }
  return os.str();
}

}  // namespace opuc
